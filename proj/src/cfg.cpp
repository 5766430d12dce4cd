#include "vplwin/cfg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace vplwin {

Cfg trimCfg(const Cfg& g) {
  int n = g.numNonterminals();
  // productive
  std::vector<char> prod(static_cast<size_t>(n), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.prods) {
      if (prod[static_cast<size_t>(p.lhs)]) continue;
      bool ok = true;
      for (const auto& s : p.rhs)
        if (!s.terminal && !prod[static_cast<size_t>(s.id)]) ok = false;
      if (ok) {
        prod[static_cast<size_t>(p.lhs)] = 1;
        changed = true;
      }
    }
  }
  // reachable (through productive productions only)
  std::vector<char> reach(static_cast<size_t>(n), 0);
  if (prod[static_cast<size_t>(g.start)]) {
    std::deque<int> work{g.start};
    reach[static_cast<size_t>(g.start)] = 1;
    while (!work.empty()) {
      int a = work.front();
      work.pop_front();
      for (const auto& p : g.prods) {
        if (p.lhs != a) continue;
        bool ok = true;
        for (const auto& s : p.rhs)
          if (!s.terminal && !prod[static_cast<size_t>(s.id)]) ok = false;
        if (!ok) continue;
        for (const auto& s : p.rhs)
          if (!s.terminal && !reach[static_cast<size_t>(s.id)]) {
            reach[static_cast<size_t>(s.id)] = 1;
            work.push_back(s.id);
          }
      }
    }
  }
  Cfg out;
  out.terminals = g.terminals;
  std::vector<int> renum(static_cast<size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    if (prod[static_cast<size_t>(a)] && reach[static_cast<size_t>(a)])
      renum[static_cast<size_t>(a)] = out.addNonterminal(g.ntNames[static_cast<size_t>(a)]);
  if (renum[static_cast<size_t>(g.start)] < 0) {
    // empty language: single unproductive start
    out.start = out.addNonterminal(g.ntNames.empty() ? "S" : g.ntNames[static_cast<size_t>(g.start)]);
    return out;
  }
  out.start = renum[static_cast<size_t>(g.start)];
  for (const auto& p : g.prods) {
    if (renum[static_cast<size_t>(p.lhs)] < 0) continue;
    bool ok = true;
    std::vector<Cfg::SymRef> rhs;
    for (const auto& s : p.rhs) {
      if (s.terminal) {
        rhs.push_back(s);
      } else if (renum[static_cast<size_t>(s.id)] >= 0) {
        rhs.push_back(Cfg::N(renum[static_cast<size_t>(s.id)]));
      } else {
        ok = false;
        break;
      }
    }
    if (ok) out.addProd(renum[static_cast<size_t>(p.lhs)], std::move(rhs));
  }
  // dedupe productions
  std::set<std::pair<int, std::vector<std::pair<int, int>>>> seen;
  Cfg dedup = out;
  dedup.prods.clear();
  for (auto& p : out.prods) {
    std::vector<std::pair<int, int>> key;
    for (auto& s : p.rhs) key.emplace_back(s.terminal ? 1 : 0, s.id);
    if (seen.emplace(p.lhs, key).second) dedup.prods.push_back(p);
  }
  return dedup;
}

bool cfgEmptyLang(const Cfg& g) {
  Cfg t = trimCfg(g);
  for (const auto& p : t.prods)
    if (p.lhs == t.start) return false;
  return true;
}

std::vector<size_t> shortestYieldLengths(const Cfg& g) {
  int n = g.numNonterminals();
  std::vector<size_t> best(static_cast<size_t>(n), SIZE_MAX);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.prods) {
      size_t sum = 0;
      bool ok = true;
      for (const auto& s : p.rhs) {
        if (s.terminal) {
          sum += 1;
        } else if (best[static_cast<size_t>(s.id)] == SIZE_MAX) {
          ok = false;
          break;
        } else {
          sum += best[static_cast<size_t>(s.id)];
        }
      }
      if (ok && sum < best[static_cast<size_t>(p.lhs)]) {
        best[static_cast<size_t>(p.lhs)] = sum;
        changed = true;
      }
    }
  }
  return best;
}

std::optional<Word> shortestWordCfg(const Cfg& g) {
  auto lens = shortestYieldLengths(g);
  if (g.numNonterminals() == 0 || lens[static_cast<size_t>(g.start)] == SIZE_MAX) return std::nullopt;
  // expand the start by always choosing a minimal production
  std::function<Word(int)> expand = [&](int a) -> Word {
    const Cfg::Prod* pick = nullptr;
    size_t bestSum = SIZE_MAX;
    for (const auto& p : g.prods) {
      if (p.lhs != a) continue;
      size_t sum = 0;
      bool ok = true;
      for (const auto& s : p.rhs) {
        if (s.terminal)
          sum += 1;
        else if (lens[static_cast<size_t>(s.id)] == SIZE_MAX) {
          ok = false;
          break;
        } else
          sum += lens[static_cast<size_t>(s.id)];
      }
      if (ok && sum < bestSum) {
        bestSum = sum;
        pick = &p;
      }
    }
    Word w;
    if (!pick) return w;
    for (const auto& s : pick->rhs) {
      if (s.terminal)
        w.push_back(s.id);
      else {
        Word sub = expand(s.id);
        w.insert(w.end(), sub.begin(), sub.end());
      }
    }
    return w;
  };
  return expand(g.start);
}

std::vector<std::vector<Word>> enumerateCfg(const Cfg& g0, int maxLen, Budget& budget) {
  Cfg g = trimCfg(g0);
  std::vector<std::vector<Word>> out(static_cast<size_t>(maxLen) + 1);
  if (cfgEmptyLang(g)) return out;
  int n = g.numNonterminals();
  // table[nt][len] = words of exact length, grown to a global fixpoint
  // (handles unit and epsilon cycles without special cases)
  std::vector<std::vector<std::set<Word>>> table(static_cast<size_t>(n),
                                                 std::vector<std::set<Word>>(static_cast<size_t>(maxLen) + 1));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.prods) {
      for (int len = 0; len <= maxLen; ++len) {
        std::function<void(size_t, int, Word&)> go = [&](size_t idx, int rem, Word& prefix) {
          if (idx == p.rhs.size()) {
            if (rem == 0) {
              if (table[static_cast<size_t>(p.lhs)][static_cast<size_t>(len)].insert(prefix).second) {
                budget.charge();
                changed = true;
              }
            }
            return;
          }
          const auto& s = p.rhs[idx];
          if (s.terminal) {
            if (rem >= 1) {
              prefix.push_back(s.id);
              go(idx + 1, rem - 1, prefix);
              prefix.pop_back();
            }
            return;
          }
          for (int take = 0; take <= rem; ++take) {
            for (const Word& sw : table[static_cast<size_t>(s.id)][static_cast<size_t>(take)]) {
              size_t mark = prefix.size();
              prefix.insert(prefix.end(), sw.begin(), sw.end());
              go(idx + 1, rem - take, prefix);
              prefix.resize(mark);
            }
          }
        };
        Word prefix;
        go(0, len, prefix);
      }
    }
  }
  for (int len = 0; len <= maxLen; ++len)
    out[static_cast<size_t>(len)].assign(table[static_cast<size_t>(g.start)][static_cast<size_t>(len)].begin(),
                                         table[static_cast<size_t>(g.start)][static_cast<size_t>(len)].end());
  return out;
}

bool cfgAccepts(const Cfg& g, const Word& w) {
  Budget b;
  b.limit = 1'000'000;
  auto words = enumerateCfg(g, static_cast<int>(w.size()), b);
  auto& bucket = words[w.size()];
  return std::find(bucket.begin(), bucket.end(), w) != bucket.end();
}

CnfResult toCnf(const Cfg& g0) {
  Cfg g = trimCfg(g0);
  CnfResult res;
  if (cfgEmptyLang(g)) {
    res.g = g;
    return res;
  }
  // fresh start
  Cfg h;
  h.terminals = g.terminals;
  for (const auto& n : g.ntNames) h.addNonterminal(n);
  h.start = h.addNonterminal("S!");
  h.prods = g.prods;
  h.addProd(h.start, {Cfg::N(g.start)});

  // TERM: wrap terminals occurring in long productions
  std::map<int, int> termNt;
  auto wrapTerminal = [&](int t) {
    auto it = termNt.find(t);
    if (it != termNt.end()) return it->second;
    int nt = h.addNonterminal("T!" + h.terminals.name(t));
    h.addProd(nt, {Cfg::T(t)});
    termNt.emplace(t, nt);
    return nt;
  };
  for (auto& p : h.prods) {
    if (p.rhs.size() >= 2) {
      for (auto& s : p.rhs)
        if (s.terminal) s = Cfg::N(wrapTerminal(s.id));
    }
  }
  // BIN
  std::vector<Cfg::Prod> bin;
  for (auto& p : h.prods) {
    if (p.rhs.size() <= 2) {
      bin.push_back(p);
      continue;
    }
    int prev = p.lhs;
    for (size_t i = 0; i + 2 < p.rhs.size(); ++i) {
      int mid = h.addNonterminal("B!" + std::to_string(h.numNonterminals()));
      bin.push_back({prev, {p.rhs[i], Cfg::N(mid)}});
      prev = mid;
    }
    bin.push_back({prev, {p.rhs[p.rhs.size() - 2], p.rhs[p.rhs.size() - 1]}});
  }
  h.prods = std::move(bin);
  // DEL: nullable elimination
  std::set<int> nullable;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : h.prods) {
      if (nullable.count(p.lhs)) continue;
      bool allNull = true;
      for (const auto& s : p.rhs)
        if (s.terminal || !nullable.count(s.id)) allNull = false;
      if (p.rhs.empty() || allNull) {
        nullable.insert(p.lhs);
        changed = true;
      }
    }
  }
  res.epsilonInLanguage = nullable.count(h.start) > 0;
  std::vector<Cfg::Prod> noeps;
  for (const auto& p : h.prods) {
    if (p.rhs.empty()) continue;
    // expand each subset of nullable occurrences
    std::vector<size_t> nullPos;
    for (size_t i = 0; i < p.rhs.size(); ++i)
      if (!p.rhs[i].terminal && nullable.count(p.rhs[i].id)) nullPos.push_back(i);
    size_t combos = size_t{1} << nullPos.size();
    for (size_t mask = 0; mask < combos; ++mask) {
      std::vector<Cfg::SymRef> rhs;
      for (size_t i = 0; i < p.rhs.size(); ++i) {
        bool drop = false;
        for (size_t j = 0; j < nullPos.size(); ++j)
          if (nullPos[j] == i && (mask & (size_t{1} << j))) drop = true;
        if (!drop) rhs.push_back(p.rhs[i]);
      }
      if (!rhs.empty()) noeps.push_back({p.lhs, rhs});
    }
  }
  h.prods = std::move(noeps);
  // UNIT elimination
  int n = h.numNonterminals();
  std::vector<std::set<int>> unitReach(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) unitReach[static_cast<size_t>(a)].insert(a);
  changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : h.prods) {
      if (p.rhs.size() == 1 && !p.rhs[0].terminal) {
        for (int b : unitReach[static_cast<size_t>(p.rhs[0].id)])
          if (unitReach[static_cast<size_t>(p.lhs)].insert(b).second) changed = true;
      }
    }
  }
  std::vector<Cfg::Prod> finalProds;
  for (int a = 0; a < n; ++a) {
    for (int b : unitReach[static_cast<size_t>(a)]) {
      for (const auto& p : h.prods) {
        if (p.lhs != b) continue;
        bool unit = p.rhs.size() == 1 && !p.rhs[0].terminal;
        if (unit) continue;
        finalProds.push_back({a, p.rhs});
      }
    }
  }
  h.prods = std::move(finalProds);
  res.g = trimCfg(h);
  return res;
}

Cfg intersectCfgDfa(const Cfg& g0, const Dfa& d) {
  // binarize long productions first (language-preserving helper nts)
  Cfg g;
  g.terminals = g0.terminals;
  g.ntNames = g0.ntNames;
  g.start = g0.start;
  for (const auto& p : g0.prods) {
    if (p.rhs.size() <= 2) {
      g.prods.push_back(p);
      continue;
    }
    int prev = p.lhs;
    std::vector<Cfg::SymRef> rest(p.rhs.begin(), p.rhs.end());
    for (size_t i = 0; i + 2 < p.rhs.size(); ++i) {
      int mid = g.addNonterminal("I!" + std::to_string(g.numNonterminals()));
      g.prods.push_back({prev, {p.rhs[i], Cfg::N(mid)}});
      prev = mid;
    }
    g.prods.push_back({prev, {p.rhs[p.rhs.size() - 2], p.rhs[p.rhs.size() - 1]}});
    (void)rest;
  }

  int Q = d.numStates;
  Cfg out;
  out.terminals = g.terminals;
  auto ntId = [&](int a, int p, int q) { return (a * Q + p) * Q + q; };
  for (int a = 0; a < g.numNonterminals(); ++a)
    for (int p = 0; p < Q; ++p)
      for (int q = 0; q < Q; ++q)
        out.addNonterminal(g.ntNames[static_cast<size_t>(a)] + "[" + std::to_string(p) + "," + std::to_string(q) + "]");
  int start = out.addNonterminal("S&");
  out.start = start;
  for (int f = 0; f < Q; ++f)
    if (d.accepting[static_cast<size_t>(f)]) out.addProd(start, {Cfg::N(ntId(g.start, d.initial, f))});
  for (const auto& pr : g.prods) {
    if (pr.rhs.empty()) {
      for (int p = 0; p < Q; ++p) out.addProd(ntId(pr.lhs, p, p), {});
    } else if (pr.rhs.size() == 1) {
      const auto& s = pr.rhs[0];
      if (s.terminal) {
        for (int p = 0; p < Q; ++p) out.addProd(ntId(pr.lhs, p, d.next(p, s.id)), {Cfg::T(s.id)});
      } else {
        for (int p = 0; p < Q; ++p)
          for (int q = 0; q < Q; ++q) out.addProd(ntId(pr.lhs, p, q), {Cfg::N(ntId(s.id, p, q))});
      }
    } else {
      for (int p = 0; p < Q; ++p)
        for (int r = 0; r < Q; ++r)
          for (int q = 0; q < Q; ++q) {
            std::vector<Cfg::SymRef> rhs;
            const auto& s0 = pr.rhs[0];
            const auto& s1 = pr.rhs[1];
            if (s0.terminal) {
              if (d.next(p, s0.id) != r) continue;
              rhs.push_back(Cfg::T(s0.id));
            } else {
              rhs.push_back(Cfg::N(ntId(s0.id, p, r)));
            }
            if (s1.terminal) {
              if (d.next(r, s1.id) != q) continue;
              rhs.push_back(Cfg::T(s1.id));
            } else {
              rhs.push_back(Cfg::N(ntId(s1.id, r, q)));
            }
            out.addProd(ntId(pr.lhs, p, q), std::move(rhs));
          }
    }
  }
  return trimCfg(out);
}

Cfg suffixClosureCfg(const Cfg& g0) {
  Cfg g = trimCfg(g0);
  Cfg out;
  out.terminals = g.terminals;
  int n = g.numNonterminals();
  for (int a = 0; a < n; ++a) out.addNonterminal(g.ntNames[static_cast<size_t>(a)]);
  std::vector<int> sufOf(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) sufOf[static_cast<size_t>(a)] = out.addNonterminal(g.ntNames[static_cast<size_t>(a)] + "~suf");
  out.start = sufOf[static_cast<size_t>(g.start)];
  out.prods = g.prods;
  for (const auto& p : g.prods) {
    // suffix may start at any item i: sufOf(item_i) followed by items i+1..
    for (size_t i = 0; i < p.rhs.size(); ++i) {
      std::vector<Cfg::SymRef> rhs;
      const auto& s = p.rhs[i];
      if (s.terminal)
        rhs.push_back(s);  // suffix starting exactly at this terminal
      else
        rhs.push_back(Cfg::N(sufOf[static_cast<size_t>(s.id)]));
      for (size_t j = i + 1; j < p.rhs.size(); ++j) rhs.push_back(p.rhs[j]);
      out.addProd(sufOf[static_cast<size_t>(p.lhs)], std::move(rhs));
    }
    // the empty suffix
  }
  for (int a = 0; a < n; ++a) out.addProd(sufOf[static_cast<size_t>(a)], {});
  return trimCfg(out);
}

std::optional<Word> leastWordOfLength(const Cfg& g0, size_t len) {
  Cfg g = trimCfg(g0);
  if (g.numNonterminals() == 0) return std::nullopt;
  int n = g.numNonterminals();
  // least word of exact length per nonterminal, grown to a fixpoint
  std::vector<std::vector<std::optional<Word>>> best(
      static_cast<size_t>(n), std::vector<std::optional<Word>>(len + 1));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.prods) {
      for (size_t l = 0; l <= len; ++l) {
        std::function<std::optional<Word>(size_t, size_t)> go = [&](size_t idx, size_t rem) -> std::optional<Word> {
          if (idx == p.rhs.size()) return rem == 0 ? std::optional<Word>(Word{}) : std::nullopt;
          const auto& s = p.rhs[idx];
          if (s.terminal) {
            if (rem == 0) return std::nullopt;
            auto rest = go(idx + 1, rem - 1);
            if (!rest) return std::nullopt;
            Word w{s.id};
            w.insert(w.end(), rest->begin(), rest->end());
            return w;
          }
          std::optional<Word> bestHere;
          for (size_t take = 0; take <= rem; ++take) {
            const auto& sub = best[static_cast<size_t>(s.id)][take];
            if (!sub) continue;
            auto rest = go(idx + 1, rem - take);
            if (!rest) continue;
            Word w = *sub;
            w.insert(w.end(), rest->begin(), rest->end());
            if (!bestHere || w < *bestHere) bestHere = w;
          }
          return bestHere;
        };
        auto w = go(0, l);
        auto& slot = best[static_cast<size_t>(p.lhs)][l];
        if (w && (!slot || *w < *slot)) {
          slot = w;
          changed = true;
        }
      }
    }
  }
  return best[static_cast<size_t>(g.start)][len];
}

Cfg cfgFromDfa(const Dfa& d) {
  Cfg g;
  g.terminals = d.alphabet;
  for (int q = 0; q < d.numStates; ++q) g.addNonterminal("Q" + std::to_string(q));
  g.start = d.initial;
  for (int q = 0; q < d.numStates; ++q) {
    for (Sym a = 0; a < d.alphabet.size(); ++a) g.addProd(q, {Cfg::T(a), Cfg::N(d.next(q, a))});
    if (d.accepting[static_cast<size_t>(q)]) g.addProd(q, {});
  }
  return trimCfg(g);
}

Cfg cfgFromNfa(const Nfa& n, const Alphabet& terminals) {
  Cfg g;
  g.terminals = terminals;
  for (int q = 0; q < n.numStates; ++q) g.addNonterminal("Q" + std::to_string(q));
  int start = g.addNonterminal("S");
  g.start = start;
  for (int q : n.initials) g.addProd(start, {Cfg::N(q)});
  for (int q = 0; q < n.numStates; ++q) {
    for (const Nfa::Edge& e : n.adj[static_cast<size_t>(q)]) g.addProd(q, {Cfg::T(e.a), Cfg::N(e.to)});
    for (int t : n.eps[static_cast<size_t>(q)]) g.addProd(q, {Cfg::N(t)});
    if (n.accepting[static_cast<size_t>(q)]) g.addProd(q, {});
  }
  return trimCfg(g);
}

std::string printCfg(const Cfg& g) {
  std::string out = "@cfg\n";
  out += "start: " + (g.numNonterminals() ? g.ntNames[static_cast<size_t>(g.start)] : std::string("S")) + "\n";
  for (const auto& p : g.prods) {
    out += g.ntNames[static_cast<size_t>(p.lhs)] + " ->";
    if (p.rhs.empty()) {
      out += " _";
    } else {
      for (const auto& s : p.rhs) out += " " + (s.terminal ? g.terminals.name(s.id) : g.ntNames[static_cast<size_t>(s.id)]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace vplwin
