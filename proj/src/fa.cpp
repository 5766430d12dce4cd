#include "vplwin/fa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

namespace vplwin {

const char* errcName(Errc c) {
  switch (c) {
    case Errc::ParseError: return "parse-error";
    case Errc::UnknownSymbol: return "unknown-symbol";
    case Errc::NotWellMatched: return "not-well-matched";
    case Errc::NotDescending: return "not-descending";
    case Errc::EmptyWord: return "empty-word";
    case Errc::BadFactorization: return "bad-factorization";
    case Errc::NotAllFlat: return "not-allflat";
    case Errc::NotRegFlat: return "not-regflat";
    case Errc::NoApxFound: return "no-apx-found";
    case Errc::UnreachableConfiguration: return "unreachable-configuration";
    case Errc::BudgetExceeded: return "budget-exceeded";
    case Errc::AmbiguousMachine: return "ambiguous-machine";
    case Errc::KindMachineMismatch: return "kind-machine-mismatch";
    case Errc::NotBounded: return "not-bounded";
    case Errc::S0Unbounded: return "s0-unbounded";
    case Errc::PreconditionViolation: return "precondition-violation";
    case Errc::AbsorptionViolation: return "absorption-violation";
    case Errc::DomainViolation: return "domain-violation";
    case Errc::InequalityFailure: return "inequality-failure";
    case Errc::ZNotFound: return "z-not-found";
    case Errc::RotationImpossible: return "rotation-impossible";
    case Errc::ValidationFailure: return "validation-failure";
    case Errc::InconclusiveAdjacency: return "inconclusive-adjacency";
    case Errc::DivergenceWindowExceeded: return "divergence-window-exceeded";
    case Errc::InconsistentEvidence: return "inconsistent-evidence";
    case Errc::Internal: return "internal-error";
  }
  return "unknown-error";
}

Dfa makeDfa(const Alphabet& alphabet, int numStates, int initial, const std::vector<int>& finals) {
  Dfa d;
  d.alphabet = alphabet;
  d.numStates = numStates;
  d.initial = initial;
  d.accepting.assign(static_cast<size_t>(numStates), 0);
  for (int f : finals) d.accepting[static_cast<size_t>(f)] = 1;
  d.delta.assign(static_cast<size_t>(numStates) * alphabet.size(), 0);
  return d;
}

std::vector<int> Nfa::epsClosure(std::vector<int> states) const {
  std::vector<char> in(static_cast<size_t>(numStates), 0);
  std::deque<int> work;
  for (int s : states) {
    if (!in[static_cast<size_t>(s)]) {
      in[static_cast<size_t>(s)] = 1;
      work.push_back(s);
    }
  }
  states.clear();
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    states.push_back(s);
    for (int t : eps[static_cast<size_t>(s)]) {
      if (!in[static_cast<size_t>(t)]) {
        in[static_cast<size_t>(t)] = 1;
        work.push_back(t);
      }
    }
  }
  std::sort(states.begin(), states.end());
  return states;
}

bool Nfa::accepts(const Word& w) const {
  std::vector<int> cur = epsClosure(initials);
  for (Sym a : w) {
    std::set<int> nxt;
    for (int s : cur)
      for (const Edge& e : adj[static_cast<size_t>(s)])
        if (e.a == a) nxt.insert(e.to);
    cur = epsClosure(std::vector<int>(nxt.begin(), nxt.end()));
    if (cur.empty()) return false;
  }
  for (int s : cur)
    if (accepting[static_cast<size_t>(s)]) return true;
  return false;
}

Dfa reachableTrim(const Dfa& d) {
  int ns = d.alphabet.size();
  std::vector<int> order;
  std::vector<int> renum(static_cast<size_t>(d.numStates), -1);
  std::deque<int> work{d.initial};
  renum[static_cast<size_t>(d.initial)] = 0;
  order.push_back(d.initial);
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (Sym a = 0; a < ns; ++a) {
      int p = d.next(q, a);
      if (renum[static_cast<size_t>(p)] < 0) {
        renum[static_cast<size_t>(p)] = static_cast<int>(order.size());
        order.push_back(p);
        work.push_back(p);
      }
    }
  }
  Dfa out = makeDfa(d.alphabet, static_cast<int>(order.size()), 0, {});
  for (size_t i = 0; i < order.size(); ++i) {
    out.accepting[i] = d.accepting[static_cast<size_t>(order[i])];
    for (Sym a = 0; a < ns; ++a) out.nextRef(static_cast<int>(i), a) = renum[static_cast<size_t>(d.next(order[i], a))];
  }
  return out;
}

Dfa minimizeDfaTotal(const Dfa& d0) {
  Dfa d = reachableTrim(d0);
  int ns = d.alphabet.size();
  // Moore partition refinement.
  std::vector<int> cls(static_cast<size_t>(d.numStates));
  for (int q = 0; q < d.numStates; ++q) cls[static_cast<size_t>(q)] = d.accepting[static_cast<size_t>(q)] ? 1 : 0;
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::vector<int>, int> sig2cls;
    std::vector<int> ncls(static_cast<size_t>(d.numStates));
    for (int q = 0; q < d.numStates; ++q) {
      std::vector<int> sig;
      sig.reserve(static_cast<size_t>(ns) + 1);
      sig.push_back(cls[static_cast<size_t>(q)]);
      for (Sym a = 0; a < ns; ++a) sig.push_back(cls[static_cast<size_t>(d.next(q, a))]);
      auto [it, fresh] = sig2cls.emplace(std::move(sig), static_cast<int>(sig2cls.size()));
      ncls[static_cast<size_t>(q)] = it->second;
      (void)fresh;
    }
    int oldCount = 1 + *std::max_element(cls.begin(), cls.end());
    if (static_cast<int>(sig2cls.size()) != oldCount) changed = true;
    cls = std::move(ncls);
  }
  int numCls = 1 + *std::max_element(cls.begin(), cls.end());
  Dfa m = makeDfa(d.alphabet, numCls, cls[static_cast<size_t>(d.initial)], {});
  for (int q = 0; q < d.numStates; ++q) {
    int c = cls[static_cast<size_t>(q)];
    m.accepting[static_cast<size_t>(c)] = d.accepting[static_cast<size_t>(q)];
    for (Sym a = 0; a < ns; ++a) m.nextRef(c, a) = cls[static_cast<size_t>(d.next(q, a))];
  }
  return reachableTrim(m);  // canonical BFS numbering
}

Dfa productDfa(const Dfa& a, const Dfa& b, bool (*combine)(bool, bool)) {
  if (!(a.alphabet == b.alphabet)) fail(Errc::Internal, "product over different alphabets");
  int ns = a.alphabet.size();
  Dfa out = makeDfa(a.alphabet, a.numStates * b.numStates, a.initial * b.numStates + b.initial, {});
  for (int p = 0; p < a.numStates; ++p)
    for (int q = 0; q < b.numStates; ++q) {
      int s = p * b.numStates + q;
      out.accepting[static_cast<size_t>(s)] =
          combine(a.accepting[static_cast<size_t>(p)], b.accepting[static_cast<size_t>(q)]) ? 1 : 0;
      for (Sym x = 0; x < ns; ++x) out.nextRef(s, x) = a.next(p, x) * b.numStates + b.next(q, x);
    }
  return reachableTrim(out);
}

Dfa intersectDfa(const Dfa& a, const Dfa& b) {
  return productDfa(a, b, [](bool x, bool y) { return x && y; });
}
Dfa unionDfa(const Dfa& a, const Dfa& b) {
  return productDfa(a, b, [](bool x, bool y) { return x || y; });
}

Dfa complementDfa(const Dfa& d) {
  Dfa out = d;
  for (auto& f : out.accepting) f = f ? 0 : 1;
  return out;
}

bool isEmptyLang(const Dfa& d) {
  Dfa t = reachableTrim(d);
  return std::none_of(t.accepting.begin(), t.accepting.end(), [](char c) { return c != 0; });
}

bool isUniversalLang(const Dfa& d) { return isEmptyLang(complementDfa(d)); }

bool sameLang(const Dfa& a, const Dfa& b) {
  return isEmptyLang(productDfa(a, b, [](bool x, bool y) { return x != y; }));
}

std::optional<Word> shortestAccepted(const Dfa& d) {
  std::vector<char> seen(static_cast<size_t>(d.numStates), 0);
  std::deque<std::pair<int, Word>> work{{d.initial, {}}};
  seen[static_cast<size_t>(d.initial)] = 1;
  while (!work.empty()) {
    auto [q, w] = work.front();
    work.pop_front();
    if (d.accepting[static_cast<size_t>(q)]) return w;
    for (Sym a = 0; a < d.alphabet.size(); ++a) {
      int p = d.next(q, a);
      if (!seen[static_cast<size_t>(p)]) {
        seen[static_cast<size_t>(p)] = 1;
        Word w2 = w;
        w2.push_back(a);
        work.emplace_back(p, std::move(w2));
      }
    }
  }
  return std::nullopt;
}

std::vector<std::vector<Word>> enumerateAccepted(const Dfa& d, int maxLen, Budget& budget) {
  std::vector<std::vector<Word>> out(static_cast<size_t>(maxLen) + 1);
  // Frontier of (word, state), extended one letter at a time.
  std::vector<std::pair<Word, int>> frontier{{Word{}, d.initial}};
  for (int len = 0; len <= maxLen; ++len) {
    for (auto& [w, q] : frontier) {
      budget.charge();
      if (d.accepting[static_cast<size_t>(q)]) out[static_cast<size_t>(len)].push_back(w);
    }
    if (len == maxLen) break;
    std::vector<std::pair<Word, int>> nxt;
    nxt.reserve(frontier.size() * static_cast<size_t>(d.alphabet.size()));
    for (auto& [w, q] : frontier)
      for (Sym a = 0; a < d.alphabet.size(); ++a) {
        Word w2 = w;
        w2.push_back(a);
        nxt.emplace_back(std::move(w2), d.next(q, a));
      }
    frontier = std::move(nxt);
  }
  return out;
}

Nfa nfaFromDfa(const Dfa& d) {
  Nfa n;
  n.numSymbols = d.alphabet.size();
  for (int q = 0; q < d.numStates; ++q) n.addState(d.accepting[static_cast<size_t>(q)]);
  n.initials = {d.initial};
  for (int q = 0; q < d.numStates; ++q)
    for (Sym a = 0; a < d.alphabet.size(); ++a) n.addEdge(q, a, d.next(q, a));
  return n;
}

Nfa reverseNfa(const Nfa& n) {
  Nfa r;
  r.numSymbols = n.numSymbols;
  for (int q = 0; q < n.numStates; ++q) r.addState(false);
  for (int q = 0; q < n.numStates; ++q) {
    for (const Nfa::Edge& e : n.adj[static_cast<size_t>(q)]) r.addEdge(e.to, e.a, q);
    for (int t : n.eps[static_cast<size_t>(q)]) r.addEps(t, q);
    if (n.accepting[static_cast<size_t>(q)]) r.initials.push_back(q);
  }
  for (int q : n.initials) r.accepting[static_cast<size_t>(q)] = 1;
  return r;
}

Nfa trimNfa(const Nfa& n) {
  // forward reachability
  std::vector<char> fwd(static_cast<size_t>(n.numStates), 0);
  std::deque<int> work;
  for (int q : n.initials) {
    if (!fwd[static_cast<size_t>(q)]) {
      fwd[static_cast<size_t>(q)] = 1;
      work.push_back(q);
    }
  }
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    auto push = [&](int t) {
      if (!fwd[static_cast<size_t>(t)]) {
        fwd[static_cast<size_t>(t)] = 1;
        work.push_back(t);
      }
    };
    for (const Nfa::Edge& e : n.adj[static_cast<size_t>(q)]) push(e.to);
    for (int t : n.eps[static_cast<size_t>(q)]) push(t);
  }
  // backward from accepting
  std::vector<std::vector<int>> rev(static_cast<size_t>(n.numStates));
  for (int q = 0; q < n.numStates; ++q) {
    for (const Nfa::Edge& e : n.adj[static_cast<size_t>(q)]) rev[static_cast<size_t>(e.to)].push_back(q);
    for (int t : n.eps[static_cast<size_t>(q)]) rev[static_cast<size_t>(t)].push_back(q);
  }
  std::vector<char> bwd(static_cast<size_t>(n.numStates), 0);
  for (int q = 0; q < n.numStates; ++q)
    if (n.accepting[static_cast<size_t>(q)]) {
      bwd[static_cast<size_t>(q)] = 1;
      work.push_back(q);
    }
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (int t : rev[static_cast<size_t>(q)])
      if (!bwd[static_cast<size_t>(t)]) {
        bwd[static_cast<size_t>(t)] = 1;
        work.push_back(t);
      }
  }
  std::vector<int> renum(static_cast<size_t>(n.numStates), -1);
  Nfa out;
  out.numSymbols = n.numSymbols;
  for (int q = 0; q < n.numStates; ++q)
    if (fwd[static_cast<size_t>(q)] && bwd[static_cast<size_t>(q)])
      renum[static_cast<size_t>(q)] = out.addState(n.accepting[static_cast<size_t>(q)]);
  for (int q = 0; q < n.numStates; ++q) {
    int rq = renum[static_cast<size_t>(q)];
    if (rq < 0) continue;
    for (const Nfa::Edge& e : n.adj[static_cast<size_t>(q)])
      if (renum[static_cast<size_t>(e.to)] >= 0) out.addEdge(rq, e.a, renum[static_cast<size_t>(e.to)]);
    for (int t : n.eps[static_cast<size_t>(q)])
      if (renum[static_cast<size_t>(t)] >= 0) out.addEps(rq, renum[static_cast<size_t>(t)]);
  }
  for (int q : n.initials)
    if (renum[static_cast<size_t>(q)] >= 0) out.initials.push_back(renum[static_cast<size_t>(q)]);
  std::sort(out.initials.begin(), out.initials.end());
  out.initials.erase(std::unique(out.initials.begin(), out.initials.end()), out.initials.end());
  return out;
}

Dfa determinize(const Nfa& n, const Alphabet& alphabet, size_t stateCap) {
  if (alphabet.size() != n.numSymbols) fail(Errc::Internal, "determinize: alphabet size mismatch");
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sets;
  std::vector<std::vector<int>> trans;
  std::vector<char> acc;
  auto intern = [&](std::vector<int> s) {
    auto [it, fresh] = ids.emplace(s, static_cast<int>(sets.size()));
    if (fresh) {
      if (sets.size() >= stateCap) fail(Errc::BudgetExceeded, "determinization state cap exceeded");
      sets.push_back(s);
      trans.emplace_back(static_cast<size_t>(n.numSymbols), -1);
      bool a = false;
      for (int q : s) a = a || n.accepting[static_cast<size_t>(q)];
      acc.push_back(a ? 1 : 0);
    }
    return it->second;
  };
  int start = intern(n.epsClosure(n.initials));
  for (size_t i = 0; i < sets.size(); ++i) {
    for (Sym a = 0; a < n.numSymbols; ++a) {
      std::set<int> nxt;
      for (int q : sets[i])
        for (const Nfa::Edge& e : n.adj[static_cast<size_t>(q)])
          if (e.a == a) nxt.insert(e.to);
      trans[i][static_cast<size_t>(a)] = intern(n.epsClosure(std::vector<int>(nxt.begin(), nxt.end())));
    }
  }
  Dfa d = makeDfa(alphabet, static_cast<int>(sets.size()), start, {});
  for (size_t i = 0; i < sets.size(); ++i) {
    d.accepting[i] = acc[i];
    for (Sym a = 0; a < n.numSymbols; ++a) d.nextRef(static_cast<int>(i), a) = trans[i][static_cast<size_t>(a)];
  }
  return d;
}

Nfa suffixClosureNfa(const Nfa& n0) {
  Nfa n = trimNfa(n0);
  // every trim state becomes initial
  n.initials.clear();
  for (int q = 0; q < n.numStates; ++q) n.initials.push_back(q);
  if (n.numStates == 0) {
    // empty language has no suffixes except nothing; keep a single accepting state for epsilon?
    // Suf(empty) = empty.
    return n;
  }
  return n;
}

Nfa boundedShapeNfa(const std::vector<Word>& boundingWords, int numSymbols) {
  Nfa n;
  n.numSymbols = numSymbols;
  // chain of word-loops; state i = "before loop i"; inside-loop states appended
  int k = static_cast<int>(boundingWords.size());
  std::vector<int> anchor(static_cast<size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) anchor[static_cast<size_t>(i)] = n.addState(i == k);
  for (int i = 0; i < k; ++i) {
    n.addEps(anchor[static_cast<size_t>(i)], anchor[static_cast<size_t>(i) + 1]);
    const Word& w = boundingWords[static_cast<size_t>(i)];
    if (w.empty()) continue;
    int cur = anchor[static_cast<size_t>(i)];
    for (size_t j = 0; j < w.size(); ++j) {
      int to = (j + 1 == w.size()) ? anchor[static_cast<size_t>(i)] : n.addState(false);
      n.addEdge(cur, w[j], to);
      cur = to;
    }
  }
  n.initials = {anchor[0]};
  return n;
}

bool matchesBoundedShape(const Word& w, const std::vector<Word>& boundingWords) {
  size_t k = boundingWords.size();
  // reachable[j] = set of positions in w coverable using words 1..j
  std::vector<char> cur(w.size() + 1, 0);
  cur[0] = 1;
  for (size_t j = 0; j < k; ++j) {
    std::vector<char> nxt = cur;
    const Word& b = boundingWords[j];
    if (!b.empty()) {
      for (size_t pos = 0; pos + b.size() <= w.size(); ++pos) {
        if (!nxt[pos]) continue;
        if (std::equal(b.begin(), b.end(), w.begin() + static_cast<long>(pos))) nxt[pos + b.size()] = 1;
      }
    }
    cur = std::move(nxt);
  }
  return cur[w.size()] != 0;
}

std::optional<Word> shortestAcceptedNfa(const Nfa& n) {
  std::vector<char> seen(static_cast<size_t>(n.numStates), 0);
  std::deque<std::pair<int, Word>> work;
  for (int q : n.epsClosure(n.initials)) {
    seen[static_cast<size_t>(q)] = 1;
    work.emplace_back(q, Word{});
  }
  while (!work.empty()) {
    auto [q, w] = work.front();
    work.pop_front();
    if (n.accepting[static_cast<size_t>(q)]) return w;
    for (const Nfa::Edge& e : n.adj[static_cast<size_t>(q)]) {
      for (int t : n.epsClosure({e.to})) {
        if (!seen[static_cast<size_t>(t)]) {
          seen[static_cast<size_t>(t)] = 1;
          Word w2 = w;
          w2.push_back(e.a);
          work.emplace_back(t, std::move(w2));
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<std::vector<Word>> enumerateAcceptedNfa(const Nfa& n, int maxLen, Budget& budget) {
  std::vector<std::vector<Word>> out(static_cast<size_t>(maxLen) + 1);
  std::map<std::vector<int>, std::vector<Word>> frontier;
  frontier[n.epsClosure(n.initials)] = {Word{}};
  for (int len = 0; len <= maxLen; ++len) {
    for (auto& [states, words] : frontier) {
      bool acc = std::any_of(states.begin(), states.end(),
                             [&](int q) { return n.accepting[static_cast<size_t>(q)] != 0; });
      for (auto& w : words) {
        budget.charge();
        if (acc) out[static_cast<size_t>(len)].push_back(w);
      }
    }
    if (len == maxLen) break;
    std::map<std::vector<int>, std::vector<Word>> nxt;
    for (auto& [states, words] : frontier) {
      for (Sym a = 0; a < n.numSymbols; ++a) {
        std::set<int> t;
        for (int q : states)
          for (const Nfa::Edge& e : n.adj[static_cast<size_t>(q)])
            if (e.a == a) t.insert(e.to);
        if (t.empty()) continue;
        auto closed = n.epsClosure(std::vector<int>(t.begin(), t.end()));
        auto& bucket = nxt[closed];
        for (const Word& w : words) {
          Word w2 = w;
          w2.push_back(a);
          bucket.push_back(std::move(w2));
        }
      }
    }
    frontier = std::move(nxt);
  }
  return out;
}

bool nfaEmpty(const Nfa& n) { return !shortestAcceptedNfa(n).has_value(); }

}  // namespace vplwin
