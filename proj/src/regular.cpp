#include "vplwin/regular.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace vplwin {

Dfa minimizeDfa(const Dfa& dfa) { return minimizeDfaTotal(dfa); }

RightCongruence nerodeCongruence(const Dfa& dfa) {
  Dfa m = minimizeDfa(dfa);
  RightCongruence c;
  c.alphabet = m.alphabet;
  c.numClasses = m.numStates;
  c.classOfEmpty = m.initial;
  c.step = m.delta;
  c.tag.resize(static_cast<size_t>(m.numStates));
  for (int q = 0; q < m.numStates; ++q) c.tag[static_cast<size_t>(q)] = m.accepting[static_cast<size_t>(q)] ? 1 : 0;
  return c;
}

SuffixExpansionCensus suffixExpansionCensus(const RightCongruence& cong, int n, Budget& budget) {
  if (n < 0) fail(Errc::PreconditionViolation, "negative census depth");
  SuffixExpansionCensus out;
  out.maxLen = n;
  out.countsPerLength.assign(static_cast<size_t>(n) + 1, 0);
  int k = cong.alphabet.size();
  // Tuples extend on the left as words grow on the left; enumerate words of
  // each length directly and intern the suffix-class tuples.
  // tuple(w) = (nu(a_1..a_m), nu(a_2..a_m), ..., nu(a_m)).
  struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
      uint64_t h = 14695981039346656037ULL;
      for (int x : v) h = hashCombine(h, static_cast<uint64_t>(x) + 1);
      return static_cast<size_t>(h);
    }
  };
  for (int len = 0; len <= n; ++len) {
    std::unordered_map<std::vector<int>, char, VecHash> classes;
    Word w(static_cast<size_t>(len), 0);
    bool done = false;
    while (!done) {
      budget.charge();
      std::vector<int> tuple(static_cast<size_t>(len));
      for (int i = 0; i < len; ++i) {
        int c = cong.classOfEmpty;
        for (int j = i; j < len; ++j) c = cong.stepOf(c, w[static_cast<size_t>(j)]);
        tuple[static_cast<size_t>(i)] = c;
      }
      classes.emplace(std::move(tuple), 1);
      // odometer
      done = true;
      for (int i = len - 1; i >= 0; --i) {
        if (++w[static_cast<size_t>(i)] < k) {
          done = false;
          break;
        }
        w[static_cast<size_t>(i)] = 0;
      }
      if (len == 0) done = true;
    }
    out.countsPerLength[static_cast<size_t>(len)] = classes.size();
  }
  out.total = std::accumulate(out.countsPerLength.begin(), out.countsPerLength.end(), uint64_t{0});
  return out;
}

SuffixExpansionCensus suffixExpansionCensus(const RightCongruence& cong, int n) {
  Budget b;
  return suffixExpansionCensus(cong, n, b);
}

int FiniteMonoid::indexOf(const std::vector<int>& m) const {
  for (size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == m) return static_cast<int>(i);
  return -1;
}

FiniteMonoid syntacticMonoid(const RightCongruence& cong) {
  int n = cong.numClasses;
  FiniteMonoid mo;
  mo.numClasses = n;
  std::vector<int> id(static_cast<size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  std::map<std::vector<int>, int> index;
  auto intern = [&](const std::vector<int>& m) {
    auto [it, fresh] = index.emplace(m, static_cast<int>(mo.elements.size()));
    if (fresh) mo.elements.push_back(m);
    return it->second;
  };
  mo.identity = intern(id);
  // generators: transformation of each letter
  std::deque<int> work{mo.identity};
  std::vector<std::vector<int>> gens;
  for (Sym a = 0; a < cong.alphabet.size(); ++a) {
    std::vector<int> g(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) g[static_cast<size_t>(c)] = cong.stepOf(c, a);
    gens.push_back(std::move(g));
  }
  for (size_t i = 0; i < mo.elements.size(); ++i) {
    for (const auto& g : gens) {
      // word extension on the right: first apply current, then g
      std::vector<int> m(static_cast<size_t>(n));
      for (int c = 0; c < n; ++c) m[static_cast<size_t>(c)] = g[static_cast<size_t>(mo.elements[i][static_cast<size_t>(c)])];
      intern(m);
    }
  }
  int sz = static_cast<int>(mo.elements.size());
  mo.mul.assign(static_cast<size_t>(sz), std::vector<int>(static_cast<size_t>(sz)));
  for (int i = 0; i < sz; ++i)
    for (int j = 0; j < sz; ++j) {
      // mul[i][j] = transformation of (word_i word_j): apply i then j
      std::vector<int> m(static_cast<size_t>(n));
      for (int c = 0; c < n; ++c)
        m[static_cast<size_t>(c)] = mo.elements[static_cast<size_t>(j)][static_cast<size_t>(
            mo.elements[static_cast<size_t>(i)][static_cast<size_t>(c)])];
      int k = mo.indexOf(m);
      if (k < 0) fail(Errc::Internal, "monoid not closed");
      mo.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] = k;
    }
  // omega: lcm of the idempotent exponents of all elements, verified below.
  auto power = [&](int e, uint64_t k) {
    int acc = mo.identity;
    int base = e;
    while (k) {
      if (k & 1) acc = mo.mul[static_cast<size_t>(acc)][static_cast<size_t>(base)];
      base = mo.mul[static_cast<size_t>(base)][static_cast<size_t>(base)];
      k >>= 1;
    }
    return acc;
  };
  uint64_t omega = 1;
  for (int e = 0; e < sz; ++e) {
    uint64_t k = 1;
    while (true) {
      int p = power(e, k);
      if (mo.mul[static_cast<size_t>(p)][static_cast<size_t>(p)] == p) break;
      ++k;
      if (k > static_cast<uint64_t>(sz) + 1) fail(Errc::Internal, "no idempotent power found");
    }
    omega = std::lcm(omega, k);
  }
  mo.omega = omega;
  for (int e = 0; e < sz; ++e) {
    int p = power(e, omega);
    if (mo.mul[static_cast<size_t>(p)][static_cast<size_t>(p)] != p) fail(Errc::Internal, "omega not idempotent");
  }
  return mo;
}

namespace {

// Tarjan SCC over the reachable+coreachable part of a DFA.
struct SccResult {
  std::vector<int> comp;  // -1 for pruned states
  int numComps = 0;
};

SccResult sccOfUseful(const Dfa& d, const std::vector<char>& useful) {
  int n = d.numStates;
  SccResult r;
  r.comp.assign(static_cast<size_t>(n), -1);
  std::vector<int> idx(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
  std::vector<char> onstk(static_cast<size_t>(n), 0);
  std::vector<int> stk;
  int counter = 0;
  // iterative tarjan
  struct Frame {
    int v;
    Sym a;
  };
  for (int s = 0; s < n; ++s) {
    if (!useful[static_cast<size_t>(s)] || idx[static_cast<size_t>(s)] >= 0) continue;
    std::vector<Frame> frames{{s, 0}};
    idx[static_cast<size_t>(s)] = low[static_cast<size_t>(s)] = counter++;
    stk.push_back(s);
    onstk[static_cast<size_t>(s)] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.a < d.alphabet.size()) {
        int w = d.next(f.v, f.a);
        ++f.a;
        if (!useful[static_cast<size_t>(w)]) continue;
        if (idx[static_cast<size_t>(w)] < 0) {
          idx[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
          stk.push_back(w);
          onstk[static_cast<size_t>(w)] = 1;
          frames.push_back({w, 0});
        } else if (onstk[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(f.v)] = std::min(low[static_cast<size_t>(f.v)], idx[static_cast<size_t>(w)]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[static_cast<size_t>(frames.back().v)] =
              std::min(low[static_cast<size_t>(frames.back().v)], low[static_cast<size_t>(v)]);
        if (low[static_cast<size_t>(v)] == idx[static_cast<size_t>(v)]) {
          while (true) {
            int w = stk.back();
            stk.pop_back();
            onstk[static_cast<size_t>(w)] = 0;
            r.comp[static_cast<size_t>(w)] = r.numComps;
            if (w == v) break;
          }
          ++r.numComps;
        }
      }
    }
  }
  return r;
}

// Shortest nonempty-or-empty word from..to through allowed states. from==to
// yields the empty word.
Word shortestPathWord(const Dfa& d, int from, int to, const std::vector<char>& allowed) {
  if (from == to) return {};
  std::vector<int> prevState(static_cast<size_t>(d.numStates), -1);
  std::vector<Sym> prevSym(static_cast<size_t>(d.numStates), -1);
  std::vector<char> seen(static_cast<size_t>(d.numStates), 0);
  std::deque<int> work{from};
  seen[static_cast<size_t>(from)] = 1;
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (Sym a = 0; a < d.alphabet.size(); ++a) {
      int p = d.next(q, a);
      if (!allowed[static_cast<size_t>(p)] || seen[static_cast<size_t>(p)]) continue;
      seen[static_cast<size_t>(p)] = 1;
      prevState[static_cast<size_t>(p)] = q;
      prevSym[static_cast<size_t>(p)] = a;
      if (p == to) {
        Word w;
        for (int cur = p; cur != from; cur = prevState[static_cast<size_t>(cur)])
          w.push_back(prevSym[static_cast<size_t>(cur)]);
        std::reverse(w.begin(), w.end());
        return w;
      }
      work.push_back(p);
    }
  }
  return {};
}

}  // namespace

RegularGrowth regularGrowthClass(const Dfa& dfa0) {
  Dfa d = reachableTrim(dfa0);
  RegularGrowth out;
  // useful = reachable and co-reachable
  std::vector<char> useful(static_cast<size_t>(d.numStates), 0);
  {
    std::vector<std::vector<int>> rev(static_cast<size_t>(d.numStates));
    for (int q = 0; q < d.numStates; ++q)
      for (Sym a = 0; a < d.alphabet.size(); ++a) rev[static_cast<size_t>(d.next(q, a))].push_back(q);
    std::deque<int> work;
    for (int q = 0; q < d.numStates; ++q)
      if (d.accepting[static_cast<size_t>(q)]) {
        useful[static_cast<size_t>(q)] = 1;
        work.push_back(q);
      }
    while (!work.empty()) {
      int q = work.front();
      work.pop_front();
      for (int p : rev[static_cast<size_t>(q)])
        if (!useful[static_cast<size_t>(p)]) {
          useful[static_cast<size_t>(p)] = 1;
          work.push_back(p);
        }
    }
  }
  SccResult scc = sccOfUseful(d, useful);

  // Exponential iff some useful state has two distinct out-edges staying in
  // its own SCC (determinism makes their labels distinct, so the two cycles
  // generate a suffix code).
  for (int q = 0; q < d.numStates; ++q) {
    if (!useful[static_cast<size_t>(q)]) continue;
    std::vector<Sym> inScc;
    for (Sym a = 0; a < d.alphabet.size(); ++a) {
      int p = d.next(q, a);
      if (useful[static_cast<size_t>(p)] && scc.comp[static_cast<size_t>(p)] == scc.comp[static_cast<size_t>(q)])
        inScc.push_back(a);
    }
    if (inScc.size() >= 2) {
      out.exponential = true;
      out.witnessState = q;
      // two cycles through q via the two edges
      for (int pick = 0; pick < 2; ++pick) {
        Sym a = inScc[static_cast<size_t>(pick)];
        int p = d.next(q, a);
        Word rest;
        if (p != q) {
          std::vector<char> allowed(static_cast<size_t>(d.numStates), 0);
          for (int s = 0; s < d.numStates; ++s)
            allowed[static_cast<size_t>(s)] =
                useful[static_cast<size_t>(s)] && scc.comp[static_cast<size_t>(s)] == scc.comp[static_cast<size_t>(q)];
          rest = shortestPathWord(d, p, q, allowed);
        }
        Word cyc{a};
        cyc.insert(cyc.end(), rest.begin(), rest.end());
        (pick == 0 ? out.cycleA : out.cycleB) = cyc;
      }
      // suffix-code sanity: equalize lengths by self-concatenation; the words must differ
      {
        size_t la = out.cycleA.size(), lb = out.cycleB.size();
        size_t l = std::lcm(la, lb);
        Word ea = repeatWord(out.cycleA, static_cast<int>(l / la));
        Word eb = repeatWord(out.cycleB, static_cast<int>(l / lb));
        if (ea == eb) fail(Errc::Internal, "exponential witness cycles are powers of a common word");
      }
      return out;
    }
  }

  // Polynomial: every SCC is a simple cycle (or a single transient state).
  // Extract bounding words from all simple paths through the condensation.
  out.exponential = false;
  // cycle word from each state within its SCC (unique in-SCC out-edge)
  auto cycleWordFrom = [&](int q) -> Word {
    Word w;
    int cur = q;
    do {
      Sym pick = -1;
      for (Sym a = 0; a < d.alphabet.size(); ++a) {
        int p = d.next(cur, a);
        if (useful[static_cast<size_t>(p)] && scc.comp[static_cast<size_t>(p)] == scc.comp[static_cast<size_t>(cur)]) {
          pick = a;
          break;
        }
      }
      if (pick < 0) return {};  // singleton SCC without self-loop
      w.push_back(pick);
      cur = d.next(cur, pick);
    } while (cur != q);
    return w;
  };
  // DFS over useful states enumerating simple-per-SCC paths from the initial state.
  std::vector<Word> bound;
  if (!useful.empty() && d.numStates > 0 && useful[static_cast<size_t>(d.initial)]) {
    std::vector<char> sccSeen(static_cast<size_t>(scc.numComps), 0);
    std::vector<std::pair<int, Word>> path;  // (state, letter-word taken to enter)
    size_t pathCap = 4096;
    std::function<void(int)> dfs = [&](int q) {
      if (bound.size() > pathCap) fail(Errc::BudgetExceeded, "bounding-word extraction too large");
      Word cyc = cycleWordFrom(q);
      if (!cyc.empty()) bound.push_back(cyc);
      for (Sym a = 0; a < d.alphabet.size(); ++a) {
        int p = d.next(q, a);
        if (!useful[static_cast<size_t>(p)]) continue;
        if (scc.comp[static_cast<size_t>(p)] == scc.comp[static_cast<size_t>(q)]) continue;  // stay = cycle, handled
        if (sccSeen[static_cast<size_t>(scc.comp[static_cast<size_t>(p)])]) continue;
        sccSeen[static_cast<size_t>(scc.comp[static_cast<size_t>(p)])] = 1;
        bound.push_back(Word{a});
        dfs(p);
        sccSeen[static_cast<size_t>(scc.comp[static_cast<size_t>(p)])] = 0;
      }
    };
    sccSeen[static_cast<size_t>(scc.comp[static_cast<size_t>(d.initial)])] = 1;
    dfs(d.initial);
  }
  // dedupe consecutive duplicates; the concatenated star product stays a superset
  std::vector<Word> dedup;
  for (auto& w : bound)
    if (dedup.empty() || dedup.back() != w) dedup.push_back(w);
  out.boundingWords = std::move(dedup);
  return out;
}

RightCongruence intersectCongruence(const RightCongruence& a, const RightCongruence& b) {
  if (!(a.alphabet == b.alphabet)) fail(Errc::Internal, "congruence intersection over different alphabets");
  RightCongruence c;
  c.alphabet = a.alphabet;
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int x, int y) {
    auto [it, fresh] = ids.emplace(std::make_pair(x, y), static_cast<int>(pairs.size()));
    if (fresh) pairs.emplace_back(x, y);
    return it->second;
  };
  c.classOfEmpty = intern(a.classOfEmpty, b.classOfEmpty);
  for (size_t i = 0; i < pairs.size(); ++i) {
    for (Sym s = 0; s < a.alphabet.size(); ++s) {
      intern(a.stepOf(pairs[i].first, s), b.stepOf(pairs[i].second, s));
    }
  }
  c.numClasses = static_cast<int>(pairs.size());
  c.step.assign(static_cast<size_t>(c.numClasses) * a.alphabet.size(), 0);
  c.tag.assign(static_cast<size_t>(c.numClasses), -1);
  for (size_t i = 0; i < pairs.size(); ++i) {
    for (Sym s = 0; s < a.alphabet.size(); ++s)
      c.stepRef(static_cast<int>(i), s) = ids.at({a.stepOf(pairs[i].first, s), b.stepOf(pairs[i].second, s)});
    int ta = a.tag[static_cast<size_t>(pairs[i].first)];
    int tb = b.tag[static_cast<size_t>(pairs[i].second)];
    c.tag[i] = (ta < 0 || tb < 0) ? -1 : ((ta == 1 && tb == 1) ? 1 : 0);
  }
  return c;
}

}  // namespace vplwin
