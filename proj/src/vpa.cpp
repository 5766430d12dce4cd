#include "vplwin/vpa.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace vplwin {

Vpa makeVpa(const PushdownAlphabet& alpha, const Alphabet& stackAlphabet, int numStates, int initial,
            const std::vector<int>& finals) {
  alpha.validate();
  Vpa v;
  v.alpha = alpha;
  v.stackAlphabet = stackAlphabet;
  v.numStates = numStates;
  v.initial = initial;
  v.finals.assign(static_cast<size_t>(numStates), 0);
  for (int f : finals) v.finals[static_cast<size_t>(f)] = 1;
  size_t qs = static_cast<size_t>(numStates) * alpha.sigma.size();
  v.deltaCall.assign(qs, {-1, -1});
  v.deltaInternal.assign(qs, -1);
  v.deltaReturn.assign(qs * static_cast<size_t>(stackAlphabet.size()), -1);
  return v;
}

bool configLlexLess(const Configuration& a, const Configuration& b) {
  if (a.stack.size() != b.stack.size()) return a.stack.size() < b.stack.size();
  if (a.stack != b.stack) return a.stack < b.stack;
  return a.state < b.state;
}

StateTransform identityTransform(int n) {
  StateTransform t;
  t.map.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) t.map[static_cast<size_t>(i)] = i;
  return t;
}

StateTransform composeTransform(const StateTransform& f, const StateTransform& g) {
  StateTransform t;
  t.map.resize(f.map.size());
  for (size_t i = 0; i < f.map.size(); ++i) t.map[i] = g.map[static_cast<size_t>(f.map[i])];
  return t;
}

const char* wordShapeName(WordShape s) {
  switch (s) {
    case WordShape::WellMatched: return "well-matched";
    case WordShape::Descending: return "descending";
    case WordShape::Ascending: return "ascending";
    case WordShape::General: return "general";
  }
  return "?";
}

namespace {

struct Matching {
  std::vector<int> matchOf;          // per position: matching position or -1
  std::vector<char> bareReturn;      // unmatched return
  std::vector<char> unmatchedCall;
};

Matching matchWord(const PushdownAlphabet& alpha, const Word& w) {
  Matching m;
  m.matchOf.assign(w.size(), -1);
  m.bareReturn.assign(w.size(), 0);
  m.unmatchedCall.assign(w.size(), 0);
  std::vector<int> stack;
  for (size_t i = 0; i < w.size(); ++i) {
    if (alpha.isCall(w[i])) {
      stack.push_back(static_cast<int>(i));
    } else if (alpha.isReturn(w[i])) {
      if (stack.empty()) {
        m.bareReturn[i] = 1;
      } else {
        int c = stack.back();
        stack.pop_back();
        m.matchOf[static_cast<size_t>(c)] = static_cast<int>(i);
        m.matchOf[i] = c;
      }
    }
  }
  for (int c : stack) m.unmatchedCall[static_cast<size_t>(c)] = 1;
  return m;
}

}  // namespace

WordShapeReport classifyWordShape(const PushdownAlphabet& alpha, const Word& w) {
  WordShapeReport r;
  r.heightProfile.assign(w.size() + 1, 0);
  int h = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (alpha.isCall(w[i]))
      ++h;
    else if (alpha.isReturn(w[i]))
      h = std::max(0, h - 1);
    r.heightProfile[i + 1] = h;
  }
  Matching m = matchWord(alpha, w);
  bool anyBare = std::any_of(m.bareReturn.begin(), m.bareReturn.end(), [](char c) { return c != 0; });
  bool anyOpen = std::any_of(m.unmatchedCall.begin(), m.unmatchedCall.end(), [](char c) { return c != 0; });
  if (!anyBare && !anyOpen)
    r.shape = WordShape::WellMatched;
  else if (!anyOpen)
    r.shape = WordShape::Descending;
  else if (!anyBare)
    r.shape = WordShape::Ascending;
  else
    r.shape = WordShape::General;
  // maximal runs of covered positions are the maximal well-matched factors
  auto covered = [&](size_t i) { return !m.bareReturn[i] && !m.unmatchedCall[i]; };
  size_t i = 0;
  while (i < w.size()) {
    if (!covered(i)) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < w.size() && covered(j + 1)) ++j;
    r.maximalWellMatchedFactors.emplace_back(static_cast<int>(i), static_cast<int>(j));
    i = j + 1;
  }
  return r;
}

std::vector<MonotonicFactor> monotonicFactorization(const PushdownAlphabet& alpha, const Word& w) {
  Matching m = matchWord(alpha, w);
  int lastBare = -1;
  for (size_t i = 0; i < w.size(); ++i)
    if (m.bareReturn[i]) lastBare = static_cast<int>(i);
  std::vector<MonotonicFactor> out;
  MonotonicFactor w0;
  w0.word.assign(w.begin(), w.begin() + (lastBare + 1));
  out.push_back(std::move(w0));
  size_t i = static_cast<size_t>(lastBare + 1);
  while (i < w.size()) {
    if (m.unmatchedCall[i]) {
      out.push_back({true, Word{w[i]}});
      ++i;
    } else {
      size_t j = i;
      while (j + 1 < w.size() && !m.unmatchedCall[j + 1]) ++j;
      out.push_back({false, Word(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(j) + 1)});
      i = j + 1;
    }
  }
  return out;
}

bool isMonotonicFactorizationOf(const PushdownAlphabet& alpha, const std::vector<MonotonicFactor>& fs, const Word& w) {
  if (fs.empty()) return false;
  Word cat;
  for (const auto& f : fs) cat.insert(cat.end(), f.word.begin(), f.word.end());
  if (cat != w) return false;
  WordShapeReport r0 = classifyWordShape(alpha, fs[0].word);
  if (fs[0].isCall) return false;
  if (r0.shape != WordShape::Descending && r0.shape != WordShape::WellMatched && !fs[0].word.empty()) return false;
  for (size_t i = 1; i < fs.size(); ++i) {
    const auto& f = fs[i];
    if (f.isCall) {
      if (f.word.size() != 1 || !alpha.isCall(f.word[0])) return false;
    } else {
      if (f.word.empty()) return false;
      if (classifyWordShape(alpha, f.word).shape != WordShape::WellMatched) return false;
    }
  }
  return true;
}

Configuration stepConfig(const Vpa& v, const Configuration& c, Sym a) {
  if (a < 0 || a >= v.alpha.sigma.size()) fail(Errc::UnknownSymbol, "symbol id out of range");
  Configuration r = c;
  if (v.alpha.isCall(a)) {
    auto t = v.callTo(c.state, a);
    r.stack.push_back(t.gamma);
    r.state = t.state;
  } else if (v.alpha.isInternal(a)) {
    r.state = v.internalTo(c.state, a);
  } else {
    if (c.stack.empty()) {
      r.state = v.returnTo(c.state, a, 0);
    } else {
      r.state = v.returnTo(c.state, a, c.stack.back());
      r.stack.pop_back();
    }
  }
  return r;
}

std::pair<Configuration, bool> runWord(const Vpa& v, Configuration c, const Word& w) {
  for (Sym a : w) c = stepConfig(v, c, a);
  bool accept = v.finals[static_cast<size_t>(c.state)] != 0;
  return {std::move(c), accept};
}

Configuration initialConfig(const Vpa& v) { return Configuration{{}, v.initial}; }

StateTransform phi(const Vpa& v, const Word& w) {
  if (classifyWordShape(v.alpha, w).shape != WordShape::WellMatched)
    fail(Errc::NotWellMatched, "phi requires a well-matched word");
  StateTransform t;
  t.map.resize(static_cast<size_t>(v.numStates));
  for (int p = 0; p < v.numStates; ++p) {
    Configuration c{{}, p};
    for (Sym a : w) c = stepConfig(v, c, a);
    t.map[static_cast<size_t>(p)] = c.state;
  }
  return t;
}

Word convolve(const Word& u, const Word& v, int K) {
  size_t n = std::max(u.size(), v.size());
  Word out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    int x = i < u.size() ? u[i] : -1;
    int y = i < v.size() ? v[i] : -1;
    out.push_back((x + 1) * (K + 1) + (y + 1));
  }
  return out;
}

std::pair<int, int> convolutionPair(Sym code, int K) {
  return {code / (K + 1) - 1, code % (K + 1) - 1};
}

VpaContext::VpaContext(Vpa v) : vpa_(std::move(v)) {
  computePhiW();
  computeEmptyReach();
  computeAscDistinct();
  computeEdges();
  // empty-stack representatives: least equivalent E-state
  emptyRep_.assign(static_cast<size_t>(vpa_.numStates), -1);
  for (int q = 0; q < vpa_.numStates; ++q) {
    if (!emptyReach_[static_cast<size_t>(q)]) continue;
    for (int p = 0; p <= q; ++p) {
      if (!emptyReach_[static_cast<size_t>(p)]) continue;
      if (equivSearch(Configuration{{}, p}, Configuration{{}, q})) {
        emptyRep_[static_cast<size_t>(q)] = p;
        break;
      }
    }
  }
}

void VpaContext::computePhiW() {
  int n = vpa_.numStates;
  std::set<StateTransform> seen;
  std::deque<StateTransform> work;
  auto push = [&](const StateTransform& t) {
    if (seen.insert(t).second) work.push_back(t);
  };
  push(identityTransform(n));
  for (Sym c : vpa_.alpha.symbolsOfKind(PushdownAlphabet::Internal)) {
    StateTransform t;
    t.map.resize(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) t.map[static_cast<size_t>(q)] = vpa_.internalTo(q, c);
    push(t);
  }
  auto calls = vpa_.alpha.symbolsOfKind(PushdownAlphabet::Call);
  auto rets = vpa_.alpha.symbolsOfKind(PushdownAlphabet::Return);
  while (!work.empty()) {
    StateTransform t = work.front();
    work.pop_front();
    // wrap: a t b for every call/return pair
    for (Sym a : calls)
      for (Sym b : rets) {
        StateTransform w;
        w.map.resize(static_cast<size_t>(n));
        for (int p = 0; p < n; ++p) {
          auto push1 = vpa_.callTo(p, a);
          int mid = t(push1.state);
          w.map[static_cast<size_t>(p)] = vpa_.returnTo(mid, b, push1.gamma);
        }
        push(w);
      }
    // compositions with everything seen so far
    std::vector<StateTransform> snapshot(seen.begin(), seen.end());
    for (const auto& s : snapshot) {
      push(composeTransform(t, s));
      push(composeTransform(s, t));
    }
  }
  phiW_.assign(seen.begin(), seen.end());
  for (size_t i = 0; i < phiW_.size(); ++i) phiIndex_[phiW_[i]] = static_cast<int>(i);
}

int VpaContext::phiIndex(const StateTransform& t) const {
  auto it = phiIndex_.find(t);
  return it == phiIndex_.end() ? -1 : it->second;
}

void VpaContext::computeEmptyReach() {
  emptyReach_.assign(static_cast<size_t>(vpa_.numStates), 0);
  std::deque<int> work{vpa_.initial};
  emptyReach_[static_cast<size_t>(vpa_.initial)] = 1;
  auto rets = vpa_.alpha.symbolsOfKind(PushdownAlphabet::Return);
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    auto push = [&](int p) {
      if (!emptyReach_[static_cast<size_t>(p)]) {
        emptyReach_[static_cast<size_t>(p)] = 1;
        work.push_back(p);
      }
    };
    for (const auto& t : phiW_) push(t(q));
    for (Sym b : rets) push(vpa_.returnTo(q, b, 0));
  }
}

void VpaContext::computeAscDistinct() {
  int n = vpa_.numStates;
  ascDistinct_.assign(static_cast<size_t>(n) * n, 0);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if ((vpa_.finals[static_cast<size_t>(p)] != 0) != (vpa_.finals[static_cast<size_t>(q)] != 0))
        ascDistinct_[static_cast<size_t>(p) * n + q] = 1;
  auto calls = vpa_.alpha.symbolsOfKind(PushdownAlphabet::Call);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        if (ascDistinct_[static_cast<size_t>(p) * n + q]) continue;
        bool d = false;
        for (const auto& t : phiW_)
          if (ascDistinct_[static_cast<size_t>(t(p)) * n + t(q)]) {
            d = true;
            break;
          }
        if (!d)
          for (Sym a : calls) {
            if (ascDistinct_[static_cast<size_t>(vpa_.callTo(p, a).state) * n + vpa_.callTo(q, a).state]) {
              d = true;
              break;
            }
          }
        if (d) {
          ascDistinct_[static_cast<size_t>(p) * n + q] = 1;
          changed = true;
        }
      }
  }
}

void VpaContext::computeEdges() {
  int n = vpa_.numStates;
  int G = vpa_.numStack();
  edgeTargets_.assign(static_cast<size_t>(n), std::vector<std::vector<int>>(static_cast<size_t>(G)));
  auto calls = vpa_.alpha.symbolsOfKind(PushdownAlphabet::Call);
  for (int p = 0; p < n; ++p) {
    for (Sym a : calls) {
      auto t = vpa_.callTo(p, a);
      auto& targets = edgeTargets_[static_cast<size_t>(p)][static_cast<size_t>(t.gamma)];
      for (const auto& tr : phiW_) {
        int q = tr(t.state);
        if (std::find(targets.begin(), targets.end(), q) == targets.end()) targets.push_back(q);
      }
    }
    for (auto& ts : edgeTargets_[static_cast<size_t>(p)]) std::sort(ts.begin(), ts.end());
  }
}

std::vector<char> VpaContext::statesForStack(const std::vector<int>& stack) const {
  std::vector<char> cur(static_cast<size_t>(vpa_.numStates), 0);
  for (int q = 0; q < vpa_.numStates; ++q) cur[static_cast<size_t>(q)] = emptyReach_[static_cast<size_t>(q)];
  for (int gamma : stack) {
    std::vector<char> nxt(static_cast<size_t>(vpa_.numStates), 0);
    for (int p = 0; p < vpa_.numStates; ++p) {
      if (!cur[static_cast<size_t>(p)]) continue;
      for (int q : edgeTargets_[static_cast<size_t>(p)][static_cast<size_t>(gamma)]) nxt[static_cast<size_t>(q)] = 1;
    }
    cur = std::move(nxt);
  }
  return cur;
}

bool VpaContext::configReachable(const Configuration& c) const {
  auto states = statesForStack(c.stack);
  return states[static_cast<size_t>(c.state)] != 0;
}

Nfa VpaContext::reachableConfigAutomaton() const {
  // alphabet layout: [0..G-1) pushables (gamma-1), then [G-1..G-1+numStates) state symbols
  int n = vpa_.numStates;
  int G = vpa_.numStack();
  Nfa out;
  out.numSymbols = (G - 1) + n;
  // nodes: 0..n-1 = "current top-state set member", n = accept
  for (int q = 0; q < n; ++q) out.addState(false);
  int acc = out.addState(true);
  for (int q = 0; q < n; ++q) {
    if (emptyReach_[static_cast<size_t>(q)]) out.initials.push_back(q);
    for (int gamma = 1; gamma < G; ++gamma)
      for (int t : edgeTargets_[static_cast<size_t>(q)][static_cast<size_t>(gamma)]) out.addEdge(q, gamma - 1, t);
    out.addEdge(q, (G - 1) + q, acc);
  }
  return out;
}

std::vector<char> VpaContext::reachableStates() const {
  std::vector<char> seen = emptyReach_;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int p = 0; p < vpa_.numStates; ++p) {
      if (!seen[static_cast<size_t>(p)]) continue;
      for (int g = 1; g < vpa_.numStack(); ++g)
        for (int q : edgeTargets_[static_cast<size_t>(p)][static_cast<size_t>(g)])
          if (!seen[static_cast<size_t>(q)]) {
            seen[static_cast<size_t>(q)] = 1;
            changed = true;
          }
    }
  }
  return seen;
}

bool VpaContext::equivSearch(const Configuration& c1, const Configuration& c2) const {
  int n = vpa_.numStates;
  auto rets = vpa_.alpha.symbolsOfKind(PushdownAlphabet::Return);
  // tuple (depth1, depth2, p, q); depths = remaining pushable symbols
  auto key = [&](size_t i, size_t j, int p, int q) {
    return ((static_cast<uint64_t>(i) * (c2.stack.size() + 1) + j) * static_cast<uint64_t>(n) + static_cast<uint64_t>(p)) *
               static_cast<uint64_t>(n) +
           static_cast<uint64_t>(q);
  };
  std::unordered_set<uint64_t> seen;
  std::deque<std::tuple<size_t, size_t, int, int>> work;
  auto push = [&](size_t i, size_t j, int p, int q) {
    uint64_t k = key(i, j, p, q);
    if (seen.insert(k).second) work.emplace_back(i, j, p, q);
  };
  push(c1.stack.size(), c2.stack.size(), c1.state, c2.state);
  while (!work.empty()) {
    auto [i, j, p, q] = work.front();
    work.pop_front();
    if (ascDistinct_[static_cast<size_t>(p) * n + q]) return false;
    for (const auto& t : phiW_) push(i, j, t(p), t(q));
    for (Sym b : rets) {
      int g1 = i > 0 ? c1.stack[i - 1] : 0;
      int g2 = j > 0 ? c2.stack[j - 1] : 0;
      push(i > 0 ? i - 1 : 0, j > 0 ? j - 1 : 0, vpa_.returnTo(p, b, g1), vpa_.returnTo(q, b, g2));
    }
  }
  return true;
}

bool VpaContext::configEquiv(const Configuration& c1, const Configuration& c2) {
  if (!configReachable(c1) || !configReachable(c2))
    fail(Errc::UnreachableConfiguration, "configEquiv requires reachable configurations");
  if (c1 == c2) return true;
  ConfigurationHash h;
  uint64_t k = hashCombine(h(c1), h(c2) * 3);
  uint64_t k2 = hashCombine(h(c2), h(c1) * 3);
  auto it = equivMemo_.find(k);
  if (it != equivMemo_.end()) return it->second;
  bool r = equivSearch(c1, c2);
  equivMemo_[k] = r;
  equivMemo_[k2] = r;
  return r;
}

bool VpaContext::configEquivBrute(const Configuration& c1, const Configuration& c2, int maxLen) const {
  int k = vpa_.alpha.sigma.size();
  Word w;
  std::function<bool(int)> rec = [&](int depth) {
    auto r1 = runWord(vpa_, c1, w);
    auto r2 = runWord(vpa_, c2, w);
    if (r1.second != r2.second) return false;
    if (depth == 0) return true;
    for (Sym a = 0; a < k; ++a) {
      w.push_back(a);
      bool ok = rec(depth - 1);
      w.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(maxLen);
}

template <typename Visit>
void VpaContext::enumerateStacks(int maxLen, Visit visit) const {
  // length-first, then lex over pushable ids: the visiting order is exactly
  // the length-lexicographic order on reachable stack words
  for (int L = 0; L <= maxLen; ++L) {
    std::vector<int> stack;
    std::vector<std::vector<char>> stateSets{emptyReach_};
    std::function<bool()> rec = [&]() -> bool {
      if (static_cast<int>(stack.size()) == L) return visit(stack, stateSets.back());
      for (int g = 1; g < vpa_.numStack(); ++g) {
        std::vector<char> nxt(static_cast<size_t>(vpa_.numStates), 0);
        bool any = false;
        for (int p = 0; p < vpa_.numStates; ++p) {
          if (!stateSets.back()[static_cast<size_t>(p)]) continue;
          for (int q : edgeTargets_[static_cast<size_t>(p)][static_cast<size_t>(g)]) {
            nxt[static_cast<size_t>(q)] = 1;
            any = true;
          }
        }
        if (!any) continue;
        stack.push_back(g);
        stateSets.push_back(std::move(nxt));
        bool cont = rec();
        stateSets.pop_back();
        stack.pop_back();
        if (!cont) return false;
      }
      return true;
    };
    if (!rec()) return;
  }
}

Configuration VpaContext::repSelect(const Configuration& c) {
  if (!configReachable(c)) fail(Errc::UnreachableConfiguration, "repSelect requires a reachable configuration");
  auto it = repMemo_.find(c);
  if (it != repMemo_.end()) return it->second;
  // fast path: equivalent to an already-known representative
  for (const auto& r : knownReps_) {
    if (configEquiv(r, c)) {
      repMemo_[c] = r;
      return r;
    }
  }
  // enumerate rConf in llex order; the first equivalent configuration is the
  // representative (BFS enumeration is by stack height, then lex, then state)
  // note stacks longer than |c.stack| can be cut: the first equivalent appears
  // no later than c itself.
  std::optional<Configuration> found;
  enumerateStacks(static_cast<int>(c.stack.size()), [&](const std::vector<int>& stack, const std::vector<char>& states) {
    for (int q = 0; q < vpa_.numStates; ++q) {
      if (!states[static_cast<size_t>(q)]) continue;
      Configuration cand{stack, q};
      if (configLlexLess(c, cand)) return false;  // passed c's position
      if (configEquiv(cand, c)) {
        found = cand;
        return false;
      }
    }
    return true;
  });
  if (!found) fail(Errc::Internal, "repSelect: no representative found for reachable configuration");
  // first-seen canonical representative, memoized
  bool fresh = true;
  for (const auto& r : knownReps_)
    if (r == *found) fresh = false;
  if (fresh) knownReps_.push_back(*found);
  repMemo_[c] = *found;
  return *found;
}

Configuration VpaContext::repSelectExact(const Configuration& c, Budget& budget) {
  if (!configReachable(c)) fail(Errc::UnreachableConfiguration, "repSelect requires a reachable configuration");
  std::optional<Configuration> found;
  enumerateStacks(static_cast<int>(c.stack.size()), [&](const std::vector<int>& stack, const std::vector<char>& states) {
    for (int q = 0; q < vpa_.numStates; ++q) {
      if (!states[static_cast<size_t>(q)]) continue;
      budget.charge();
      Configuration cand{stack, q};
      if (configLlexLess(c, cand)) return false;
      if (configEquiv(cand, c)) {
        found = cand;
        return false;
      }
    }
    return true;
  });
  if (!found) fail(Errc::Internal, "repSelectExact: no representative found");
  return *found;
}

Configuration VpaContext::nuA(const Word& w) {
  Configuration c = initialConfig(vpa_);
  for (Sym a : w) c = stepConfig(vpa_, c, a);
  return repSelect(c);
}

int VpaContext::emptyRep(int q) const {
  int r = emptyRep_[static_cast<size_t>(q)];
  if (r < 0) fail(Errc::UnreachableConfiguration, "state not reachable with empty stack");
  return r;
}

std::string printConfig(const Vpa& v, const Configuration& c) {
  std::string out = v.stackAlphabet.name(0);
  for (int g : c.stack) out += " " + v.stackAlphabet.name(g);
  out += " . q" + std::to_string(c.state);
  return out;
}

}  // namespace vplwin
