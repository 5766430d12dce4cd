#pragma once

#include <map>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vplwin/fa.hpp"

namespace vplwin {

struct PushdownAlphabet {
  enum Kind { Call = 0, Return = 1, Internal = 2 };
  Alphabet sigma;
  std::vector<int> kind;  // per symbol

  bool isCall(Sym a) const { return kind[static_cast<size_t>(a)] == Call; }
  bool isReturn(Sym a) const { return kind[static_cast<size_t>(a)] == Return; }
  bool isInternal(Sym a) const { return kind[static_cast<size_t>(a)] == Internal; }
  std::vector<Sym> symbolsOfKind(Kind k) const {
    std::vector<Sym> out;
    for (Sym a = 0; a < sigma.size(); ++a)
      if (kind[static_cast<size_t>(a)] == k) out.push_back(a);
    return out;
  }
  void validate() const {
    if (symbolsOfKind(Call).empty() || symbolsOfKind(Return).empty())
      fail(Errc::PreconditionViolation, "pushdown alphabet needs nonempty calls and returns");
  }
};

// Deterministic visibly pushdown automaton. Stack symbol 0 is the bottom
// marker and is never pushed; pushables are 1..G-1.
struct Vpa {
  PushdownAlphabet alpha;
  Alphabet stackAlphabet;  // index 0 = bottom
  int numStates = 0;
  int initial = 0;
  std::vector<char> finals;

  // deltaCall[q * |sigma| + a] = {gamma, state}; only call columns populated
  struct PushTarget {
    int gamma = 0;
    int state = 0;
  };
  std::vector<PushTarget> deltaCall;
  // deltaReturn[(q * |sigma| + b) * G + gamma] = state, gamma in [0..G)
  std::vector<int> deltaReturn;
  // deltaInternal[q * |sigma| + c] = state
  std::vector<int> deltaInternal;

  int numStack() const { return stackAlphabet.size(); }

  PushTarget callTo(int q, Sym a) const { return deltaCall[static_cast<size_t>(q) * alpha.sigma.size() + a]; }
  int returnTo(int q, Sym b, int gamma) const {
    return deltaReturn[(static_cast<size_t>(q) * alpha.sigma.size() + b) * numStack() + static_cast<size_t>(gamma)];
  }
  int internalTo(int q, Sym c) const { return deltaInternal[static_cast<size_t>(q) * alpha.sigma.size() + c]; }
};

Vpa makeVpa(const PushdownAlphabet& alpha, const Alphabet& stackAlphabet, int numStates, int initial,
            const std::vector<int>& finals);

struct Configuration {
  std::vector<int> stack;  // pushable symbols, bottom first; implicit bottom marker below
  int state = 0;
  bool operator==(const Configuration& o) const { return state == o.state && stack == o.stack; }
};

struct ConfigurationHash {
  size_t operator()(const Configuration& c) const {
    uint64_t h = static_cast<uint64_t>(c.state) + 0x51ed270b;
    for (int g : c.stack) h = hashCombine(h, static_cast<uint64_t>(g));
    return static_cast<size_t>(h);
  }
};

// Length-lexicographic order on configurations as words over Gamma then Q,
// both in declaration order.
bool configLlexLess(const Configuration& a, const Configuration& b);

struct StateTransform {
  std::vector<int> map;
  int operator()(int q) const { return map[static_cast<size_t>(q)]; }
  bool operator==(const StateTransform& o) const { return map == o.map; }
  bool operator<(const StateTransform& o) const { return map < o.map; }
};

StateTransform identityTransform(int n);
// apply f then g
StateTransform composeTransform(const StateTransform& f, const StateTransform& g);

enum class WordShape { WellMatched, Descending, Ascending, General };
const char* wordShapeName(WordShape s);

struct WordShapeReport {
  WordShape shape = WordShape::WellMatched;
  std::vector<int> heightProfile;                            // |w|+1, clamped at 0
  std::vector<std::pair<int, int>> maximalWellMatchedFactors;  // [from, to] inclusive positions
};

WordShapeReport classifyWordShape(const PushdownAlphabet& alpha, const Word& w);

// factor 0 is the descending prefix (possibly empty); internal factors are
// single call letters or maximal nonempty well-matched words.
struct MonotonicFactor {
  bool isCall = false;
  Word word;
};
std::vector<MonotonicFactor> monotonicFactorization(const PushdownAlphabet& alpha, const Word& w);
bool isMonotonicFactorizationOf(const PushdownAlphabet& alpha, const std::vector<MonotonicFactor>& fs, const Word& w);

Configuration stepConfig(const Vpa& v, const Configuration& c, Sym a);
std::pair<Configuration, bool> runWord(const Vpa& v, Configuration c, const Word& w);
Configuration initialConfig(const Vpa& v);

// state transformation of a well-matched word
StateTransform phi(const Vpa& v, const Word& w);

// Convolution over the padded pair alphabet; pads with the box on the right.
// Pair (x, y) with x,y in [-1..K-1] (-1 = box) encodes as (x+1)*(K+1)+(y+1).
Word convolve(const Word& u, const Word& v, int K);
std::pair<int, int> convolutionPair(Sym code, int K);

// Cached analysis of a VPA: phi(W), empty-stack reachability, representative
// selection and configuration equivalence.
class VpaContext {
 public:
  explicit VpaContext(Vpa v);

  const Vpa& vpa() const { return vpa_; }

  const std::vector<StateTransform>& phiW() const { return phiW_; }
  int phiIndex(const StateTransform& t) const;

  // states reachable with empty stack
  const std::vector<char>& emptyReach() const { return emptyReach_; }
  // least E-state whose empty-stack configuration is equivalent
  int emptyRep(int q) const;

  bool configReachable(const Configuration& c) const;
  // states q such that (stack, q) is reachable
  std::vector<char> statesForStack(const std::vector<int>& stack) const;
  // the reachable-configuration automaton over Gamma-pushables followed by a state symbol
  Nfa reachableConfigAutomaton() const;
  std::vector<char> reachableStates() const;

  bool configEquiv(const Configuration& c1, const Configuration& c2);
  // brute-force oracle: membership of all words up to maxLen agrees
  bool configEquivBrute(const Configuration& c1, const Configuration& c2, int maxLen) const;

  Configuration repSelect(const Configuration& c);
  Configuration repSelectExact(const Configuration& c, Budget& budget);
  Configuration nuA(const Word& w);

  bool configFinal(const Configuration& c) const { return vpa_.finals[static_cast<size_t>(c.state)] != 0; }

  // distinguishable-by-ascending-continuation state pairs
  bool ascDistinct(int p, int q) const { return ascDistinct_[static_cast<size_t>(p) * vpa_.numStates + q] != 0; }

 private:
  Vpa vpa_;
  std::vector<StateTransform> phiW_;
  std::map<StateTransform, int> phiIndex_;
  std::vector<char> emptyReach_;
  std::vector<int> emptyRep_;
  std::vector<char> ascDistinct_;
  // NFA edge sets for the reachable-configuration recurrence:
  // edgeTargets_[p][gamma-1] = states after pushing gamma from p (phiW-closed)
  std::vector<std::vector<std::vector<int>>> edgeTargets_;

  std::unordered_map<Configuration, Configuration, ConfigurationHash> repMemo_;
  std::vector<Configuration> knownReps_;  // in llex order of discovery
  mutable std::unordered_map<uint64_t, bool> equivMemo_;

  void computePhiW();
  void computeEmptyReach();
  void computeAscDistinct();
  void computeEdges();
  bool equivSearch(const Configuration& c1, const Configuration& c2) const;
  template <typename Visit>
  void enumerateStacks(int maxLen, Visit visit) const;
};

std::string printConfig(const Vpa& v, const Configuration& c);

}  // namespace vplwin
