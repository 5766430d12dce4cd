#pragma once

#include <vector>

#include "vplwin/fa.hpp"

namespace vplwin {

// Myhill-Nerode structure of a regular language: classes are dense integers in
// BFS order from classOfEmpty, symbols in declared alphabet order.
struct RightCongruence {
  Alphabet alphabet;
  int numClasses = 0;
  int classOfEmpty = 0;
  std::vector<int> step;  // numClasses * |alphabet|
  std::vector<int> tag;   // optional payload per class (accept bit); -1 = none

  int stepOf(int c, Sym a) const { return step[static_cast<size_t>(c) * alphabet.size() + a]; }
  int& stepRef(int c, Sym a) { return step[static_cast<size_t>(c) * alphabet.size() + a]; }

  int classOf(const Word& w) const {
    int c = classOfEmpty;
    for (Sym a : w) c = stepOf(c, a);
    return c;
  }
  int stepWord(int c, const Word& w) const {
    for (Sym a : w) c = stepOf(c, a);
    return c;
  }

  Dfa asDfa() const {
    Dfa d = makeDfa(alphabet, numClasses, classOfEmpty, {});
    d.delta = step;
    for (int c = 0; c < numClasses; ++c) d.accepting[static_cast<size_t>(c)] = tag[static_cast<size_t>(c)] == 1;
    return d;
  }
};

struct SuffixExpansionCensus {
  int maxLen = 0;
  std::vector<uint64_t> countsPerLength;  // maxLen+1 entries
  uint64_t total = 0;
};

struct FiniteMonoid {
  int numClasses = 0;  // the transformations act on congruence classes
  std::vector<std::vector<int>> elements;
  std::vector<std::vector<int>> mul;  // mul[i][j] = index of elements[j] then elements[i]? see cpp
  int identity = 0;
  uint64_t omega = 1;
  int indexOf(const std::vector<int>& m) const;
};

struct RegularGrowth {
  bool exponential = false;
  // exponential witness: a useful state with two distinct same-SCC cycles
  int witnessState = -1;
  Word cycleA, cycleB;
  // polynomial witness: L subset of w1*...wk*
  std::vector<Word> boundingWords;
};

// Unique minimal trim total DFA (Myhill-Nerode classes of nonempty residuals
// plus the reachable sink, when present).
Dfa minimizeDfa(const Dfa& dfa);

RightCongruence nerodeCongruence(const Dfa& dfa);

// Counts classes of the suffix expansion of the congruence by enumerating all
// words of length <= n and comparing per-suffix class tuples.
SuffixExpansionCensus suffixExpansionCensus(const RightCongruence& cong, int n, Budget& budget);
SuffixExpansionCensus suffixExpansionCensus(const RightCongruence& cong, int n);

FiniteMonoid syntacticMonoid(const RightCongruence& cong);

RegularGrowth regularGrowthClass(const Dfa& dfa);

// Product congruence; classes reachable from the pair of empty classes.
RightCongruence intersectCongruence(const RightCongruence& a, const RightCongruence& b);

}  // namespace vplwin
