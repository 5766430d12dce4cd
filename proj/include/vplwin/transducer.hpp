#pragma once

#include <functional>

#include "vplwin/regular.hpp"

namespace vplwin {

enum class Direction { Left, Right };

// Real-time word transducer. Transitions are stored as reading-direction
// steps: src is the state nearer the reading start. Left machines read
// left-to-right and append terminal output (out_F = y o(q)); right machines
// read right-to-left, outputs accumulate to the left and the terminal output
// of the end state is prepended (out_F = o(q) y).
struct Transducer {
  Direction direction = Direction::Left;
  Alphabet input, output;
  int numStates = 0;
  std::vector<int> starts;      // where reading begins
  std::vector<char> accepting;  // where runs end; terminal output applies here
  struct Trans {
    int src = 0;
    Sym a = 0;
    Word out;
    int dst = 0;
  };
  std::vector<Trans> transitions;
  std::vector<Word> terminalOut;  // per state

  int addState(bool acc = false) {
    accepting.push_back(acc ? 1 : 0);
    terminalOut.emplace_back();
    return numStates++;
  }
  void addTrans(int src, Sym a, Word out, int dst) { transitions.push_back({src, a, std::move(out), dst}); }
};

// Remove states not on any accepting run.
Transducer trimTransducer(const Transducer& t);

std::optional<Word> evaluate(const Transducer& t, const Word& x);

struct UnambiguityReport {
  bool unambiguous = true;
  Word witness;
};
UnambiguityReport checkUnambiguous(const Transducer& t);

int imlOf(const Transducer& t);

// Input-projection automaton (the domain of the transduction).
Dfa domainDfa(const Transducer& t);

// General (non-real-time) transducer used for the closure operations.
struct RationalRelation {
  Alphabet input, output;
  int numStates = 0;
  std::vector<int> starts;
  std::vector<char> accepting;
  struct Edge {
    int src = 0;
    Word in, out;
    int dst = 0;
  };
  std::vector<Edge> edges;

  int addState(bool acc = false) {
    accepting.push_back(acc ? 1 : 0);
    return numStates++;
  }
  void addEdge(int src, Word in, Word out, int dst) { edges.push_back({src, std::move(in), std::move(out), dst}); }
};

RationalRelation relFromTransducer(const Transducer& t);
bool relationMembership(const RationalRelation& r, const Word& x, const Word& y);
RationalRelation composeRel(const RationalRelation& r1, const RationalRelation& r2);
RationalRelation inverseRel(const RationalRelation& r);
RationalRelation reverseRel(const RationalRelation& r);
RationalRelation restrictDomainRel(const RationalRelation& r, const Dfa& lang);
// image of a regular language under the relation, as an NFA over the output alphabet
Nfa imageOfRel(const RationalRelation& r, const Dfa& lang);

// ||x,y|| = |x| + |y| - 2|x ^ y| with x ^ y the longest common suffix
int suffixDistance(const Word& x, const Word& y);

struct LookaheadAnnotation {
  RightCongruence congruence;
  Alphabet annotatedAlphabet;  // pair (a, class) encoded a * numClasses + class

  Sym pairSym(Sym a, int cls) const { return a * congruence.numClasses + cls; }
  Sym inputOf(Sym pair) const { return pair / congruence.numClasses; }
  int classOf(Sym pair) const { return pair % congruence.numClasses; }
  Word extend(const Word& x) const;  // e_R
};

LookaheadAnnotation makeLookaheadAnnotation(const Alphabet& input, RightCongruence r);

// A partial function given by an evaluator plus a DFA for its domain; iml
// bounds the output growth per input letter.
struct PartialFn {
  std::function<std::optional<Word>(const Word&)> eval;
  Dfa domain;
  int iml = 1;
};

PartialFn fnOfTransducer(const Transducer& t);
PartialFn residualFn(const PartialFn& f, const Word& prefix);

enum class AdjacencyVerdict { Adjacent, NotAdjacent, Inconclusive };
struct AdjacencyResult {
  AdjacencyVerdict verdict = AdjacencyVerdict::Inconclusive;
  Word x, y, z;  // pump triple witnessing non-adjacency
  std::vector<int> distances;
};

AdjacencyResult adjacencyTest(const PartialFn& t1, const PartialFn& t2, int bound);

struct DerivedLookahead {
  LookaheadAnnotation ann;
  Transducer b;  // right-subsequential over the annotated alphabet
  std::vector<Word> classReps;
  int validatedDepth = 0;
  std::vector<std::pair<Word, Word>> inconclusivePairs;
};

struct DeriveOptions {
  int adjacencyBound = 6;
  int classCap = 128;
  size_t stateCap = 10000;
  size_t pendCap = 512;
  int validationDepth = 6;
};

DerivedLookahead deriveLookahead(const Transducer& t, const DeriveOptions& opts = {});

// Same construction for an externally supplied evaluator/domain (used when the
// function is not given by an explicit transducer).
DerivedLookahead deriveLookaheadFn(const PartialFn& f, const Alphabet& input, int iml, const DeriveOptions& opts = {});

// forget the look-ahead component of B's input symbols
Transducer projectLookahead(const Transducer& b, const LookaheadAnnotation& ann);

std::optional<Word> evaluateSubseqRight(const Transducer& b, const Word& annotatedWord);

}  // namespace vplwin
