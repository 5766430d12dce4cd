#pragma once

#include <vector>

#include "vplwin/alphabet.hpp"
#include "vplwin/base.hpp"

namespace vplwin {

// Deterministic acceptor with a total transition map.
struct Dfa {
  Alphabet alphabet;
  int numStates = 0;
  int initial = 0;
  std::vector<char> accepting;  // numStates
  std::vector<int> delta;       // numStates * |alphabet|, row-major by state

  int next(int q, Sym a) const { return delta[static_cast<size_t>(q) * alphabet.size() + a]; }
  int& nextRef(int q, Sym a) { return delta[static_cast<size_t>(q) * alphabet.size() + a]; }

  int run(const Word& w, int from) const {
    int q = from;
    for (Sym a : w) q = next(q, a);
    return q;
  }
  bool accepts(const Word& w) const { return accepting[static_cast<size_t>(run(w, initial))]; }

  bool operator==(const Dfa& o) const {
    return alphabet == o.alphabet && numStates == o.numStates && initial == o.initial &&
           accepting == o.accepting && delta == o.delta;
  }
};

struct Nfa {
  int numSymbols = 0;
  int numStates = 0;
  std::vector<int> initials;
  std::vector<char> accepting;
  struct Edge {
    Sym a;
    int to;
  };
  std::vector<std::vector<Edge>> adj;
  std::vector<std::vector<int>> eps;

  int addState(bool acc = false) {
    adj.emplace_back();
    eps.emplace_back();
    accepting.push_back(acc ? 1 : 0);
    return numStates++;
  }
  void addEdge(int q, Sym a, int p) { adj[static_cast<size_t>(q)].push_back({a, p}); }
  void addEps(int q, int p) { eps[static_cast<size_t>(q)].push_back(p); }

  std::vector<int> epsClosure(std::vector<int> states) const;
  bool accepts(const Word& w) const;
};

Dfa makeDfa(const Alphabet& alphabet, int numStates, int initial, const std::vector<int>& finals);

// Reachable states only; transition structure preserved, states renumbered in
// BFS order from the initial state with symbols in alphabet order.
Dfa reachableTrim(const Dfa& d);

// Unique minimal total DFA, states in canonical BFS order.
Dfa minimizeDfaTotal(const Dfa& d);

Dfa productDfa(const Dfa& a, const Dfa& b, bool (*combine)(bool, bool));
Dfa intersectDfa(const Dfa& a, const Dfa& b);
Dfa unionDfa(const Dfa& a, const Dfa& b);
Dfa complementDfa(const Dfa& d);

bool isEmptyLang(const Dfa& d);
bool isUniversalLang(const Dfa& d);
bool sameLang(const Dfa& a, const Dfa& b);

std::optional<Word> shortestAccepted(const Dfa& d);

// All accepted words of length <= maxLen, grouped by length. Charges one
// budget unit per enumerated word.
std::vector<std::vector<Word>> enumerateAccepted(const Dfa& d, int maxLen, Budget& budget);

Nfa nfaFromDfa(const Dfa& d);
Nfa reverseNfa(const Nfa& n);
Nfa trimNfa(const Nfa& n);
Dfa determinize(const Nfa& n, const Alphabet& alphabet, size_t stateCap = 100000);

// NFA for the set of suffixes of L(n).
Nfa suffixClosureNfa(const Nfa& n);

// w1* w2* ... wk* as an NFA over the given alphabet.
Nfa boundedShapeNfa(const std::vector<Word>& boundingWords, int numSymbols);

// Membership of w in w1*...wk* (dynamic program over star positions).
bool matchesBoundedShape(const Word& w, const std::vector<Word>& boundingWords);

std::optional<Word> shortestAcceptedNfa(const Nfa& n);
std::vector<std::vector<Word>> enumerateAcceptedNfa(const Nfa& n, int maxLen, Budget& budget);
bool nfaEmpty(const Nfa& n);

}  // namespace vplwin
