#pragma once

#include <string>
#include <vector>

#include "vplwin/fa.hpp"

namespace vplwin {

// Context-free grammar over a terminal alphabet. RHS items are single symbols
// (terminal or nonterminal); epsilon = empty RHS.
struct Cfg {
  Alphabet terminals;
  std::vector<std::string> ntNames;
  int start = 0;

  struct SymRef {
    bool terminal = false;
    int id = 0;
    bool operator==(const SymRef& o) const { return terminal == o.terminal && id == o.id; }
  };
  struct Prod {
    int lhs = 0;
    std::vector<SymRef> rhs;
  };
  std::vector<Prod> prods;

  int numNonterminals() const { return static_cast<int>(ntNames.size()); }
  int addNonterminal(const std::string& name) {
    ntNames.push_back(name);
    return numNonterminals() - 1;
  }
  void addProd(int lhs, std::vector<SymRef> rhs) { prods.push_back({lhs, std::move(rhs)}); }

  static SymRef T(int id) { return {true, id}; }
  static SymRef N(int id) { return {false, id}; }
};

// Remove unproductive and unreachable nonterminals (keeps epsilon productions).
Cfg trimCfg(const Cfg& g);

bool cfgEmptyLang(const Cfg& g);

// Least yield length per nonterminal; SIZE_MAX when unproductive.
std::vector<size_t> shortestYieldLengths(const Cfg& g);

std::optional<Word> shortestWordCfg(const Cfg& g);

// Words of L(g) of length <= maxLen grouped by length; deduplicated.
std::vector<std::vector<Word>> enumerateCfg(const Cfg& g, int maxLen, Budget& budget);

bool cfgAccepts(const Cfg& g, const Word& w);

// Chomsky normal form over the same terminal alphabet. epsilonInLanguage
// records whether the source language contained the empty word (CNF drops it).
struct CnfResult {
  Cfg g;
  bool epsilonInLanguage = false;
};
CnfResult toCnf(const Cfg& g);

// Triple construction: language L(g) n L(d).
Cfg intersectCfgDfa(const Cfg& g, const Dfa& d);

// All suffixes of words of L(g) (including the words themselves and epsilon).
Cfg suffixClosureCfg(const Cfg& g);

// Lexicographically least word of the given exact length, if any.
std::optional<Word> leastWordOfLength(const Cfg& g, size_t len);

Cfg cfgFromDfa(const Dfa& d);
Cfg cfgFromNfa(const Nfa& n, const Alphabet& terminals);

std::string printCfg(const Cfg& g);

}  // namespace vplwin
