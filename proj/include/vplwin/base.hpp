#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vplwin {

using Sym = int32_t;
using Word = std::vector<Sym>;

enum class Errc {
  ParseError,
  UnknownSymbol,
  NotWellMatched,
  NotDescending,
  EmptyWord,
  BadFactorization,
  NotAllFlat,
  NotRegFlat,
  NoApxFound,
  UnreachableConfiguration,
  BudgetExceeded,
  AmbiguousMachine,
  KindMachineMismatch,
  NotBounded,
  S0Unbounded,
  PreconditionViolation,
  AbsorptionViolation,
  DomainViolation,
  InequalityFailure,
  ZNotFound,
  RotationImpossible,
  ValidationFailure,
  InconclusiveAdjacency,
  DivergenceWindowExceeded,
  InconsistentEvidence,
  Internal,
};

const char* errcName(Errc c);

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg)
      : std::runtime_error(std::string(errcName(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

// Enumeration budget shared by census / search routines. Exceeding it is an
// error, never silent truncation.
struct Budget {
  uint64_t limit = 2'000'000;
  uint64_t used = 0;
  void charge(uint64_t n = 1) {
    used += n;
    if (used > limit) fail(Errc::BudgetExceeded, "enumeration budget of " + std::to_string(limit) + " exhausted");
  }
  bool wouldExceed(uint64_t n) const { return used + n > limit; }
};

inline int flog2(uint64_t v) { return v == 0 ? 0 : std::bit_width(v) - 1; }

// Length-lexicographic order; ties broken by id order.
inline bool llexLess(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline uint64_t hashCombine(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

struct WordHash {
  size_t operator()(const Word& w) const {
    uint64_t h = 1469598103934665603ULL;
    for (Sym s : w) h = hashCombine(h, static_cast<uint64_t>(s) + 1);
    return static_cast<size_t>(h);
  }
};

struct PairHash {
  template <class A, class B>
  size_t operator()(const std::pair<A, B>& p) const {
    return static_cast<size_t>(hashCombine(std::hash<A>()(p.first), std::hash<B>()(p.second)));
  }
};

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline bool isSuffix(const Word& s, const Word& w) {
  if (s.size() > w.size()) return false;
  return std::equal(s.begin(), s.end(), w.end() - static_cast<long>(s.size()));
}

inline Word repeatWord(const Word& w, int times) {
  Word r;
  r.reserve(w.size() * static_cast<size_t>(times));
  for (int i = 0; i < times; ++i) r.insert(r.end(), w.begin(), w.end());
  return r;
}

inline size_t commonSuffixLen(const Word& a, const Word& b) {
  size_t n = 0;
  while (n < a.size() && n < b.size() && a[a.size() - 1 - n] == b[b.size() - 1 - n]) ++n;
  return n;
}

}  // namespace vplwin
