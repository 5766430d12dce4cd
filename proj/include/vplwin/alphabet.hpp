#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "vplwin/base.hpp"

namespace vplwin {

// Maps symbol tokens to dense ids in declaration order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& names) {
    for (const auto& n : names) add(n);
  }

  Sym add(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    Sym id = static_cast<Sym>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
  }

  std::optional<Sym> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Sym get(const std::string& name) const {
    auto s = find(name);
    if (!s) fail(Errc::UnknownSymbol, "symbol '" + name + "' not in alphabet");
    return *s;
  }

  const std::string& name(Sym s) const { return names_.at(static_cast<size_t>(s)); }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

  Word parseWord(const std::vector<std::string>& tokens) const {
    Word w;
    w.reserve(tokens.size());
    for (const auto& t : tokens) w.push_back(get(t));
    return w;
  }

  std::string printWord(const Word& w, const std::string& sep = " ") const {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) out += sep;
      out += name(w[i]);
    }
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Sym> index_;
};

}  // namespace vplwin
