#pragma once

// Variable contexts and monomials.
//
// A context is an ordered list of named variables, each assigned to a block.
// The monomial order is a block order: blocks are compared from the highest
// block down, inside a block by total degree and then lexicographically with
// later variables ranking higher. Towers put the base variable in block 0 and
// the adjoined generators in block 1, so every generator relation rewrites
// into earlier variables regardless of the degree of its base part.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rpv/errors.hpp"

namespace rpv {

class VarContext;
using ContextPtr = std::shared_ptr<const VarContext>;

class VarContext {
 public:
  static ContextPtr make(std::vector<std::string> names, std::vector<int> blocks) {
    if (names.size() != blocks.size()) throw ContextError("names and blocks differ in length");
    return ContextPtr(new VarContext(std::move(names), std::move(blocks)));
  }
  static ContextPtr make(std::vector<std::string> names, int block = 0) {
    std::vector<int> blocks(names.size(), block);
    return make(std::move(names), std::move(blocks));
  }

  ContextPtr extended(const std::vector<std::string>& names, int block) const {
    auto all = names_;
    auto blocks = blocks_;
    for (const auto& n : names) {
      if (index_of(n)) throw ContextError("variable '" + n + "' already present");
      all.push_back(n);
      blocks.push_back(block);
    }
    return make(std::move(all), std::move(blocks));
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  bool is_prefix_of(const VarContext& other) const {
    if (this == &other) return true;
    if (size() > other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
      if (names_[i] != other.names_[i] || blocks_[i] != other.blocks_[i]) return false;
    }
    return true;
  }

  // Variables grouped by block, highest block first, each group listed from
  // the highest-ranking variable down.
  const std::vector<std::vector<std::size_t>>& ranking() const { return ranking_; }

 private:
  VarContext(std::vector<std::string> names, std::vector<int> blocks)
      : names_(std::move(names)), blocks_(std::move(blocks)) {
    std::map<int, std::vector<std::size_t>, std::greater<>> by_block;
    for (std::size_t i = names_.size(); i-- > 0;) by_block[blocks_[i]].push_back(i);
    for (auto& [b, vars] : by_block) ranking_.push_back(std::move(vars));
  }

  std::vector<std::string> names_;
  std::vector<int> blocks_;
  std::vector<std::vector<std::size_t>> ranking_;
};

// The larger of two prefix-compatible contexts.
inline const ContextPtr& common_context(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return a;
  if (a->is_prefix_of(*b)) return b;
  if (b->is_prefix_of(*a)) return a;
  throw ContextError("incompatible variable contexts");
}

// Dense exponent vector with trailing zeros trimmed, so a monomial built in a
// prefix context is literally the same value in every extension of it.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }

  static Monomial var(std::size_t index, std::uint32_t power = 1) {
    std::vector<std::uint32_t> e(index + 1, 0);
    e[index] = power;
    return Monomial(std::move(e));
  }

  std::uint32_t operator[](std::size_t i) const { return i < exps_.size() ? exps_[i] : 0; }
  std::size_t width() const { return exps_.size(); }
  bool is_one() const { return exps_.empty(); }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (auto e : exps_) d += e;
    return d;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> e(std::max(a.width(), b.width()), 0);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] + b[i];
    return Monomial(std::move(e));
  }

  bool divides(const Monomial& other) const {
    if (width() > other.width()) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
  }

  // Precondition: divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const {
    std::vector<std::uint32_t> e(exps_);
    for (std::size_t i = 0; i < divisor.width(); ++i) e[i] -= divisor.exps_[i];
    return Monomial(std::move(e));
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> e(std::max(a.width(), b.width()), 0);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
    return Monomial(std::move(e));
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> e(std::min(a.width(), b.width()), 0);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(a[i], b[i]);
    return Monomial(std::move(e));
  }

  bool coprime(const Monomial& other) const {
    std::size_t n = std::min(width(), other.width());
    for (std::size_t i = 0; i < n; ++i) {
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    }
    return true;
  }

  // Only variables of the given block.
  std::uint64_t block_degree(const std::vector<std::size_t>& vars) const {
    std::uint64_t d = 0;
    for (auto v : vars) d += (*this)[v];
    return d;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Structural order, only for use as a map key. Not the monomial order.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

  std::string str(const VarContext& ctx) const {
    std::string s;
    for (const auto& group : ctx.ranking()) {
      for (auto v : group) {
        auto e = (*this)[v];
        if (e == 0) continue;
        if (!s.empty()) s += "*";
        s += ctx.name(v);
        if (e > 1) s += "^" + std::to_string(e);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }
  std::vector<std::uint32_t> exps_;
};

// Monomial order of a context.
inline std::strong_ordering compare(const VarContext& ctx, const Monomial& a, const Monomial& b) {
  if (a == b) return std::strong_ordering::equal;
  for (const auto& group : ctx.ranking()) {
    auto da = a.block_degree(group), db = b.block_degree(group);
    if (da != db) return da <=> db;
    for (auto v : group) {
      if (a[v] != b[v]) return a[v] <=> b[v];
    }
  }
  return std::strong_ordering::equal;
}

}  // namespace rpv
