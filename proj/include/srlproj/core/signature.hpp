#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "srlproj/errors.hpp"

namespace srlproj {

struct Relation {
  std::string name;
  int arity = 0;

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// A ground atom r(i_1..i_k); `relation` indexes into a Signature.
struct GroundAtom {
  std::size_t relation = 0;
  std::vector<int> args;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
};

// n^k, saturating well above any usable atom count.
inline std::uint64_t int_pow(std::uint64_t base, int exponent) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > (std::uint64_t{1} << 40) / base) return std::uint64_t{1} << 41;
    result *= base;
  }
  return result;
}

/// Ordered list of relation symbols. The order fixes the canonical atom
/// order: relations in list order, argument tuples lexicographically.
/// Copies share the underlying (immutable) relation list.
class Signature {
 public:
  Signature() : relations_(std::make_shared<const std::vector<Relation>>()) {}

  explicit Signature(std::vector<Relation> relations) {
    for (std::size_t i = 0; i < relations.size(); ++i) {
      if (relations[i].arity < 0) {
        throw InvalidArgument("relation '" + relations[i].name + "' has negative arity");
      }
      if (relations[i].name.empty()) throw InvalidArgument("relation with empty name");
      for (std::size_t j = 0; j < i; ++j) {
        if (relations[j].name == relations[i].name) {
          throw InvalidArgument("duplicate relation '" + relations[i].name + "'");
        }
      }
    }
    relations_ = std::make_shared<const std::vector<Relation>>(std::move(relations));
  }

  std::size_t size() const { return relations_->size(); }
  bool empty() const { return relations_->empty(); }
  const Relation& operator[](std::size_t i) const { return (*relations_)[i]; }
  const std::vector<Relation>& relations() const { return *relations_; }
  auto begin() const { return relations_->begin(); }
  auto end() const { return relations_->end(); }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < size(); ++i) {
      if ((*this)[i].name == name) return i;
    }
    return std::nullopt;
  }

  int max_arity() const {
    int k = 0;
    for (const auto& r : *relations_) k = std::max(k, r.arity);
    return k;
  }

  /// Number of ground atoms over [n]: sum of n^arity.
  std::uint64_t atom_count(int n) const {
    std::uint64_t total = 0;
    for (const auto& r : *relations_) total += int_pow(static_cast<std::uint64_t>(n), r.arity);
    return total;
  }

  /// Index of the first atom of relation `rel` in canonical order.
  std::uint64_t offset(std::size_t rel, int n) const {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < rel; ++i) {
      total += int_pow(static_cast<std::uint64_t>(n), (*this)[i].arity);
    }
    return total;
  }

  std::uint64_t atom_index(const GroundAtom& atom, int n) const {
    check_atom(atom, n);
    std::uint64_t local = 0;
    for (int a : atom.args) local = local * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(a);
    return offset(atom.relation, n) + local;
  }

  GroundAtom atom_at(std::uint64_t index, int n) const {
    for (std::size_t rel = 0; rel < size(); ++rel) {
      const int arity = (*this)[rel].arity;
      const auto count = int_pow(static_cast<std::uint64_t>(n), arity);
      if (index < count) {
        GroundAtom atom{rel, std::vector<int>(static_cast<std::size_t>(arity))};
        for (int j = arity - 1; j >= 0; --j) {
          atom.args[static_cast<std::size_t>(j)] = static_cast<int>(index % static_cast<std::uint64_t>(n));
          index /= static_cast<std::uint64_t>(n);
        }
        return atom;
      }
      index -= count;
    }
    throw DimensionError("atom index out of range");
  }

  void check_atom(const GroundAtom& atom, int n) const {
    if (atom.relation >= size()) throw InvalidArgument("relation index out of range");
    const auto& rel = (*this)[atom.relation];
    if (static_cast<int>(atom.args.size()) != rel.arity) {
      throw InvalidArgument("atom of '" + rel.name + "' has " + std::to_string(atom.args.size()) +
                            " arguments, expected " + std::to_string(rel.arity));
    }
    for (int a : atom.args) {
      if (a < 0 || a >= n) {
        throw DimensionError("argument " + std::to_string(a) + " outside domain [" + std::to_string(n) + "]");
      }
    }
  }

  std::string atom_to_string(const GroundAtom& atom) const {
    std::string out = (*this)[atom.relation].name;
    if (!atom.args.empty()) {
      out += '(';
      for (std::size_t i = 0; i < atom.args.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(atom.args[i]);
      }
      out += ')';
    }
    return out;
  }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.relations_ == b.relations_ || *a.relations_ == *b.relations_;
  }

 private:
  std::shared_ptr<const std::vector<Relation>> relations_;
};

}  // namespace srlproj
