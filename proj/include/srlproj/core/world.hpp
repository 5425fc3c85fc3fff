#pragma once

#include <array>
#include <cstdint>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "srlproj/core/limits.hpp"
#include "srlproj/core/permutation.hpp"
#include "srlproj/core/signature.hpp"
#include "srlproj/errors.hpp"

namespace srlproj {

using Encoding = std::uint64_t;

/// A truth assignment to every ground atom over [n]. Bit i of the encoding
/// is the truth value of the i-th atom in canonical order.
class World {
 public:
  World(Signature signature, int n, Encoding bits = 0) : signature_(std::move(signature)), n_(n), bits_(bits) {
    if (n < 1) throw DimensionError("domain size must be at least 1");
    const auto atoms = signature_.atom_count(n);
    if (atoms > 64) throw CapExceeded(atoms, 64);
    if (atoms < 64 && (bits >> atoms) != 0) {
      throw DimensionError("encoding " + std::to_string(bits) + " out of range for " + std::to_string(atoms) + " atoms");
    }
  }

  const Signature& signature() const { return signature_; }
  int domain_size() const { return n_; }
  Encoding encoding() const { return bits_; }
  std::size_t atom_count() const { return static_cast<std::size_t>(signature_.atom_count(n_)); }

  bool holds(const GroundAtom& atom) const { return (bits_ >> signature_.atom_index(atom, n_)) & 1U; }
  bool holds_index(std::uint64_t index) const { return (bits_ >> index) & 1U; }

  World with(const GroundAtom& atom, bool value) const {
    const auto bit = Encoding{1} << signature_.atom_index(atom, n_);
    return World(signature_, n_, value ? (bits_ | bit) : (bits_ & ~bit));
  }

  std::vector<GroundAtom> true_atoms() const {
    std::vector<GroundAtom> atoms;
    for (std::uint64_t i = 0; i < atom_count(); ++i) {
      if (holds_index(i)) atoms.push_back(signature_.atom_at(i, n_));
    }
    return atoms;
  }

  friend bool operator==(const World& a, const World& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_ && a.signature_ == b.signature_;
  }

 private:
  Signature signature_;
  int n_;
  Encoding bits_;
};

/// Number of worlds over [n], after checking the atom cap.
inline std::uint64_t world_count(const Signature& signature, int n) {
  const auto atoms = signature.atom_count(n);
  require_within_cap(static_cast<std::size_t>(atoms));
  return std::uint64_t{1} << atoms;
}

/// Every world over [n] in ascending encoding order, as a lazy view.
inline auto enumerate_worlds(const Signature& signature, int n) {
  if (n < 1) throw DimensionError("domain size must be at least 1");
  const auto count = world_count(signature, n);
  return std::views::iota(Encoding{0}, count) |
         std::views::transform([signature, n](Encoding e) { return World(signature, n, e); });
}

/// Moves atom bits from one canonical order to another. Each source atom
/// maps to at most one target atom; the map is applied bytewise through
/// lookup tables, so applying it costs one table read per 8 source atoms.
class AtomGather {
 public:
  static constexpr std::int64_t kDrop = -1;

  explicit AtomGather(std::span<const std::int64_t> target_of_source) {
    const std::size_t chunks = (target_of_source.size() + 7) / 8;
    tables_.assign(chunks, {});
    for (std::size_t c = 0; c < chunks; ++c) {
      for (unsigned v = 0; v < 256; ++v) {
        Encoding out = 0;
        for (unsigned b = 0; b < 8; ++b) {
          const std::size_t src = c * 8 + b;
          if ((v >> b & 1U) && src < target_of_source.size() && target_of_source[src] != kDrop) {
            out |= Encoding{1} << target_of_source[src];
          }
        }
        tables_[c][v] = out;
      }
    }
  }

  /// Renames domain elements: source atom r(a_1..a_k) over [n_src] goes to
  /// r(map(a_1)..map(a_k)) over [n_dst], or is dropped if any map(a_j) < 0.
  static AtomGather relabel(const Signature& signature, int n_src, int n_dst, std::span<const int> element_map) {
    const auto src_atoms = signature.atom_count(n_src);
    std::vector<std::int64_t> target(static_cast<std::size_t>(src_atoms), kDrop);
    for (std::uint64_t i = 0; i < src_atoms; ++i) {
      auto atom = signature.atom_at(i, n_src);
      bool keep = true;
      for (int& a : atom.args) {
        a = element_map[static_cast<std::size_t>(a)];
        if (a < 0) {
          keep = false;
          break;
        }
      }
      if (keep) target[i] = static_cast<std::int64_t>(signature.atom_index(atom, n_dst));
    }
    return AtomGather(target);
  }

  /// Keeps the relations listed in `kept` (indices into `source`), in that
  /// order, forming the canonical order of the smaller signature.
  static AtomGather project(const Signature& source, std::span<const std::size_t> kept, int n) {
    std::vector<std::int64_t> target(static_cast<std::size_t>(source.atom_count(n)), kDrop);
    std::uint64_t next = 0;
    for (std::size_t rel : kept) {
      const auto begin = source.offset(rel, n);
      const auto count = int_pow(static_cast<std::uint64_t>(n), source[rel].arity);
      for (std::uint64_t i = 0; i < count; ++i) target[begin + i] = static_cast<std::int64_t>(next++);
    }
    return AtomGather(target);
  }

  Encoding operator()(Encoding source) const {
    Encoding out = 0;
    for (std::size_t c = 0; c < tables_.size(); ++c) out |= tables_[c][(source >> (8 * c)) & 0xFFU];
    return out;
  }

 private:
  std::vector<std::array<Encoding, 256>> tables_;
};

/// Reusable form of apply_permutation for whole-table sweeps.
inline AtomGather permutation_gather(const Signature& signature, int n, const Permutation& pi) {
  if (pi.size() != n) throw DimensionError("permutation size differs from domain size");
  return AtomGather::relabel(signature, n, n, pi.image());
}

/// Result has r(i_1..i_k) iff input has r(π⁻¹(i_1)..π⁻¹(i_k)).
inline World apply_permutation(const World& world, const Permutation& pi) {
  const auto gather = permutation_gather(world.signature(), world.domain_size(), pi);
  return World(world.signature(), world.domain_size(), gather(world.encoding()));
}

inline void check_index_tuple(std::span<const int> index, int n) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i : index) {
    if (i < 0 || i >= n) throw DimensionError("index " + std::to_string(i) + " outside domain [" + std::to_string(n) + "]");
    if (seen[static_cast<std::size_t>(i)]) throw DuplicateIndex("index " + std::to_string(i) + " repeated");
    seen[static_cast<std::size_t>(i)] = true;
  }
}

/// Gather for the substructure induced by `index`, positionally relabelled
/// i_j -> j.
inline AtomGather restriction_gather(const Signature& signature, int n, std::span<const int> index) {
  check_index_tuple(index, n);
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  for (std::size_t j = 0; j < index.size(); ++j) map[static_cast<std::size_t>(index[j])] = static_cast<int>(j);
  return AtomGather::relabel(signature, n, static_cast<int>(index.size()), map);
}

inline World restrict_world(const World& world, std::span<const int> index) {
  if (index.empty()) throw DimensionError("restriction to an empty index tuple");
  const auto gather = restriction_gather(world.signature(), world.domain_size(), index);
  return World(world.signature(), static_cast<int>(index.size()), gather(world.encoding()));
}

inline World restrict_world(const World& world, std::initializer_list<int> index) {
  return restrict_world(world, std::span<const int>(index.begin(), index.size()));
}

}  // namespace srlproj
