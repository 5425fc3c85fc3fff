#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <string>

#include "srlproj/errors.hpp"

namespace srlproj {

// Hard ceiling: encodings are 64-bit and dense tables must stay addressable.
inline constexpr std::size_t kMaxAtomCap = 40;
inline constexpr std::size_t kDefaultAtomCap = 30;

namespace detail {

inline std::size_t initial_atom_cap() {
  if (const char* env = std::getenv("SRLPROJ_CAP")) {
    try {
      const auto value = std::stoul(env);
      if (value > 0 && value <= kMaxAtomCap) return value;
    } catch (const std::exception&) {
    }
  }
  return kDefaultAtomCap;
}

inline std::atomic<std::size_t>& atom_cap_storage() {
  static std::atomic<std::size_t> cap{initial_atom_cap()};
  return cap;
}

}  // namespace detail

/// Maximum number of ground atoms any dense enumeration may range over.
/// Defaults to 30, overridable by the SRLPROJ_CAP environment variable.
inline std::size_t atom_cap() { return detail::atom_cap_storage().load(); }

inline void set_atom_cap(std::size_t cap) {
  if (cap == 0 || cap > kMaxAtomCap) {
    throw InvalidArgument("atom cap must be in [1, " + std::to_string(kMaxAtomCap) + "]");
  }
  detail::atom_cap_storage().store(cap);
}

inline void require_within_cap(std::size_t atoms) {
  if (atoms > atom_cap()) throw CapExceeded(atoms, atom_cap());
}

/// Restores the previous cap on destruction.
class ScopedAtomCap {
 public:
  explicit ScopedAtomCap(std::size_t cap) : previous_(atom_cap()) { set_atom_cap(cap); }
  ~ScopedAtomCap() { detail::atom_cap_storage().store(previous_); }
  ScopedAtomCap(const ScopedAtomCap&) = delete;
  ScopedAtomCap& operator=(const ScopedAtomCap&) = delete;

 private:
  std::size_t previous_;
};

}  // namespace srlproj
