#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "srlproj/errors.hpp"

namespace srlproj {

/// A bijection on the domain [n], stored as its image table.
class Permutation {
 public:
  static Permutation identity(int n) {
    std::vector<int> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image));
  }

  /// Swaps i and j, fixes everything else.
  static Permutation transposition(int n, int i, int j) {
    auto p = identity(n);
    std::swap(p.image_.at(static_cast<std::size_t>(i)), p.image_.at(static_cast<std::size_t>(j)));
    return p;
  }

  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
      if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
        throw InvalidArgument("not a permutation of [" + std::to_string(size()) + "]");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const { return image_; }

  Permutation inverse() const {
    std::vector<int> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv));
  }

  /// (this ∘ other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const {
    if (other.size() != size()) throw DimensionError("composing permutations of different size");
    std::vector<int> out(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) out[i] = (*this)(other(static_cast<int>(i)));
    return Permutation(std::move(out));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

}  // namespace srlproj
