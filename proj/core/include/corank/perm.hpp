#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corank/error.hpp"

namespace corank {

// Permutation of {1..degree}. Storage is 0-based (img()[k] is the image of
// point k); points appear 1-based in cycle notation and everywhere a point is
// printed.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int degree);
  // Takes 0-based images; validates that they form a bijection.
  static Permutation from_images(std::vector<std::int32_t> images);

  int degree() const { return static_cast<int>(img_.size()); }
  std::int32_t operator()(std::int32_t point) const { return img_[point]; }
  std::span<const std::int32_t> images() const { return img_; }
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::int32_t> img_;
};

// Apply lhs first, then rhs: result(k) = rhs(lhs(k)). Every group product in
// the library multiplies in this order (right-action convention).
Permutation compose(const Permutation& lhs, const Permutation& rhs);
Permutation inverse(const Permutation& p);
Permutation power(const Permutation& p, std::int64_t e);

// Least k >= 1 with p^k = identity; the lcm of the cycle lengths.
std::int64_t element_order(const Permutation& p);

// Cycle-notation grammar:
//   perm  := "()" | cycle+
//   cycle := "(" point (sep point)+ ")"      sep := "," | whitespace
// Points are decimal integers in 1..degree; points absent from every cycle
// are fixed. Cycles are applied left to right.
Permutation parse_cycles(std::string_view text, int degree);
std::string format_cycles(const Permutation& p);

}  // namespace corank
