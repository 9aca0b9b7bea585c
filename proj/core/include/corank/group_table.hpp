#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corank/perm.hpp"

namespace corank {

inline constexpr std::int64_t kDefaultClosureCap = 200'000;

// Explicit element list of a finite permutation group, in breadth-first
// discovery order from the identity. Element 0 is always the identity, so
// indices are stable and reports reproduce byte-for-byte. Immutable once
// built; safe to share across threads.
class FiniteGroupTable {
 public:
  FiniteGroupTable() = default;

  // Breadth-first closure of `generators` under right multiplication.
  // Throws CapError once more than `cap` elements are discovered.
  static FiniteGroupTable closure(int degree, std::vector<Permutation> generators,
                                  std::int64_t cap = kDefaultClosureCap);

  int order() const { return static_cast<int>(elems_.size()); }
  int degree() const { return degree_; }
  const Permutation& element(int idx) const { return elems_[idx]; }
  const std::vector<Permutation>& elements() const { return elems_; }
  const std::vector<int>& generator_indices() const { return gens_; }

  int mul(int a, int b) const;  // index of element(a) * element(b)
  int inv(int a) const { return inv_[a]; }
  std::int64_t order_of(int a) const { return orders_[a]; }

  // Index of p, or -1 when p is not an element.
  int index_of(const Permutation& p) const;

 private:
  void finish();  // builds sorted lookup, inverses, orders

  int degree_ = 0;
  std::vector<Permutation> elems_;
  std::vector<int> gens_;
  std::vector<int> sorted_;  // element indices ordered by permutation
  std::vector<int> inv_;
  std::vector<std::int64_t> orders_;
};

// Orbits of `elements` acting (on the right) on the points in `domain`.
// Each orbit is sorted; orbits are ordered by smallest contained point.
std::vector<std::vector<std::int32_t>> orbits(std::span<const Permutation> elements,
                                              std::span<const std::int32_t> domain);
std::vector<std::vector<std::int32_t>> orbits(const FiniteGroupTable& table,
                                              std::span<const std::int32_t> domain);

// True iff no non-identity element fixes a point of `domain`.
bool is_semiregular(std::span<const Permutation> elements,
                    std::span<const std::int32_t> domain);
// As above, reporting the first (element position, fixed point) witness.
struct SemiregularWitness {
  bool semiregular = true;
  std::size_t element = 0;
  std::int32_t point = 0;
};
SemiregularWitness semiregular_witness(std::span<const Permutation> elements,
                                       std::span<const std::int32_t> domain);

}  // namespace corank
