#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corank/group_table.hpp"
#include "corank/height.hpp"

namespace corank {

// Exhaustive pair sweeps over one finite group, on bitset subsets of a fixed
// element enumeration. Product sets run off a flat multiplication table; this
// is the hot loop of the whole artifact. Violations are collected, never
// fail-fast, so a counterexample would be reported in full.
class SweepEngine {
 public:
  // Exhaustive sweeps enumerate all 2^n subsets twice over; capped at 16.
  static constexpr int kMaxExhaustiveOrder = 16;
  // Sampling checks only need masks to fit a word; capped at 32.
  static constexpr int kMaxOrder = 32;

  enum class Check { key_inequality, soundness, deficiency, transform };

  struct Violation {
    std::uint32_t a_mask = 0, b_mask = 0;
    std::uint32_t x = 0;  // transform checks only
    std::string detail;
  };
  struct Result {
    std::vector<Violation> violations;
    // Pairs with blocks(AB) >= 2 but omega < -4 and blocks(A.2B) == 0; no such
    // pair is known, so any find is reported without being asserted against.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> curiosities;
    std::int64_t pairs_checked = 0;
  };

  explicit SweepEngine(const FiniteGroupTable& table);

  int order() const { return n_; }
  Height height() const { return height_; }

  // Exhaustive run over all pairs with |A|, |B| >= min_size; the transform
  // check additionally loops over all x != identity.
  Result sweep(Check check, int min_size, int jobs = 1) const;

  // Randomized transform-identity run over `samples` uniform (A, B, x).
  Result sweep_transform_samples(std::int64_t samples, int min_size,
                                 std::uint64_t seed, int jobs = 1) const;

  std::int64_t pair_count(int min_size) const;

  // Exposed for cross-checks against the generic set implementation.
  struct PairBits {
    std::uint32_t product = 0, doubly = 0;
  };
  PairBits pair_bits(std::uint32_t a_mask, std::uint32_t b_mask) const;
  std::int64_t blocks_of_mask(std::uint32_t c_mask) const;
  std::string mask_str(std::uint32_t mask) const;

 private:
  struct TransformOutcome;
  bool check_transform_triple(std::uint32_t a_mask, std::uint32_t b_mask,
                              std::uint32_t x, std::string* why) const;
  Result run_range(Check check, int min_size, std::uint32_t b_begin,
                   std::uint32_t b_end) const;

  int n_ = 0;
  Height height_ = Height::infinite();
  std::vector<std::uint8_t> mul_;   // n x n
  std::vector<std::uint8_t> inv_;
  std::vector<std::uint32_t> block_masks_;
};

}  // namespace corank
