#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "corank/freeproduct.hpp"
#include "corank/quotient_graph.hpp"

namespace corank {

// Generator images as parsed from input: one permutation per free letter,
// one per distinguished generator of each factor, all of the same degree.
struct RawAssignment {
  int degree = 0;
  std::vector<Permutation> free_images;
  std::vector<std::vector<Permutation>> factor_gen_images;
};

// A materialized action of the ambient group: the image of every factor
// element (certified homomorphic and injective per factor) plus the free
// letter images. Semiregularity of the factor images is a separate check;
// it holds automatically for regular actions and is required when the
// action itself defines the subgroup as a point stabilizer.
struct ActionAssignment {
  int degree = 0;
  std::vector<Permutation> free_images;
  std::vector<std::vector<Permutation>> factor_elements;  // [factor][element index]

  ActionView view() const {
    return ActionView{degree, free_images, factor_elements};
  }
  // The image subgroup of one factor, as an explicit table.
  FiniteGroupTable image_table(int factor) const;
};

// Certifies that the per-factor generator images extend to homomorphisms
// (breadth-first consistency over each factor's Cayley graph) and that each
// factor image is injective. Throws ValidationError naming the factor and a
// witness on failure.
ActionAssignment materialize_homomorphism(const FreeProductSpec& spec,
                                          const RawAssignment& raw);

// Throws ValidationError naming the factor, element, and fixed point when
// some non-identity factor image fixes a point.
void check_semiregular(const FreeProductSpec& spec, const ActionAssignment& a);

// materialize_homomorphism + check_semiregular: the full membership test for
// actions whose point stabilizers are the subgroups of interest.
ActionAssignment validate_action(const FreeProductSpec& spec, const RawAssignment& raw);

// A finite-index free subgroup, represented as a transitive-component action
// with basepoint: the subgroup is the stabilizer of the basepoint. Kernel
// handles use the regular right action of the image group with the identity
// as basepoint.
struct SubgroupHandle {
  std::shared_ptr<const FreeProductSpec> spec;
  ActionAssignment action;
  int basepoint = 0;            // 0-based
  std::vector<int> component;   // sorted orbit of the basepoint

  std::int64_t index() const { return static_cast<std::int64_t>(component.size()); }
};

SubgroupHandle from_kernel(std::shared_ptr<const FreeProductSpec> spec,
                           const RawAssignment& raw,
                           std::int64_t cap = kDefaultClosureCap);
SubgroupHandle from_stabilizer(std::shared_ptr<const FreeProductSpec> spec,
                               const RawAssignment& raw, int basepoint_1based);

// Quotient graph of the handle's transitive component (points relabelled
// 0..index-1 in component order).
QuotientGraph quotient_graph_of(const SubgroupHandle& h);
std::int64_t reduced_rank_of(const SubgroupHandle& h);

// The permutation a word acts by under an assignment.
Permutation evaluate_word(const FreeProductSpec& spec, const ActionAssignment& a,
                          const Word& w);

}  // namespace corank
