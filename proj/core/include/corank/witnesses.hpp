#pragma once

#include <array>
#include <memory>
#include <string>

#include "corank/action.hpp"
#include "corank/intersect.hpp"

namespace corank {

// Canned constructions of kernel pairs with known rank triples, used by the
// CLI `example` subcommand and the acceptance suite.
struct WitnessCase {
  std::shared_ptr<const FreeProductSpec> spec;
  std::string source;
  SubgroupHandle h, k;
  std::array<std::int64_t, 3> expected_triple{};  // (rbar H, rbar K, rbar H^K)
  bool has_expected_triple = true;
  bool expects_hk_equals_g = true;
};

WitnessCase example_222();
WitnessCase example_2V();

enum class Variant2p { main, alt };
// p is 4 or an odd prime. The alt variant (default) is the small second
// kernel whose rank triple is on record: Sym4 images at p = 4, the
// projective-line action at odd p. The main variant is the 2p-point kernel;
// its second rank grows quickly (its image at p = 5 is already past the
// closure cap) and no triple is asserted for it.
WitnessCase example_2p(int p, Variant2p variant = Variant2p::alt);
WitnessCase example_pp(int p);

struct WitnessRun {
  IntersectionReport report;
  std::array<std::int64_t, 3> computed{};
  bool triple_ok = false;
  bool hk_ok = false;
  bool proposition_ok = false;  // rbar(HK) == (-1/chi) * rbarH * rbarK when HK = G
  bool euler_ok = false;        // rbar = index * (-chi) for both handles
  bool bounds_ok = false;       // total <= 2f and <= 6 products; <= 2 when height inf
  bool fibers_ok = false;
  bool all_ok() const {
    return triple_ok && hk_ok && proposition_ok && euler_ok && bounds_ok && fibers_ok;
  }
};
WitnessRun run_witness(const WitnessCase& wcase);

// The modular-group family over C2 * C3: kernels of the maps onto the
// images of orders 6 and 12 and of their product map, with rank checks and
// the product-orbit identity between the pairwise intersection and the
// product-map kernel.
struct Psl2Report {
  std::int64_t order2 = 0, order3 = 0, order6 = 0;    // expect 6, 12, 72
  std::int64_t rbar2 = 0, rbar3 = 0, rbar6 = 0;       // expect 1, 2, 12
  bool xy_relations_ok = false;  // (xy)^2 = 1 under phi2, (xy)^3 = 1 under phi3
  bool intersection_matches = false;  // single orbit, size 72, principal rank 12
  bool ok() const {
    return order2 == 6 && order3 == 12 && order6 == 72 && rbar2 == 1 &&
           rbar3 == 2 && rbar6 == 12 && xy_relations_ok && intersection_matches;
  }
};
Psl2Report psl2_facts();

// Lower-bound witness selected by (depth, height) on an embedded sub-free-
// product, together with the embedding conjugators (distinct coset
// representatives in the complement of the chosen factor).
struct LowerBoundWitness {
  WitnessCase witness;
  std::string case_name;
  std::vector<Word> embedding;  // words over the original spec
  Rational ratio;               // depth * fheight of the original spec
};
LowerBoundWitness lower_bound_witness(std::shared_ptr<const FreeProductSpec> spec);

}  // namespace corank
