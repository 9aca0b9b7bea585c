#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corank/action.hpp"
#include "corank/freeproduct.hpp"
#include "corank/quotient_graph.hpp"

namespace corank {

struct OrbitSummary {
  int orbit_id = 0;       // rank by smallest contained pair
  Word rep_word;          // double-coset representative
  std::string rep_str;
  int rep_point_h = 0;    // the orbit's canonical pair is (rep_point_h, K basepoint)
  std::int64_t size = 0;  // pairs in the orbit
  std::int64_t rbar = 0;
  bool principal = false;
};

// One vertical-fiber family extracted from an orbit graph: the edge fibers of
// the factor-orbit vertices over a fixed (H-side, K-side) vertex pair,
// checked as pairwise-disjoint single-quotient subsets.
struct FiberFamilyCheck {
  int orbit_id = 0;
  int factor = 0;
  int x_vertex = 0;  // H-side core vertex id
  int y_vertex = 0;  // K-side core vertex id
  std::int64_t family_size = 0;
  Rational slack;
  bool ok = false;
  std::string note;
};

struct IntersectionReport {
  std::int64_t rbar_h = 0, rbar_k = 0;
  std::vector<OrbitSummary> orbits;
  std::int64_t total = 0;           // sum of orbit ranks
  std::int64_t principal_rbar = 0;  // rank at the basepoint orbit
  std::int64_t double_coset_count = 0;
  Rational bound_rhs;               // 2 * fheight * rbar_h * rbar_k
  bool hk_equals_g = false;         // exactly one double coset
  BoundsReport bounds;
  std::vector<FiberFamilyCheck> fiber_checks;
  std::vector<CoreGraph> orbit_cores;  // populated when keep_graphs is set
};

struct IntersectOptions {
  bool keep_graphs = false;
  bool check_fibers = true;
};

bool same_spec(const FreeProductSpec& a, const FreeProductSpec& b);

// Decomposes the intersection across the orbits of the product action on
// component(H) x component(K): one orbit per double coset, each carrying the
// rank of one conjugate intersection.
IntersectionReport intersect_all(const SubgroupHandle& h, const SubgroupHandle& k,
                                 const IntersectOptions& options = {});

// Exact bijectivity of the double-coset decomposition map
//   (H^s cap K)g -> (Hsg, Kg)
// on a finite group, by forward enumeration over every coset.
struct CosetBijectionReport {
  bool bijective = false;
  bool well_defined = false;
  std::int64_t domain_size = 0;
  std::int64_t codomain_size = 0;
  std::int64_t double_cosets = 0;
};
CosetBijectionReport verify_coset_bijection(const FiniteGroupTable& q,
                                            const std::vector<Permutation>& h_gens,
                                            const std::vector<Permutation>& k_gens);

struct BoundVerdict {
  bool le_2f = false;      // total <= 2*fheight*rbar_h*rbar_k
  bool tight_2f = false;
  bool le_6 = false;       // total <= 6*rbar_h*rbar_k
  bool height_infinite = false;
  bool le_2 = true;        // total <= 2*rbar_h*rbar_k; binding when height is infinite
  Rational rhs_2f;
};
BoundVerdict check_upper_bounds(const IntersectionReport& report,
                                const BoundsReport& bounds);

}  // namespace corank
