#include <doctest.h>

#include <set>

#include "corank/freeproduct.hpp"

using namespace corank;

namespace {

FreeProductSpec spec_of(std::vector<FactorSpec> factors, int free_rank = 0) {
  FreeProductSpec s;
  s.factors = std::move(factors);
  s.free_rank = free_rank;
  return s;
}

// independent oracle: smallest subgroup order >= 3 via closures of all <= 2
// element subsets (every group of order 4 or odd prime is 1- or 2-generated)
Height height_by_small_closures(const FiniteGroupTable& t) {
  std::int64_t best = 0;
  for (int a = 0; a < t.order(); ++a)
    for (int b = a; b < t.order(); ++b) {
      auto sub = FiniteGroupTable::closure(t.degree(), {t.element(a), t.element(b)});
      if (sub.order() >= 3 && (best == 0 || sub.order() < best)) best = sub.order();
    }
  return best == 0 ? Height::infinite() : Height::finite(best);
}

// full subgroup lattice by closing each subgroup under one extra element
std::set<std::set<int>> subgroup_lattice(const FiniteGroupTable& t) {
  std::set<std::set<int>> lattice{{0}};
  std::vector<std::set<int>> frontier{{0}};
  while (!frontier.empty()) {
    std::vector<std::set<int>> next;
    for (const auto& sub : frontier) {
      for (int g = 0; g < t.order(); ++g) {
        if (sub.count(g)) continue;
        std::vector<Permutation> gens;
        for (int e : sub) gens.push_back(t.element(e));
        gens.push_back(t.element(g));
        auto closed = FiniteGroupTable::closure(t.degree(), gens);
        std::set<int> elems;
        for (const auto& p : closed.elements()) elems.insert(t.index_of(p));
        if (lattice.insert(elems).second) next.push_back(std::move(elems));
      }
    }
    frontier = std::move(next);
  }
  return lattice;
}

}  // namespace

TEST_CASE("height_finite on the stock examples") {
  CHECK(height_finite(make_cyclic_factor("c", 2).table) == Height::infinite());
  CHECK(height_finite(make_klein_factor("v").table) == Height::finite(4));
  CHECK(height_finite(make_sym_factor("s", 3).table) == Height::finite(3));
  CHECK(height_finite(make_cyclic_factor("c", 4).table) == Height::finite(4));
  CHECK(height_finite(make_cyclic_factor("c", 7).table) == Height::finite(7));
  CHECK(height_finite(make_cyclic_factor("c", 35).table) == Height::finite(5));
}

TEST_CASE("height_finite agrees with the small-closure oracle") {
  std::vector<FiniteGroupTable> tables;
  tables.push_back(make_cyclic_factor("c", 2).table);
  tables.push_back(make_cyclic_factor("c", 4).table);
  tables.push_back(make_cyclic_factor("c", 6).table);
  tables.push_back(make_klein_factor("v").table);
  tables.push_back(make_sym_factor("s", 3).table);
  tables.push_back(make_sym_factor("s", 4).table);
  tables.push_back(make_alt_factor("a", 4).table);
  tables.push_back(FiniteGroupTable::closure(4, {parse_cycles("(1 2 3 4)", 4),
                                                 parse_cycles("(2 4)", 4)}));  // D4
  for (const auto& t : tables) {
    CHECK(height_finite(t) == height_by_small_closures(t));
  }
}

TEST_CASE("height_finite agrees with the full subgroup lattice up to order 24") {
  std::vector<FiniteGroupTable> tables;
  tables.push_back(make_sym_factor("s", 4).table);   // order 24
  tables.push_back(make_alt_factor("a", 4).table);   // order 12
  tables.push_back(make_cyclic_factor("c", 15).table);
  tables.push_back(make_klein_factor("v").table);
  for (const auto& t : tables) {
    std::int64_t best = 0;
    for (const auto& sub : subgroup_lattice(t))
      if (sub.size() >= 3 &&
          (best == 0 || static_cast<std::int64_t>(sub.size()) < best))
        best = static_cast<std::int64_t>(sub.size());
    Height lattice_height = best == 0 ? Height::infinite() : Height::finite(best);
    CHECK(height_finite(t) == lattice_height);
  }
}

TEST_CASE("fheight is bijective and strictly decreasing") {
  std::vector<Height> hs{Height::finite(3), Height::finite(4), Height::finite(5),
                         Height::finite(7), Height::finite(11), Height::infinite()};
  std::vector<Rational> expect{{3, 1}, {2, 1}, {5, 3}, {7, 5}, {11, 9}, {1, 1}};
  for (std::size_t i = 0; i < hs.size(); ++i) CHECK(hs[i].fheight() == expect[i]);
  for (std::size_t i = 0; i + 1 < hs.size(); ++i)
    CHECK(hs[i].fheight() > hs[i + 1].fheight());
}

TEST_CASE("compute_bounds on the worked ambients") {
  auto b = compute_bounds(spec_of({make_cyclic_factor("x", 2), make_cyclic_factor("y", 3)}));
  CHECK(b.chi == Rational(-1, 6));
  CHECK(b.height == Height::finite(3));
  CHECK(b.fheight == Rational(3));
  CHECK(b.depth == 2);
  CHECK(b.sigma_lower == Rational(6));
  CHECK(b.sigma_upper == Rational(6));

  auto b222 = compute_bounds(spec_of({make_cyclic_factor("x", 2),
                                      make_cyclic_factor("y", 2),
                                      make_cyclic_factor("z", 2)}));
  CHECK(b222.chi == Rational(-1, 2));
  CHECK(!b222.height.is_finite());
  CHECK(b222.fheight == Rational(1));
  CHECK(b222.depth == 2);
  CHECK(b222.sigma_lower == Rational(2));
  CHECK(b222.sigma_upper == Rational(2));

  auto b27 = compute_bounds(spec_of({make_cyclic_factor("x", 2), make_cyclic_factor("y", 7)}));
  CHECK(b27.fheight == Rational(7, 5));

  auto bfree = compute_bounds(spec_of({}, 2));
  CHECK(bfree.chi == Rational(-1));
  CHECK(bfree.depth == 1);
  CHECK(bfree.sigma_lower == Rational(1));
  CHECK(bfree.sigma_upper == Rational(2));

  auto b33 = compute_bounds(spec_of({make_cyclic_factor("x", 3), make_cyclic_factor("y", 3)}));
  CHECK(b33.depth == 1);
  CHECK(b33.sigma_lower == Rational(3));
  CHECK(b33.sigma_upper == Rational(6));
}

TEST_CASE("chi is additive over factors") {
  std::vector<FactorSpec> factors{make_cyclic_factor("a", 2), make_klein_factor("b"),
                                  make_sym_factor("c", 3)};
  Rational chi = compute_bounds(spec_of(factors, 2)).chi;
  Rational expect = Rational(1) - Rational(2);  // 1 - free_rank
  for (const auto& f : factors) expect = expect + Rational(1, f.order()) - Rational(1);
  CHECK(chi == expect);
}

TEST_CASE("nondegeneracy cases") {
  auto r1 = validate_nondegenerate(spec_of({make_cyclic_factor("x", 2)}));
  CHECK(!r1.ok);

  auto r2 = validate_nondegenerate(
      spec_of({make_cyclic_factor("x", 2), make_cyclic_factor("y", 2)}));
  CHECK(!r2.ok);  // infinite dihedral

  auto r3 = validate_nondegenerate(
      spec_of({make_cyclic_factor("x", 2), make_cyclic_factor("y", 3)}));
  CHECK(r3.ok);

  CHECK(validate_nondegenerate(spec_of({}, 2)).ok);
  CHECK(!validate_nondegenerate(spec_of({}, 1)).ok);
  CHECK(validate_nondegenerate(spec_of({make_cyclic_factor("x", 2)}, 1)).ok);
  CHECK(validate_nondegenerate(
            spec_of({make_cyclic_factor("x", 2), make_cyclic_factor("y", 2),
                     make_cyclic_factor("z", 2)}))
            .ok);
}

TEST_CASE("trivial factors are rejected") {
  CHECK_THROWS_AS(make_cyclic_factor("t", 1), ValidationError);
  FreeProductSpec dup;
  dup.factors.push_back(make_cyclic_factor("x", 2));
  dup.factors.push_back(make_cyclic_factor("x", 3));
  CHECK_THROWS_AS(dup.validate(), ValidationError);
}

TEST_CASE("factor constructors materialize the right orders") {
  CHECK(make_cyclic_factor("c", 5).order() == 5);
  CHECK(make_klein_factor("v").order() == 4);
  CHECK(make_sym_factor("s", 4).order() == 24);
  CHECK(make_alt_factor("a", 4).order() == 12);
  CHECK(make_alt_factor("a", 5).order() == 60);
  CHECK(make_perm_factor("p", 5, {parse_cycles("(1 2 3 4 5)", 5),
                                  parse_cycles("(1 2)", 5)})
            .order() == 120);
}
