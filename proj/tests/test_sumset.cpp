#include <doctest.h>

#include <map>
#include <random>

#include "corank/spec_format.hpp"
#include "corank/sumset.hpp"

using namespace corank;

namespace {

FiniteGroupTable cyclic(int n) { return builtin_group("c" + std::to_string(n)); }

ElemSet<int> set_of(std::vector<int> v) { return setops::normalized(std::move(v)); }

ElemSet<int> random_subset(std::mt19937_64& rng, int n, int min_size) {
  ElemSet<int> out;
  do {
    out.clear();
    for (int e = 0; e < n; ++e)
      if (rng() % 2) out.push_back(e);
  } while (static_cast<int>(out.size()) < min_size);
  return out;
}

}  // namespace

TEST_CASE("pair_state matches the worked C6 and C5 values") {
  auto c6 = cyclic(6);
  TableAmbient amb{&c6};
  auto st = pair_state(amb, set_of({0, 1}), set_of({0, 1}));
  CHECK(st.product == set_of({0, 1, 2}));
  CHECK(st.doubly == set_of({1}));
  CHECK(st.singly == set_of({0, 2}));
  CHECK(st.omega == -4);
  CHECK(st.indicator == Indicator{3, -4, 2, 2});

  auto c5 = cyclic(5);
  TableAmbient amb5{&c5};
  auto whole = set_of({0, 1, 2, 3, 4});
  auto st5 = pair_state(amb5, whole, whole);
  CHECK(st5.product == whole);
  CHECK(st5.doubly == whole);
  CHECK(st5.omega == -10);

  auto single = pair_state(amb, set_of({2}), set_of({3}));
  CHECK(single.product == set_of({5}));
  CHECK(single.doubly.empty());
  CHECK(single.omega == -3);
}

TEST_CASE("representation fibers") {
  auto c6 = cyclic(6);
  TableAmbient amb{&c6};
  auto reps = rep_set(amb, 1, set_of({0, 1}), set_of({0, 1}));
  REQUIRE(reps.size() == 2);
  CHECK(reps[0] == std::pair<int, int>{0, 1});
  CHECK(reps[1] == std::pair<int, int>{1, 0});

  CHECK(rep_set(amb, 5, set_of({0, 1}), set_of({0, 1})).empty());

  auto c3 = cyclic(3);
  TableAmbient amb3{&c3};
  auto all3 = set_of({0, 1, 2});
  for (int x = 0; x < 3; ++x) CHECK(rep_set(amb3, x, all3, all3).size() == 3);

  // counting identity: sum of fiber sizes = |A| * |B|
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto A = random_subset(rng, 6, 1);
    auto B = random_subset(rng, 6, 1);
    std::size_t total = 0;
    auto st = pair_state(amb, A, B);
    for (int x : st.product) total += rep_set(amb, x, A, B).size();
    CHECK(total == A.size() * B.size());
    CHECK(setops::unite(st.doubly, st.singly) == st.product);
    CHECK(setops::intersect(st.doubly, st.singly).empty());
  }
}

TEST_CASE("blocks_count on cyclic groups") {
  auto c5 = cyclic(5);
  TableAmbient amb5{&c5};
  CHECK(blocks_count(amb5, set_of({0, 1, 2, 3, 4})) == 1);

  auto c6 = cyclic(6);
  TableAmbient amb{&c6};
  CHECK(blocks_count(amb, set_of({0, 1, 2})) == 0);
  CHECK(blocks_count(amb, set_of({0, 2, 4})) == 1);
  CHECK(blocks_count(amb, set_of({0, 1, 2, 3, 4, 5})) == 2);  // both C3 cosets

  auto klein = builtin_group("klein");
  TableAmbient ambv{&klein};
  CHECK(blocks_count(ambv, set_of({0, 1, 2, 3})) == 1);

  // oracle: enumerate every subgroup of order 4 / odd prime via pair closures,
  // take all cosets, count those inside C
  auto s4 = builtin_group("s4");
  TableAmbient ambs{&s4};
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    ElemSet<int> C = random_subset(rng, 24, 0);
    std::set<std::vector<int>> cosets;
    for (int a = 0; a < 24; ++a)
      for (int b = a; b < 24; ++b) {
        auto sub = FiniteGroupTable::closure(4, {s4.element(a), s4.element(b)});
        std::int64_t ord = sub.order();
        bool prime = ord >= 3 && ord % 2 == 1;
        for (std::int64_t d = 3; prime && d * d <= ord; d += 2)
          if (ord % d == 0) prime = false;
        if (!(ord == 4 || prime)) continue;
        for (int c = 0; c < 24; ++c) {
          std::vector<int> coset;
          for (const auto& p : sub.elements())
            coset.push_back(s4.mul(c, s4.index_of(p)));
          std::sort(coset.begin(), coset.end());
          bool inside = true;
          for (int e : coset)
            if (!setops::contains(C, e)) inside = false;
          if (inside) cosets.insert(coset);
        }
      }
    CHECK(blocks_count(ambs, C) == static_cast<std::int64_t>(cosets.size()));
  }
}

TEST_CASE("soundness clauses and witnesses") {
  auto c6 = cyclic(6);
  TableAmbient amb{&c6};
  auto s1 = is_sound(amb, set_of({0, 1}), set_of({0, 1}));
  CHECK(s1.sound);
  CHECK(s1.via == Soundness::Via::omega);

  auto c5 = cyclic(5);
  TableAmbient amb5{&c5};
  auto whole = set_of({0, 1, 2, 3, 4});
  auto s2 = is_sound(amb5, whole, whole);
  CHECK(s2.sound);
  CHECK(s2.via == Soundness::Via::blocks_doubly);

  CHECK_THROWS_AS(is_sound(amb, set_of({0}), set_of({0, 1})), ValidationError);

  // exhaustive over C5: every pair in S2 is sound
  for (std::uint32_t am = 0; am < 32; ++am)
    for (std::uint32_t bm = 0; bm < 32; ++bm) {
      ElemSet<int> A, B;
      for (int e = 0; e < 5; ++e) {
        if (am & (1u << e)) A.push_back(e);
        if (bm & (1u << e)) B.push_back(e);
      }
      if (A.size() < 2 || B.size() < 2) continue;
      CHECK(is_sound(amb5, A, B).sound);
    }
}

TEST_CASE("key inequality margins") {
  auto c6 = cyclic(6);
  TableAmbient amb{&c6};
  CHECK(verify_key_inequality(amb, set_of({0, 1}), set_of({0, 1}),
                              Height::finite(3)) == 0);

  auto c5 = cyclic(5);
  TableAmbient amb5{&c5};
  auto whole = set_of({0, 1, 2, 3, 4});
  CHECK(verify_key_inequality(amb5, whole, whole, Height::finite(5)) == 0);

  // |B| = 2 pins |AB| + |A.2B| = 2|A| + 2|B| - 4 exactly
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto A = random_subset(rng, 6, 2);
    int b1 = static_cast<int>(rng() % 6), b2;
    do b2 = static_cast<int>(rng() % 6); while (b2 == b1);
    auto st = pair_state(amb, A, set_of({b1, b2}));
    CHECK(static_cast<std::int64_t>(st.product.size() + st.doubly.size()) ==
          2 * static_cast<std::int64_t>(A.size()));
    CHECK(verify_key_inequality(amb, A, set_of({b1, b2}), Height::infinite()) == 0);
  }

  // |B| >= 2 gives |AB| + |A.2B| >= 2|A|, exhaustively over C6
  for (std::uint32_t am = 0; am < 64; ++am)
    for (std::uint32_t bm = 0; bm < 64; ++bm) {
      ElemSet<int> A, B;
      for (int e = 0; e < 6; ++e) {
        if (am & (1u << e)) A.push_back(e);
        if (bm & (1u << e)) B.push_back(e);
      }
      if (A.size() < 2 || B.size() < 2) continue;
      auto st = pair_state(amb, A, B);
      CHECK(static_cast<std::int64_t>(st.product.size() + st.doubly.size()) >=
            2 * static_cast<std::int64_t>(A.size()));
      CHECK(verify_key_inequality(amb, A, B, Height::finite(3)) >= 0);
    }
}

TEST_CASE("deficiency bound slack") {
  auto c5 = cyclic(5);
  TableAmbient amb5{&c5};
  auto whole = set_of({0, 1, 2, 3, 4});
  CHECK(verify_deficiency_bound(amb5, whole, whole, Rational(5, 3)) == Rational(0));

  auto c6 = cyclic(6);
  TableAmbient amb{&c6};
  auto abc = set_of({0, 1, 2});
  auto st = pair_state(amb, abc, abc);
  CHECK(st.product.size() == 5);
  CHECK(st.doubly == set_of({1, 2, 3}));
  CHECK(verify_deficiency_bound(amb, abc, abc, Rational(3)) == Rational(2));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto A = random_subset(rng, 6, 2);
    auto B = random_subset(rng, 6, 2);
    CHECK(verify_deficiency_bound(amb, A, B, Rational(3)) >= Rational(0));
  }
}

TEST_CASE("family verification") {
  auto c3 = cyclic(3);
  TableAmbient amb3{&c3};
  auto all3 = set_of({0, 1, 2});

  // the diagonal is single-quotient
  std::vector<std::vector<std::pair<int, int>>> diag{{{0, 0}, {1, 1}, {2, 2}}};
  auto fc = verify_family(amb3, all3, all3, diag, FamilyMode::single_quotient,
                          Rational(3));
  CHECK(fc.ok);
  CHECK(fc.slack == Rational(2));

  // rows of a subgroup: members {(x+y, y) : y in L} with quotient x
  auto c5 = cyclic(5);
  TableAmbient amb5{&c5};
  auto L = set_of({0, 1, 2, 3, 4});
  std::vector<std::vector<std::pair<int, int>>> rows;
  for (int x = 0; x < 5; ++x) {
    std::vector<std::pair<int, int>> member;
    for (int y = 0; y < 5; ++y) member.push_back({c5.mul(x, y), y});
    rows.push_back(member);
  }
  auto fc5 = verify_family(amb5, L, L, rows, FamilyMode::single_quotient,
                           Rational(5, 3));
  CHECK(fc5.ok);
  CHECK(fc5.slack == Rational(0));

  // single-product mode accepts multiplication fibers
  std::vector<std::vector<std::pair<int, int>>> fiber{{{0, 1}, {1, 0}}};
  CHECK(verify_family(amb5, L, L, fiber, FamilyMode::single_product, Rational(5, 3)).ok);

  // empty family: slack is the full right-hand side
  auto fce = verify_family(amb5, L, L, {}, FamilyMode::single_quotient, Rational(5, 3));
  CHECK(fce.ok);
  CHECK(fce.slack == Rational(15));

  // violations are reported, not silently ignored
  std::vector<std::vector<std::pair<int, int>>> overlap{{{0, 0}, {1, 1}},
                                                        {{0, 0}, {2, 2}}};
  auto fco = verify_family(amb5, L, L, overlap, FamilyMode::single_quotient,
                           Rational(5, 3));
  CHECK(!fco.ok);

  std::vector<std::vector<std::pair<int, int>>> mixed{{{0, 0}, {1, 0}}};
  auto fcm = verify_family(amb5, L, L, mixed, FamilyMode::single_quotient,
                           Rational(5, 3));
  CHECK(!fcm.ok);  // quotients 0 and 1 differ
}

TEST_CASE("kemperman transform on the worked example") {
  auto c6 = cyclic(6);
  TableAmbient amb{&c6};
  auto A = set_of({0, 1, 2});
  auto B = set_of({0, 1, 3});
  auto rep = kemperman_transform(amb, A, B, 1);

  // oracle: recompute the four sets by direct enumeration
  ElemSet<int> a_plus, b_minus, a_minus, b_plus;
  for (int e = 0; e < 6; ++e) {
    bool inA = setops::contains(A, e), inB = setops::contains(B, e);
    bool inAx = setops::contains(A, (e + 5) % 6);   // e in A*x iff e*xbar in A
    bool inAxbar = setops::contains(A, (e + 1) % 6);
    bool inxB = setops::contains(B, (e + 5) % 6);
    bool inxbarB = setops::contains(B, (e + 1) % 6);
    if (inA || inAx) a_plus.push_back(e);
    if (inB && inxbarB) b_minus.push_back(e);
    if (inA && inAxbar) a_minus.push_back(e);
    if (inB || inxB) b_plus.push_back(e);
  }
  CHECK(rep.A_plus == a_plus);
  CHECK(rep.B_minus == b_minus);
  CHECK(rep.A_minus == a_minus);
  CHECK(rep.B_plus == b_plus);
  CHECK(rep.A_plus == set_of({0, 1, 2, 3}));
  CHECK(rep.B_minus == set_of({0}));
  CHECK(rep.A_minus == set_of({0, 1}));
  CHECK(rep.B_plus == set_of({0, 1, 2, 3, 4}));

  CHECK(rep.delta_plus.dA + rep.delta_minus.dA == 0);
  CHECK(rep.delta_plus.dB + rep.delta_minus.dB == 0);
  CHECK(rep.delta_plus.dOmega + rep.delta_minus.dOmega <= 0);
  CHECK(!rep.translate_fixes_A);

  // delta map identity dOmega = d1 + d2 - 2 dA - 2 dB, both signs
  for (const DeltaMap* d : {&rep.delta_plus, &rep.delta_minus})
    CHECK(d->dOmega == d->d1 + d->d2 - 2 * d->dA - 2 * d->dB);
}

TEST_CASE("transform fixes the pair when A*x = A") {
  auto c6 = cyclic(6);
  TableAmbient amb{&c6};
  auto rep = kemperman_transform(amb, set_of({0, 3}), set_of({0, 1}), 3);
  CHECK(rep.translate_fixes_A);
  CHECK(rep.case_taken == TransformCase::identity);
  CHECK(rep.chosen_A == set_of({0, 3}));
  CHECK(rep.chosen_B == set_of({0, 1}));

  auto id = kemperman_transform(amb, set_of({0, 1}), set_of({0, 1}), 0);
  CHECK(id.translate_fixes_A);
  CHECK(id.chosen_A == set_of({0, 1}));
}

TEST_CASE("transform identities hold over random table pairs") {
  auto s3 = builtin_group("s3");
  TableAmbient amb{&s3};
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 3'000; ++trial) {
    auto A = random_subset(rng, 6, 1);
    auto B = random_subset(rng, 6, 1);
    int x = static_cast<int>(rng() % 6);
    auto rep = kemperman_transform(amb, A, B, x);
    CHECK(rep.delta_plus.dA + rep.delta_minus.dA == 0);
    CHECK(rep.delta_plus.dB + rep.delta_minus.dB == 0);
    CHECK(rep.delta_plus.d1 <= 0);
    CHECK(rep.delta_minus.d1 <= 0);
    CHECK(rep.delta_plus.dOmega + rep.delta_minus.dOmega <= 0);

    // the triple intersections are empty (both versions)
    auto triple1 = setops::intersect(
        setops::intersect(rep.plus_pair.product, rep.minus_pair.doubly),
        rep.base.singly);
    CHECK(triple1.empty());
    auto triple2 = setops::intersect(
        setops::intersect(rep.minus_pair.product, rep.plus_pair.doubly),
        rep.base.singly);
    CHECK(triple2.empty());

    std::int64_t d2m = rep.delta_minus.d2;
    auto cap = setops::intersect(rep.minus_pair.doubly, rep.base.singly);
    CHECK(std::max<std::int64_t>(0, d2m) <=
          static_cast<std::int64_t>(cap.size()));

    // chosen pair: A'B' inside AB, Omega does not increase, strict descent
    auto chosen = pair_state(amb, rep.chosen_A, rep.chosen_B);
    CHECK(setops::subtract(chosen.product, rep.base.product).empty());
    CHECK(chosen.omega <= rep.base.omega);
    if (!rep.translate_fixes_A)
      CHECK(indicator_compare(chosen.indicator, rep.base.indicator) ==
            std::strong_ordering::less);
  }
}

TEST_CASE("the chosen pair follows the four-case rule") {
  auto c6 = cyclic(6);
  TableAmbient amb{&c6};
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 2'000; ++trial) {
    auto A = random_subset(rng, 6, 1);
    auto B = random_subset(rng, 6, 1);
    int x = 1 + static_cast<int>(rng() % 5);
    auto rep = kemperman_transform(amb, A, B, x);
    if (rep.translate_fixes_A) {
      CHECK(rep.case_taken == TransformCase::identity);
      CHECK(rep.chosen_A == setops::normalized(A));
      continue;
    }
    bool expect_minus;
    if (rep.delta_minus.dOmega < 0) expect_minus = true;
    else if (rep.delta_plus.dOmega < 0) expect_minus = false;
    else if (rep.delta_plus.dB < 0) expect_minus = false;
    else expect_minus = true;
    if (expect_minus) {
      CHECK(rep.chosen_A == rep.A_minus);
      CHECK(rep.chosen_B == rep.B_plus);
    } else {
      CHECK(rep.chosen_A == rep.A_plus);
      CHECK(rep.chosen_B == rep.B_minus);
    }
  }
}

TEST_CASE("duality preserves the pair statistics") {
  auto s3 = builtin_group("s3");
  TableAmbient amb{&s3};
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    auto A = random_subset(rng, 6, 2);
    auto B = random_subset(rng, 6, 2);
    ElemSet<int> dualA, dualB;
    for (int b : B) dualA.push_back(s3.inv(b));
    for (int a : A) dualB.push_back(s3.inv(a));
    dualA = setops::normalized(std::move(dualA));
    dualB = setops::normalized(std::move(dualB));

    auto st = pair_state(amb, A, B);
    auto dual = pair_state(amb, dualA, dualB);
    CHECK(st.product.size() == dual.product.size());
    CHECK(st.doubly.size() == dual.doubly.size());
    CHECK(st.omega == dual.omega);
    CHECK(blocks_count(amb, st.product) == blocks_count(amb, dual.product));
    CHECK(blocks_count(amb, st.doubly) == blocks_count(amb, dual.doubly));
    CHECK(is_sound(amb, A, B).sound == is_sound(amb, dualA, dualB).sound);
  }
}

TEST_CASE("indicator comparison is lexicographic") {
  CHECK(indicator_compare({3, -4, 2, 2}, {3, -4, 2, 3}) == std::strong_ordering::less);
  CHECK(indicator_compare({3, -4, 2, 2}, {3, -4, 2, 2}) == std::strong_ordering::equal);
  CHECK(indicator_compare({2, -4, 2, 2}, {3, -10, 5, 5}) == std::strong_ordering::less);
}

TEST_CASE("descent chains terminate with strict descent") {
  auto c6 = cyclic(6);
  TableAmbient amb{&c6};

  auto stop = [](const PairStats<TableAmbient>&) { return std::optional<int>{}; };
  auto t0 = descent_chain(amb, set_of({0, 1}), set_of({0, 1}), stop, 10);
  CHECK(t0.completed);
  CHECK(t0.states.size() == 1);

  // first x in (A cap B) - {0} with A*x != A
  auto selector = [&](const PairStats<TableAmbient>& st) -> std::optional<int> {
    for (int x : setops::intersect(st.A_set, st.B_set)) {
      if (x == 0) continue;
      if (right_translate(amb, st.A_set, x) != st.A_set) return x;
    }
    return std::nullopt;
  };
  auto trace = descent_chain(amb, set_of({0, 1, 2, 3}), set_of({0, 1, 2, 3}),
                             selector, 100);
  CHECK(trace.completed);
  CHECK(trace.error.empty());
  CHECK(trace.states.size() > 1);
  for (std::size_t i = 1; i < trace.states.size(); ++i)
    CHECK(indicator_compare(trace.states[i].indicator,
                            trace.states[i - 1].indicator) ==
          std::strong_ordering::less);

  // a selector that violates its contract is reported
  auto bad = [](const PairStats<TableAmbient>&) { return std::optional<int>{0}; };
  auto tbad = descent_chain(amb, set_of({0, 1}), set_of({0, 1}), bad, 10);
  CHECK(!tbad.completed);
  CHECK(tbad.error == "selector returned x with A*x == A");
}

TEST_CASE("transform identities hold over word ambients") {
  FreeProductSpec spec;
  spec.factors.push_back(make_cyclic_factor("x", 2));
  spec.factors.push_back(make_cyclic_factor("y", 3));
  WordAmbient amb{&spec};

  Word one = word_one();
  Word x = word_factor(spec, 0, 1);
  Word y = word_factor(spec, 1, 1);
  Word y2 = word_factor(spec, 1, 2);
  Word xy = word_mul(spec, x, y);

  std::vector<Word> pool{one, x, y, y2, xy, word_mul(spec, y, x),
                         word_mul(spec, xy, x), word_mul(spec, xy, xy)};
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 500; ++trial) {
    ElemSet<Word> A, B;
    for (const Word& w : pool) {
      if (rng() % 2) A.push_back(w);
      if (rng() % 2) B.push_back(w);
    }
    A = setops::normalized(std::move(A));
    B = setops::normalized(std::move(B));
    if (A.empty() || B.empty()) continue;
    const Word& xw = pool[rng() % pool.size()];
    auto rep = kemperman_transform(amb, A, B, xw);
    CHECK(rep.delta_plus.dA + rep.delta_minus.dA == 0);
    CHECK(rep.delta_plus.dB + rep.delta_minus.dB == 0);
    CHECK(rep.delta_plus.d1 <= 0);
    CHECK(rep.delta_minus.d1 <= 0);
    CHECK(rep.delta_plus.dOmega + rep.delta_minus.dOmega <= 0);
    auto chosen = pair_state(amb, rep.chosen_A, rep.chosen_B);
    CHECK(setops::subtract(chosen.product, rep.base.product).empty());
    if (!rep.translate_fixes_A)
      CHECK(indicator_compare(chosen.indicator, rep.base.indicator) ==
            std::strong_ordering::less);
  }
}

TEST_CASE("blocks in word ambients skip infinite-order candidates") {
  FreeProductSpec spec;
  spec.factors.push_back(make_cyclic_factor("x", 2));
  spec.factors.push_back(make_cyclic_factor("y", 5));
  WordAmbient amb{&spec};

  // the image of C5 inside the free product is a block of itself
  ElemSet<Word> c5_words;
  for (int e = 0; e < 5; ++e) c5_words.push_back(word_factor(spec, 1, e));
  c5_words = setops::normalized(std::move(c5_words));
  CHECK(blocks_count(amb, c5_words) == 1);

  // a set with infinite-order elements only has no blocks
  Word xy = word_mul(spec, word_factor(spec, 0, 1), word_factor(spec, 1, 1));
  ElemSet<Word> free_words{word_one(), xy, word_mul(spec, xy, xy)};
  free_words = setops::normalized(std::move(free_words));
  CHECK(blocks_count(amb, free_words) == 0);
}
