#include "corank/witnesses.hpp"

#include <algorithm>

namespace corank {

namespace {

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

std::string cycle_range(int from, int to) {  // "(from from+1 ... to)"
  std::string out = "(";
  for (int k = from; k <= to; ++k) out += std::to_string(k) + (k == to ? ")" : " ");
  return out;
}

std::shared_ptr<const FreeProductSpec> make_spec(std::vector<FactorSpec> factors,
                                                 int free_rank = 0) {
  auto spec = std::make_shared<FreeProductSpec>();
  spec->factors = std::move(factors);
  spec->free_rank = free_rank;
  spec->validate();
  return spec;
}

}  // namespace

WitnessCase example_222() {
  WitnessCase w;
  w.source = "C2*C2*C2";
  w.spec = make_spec({make_cyclic_factor("x", 2), make_cyclic_factor("y", 2),
                      make_cyclic_factor("z", 2)});

  RawAssignment h;
  h.degree = 2;
  Permutation t2 = parse_cycles("(1 2)", 2);
  h.factor_gen_images = {{t2}, {t2}, {t2}};
  w.h = from_kernel(w.spec, h);

  RawAssignment k;
  k.degree = 4;
  k.factor_gen_images = {{parse_cycles("(1 2)", 4)},
                         {parse_cycles("(3 4)", 4)},
                         {parse_cycles("(1 2)(3 4)", 4)}};
  w.k = from_kernel(w.spec, k);

  w.expected_triple = {1, 2, 4};
  w.expects_hk_equals_g = true;
  return w;
}

WitnessCase example_2V() {
  WitnessCase w;
  w.source = "C2*V";
  w.spec = make_spec({make_cyclic_factor("x", 2), make_klein_factor("V")});

  RawAssignment h;
  h.degree = 4;
  h.factor_gen_images = {{parse_cycles("(1 2)(3 4)", 4)},
                         {parse_cycles("(1 2)", 4), parse_cycles("(3 4)", 4)}};
  w.h = from_kernel(w.spec, h);

  RawAssignment k;
  k.degree = 4;
  k.factor_gen_images = {{parse_cycles("(1 3)", 4)},
                         {parse_cycles("(1 2)", 4), parse_cycles("(3 4)", 4)}};
  w.k = from_kernel(w.spec, k);

  w.expected_triple = {1, 6, 24};
  w.expects_hk_equals_g = true;
  return w;
}

WitnessCase example_2p(int p, Variant2p variant) {
  if (p != 4 && !is_odd_prime(p))
    throw ValidationError("example_2p: p must be 4 or an odd prime");

  WitnessCase w;
  w.source = "C2*C" + std::to_string(p) +
             (variant == Variant2p::main ? " (main)" : "");
  w.spec = make_spec({make_cyclic_factor("x", 2), make_cyclic_factor("y", p)});

  RawAssignment h;
  if (variant == Variant2p::alt && p == 3) {
    // at p = 3 the recorded triple pairs the kernel of the order-6 symmetric
    // image with the projective-line kernel (the modular mod-2/mod-3 pair);
    // the direct-product image below would miss HK = G here
    h.degree = 3;
    h.factor_gen_images = {{parse_cycles("(1 2)", 3)}, {parse_cycles("(1 2 3)", 3)}};
  } else {
    const int q = (p == 4) ? 2 : p;
    h.degree = q + 2;
    Permutation hx = (p == 4) ? parse_cycles("(1 3)(2 4)", 4)
                              : parse_cycles("(" + std::to_string(p + 1) + " " +
                                                 std::to_string(p + 2) + ")",
                                             q + 2);
    h.factor_gen_images = {{hx}, {parse_cycles(cycle_range(1, p), q + 2)}};
  }
  w.h = from_kernel(w.spec, h);

  RawAssignment k;
  if (variant == Variant2p::main) {
    k.degree = 2 * p;
    k.factor_gen_images = {
        {parse_cycles("(1 " + std::to_string(p + 1) + ")(2 3)", 2 * p)},
        {parse_cycles(cycle_range(1, p) + cycle_range(p + 1, 2 * p), 2 * p)}};
  } else if (p == 4) {
    k.degree = 4;
    k.factor_gen_images = {{parse_cycles("(1 2)", 4)},
                           {parse_cycles("(1 2 3 4)", 4)}};
  } else {
    // projective line over F_p: points 1..p are t = 0..p-1, point p+1 is the
    // point at infinity; x: t -> -1/t, y: t -> t+1
    k.degree = p + 1;
    const int inf = p;  // 0-based
    std::vector<std::int32_t> ximg(p + 1), yimg(p + 1);
    auto inv_mod = [p](int t) {  // t^(p-2) mod p
      std::int64_t acc = 1, base = t, e = p - 2;
      while (e > 0) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
      }
      return static_cast<int>(acc);
    };
    for (int t = 0; t < p; ++t) {
      ximg[t] = (t == 0) ? inf : (p - inv_mod(t)) % p;
      yimg[t] = (t + 1) % p;
    }
    ximg[inf] = 0;
    yimg[inf] = inf;
    k.factor_gen_images = {{Permutation::from_images(ximg)},
                           {Permutation::from_images(yimg)}};
  }
  w.k = from_kernel(w.spec, k);

  if (variant == Variant2p::main) {
    // the 2p-point kernel has no recorded triple; identities are still checked
    w.has_expected_triple = false;
  } else if (p == 3) {
    w.expected_triple = {1, 2, 12};
  } else if (p == 4) {
    w.expected_triple = {1, 6, 24};
  } else {
    std::int64_t pp = p;
    w.expected_triple = {pp - 2, (pp * pp - 1) * (pp - 2) / 4,
                         2 * pp * (pp * pp - 1) * (pp - 2) / 4};
  }
  w.expects_hk_equals_g = true;
  return w;
}

WitnessCase example_pp(int p) {
  if (!is_odd_prime(p)) throw ValidationError("example_pp: p must be an odd prime");
  WitnessCase w;
  w.source = "C" + std::to_string(p) + "*C" + std::to_string(p);
  w.spec = make_spec({make_cyclic_factor("x", p), make_cyclic_factor("y", p)});

  Permutation cyc = parse_cycles(cycle_range(1, p), p);
  RawAssignment h;
  h.degree = p;
  h.factor_gen_images = {{cyc}, {cyc}};
  w.h = from_kernel(w.spec, h);

  RawAssignment k;
  k.degree = p;
  k.factor_gen_images = {{cyc}, {inverse(cyc)}};
  w.k = from_kernel(w.spec, k);

  w.expected_triple = {p - 2, p - 2, static_cast<std::int64_t>(p) * (p - 2)};
  w.expects_hk_equals_g = true;
  return w;
}

WitnessRun run_witness(const WitnessCase& wcase) {
  WitnessRun run;
  run.report = intersect_all(wcase.h, wcase.k);
  run.computed = {run.report.rbar_h, run.report.rbar_k, run.report.principal_rbar};
  run.triple_ok = !wcase.has_expected_triple || (run.computed == wcase.expected_triple);
  run.hk_ok = (run.report.hk_equals_g == wcase.expects_hk_equals_g);

  const Rational chi = run.report.bounds.chi;
  run.euler_ok =
      Rational(run.report.rbar_h) == Rational(-wcase.h.index()) * chi &&
      Rational(run.report.rbar_k) == Rational(-wcase.k.index()) * chi;
  if (run.report.hk_equals_g) {
    run.proposition_ok =
        Rational(run.report.principal_rbar) ==
        (Rational(-1) / chi) * Rational(run.report.rbar_h) * Rational(run.report.rbar_k);
  } else {
    run.proposition_ok = true;  // identity only asserted when HK = G
  }
  BoundVerdict verdict = check_upper_bounds(run.report, run.report.bounds);
  run.bounds_ok =
      verdict.le_2f && verdict.le_6 && (!verdict.height_infinite || verdict.le_2);

  run.fibers_ok = true;
  for (const FiberFamilyCheck& fc : run.report.fiber_checks)
    if (!fc.ok || fc.slack < Rational(0)) run.fibers_ok = false;
  return run;
}

Psl2Report psl2_facts() {
  Psl2Report rep;
  auto spec = make_spec({make_cyclic_factor("x", 2), make_cyclic_factor("y", 3)});

  RawAssignment two;
  two.degree = 3;
  two.factor_gen_images = {{parse_cycles("(1 2)", 3)}, {parse_cycles("(1 2 3)", 3)}};
  RawAssignment three;
  three.degree = 4;
  three.factor_gen_images = {{parse_cycles("(1 2)(3 4)", 4)},
                             {parse_cycles("(1 2 3)", 4)}};

  Permutation xy2 = compose(two.factor_gen_images[0][0], two.factor_gen_images[1][0]);
  Permutation xy3 =
      compose(three.factor_gen_images[0][0], three.factor_gen_images[1][0]);
  rep.xy_relations_ok = element_order(xy2) == 2 && element_order(xy3) == 3;

  SubgroupHandle g2 = from_kernel(spec, two);
  SubgroupHandle g3 = from_kernel(spec, three);
  rep.order2 = g2.index();
  rep.order3 = g3.index();
  rep.rbar2 = reduced_rank_of(g2);
  rep.rbar3 = reduced_rank_of(g3);

  // the product map, acting block-diagonally on 3 + 4 points
  RawAssignment six;
  six.degree = 7;
  six.factor_gen_images = {{parse_cycles("(1 2)(4 5)(6 7)", 7)},
                           {parse_cycles("(1 2 3)(4 5 6)", 7)}};
  SubgroupHandle g6 = from_kernel(spec, six);
  rep.order6 = g6.index();
  rep.rbar6 = reduced_rank_of(g6);

  IntersectionReport inter = intersect_all(g2, g3);
  rep.intersection_matches = inter.double_coset_count == 1 &&
                             inter.orbits.size() == 1 &&
                             inter.orbits[0].size == rep.order6 &&
                             inter.principal_rbar == rep.rbar6;
  return rep;
}

namespace {

// up to `count` distinct short words in the complement of factor j
std::vector<Word> complement_elements(const FreeProductSpec& spec, int skip_factor,
                                      std::size_t count) {
  std::vector<Word> out{word_one()};
  for (int i = 0; i < spec.factor_count() && out.size() < count; ++i) {
    if (i == skip_factor) continue;
    for (int e = 1; e < spec.factors[i].order() && out.size() < count; ++e)
      out.push_back(word_factor(spec, i, e));
  }
  for (int j = 0; j < spec.free_rank && out.size() < count; ++j) {
    out.push_back(word_letter(spec, j, 1));
    if (out.size() < count) out.push_back(word_letter(spec, j, -1));
  }
  return out;
}

bool factor_has_involution(const FactorSpec& f) {
  for (int e = 1; e < f.order(); ++e)
    if (f.table.order_of(e) == 2) return true;
  return false;
}

// complement order: -1 for infinite
std::int64_t complement_order(const FreeProductSpec& spec, int skip_factor) {
  if (spec.free_rank >= 1 || spec.factor_count() >= 3) return -1;
  if (spec.factor_count() == 2) return spec.factors[1 - skip_factor].order();
  return 1;
}

}  // namespace

LowerBoundWitness lower_bound_witness(std::shared_ptr<const FreeProductSpec> spec) {
  NondegeneracyReport nd = validate_nondegenerate(*spec);
  if (!nd.ok) throw ValidationError("lower_bound_witness: degenerate spec: " + nd.diagnosis);
  BoundsReport bounds = compute_bounds(*spec);

  LowerBoundWitness out;
  out.ratio = Rational(bounds.depth) * bounds.fheight;

  if (bounds.depth == 2) {
    // factor with an involution whose complement has order >= 3
    int j = -1;
    for (int i = 0; i < spec->factor_count(); ++i) {
      if (!factor_has_involution(spec->factors[i])) continue;
      std::int64_t rest = complement_order(*spec, i);
      if (rest == -1 || rest >= 3) {
        j = i;
        break;
      }
    }
    if (j < 0) throw ValidationError("lower_bound_witness: no usable involution factor");

    if (!bounds.height.is_finite()) {
      out.case_name = "depth 2, height inf";
      out.witness = example_222();
      out.embedding = complement_elements(*spec, j, 3);
    } else {
      const int p = static_cast<int>(bounds.height.value());
      // factor carrying a subgroup of order p
      int i = -1;
      bool klein_shape = false;
      for (int f = 0; f < spec->factor_count(); ++f) {
        Height hf = height_finite(spec->factors[f].table);
        if (hf.is_finite() && hf.value() == p) {
          i = f;
          if (p == 4) {
            bool has4 = false;
            for (int e = 1; e < spec->factors[f].order(); ++e)
              if (spec->factors[f].table.order_of(e) == 4) has4 = true;
            klein_shape = !has4;
          }
          break;
        }
      }
      if (i < 0) throw ValidationError("lower_bound_witness: height factor not found");
      out.case_name = "depth 2, p=" + std::to_string(p);
      if (p == 4 && klein_shape)
        out.witness = example_2V();
      else
        out.witness = example_2p(p);
      out.embedding = complement_elements(*spec, j, i == j ? 2 : 1);
    }
  } else {
    if (!bounds.height.is_finite()) {
      out.case_name = "depth 1, height inf";
      // rank-two free witness with H = K = G, ratio 1
      WitnessCase w;
      w.source = "F2";
      w.spec = make_spec({}, 2);
      RawAssignment raw;
      raw.degree = 1;
      raw.free_images = {Permutation::identity(1), Permutation::identity(1)};
      w.h = from_kernel(w.spec, raw);
      w.k = from_kernel(w.spec, raw);
      w.expected_triple = {1, 1, 1};
      w.expects_hk_equals_g = true;
      out.witness = std::move(w);
    } else {
      const int p = static_cast<int>(bounds.height.value());
      out.case_name = "depth 1, p=" + std::to_string(p);
      out.witness = example_pp(p);
      int j = -1;
      for (int f = 0; f < spec->factor_count(); ++f) {
        Height hf = height_finite(spec->factors[f].table);
        if (hf.is_finite() && hf.value() == p) {
          j = f;
          break;
        }
      }
      out.embedding = complement_elements(*spec, j, 2);
    }
  }
  return out;
}

}  // namespace corank
