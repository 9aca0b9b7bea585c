#include "corank/action.hpp"

#include <algorithm>
#include <deque>

namespace corank {

FiniteGroupTable ActionAssignment::image_table(int factor) const {
  std::vector<Permutation> gens(factor_elements[factor].begin() + 1,
                                factor_elements[factor].end());
  return FiniteGroupTable::closure(degree, std::move(gens));
}

ActionAssignment materialize_homomorphism(const FreeProductSpec& spec,
                                          const RawAssignment& raw) {
  spec.validate();
  if (raw.degree < 1) throw ValidationError("action degree must be >= 1");
  if (static_cast<int>(raw.free_images.size()) != spec.free_rank)
    throw ValidationError("expected " + std::to_string(spec.free_rank) +
                          " free letter images, got " +
                          std::to_string(raw.free_images.size()));
  if (static_cast<int>(raw.factor_gen_images.size()) != spec.factor_count())
    throw ValidationError("expected images for " +
                          std::to_string(spec.factor_count()) + " factors");
  for (const Permutation& p : raw.free_images)
    if (p.degree() != raw.degree)
      throw ValidationError("free letter image degree mismatch");

  ActionAssignment out;
  out.degree = raw.degree;
  out.free_images = raw.free_images;
  out.factor_elements.resize(spec.factor_count());

  for (int i = 0; i < spec.factor_count(); ++i) {
    const FactorSpec& f = spec.factors[i];
    const auto& gen_images = raw.factor_gen_images[i];
    const auto& gen_indices = f.table.generator_indices();
    if (gen_images.size() != gen_indices.size())
      throw ValidationError("factor '" + f.name + "': expected " +
                            std::to_string(gen_indices.size()) +
                            " generator images, got " +
                            std::to_string(gen_images.size()));
    for (const Permutation& p : gen_images)
      if (p.degree() != raw.degree)
        throw ValidationError("factor '" + f.name + "': image degree mismatch");

    // Walk the factor's Cayley graph from the identity, defining the image of
    // each element and checking that every (element, generator) edge agrees.
    // Agreement on all edges certifies a homomorphism.
    std::vector<Permutation> img(f.table.order());
    std::vector<char> known(f.table.order(), 0);
    img[0] = Permutation::identity(raw.degree);
    known[0] = 1;
    std::deque<int> queue{0};
    while (!queue.empty()) {
      int e = queue.front();
      queue.pop_front();
      for (std::size_t t = 0; t < gen_indices.size(); ++t) {
        int e2 = f.table.mul(e, gen_indices[t]);
        Permutation candidate = compose(img[e], gen_images[t]);
        if (!known[e2]) {
          img[e2] = std::move(candidate);
          known[e2] = 1;
          queue.push_back(e2);
        } else if (!(img[e2] == candidate)) {
          throw ValidationError("factor '" + f.name +
                                "': generator images are not a homomorphism "
                                "(conflict at element " +
                                std::to_string(e2) + ")");
        }
      }
    }
    for (int e = 0; e < f.table.order(); ++e)
      if (!known[e])
        throw ValidationError("factor '" + f.name +
                              "': distinguished generators do not generate");

    for (int e = 1; e < f.table.order(); ++e)
      if (img[e].is_identity())
        throw ValidationError("factor '" + f.name +
                              "': image not injective (element " +
                              std::to_string(e) + " maps to the identity)");
    out.factor_elements[i] = std::move(img);
  }
  return out;
}

void check_semiregular(const FreeProductSpec& spec, const ActionAssignment& a) {
  std::vector<std::int32_t> domain(a.degree);
  for (int p = 0; p < a.degree; ++p) domain[p] = p;
  for (int i = 0; i < spec.factor_count(); ++i) {
    auto w = semiregular_witness(a.factor_elements[i], domain);
    if (!w.semiregular)
      throw ValidationError("factor '" + spec.factors[i].name +
                            "': image not semiregular (element " +
                            std::to_string(w.element) + " fixes point " +
                            std::to_string(w.point + 1) + ")");
  }
}

ActionAssignment validate_action(const FreeProductSpec& spec, const RawAssignment& raw) {
  ActionAssignment a = materialize_homomorphism(spec, raw);
  check_semiregular(spec, a);
  return a;
}

namespace {

std::vector<int> orbit_of(const ActionAssignment& a, int start) {
  std::vector<char> seen(a.degree, 0);
  std::deque<int> queue{start};
  seen[start] = 1;
  std::vector<int> out;
  auto push = [&](int q) {
    if (!seen[q]) {
      seen[q] = 1;
      queue.push_back(q);
    }
  };
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    out.push_back(p);
    for (const auto& elems : a.factor_elements)
      for (const Permutation& e : elems) push(e(p));
    for (const Permutation& x : a.free_images) {
      push(x(p));
      push(inverse(x)(p));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SubgroupHandle from_kernel(std::shared_ptr<const FreeProductSpec> spec,
                           const RawAssignment& raw, std::int64_t cap) {
  ActionAssignment a = materialize_homomorphism(*spec, raw);

  // Close the full image group and pass to its regular right action, where
  // semiregularity of the (injective) factor images is automatic.
  std::vector<Permutation> all;
  for (const auto& elems : a.factor_elements)
    for (std::size_t e = 1; e < elems.size(); ++e) all.push_back(elems[e]);
  for (const Permutation& x : a.free_images) all.push_back(x);
  FiniteGroupTable q = FiniteGroupTable::closure(raw.degree, std::move(all), cap);

  auto regular = [&q](const Permutation& v) {
    int idx = q.index_of(v);
    std::vector<std::int32_t> img(q.order());
    for (int e = 0; e < q.order(); ++e) img[e] = q.mul(e, idx);
    return Permutation::from_images(std::move(img));
  };

  SubgroupHandle h;
  h.spec = std::move(spec);
  h.action.degree = q.order();
  for (const Permutation& x : a.free_images) h.action.free_images.push_back(regular(x));
  h.action.factor_elements.resize(a.factor_elements.size());
  for (std::size_t i = 0; i < a.factor_elements.size(); ++i)
    for (const Permutation& e : a.factor_elements[i])
      h.action.factor_elements[i].push_back(regular(e));
  check_semiregular(*h.spec, h.action);
  h.basepoint = 0;  // identity of the image group
  h.component.resize(q.order());
  for (int e = 0; e < q.order(); ++e) h.component[e] = e;
  return h;
}

SubgroupHandle from_stabilizer(std::shared_ptr<const FreeProductSpec> spec,
                               const RawAssignment& raw, int basepoint_1based) {
  if (basepoint_1based < 1 || basepoint_1based > raw.degree)
    throw ValidationError("basepoint " + std::to_string(basepoint_1based) +
                          " out of range 1.." + std::to_string(raw.degree));
  SubgroupHandle h;
  h.action = validate_action(*spec, raw);
  h.spec = std::move(spec);
  h.basepoint = basepoint_1based - 1;
  h.component = orbit_of(h.action, h.basepoint);
  return h;
}

QuotientGraph quotient_graph_of(const SubgroupHandle& h) {
  const auto& comp = h.component;
  const int m = static_cast<int>(comp.size());
  std::vector<int> local(h.action.degree, -1);
  for (int k = 0; k < m; ++k) local[comp[k]] = k;

  auto restrict_perm = [&](const Permutation& p) {
    std::vector<std::int32_t> img(m);
    for (int k = 0; k < m; ++k) img[k] = local[p(comp[k])];
    return Permutation::from_images(std::move(img));
  };

  std::vector<Permutation> free_letters;
  for (const Permutation& x : h.action.free_images) free_letters.push_back(restrict_perm(x));
  std::vector<std::vector<Permutation>> factor_elements(h.action.factor_elements.size());
  for (std::size_t i = 0; i < h.action.factor_elements.size(); ++i)
    for (const Permutation& e : h.action.factor_elements[i])
      factor_elements[i].push_back(restrict_perm(e));

  std::vector<std::string> labels;
  for (int k = 0; k < m; ++k) labels.push_back("p" + std::to_string(comp[k] + 1));
  ActionView view{m, free_letters, factor_elements};
  return build_quotient_graph(*h.spec, view, labels);
}

std::int64_t reduced_rank_of(const SubgroupHandle& h) {
  return reduced_rank(core(quotient_graph_of(h)));
}

Permutation evaluate_word(const FreeProductSpec& spec, const ActionAssignment& a,
                          const Word& w) {
  Permutation acc = Permutation::identity(a.degree);
  for (const Syllable& s : w.syllables()) {
    if (s.kind == Syllable::Kind::factor) {
      acc = compose(acc, a.factor_elements[s.index][s.value]);
    } else {
      const Permutation& x = a.free_images[s.index];
      acc = compose(acc, s.value == 1 ? x : inverse(x));
    }
  }
  (void)spec;
  return acc;
}

}  // namespace corank
