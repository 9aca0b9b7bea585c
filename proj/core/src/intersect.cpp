#include "corank/intersect.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "corank/sumset.hpp"

namespace corank {

bool same_spec(const FreeProductSpec& a, const FreeProductSpec& b) {
  if (&a == &b) return true;
  if (a.free_rank != b.free_rank || a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    const FactorSpec& fa = a.factors[i];
    const FactorSpec& fb = b.factors[i];
    if (fa.name != fb.name || fa.kind != fb.kind || fa.param != fb.param) return false;
    if (fa.table.elements() != fb.table.elements()) return false;
    if (fa.table.generator_indices() != fb.table.generator_indices()) return false;
  }
  return true;
}

namespace {

// The product action on component(H) x component(K), in local coordinates.
struct ProductSpace {
  int nh = 0, nk = 0;
  // local images per factor element / free letter, for each side
  std::vector<std::vector<Permutation>> h_factor, k_factor;
  std::vector<Permutation> h_free, k_free;

  int pair_id(int ih, int ik) const { return ih * nk + ik; }
};

Permutation restrict_to(const std::vector<int>& component, const Permutation& p) {
  std::vector<int> local(p.degree(), -1);
  for (std::size_t k = 0; k < component.size(); ++k) local[component[k]] = static_cast<int>(k);
  std::vector<std::int32_t> img(component.size());
  for (std::size_t k = 0; k < component.size(); ++k) {
    int target = local[p(component[k])];
    if (target < 0) throw Error("restrict_to: component not invariant");
    img[k] = target;
  }
  return Permutation::from_images(std::move(img));
}

ProductSpace make_product_space(const SubgroupHandle& h, const SubgroupHandle& k) {
  ProductSpace ps;
  ps.nh = static_cast<int>(h.component.size());
  ps.nk = static_cast<int>(k.component.size());
  ps.h_factor.resize(h.action.factor_elements.size());
  ps.k_factor.resize(k.action.factor_elements.size());
  for (std::size_t i = 0; i < h.action.factor_elements.size(); ++i)
    for (const Permutation& e : h.action.factor_elements[i])
      ps.h_factor[i].push_back(restrict_to(h.component, e));
  for (std::size_t i = 0; i < k.action.factor_elements.size(); ++i)
    for (const Permutation& e : k.action.factor_elements[i])
      ps.k_factor[i].push_back(restrict_to(k.component, e));
  for (const Permutation& x : h.action.free_images)
    ps.h_free.push_back(restrict_to(h.component, x));
  for (const Permutation& x : k.action.free_images)
    ps.k_free.push_back(restrict_to(k.component, x));
  return ps;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// BFS words from the basepoint over one side's action; generator moves are
// ordered factor-by-factor (each generator, then its inverse), then free
// letters (letter, then inverse). Words multiply left to right along paths.
std::vector<Word> bfs_words(const FreeProductSpec& spec,
                            const std::vector<std::vector<Permutation>>& factor_elems,
                            const std::vector<Permutation>& free_images,
                            int degree, int basepoint) {
  struct Move {
    Permutation perm;
    Word word;
  };
  std::vector<Move> moves;
  for (int i = 0; i < spec.factor_count(); ++i) {
    for (int g : spec.factors[i].table.generator_indices()) {
      moves.push_back({factor_elems[i][g], word_factor(spec, i, g)});
      int ginv = spec.factors[i].table.inv(g);
      if (ginv != g)
        moves.push_back({factor_elems[i][ginv], word_factor(spec, i, ginv)});
    }
  }
  for (int j = 0; j < spec.free_rank; ++j) {
    moves.push_back({free_images[j], word_letter(spec, j, 1)});
    moves.push_back({inverse(free_images[j]), word_letter(spec, j, -1)});
  }

  std::vector<Word> words(degree);
  std::vector<char> known(degree, 0);
  known[basepoint] = 1;
  std::deque<int> queue{basepoint};
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    for (const Move& m : moves) {
      int q = m.perm(p);
      if (!known[q]) {
        known[q] = 1;
        words[q] = word_mul(spec, words[p], m.word);
        queue.push_back(q);
      }
    }
  }
  for (int p = 0; p < degree; ++p)
    if (!known[p]) throw Error("bfs_words: component not transitive");
  return words;
}

// Per-factor data for the fiber families on one side: which orbit vertex a
// point belongs to, which factor element carries the orbit base to the point,
// and whether the point's factor edge survived the core.
struct SideFibers {
  std::vector<int> orbit_vertex;   // per point
  std::vector<int> element_of;     // per point: a with base^phi(a) = point
  std::vector<char> edge_kept;     // per point
};

SideFibers side_fibers(const CoreGraph& core_graph, int factor,
                       const std::vector<Permutation>& factor_elems, int degree) {
  SideFibers sf;
  sf.orbit_vertex.assign(degree, -1);
  sf.element_of.assign(degree, -1);
  sf.edge_kept.assign(degree, 0);
  const QuotientGraph& g = core_graph.graph;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& vert = g.vertices[v];
    if (vert.kind != QuotientGraph::VertexKind::factor_orbit || vert.factor != factor)
      continue;
    int base = vert.members.front();
    for (std::size_t e = 0; e < factor_elems.size(); ++e) {
      int p = factor_elems[e](base);
      sf.orbit_vertex[p] = static_cast<int>(v);
      if (sf.element_of[p] != -1) throw Error("side_fibers: action not semiregular");
      sf.element_of[p] = static_cast<int>(e);
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (ed.kind == QuotientGraph::EdgeKind::factor && ed.index == factor &&
        core_graph.edge_kept[e])
      sf.edge_kept[ed.u] = 1;
  }
  return sf;
}

}  // namespace

IntersectionReport intersect_all(const SubgroupHandle& h, const SubgroupHandle& k,
                                 const IntersectOptions& options) {
  if (!same_spec(*h.spec, *k.spec))
    throw ValidationError("intersect_all: handles built over different specs");
  const FreeProductSpec& spec = *h.spec;

  IntersectionReport report;
  report.bounds = compute_bounds(spec);

  CoreGraph core_h = core(quotient_graph_of(h));
  CoreGraph core_k = core(quotient_graph_of(k));
  report.rbar_h = reduced_rank(core_h);
  report.rbar_k = reduced_rank(core_k);

  ProductSpace ps = make_product_space(h, k);
  const int npairs = ps.nh * ps.nk;

  // G-orbits of the product action: one per double coset.
  UnionFind uf(npairs);
  auto unite_move = [&](const Permutation& ph, const Permutation& pk) {
    for (int ih = 0; ih < ps.nh; ++ih)
      for (int ik = 0; ik < ps.nk; ++ik)
        uf.unite(ps.pair_id(ih, ik), ps.pair_id(ph(ih), pk(ik)));
  };
  for (int i = 0; i < spec.factor_count(); ++i)
    for (int g : spec.factors[i].table.generator_indices())
      unite_move(ps.h_factor[i][g], ps.k_factor[i][g]);
  for (int j = 0; j < spec.free_rank; ++j) unite_move(ps.h_free[j], ps.k_free[j]);

  std::map<int, std::vector<int>> orbit_pairs;  // root -> sorted pair ids
  for (int p = 0; p < npairs; ++p) orbit_pairs[uf.find(p)].push_back(p);

  int h_base_local = static_cast<int>(
      std::lower_bound(h.component.begin(), h.component.end(), h.basepoint) -
      h.component.begin());
  int k_base_local = static_cast<int>(
      std::lower_bound(k.component.begin(), k.component.end(), k.basepoint) -
      k.component.begin());
  int principal_root = uf.find(ps.pair_id(h_base_local, k_base_local));

  std::vector<Word> h_words =
      bfs_words(spec, ps.h_factor, ps.h_free, ps.nh, h_base_local);

  int orbit_id = 0;
  for (auto& [root, pairs] : orbit_pairs) {
    OrbitSummary summary;
    summary.orbit_id = orbit_id;
    summary.size = static_cast<std::int64_t>(pairs.size());
    summary.principal = (root == principal_root);

    // double-coset representative: the smallest H-point paired with the
    // K-side basepoint, read off as a BFS word
    int rep_point = -1;
    for (int p : pairs) {
      if (p % ps.nk == k_base_local) {
        rep_point = p / ps.nk;
        break;  // pairs are sorted, so this is the smallest such H-point
      }
    }
    if (rep_point < 0) throw Error("intersect_all: orbit misses the K basepoint column");
    summary.rep_word = h_words[rep_point];
    summary.rep_str = word_str(spec, summary.rep_word);
    summary.rep_point_h = h.component[rep_point];

    // orbit graph: v0 fiber = pairs, factor fibers = product-image orbits
    std::vector<int> local_of(npairs, -1);
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) local_of[pairs[idx]] = static_cast<int>(idx);
    const int m = static_cast<int>(pairs.size());

    auto pair_perm = [&](const Permutation& ph, const Permutation& pk) {
      std::vector<std::int32_t> img(m);
      for (int idx = 0; idx < m; ++idx) {
        int p = pairs[idx];
        int target = local_of[ps.pair_id(ph(p / ps.nk), pk(p % ps.nk))];
        if (target < 0) throw Error("intersect_all: orbit not invariant");
        img[idx] = target;
      }
      return Permutation::from_images(std::move(img));
    };

    std::vector<std::vector<Permutation>> factor_elements(spec.factor_count());
    for (int i = 0; i < spec.factor_count(); ++i)
      for (int e = 0; e < spec.factors[i].order(); ++e)
        factor_elements[i].push_back(pair_perm(ps.h_factor[i][e], ps.k_factor[i][e]));
    std::vector<Permutation> free_letters;
    for (int j = 0; j < spec.free_rank; ++j)
      free_letters.push_back(pair_perm(ps.h_free[j], ps.k_free[j]));

    std::vector<std::string> labels;
    for (int p : pairs)
      labels.push_back("(" + std::to_string(h.component[p / ps.nk] + 1) + "," +
                       std::to_string(k.component[p % ps.nk] + 1) + ")");

    ActionView view{m, free_letters, factor_elements};
    CoreGraph orbit_core = core(build_quotient_graph(spec, view, labels));
    summary.rbar = reduced_rank(orbit_core);
    report.total += summary.rbar;
    if (summary.principal) report.principal_rbar = summary.rbar;

    // vertical-fiber families: per factor, group the orbit-vertex edge fibers
    // over their (H-side, K-side) vertex pair and check them as
    // pairwise-disjoint single-quotient subsets
    if (options.check_fibers) {
      for (int i = 0; i < spec.factor_count(); ++i) {
        SideFibers fx = side_fibers(core_h, i, ps.h_factor[i], ps.nh);
        SideFibers fy = side_fibers(core_k, i, ps.k_factor[i], ps.nk);
        const QuotientGraph& og = orbit_core.graph;

        std::vector<char> w_edge_kept(m, 0);
        std::vector<int> w_vertex(m, -1);
        for (std::size_t e = 0; e < og.edges.size(); ++e) {
          const auto& ed = og.edges[e];
          if (ed.kind == QuotientGraph::EdgeKind::factor && ed.index == i &&
              orbit_core.edge_kept[e]) {
            w_edge_kept[ed.u] = 1;
            w_vertex[ed.u] = ed.v;
          }
        }

        // (x vertex, y vertex) -> { w vertex -> pair subset of G_i x G_i }
        std::map<std::pair<int, int>, std::map<int, std::vector<std::pair<int, int>>>>
            grouped;
        for (int idx = 0; idx < m; ++idx) {
          if (!w_edge_kept[idx]) continue;
          int ih = pairs[idx] / ps.nk, ik = pairs[idx] % ps.nk;
          grouped[{fx.orbit_vertex[ih], fy.orbit_vertex[ik]}][w_vertex[idx]]
              .emplace_back(fx.element_of[ih], fy.element_of[ik]);
        }

        TableAmbient amb{&spec.factors[i].table};
        for (auto& [xy, members] : grouped) {
          FiberFamilyCheck check;
          check.orbit_id = orbit_id;
          check.factor = i;
          check.x_vertex = xy.first;
          check.y_vertex = xy.second;
          check.family_size = static_cast<std::int64_t>(members.size());

          ElemSet<int> a_set, b_set;
          for (int p = 0; p < ps.nh; ++p)
            if (fx.edge_kept[p] && fx.orbit_vertex[p] == xy.first)
              a_set.push_back(fx.element_of[p]);
          for (int p = 0; p < ps.nk; ++p)
            if (fy.edge_kept[p] && fy.orbit_vertex[p] == xy.second)
              b_set.push_back(fy.element_of[p]);
          a_set = setops::normalized(std::move(a_set));
          b_set = setops::normalized(std::move(b_set));

          std::vector<std::vector<std::pair<int, int>>> family;
          for (auto& [w, pairset] : members) family.push_back(pairset);

          if (a_set.size() < 2 || b_set.size() < 2) {
            check.ok = false;
            check.note = "side fiber smaller than 2";
          } else {
            FamilyCheck fc = verify_family(amb, a_set, b_set, family,
                                           FamilyMode::single_quotient,
                                           report.bounds.fheight);
            check.slack = fc.slack;
            check.ok = fc.ok && fc.slack >= Rational(0);
            if (!fc.violations.empty()) check.note = fc.violations.front();
          }
          report.fiber_checks.push_back(std::move(check));
        }
      }
    }

    if (options.keep_graphs) report.orbit_cores.push_back(std::move(orbit_core));
    report.orbits.push_back(std::move(summary));
    ++orbit_id;
  }

  report.double_coset_count = static_cast<std::int64_t>(report.orbits.size());
  report.hk_equals_g = (report.double_coset_count == 1);
  report.bound_rhs = Rational(2) * report.bounds.fheight * Rational(report.rbar_h) *
                     Rational(report.rbar_k);
  return report;
}

CosetBijectionReport verify_coset_bijection(const FiniteGroupTable& q,
                                            const std::vector<Permutation>& h_gens,
                                            const std::vector<Permutation>& k_gens) {
  const int n = q.order();
  auto subgroup_of = [&](const std::vector<Permutation>& gens) {
    std::vector<int> idx;
    for (const Permutation& g : gens) {
      int i = q.index_of(g);
      if (i < 0) throw ValidationError("verify_coset_bijection: generator not in group");
      idx.push_back(i);
    }
    std::set<int> elems{0};
    std::deque<int> queue{0};
    while (!queue.empty()) {
      int e = queue.front();
      queue.pop_front();
      for (int g : idx) {
        int e2 = q.mul(e, g);
        if (elems.insert(e2).second) queue.push_back(e2);
      }
    }
    return std::vector<int>(elems.begin(), elems.end());
  };
  std::vector<int> H = subgroup_of(h_gens);
  std::vector<int> K = subgroup_of(k_gens);

  auto coset_label = [&](const std::vector<int>& sub, int g) {
    int best = n;
    for (int s : sub) best = std::min(best, q.mul(s, g));
    return best;
  };

  // double cosets HgK, labelled by their least element
  std::vector<int> dc_label(n, -1);
  std::vector<int> reps;
  for (int g = 0; g < n; ++g) {
    if (dc_label[g] != -1) continue;
    std::set<int> members;
    for (int a : H)
      for (int b : K) members.insert(q.mul(q.mul(a, g), b));
    int label = *members.begin();
    for (int m : members) dc_label[m] = label;
    reps.push_back(label);
  }

  CosetBijectionReport rep;
  rep.double_cosets = static_cast<std::int64_t>(reps.size());

  std::set<int> h_cosets, k_cosets;
  for (int g = 0; g < n; ++g) {
    h_cosets.insert(coset_label(H, g));
    k_cosets.insert(coset_label(K, g));
  }
  rep.codomain_size =
      static_cast<std::int64_t>(h_cosets.size()) * static_cast<std::int64_t>(k_cosets.size());

  // forward map on every coset of every H^s cap K
  std::map<std::pair<int, int>, std::pair<int, int>> forward;
  rep.well_defined = true;
  for (int s : reps) {
    int sbar = q.inv(s);
    std::vector<int> hs_cap_k;
    for (int x : K) {
      int conj = q.mul(q.mul(s, x), sbar);
      if (std::binary_search(H.begin(), H.end(), conj)) hs_cap_k.push_back(x);
    }
    for (int g = 0; g < n; ++g) {
      std::pair<int, int> key{s, coset_label(hs_cap_k, g)};
      std::pair<int, int> value{coset_label(H, q.mul(s, g)), coset_label(K, g)};
      auto [it, inserted] = forward.emplace(key, value);
      if (!inserted && it->second != value) rep.well_defined = false;
    }
  }
  rep.domain_size = static_cast<std::int64_t>(forward.size());

  std::set<std::pair<int, int>> images;
  for (const auto& [key, value] : forward) images.insert(value);
  rep.bijective = rep.well_defined &&
                  static_cast<std::int64_t>(images.size()) == rep.domain_size &&
                  rep.domain_size == rep.codomain_size;
  return rep;
}

BoundVerdict check_upper_bounds(const IntersectionReport& report,
                                const BoundsReport& bounds) {
  BoundVerdict v;
  Rational total(report.total);
  Rational product = Rational(report.rbar_h) * Rational(report.rbar_k);
  v.rhs_2f = Rational(2) * bounds.fheight * product;
  v.le_2f = total <= v.rhs_2f;
  v.tight_2f = total == v.rhs_2f;
  v.le_6 = total <= Rational(6) * product;
  v.height_infinite = !bounds.height.is_finite();
  v.le_2 = total <= Rational(2) * product;
  return v;
}

}  // namespace corank
