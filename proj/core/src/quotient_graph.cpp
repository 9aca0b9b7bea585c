#include "corank/quotient_graph.hpp"

#include <algorithm>
#include <deque>

namespace corank {

int QuotientGraph::add_point(std::string label) {
  vertices.push_back({VertexKind::point, -1, {}, std::move(label)});
  return static_cast<int>(vertices.size()) - 1;
}

int QuotientGraph::add_orbit_vertex(int factor, std::vector<int> members,
                                    std::string label) {
  vertices.push_back({VertexKind::factor_orbit, factor, std::move(members),
                      std::move(label)});
  return static_cast<int>(vertices.size()) - 1;
}

void QuotientGraph::add_edge(EdgeKind kind, int index, int u, int v) {
  edges.push_back({kind, index, u, v});
}

std::vector<std::int64_t> QuotientGraph::degrees() const {
  std::vector<std::int64_t> deg(vertices.size(), 0);
  for (const Edge& e : edges) {
    deg[e.u] += 1;
    deg[e.v] += 1;  // a loop contributes twice to its single endpoint
  }
  return deg;
}

QuotientGraph build_quotient_graph(const FreeProductSpec& spec, const ActionView& action,
                                   std::span<const std::string> point_labels) {
  if (static_cast<int>(action.free_letters.size()) != spec.free_rank)
    throw Error("build_quotient_graph: free letter count mismatch");
  if (static_cast<int>(action.factor_elements.size()) != spec.factor_count())
    throw Error("build_quotient_graph: factor count mismatch");

  QuotientGraph g;
  const int n = action.degree;
  std::vector<std::int32_t> domain(n);
  for (int p = 0; p < n; ++p) domain[p] = p;

  for (int p = 0; p < n; ++p)
    g.add_point(point_labels.empty() ? "p" + std::to_string(p + 1)
                                     : std::string(point_labels[p]));

  for (int i = 0; i < spec.factor_count(); ++i) {
    const auto& images = action.factor_elements[i];
    if (static_cast<int>(images.size()) != spec.factors[i].order())
      throw Error("build_quotient_graph: factor element images incomplete");
    auto orbs = orbits(std::span<const Permutation>(images), domain);
    std::vector<int> vertex_of_point(n, -1);
    for (auto& orb : orbs) {
      std::string label = spec.factors[i].name + ":o" + std::to_string(orb.front() + 1);
      std::vector<int> members(orb.begin(), orb.end());
      int id = g.add_orbit_vertex(i, members, std::move(label));
      for (std::int32_t p : orb) vertex_of_point[p] = id;
    }
    for (int p = 0; p < n; ++p)
      g.add_edge(QuotientGraph::EdgeKind::factor, i, p, vertex_of_point[p]);
  }

  for (int j = 0; j < spec.free_rank; ++j) {
    const Permutation& x = action.free_letters[j];
    if (x.degree() != n) throw Error("build_quotient_graph: letter degree mismatch");
    for (int p = 0; p < n; ++p)
      g.add_edge(QuotientGraph::EdgeKind::free_letter, j, p, x(p));
  }
  return g;
}

CoreGraph core(QuotientGraph g) {
  CoreGraph c;
  const std::size_t nv = g.vertices.size();
  const std::size_t ne = g.edges.size();

  std::vector<std::vector<int>> incident(nv);  // edge ids; loops listed once
  std::vector<std::int64_t> deg(nv, 0);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& ed = g.edges[e];
    deg[ed.u] += 1;
    deg[ed.v] += 1;
    incident[ed.u].push_back(static_cast<int>(e));
    if (ed.v != ed.u) incident[ed.v].push_back(static_cast<int>(e));
  }

  std::vector<char> vkept(nv, 1), ekept(ne, 1);
  std::deque<int> queue;
  for (std::size_t v = 0; v < nv; ++v)
    if (deg[v] <= 1) queue.push_back(static_cast<int>(v));

  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (!vkept[v] || deg[v] > 1) continue;
    vkept[v] = 0;
    // at most one live edge; a loop would already give valence 2
    for (int e : incident[v]) {
      if (!ekept[e]) continue;
      ekept[e] = 0;
      int other = g.edges[e].u == v ? g.edges[e].v : g.edges[e].u;
      deg[v] -= 1;
      deg[other] -= 1;
      if (vkept[other] && deg[other] <= 1) queue.push_back(other);
    }
  }

  c.vertex_kept = std::move(vkept);
  c.edge_kept = std::move(ekept);
  c.core_degree.assign(nv, 0);
  for (std::size_t e = 0; e < ne; ++e) {
    if (!c.edge_kept[e]) continue;
    c.core_degree[g.edges[e].u] += 1;
    c.core_degree[g.edges[e].v] += 1;
  }

  // components of the kept subgraph
  c.component.assign(nv, -1);
  int comp = 0;
  for (std::size_t start = 0; start < nv; ++start) {
    if (!c.vertex_kept[start] || c.component[start] != -1) continue;
    std::deque<int> bfs{static_cast<int>(start)};
    c.component[start] = comp;
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop_front();
      for (int e : incident[v]) {
        if (!c.edge_kept[e]) continue;
        int other = g.edges[e].u == v ? g.edges[e].v : g.edges[e].u;
        if (c.component[other] == -1) {
          c.component[other] = comp;
          bfs.push_back(other);
        }
      }
    }
    ++comp;
  }
  c.component_count = comp;
  for (std::size_t v = 0; v < nv; ++v)
    if (c.vertex_kept[v]) ++c.kept_vertices;
  for (std::size_t e = 0; e < ne; ++e)
    if (c.edge_kept[e]) ++c.kept_edges;
  c.graph = std::move(g);
  return c;
}

std::int64_t reduced_rank(const CoreGraph& c) {
  std::int64_t sum = 0;
  for (std::size_t v = 0; v < c.graph.vertices.size(); ++v)
    if (c.vertex_kept[v]) sum += c.core_degree[v] - 2;
  if (sum % 2 != 0) throw Error("reduced_rank: odd degree deficiency");
  return sum / 2;
}

std::vector<std::int64_t> component_reduced_ranks(const CoreGraph& c) {
  std::vector<std::int64_t> sums(c.component_count, 0);
  for (std::size_t v = 0; v < c.graph.vertices.size(); ++v)
    if (c.vertex_kept[v]) sums[c.component[v]] += c.core_degree[v] - 2;
  for (auto& s : sums) {
    if (s % 2 != 0) throw Error("component_reduced_ranks: odd degree deficiency");
    s /= 2;
  }
  return sums;
}

std::string dump_adjacency(const CoreGraph& c) {
  std::string out;
  for (std::size_t v = 0; v < c.graph.vertices.size(); ++v) {
    if (!c.vertex_kept[v]) continue;
    const auto& vert = c.graph.vertices[v];
    out += std::to_string(v);
    out += " : ";
    if (vert.kind == QuotientGraph::VertexKind::point)
      out += "point(" + vert.label + ")";
    else
      out += "orbit(" + vert.label + ")";
    out += " :";
    for (std::size_t e = 0; e < c.graph.edges.size(); ++e) {
      if (!c.edge_kept[e]) continue;
      const auto& ed = c.graph.edges[e];
      if (ed.u == static_cast<int>(v)) out += " " + std::to_string(ed.v);
      else if (ed.v == static_cast<int>(v)) out += " " + std::to_string(ed.u);
    }
    out += "\n";
  }
  return out;
}

}  // namespace corank
