#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corank/freeproduct.hpp"
#include "corank/group_table.hpp"

namespace corank {

// Typed quotient graph of the ambient tree action: a fiber of points, one
// orbit-vertex per factor orbit, one factor edge per (point, factor), one
// free-letter edge per (point, letter). Degrees count edge ends, so a loop
// contributes 2 to its endpoint.
struct QuotientGraph {
  enum class VertexKind : std::uint8_t { point, factor_orbit };
  struct Vertex {
    VertexKind kind;
    int factor = -1;               // for factor_orbit
    std::vector<int> members;      // points of the orbit (graph vertex ids)
    std::string label;
  };
  enum class EdgeKind : std::uint8_t { factor, free_letter };
  struct Edge {
    EdgeKind kind;
    int index;  // factor index or free-letter index
    int u, v;
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  int add_point(std::string label = {});
  int add_orbit_vertex(int factor, std::vector<int> members, std::string label = {});
  void add_edge(EdgeKind kind, int index, int u, int v);

  std::vector<std::int64_t> degrees() const;  // loops count twice
};

// View of a concrete action used to build quotient graphs: one permutation
// per free letter and, per factor, the image of every factor element
// (index-aligned with the factor table).
struct ActionView {
  int degree = 0;
  std::span<const Permutation> free_letters;
  std::span<const std::vector<Permutation>> factor_elements;
};

QuotientGraph build_quotient_graph(const FreeProductSpec& spec, const ActionView& action,
                                   std::span<const std::string> point_labels = {});

// Iterated deletion of valence-<=1 vertices; confluent, so the result does
// not depend on deletion order.
struct CoreGraph {
  QuotientGraph graph;  // the graph that was cored
  std::vector<char> vertex_kept;
  std::vector<char> edge_kept;
  std::vector<std::int64_t> core_degree;
  std::vector<int> component;  // per vertex; -1 when dropped
  int component_count = 0;
  std::int64_t kept_vertices = 0;
  std::int64_t kept_edges = 0;
};

CoreGraph core(QuotientGraph g);

// (1/2) * sum over kept vertices of (degree - 2); equals |E| - |V| of the
// core, and 0 for the empty graph.
std::int64_t reduced_rank(const CoreGraph& c);
std::vector<std::int64_t> component_reduced_ranks(const CoreGraph& c);

// Plain-text adjacency listing, one line per kept vertex:
//   vertex-id : kind : neighbor-ids
std::string dump_adjacency(const CoreGraph& c);

}  // namespace corank
