#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "pvalab/perm.hpp"
#include "pvalab/rational.hpp"

namespace pvalab {

// Oriented multigraph on vertices 0..n-1 without tadpoles. Edges are kept
// sorted, so equal edge multisets compare equal. Text form is 1-based:
// "n; 1->2, 2->3".
struct Digraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  auto operator<=>(const Digraph&) const = default;
};

Digraph make_graph(int n, std::vector<std::pair<int, int>> edges);
Digraph parse_graph(const std::string& text);
std::string graph_str(const Digraph& g);

// relabel vertices: v -> p(v)
Digraph act(const Perm& p, const Digraph& g);

// remove vertex h (0-based) with all incident edges, relabel preserving order
Digraph delete_vertex(const Digraph& g, int h);

// merge i,j into new vertex 0, dropping edges between them; the remaining
// vertices become 1..n-2 preserving order. Parallel edges are retained.
Digraph collapse(const Digraph& g, int i, int j);

bool has_repeated_edge(const Digraph& g);
// directed cycle through >= 2 distinct vertices (2-cycles count)
bool has_directed_cycle(const Digraph& g);
// no undirected cycle and no parallel/antiparallel edge pair: an oriented forest
bool is_oriented_forest(const Digraph& g);

struct GraphStats {
  std::vector<std::vector<int>> components;  // sorted blocks, by min vertex
  int s = 0;                                 // number of components
  bool has_cycle = false;                    // directed sense
  std::vector<int> indeg, outdeg;
  // epsilon(i,j): +1 for i->j, -1 for j->i, 0 otherwise (simple graphs)
  std::vector<std::vector<int>> epsilon;
};

GraphStats graph_stats(const Digraph& g);

// shape = line lengths, parts >= 1 in ascending order
using LineShape = std::vector<int>;

LineShape parse_shape(const std::string& text);
std::string shape_str(const LineShape& k);

// edges K_{t-1}+1 -> ... -> K_t for each part
Digraph standard_line(const LineShape& k);

// all proper k-lines on n vertices (each component line starts at its
// minimal vertex); |line_basis(n)| = n!
std::vector<Digraph> line_basis(int n);

// (shape, tau) with act(tau, standard_line(shape)) = g; parts ascending,
// equal parts ordered by minimal vertex
std::pair<LineShape, Perm> decompose_proper_line(const Digraph& g);

// ---- linear combinations and the quotient by cycle relations ----

struct GraphVector {
  std::map<Digraph, Rational> terms;

  void add(const Digraph& g, const Rational& c);
  bool is_zero() const { return terms.empty(); }
};

GraphVector parse_graph_vector(const std::string& text);
std::string graph_vector_str(const GraphVector& v);

// spanning set of R(n): every graph with a directed cycle, plus
// sum_{e in C} G\e over all simple graphs G and directed cycles C of G
std::vector<GraphVector> relation_span(int n);

// coordinates of v mod R(n) over line_basis(n); graphs with a directed cycle,
// a repeated edge, or an undirected cycle all map to 0
std::map<Digraph, Rational> reduce(const GraphVector& v);

// reduce(G_n + (-1)^m sum_{pi in M_n^m} act(pi, G_n)) == 0
bool check_identity_lemma(int n, int m);

inline constexpr int kGraphReduceCap = 5;
inline constexpr int kLineBasisCap = 6;

}  // namespace pvalab
