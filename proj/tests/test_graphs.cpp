#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "pvalab/digraph.hpp"
#include "pvalab/sparse_matrix.hpp"

using namespace pvalab;

namespace {

std::vector<Perm> every_perm(int n) {
  std::vector<Perm> out;
  Perm p = perm_id(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// all loopless simple graphs (no parallel or repeated edges; antiparallel
// pairs allowed) on n vertices: four states per unordered pair
std::vector<Digraph> simple_graphs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::vector<Digraph> out;
  std::vector<int> state(pairs.size(), 0);
  for (;;) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (state[i] & 1) edges.push_back(pairs[i]);
      if (state[i] & 2) edges.emplace_back(pairs[i].second, pairs[i].first);
    }
    out.push_back(make_graph(n, std::move(edges)));
    std::size_t i = 0;
    while (i < state.size() && ++state[i] == 4) state[i++] = 0;
    if (i == state.size()) break;
  }
  return out;
}

Digraph random_graph(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> st(0, 3);
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int s = st(rng);
      if (s & 1) edges.emplace_back(a, b);
      if (s & 2) edges.emplace_back(b, a);
    }
  return make_graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("relabeling action on edges") {
  Digraph g = parse_graph("6; 1->2, 1->3, 2->4, 2->6");

  // the cycle (6 5 4): 4 -> 6, 5 -> 4, 6 -> 5
  Perm sigma{0, 1, 2, 5, 3, 4};
  CHECK(act(sigma, g) == parse_graph("6; 1->2, 1->3, 2->6, 2->5"));

  Perm tau{2, 3, 0, 4, 5, 1};  // one-line [3,4,1,5,6,2]
  CHECK(act(tau, g) == parse_graph("6; 3->4, 3->1, 4->5, 4->2"));

  CHECK(act(perm_id(6), g) == g);
}

TEST_CASE("relabeling is a left action") {
  std::mt19937 rng(11);
  auto perms = every_perm(4);
  for (int trial = 0; trial < 5; ++trial) {
    Digraph g = random_graph(4, rng);
    for (const auto& a : perms)
      for (const auto& b : perms)
        CHECK(act(perm_compose(a, b), g) == act(a, act(b, g)));
  }
}

TEST_CASE("vertex deletion") {
  Digraph g = parse_graph("4; 1->2, 1->3, 2->4");
  CHECK(delete_vertex(g, 1) == parse_graph("3; 1->2"));   // drop vertex 2
  CHECK(delete_vertex(g, 2) == parse_graph("3; 1->2, 2->3"));  // drop vertex 3
}

TEST_CASE("pair collapse") {
  Digraph g = parse_graph("4; 1->2, 1->3, 2->4");
  CHECK(collapse(g, 0, 1) == parse_graph("3; 1->2, 1->3"));
  // merging 2 and 3 reroutes both out-edges of 1 into the merged vertex
  Digraph c = collapse(g, 1, 2);
  CHECK(c.n == 3);
  std::vector<std::pair<int, int>> want{{0, 2}, {1, 0}, {1, 0}};
  std::sort(want.begin(), want.end());
  CHECK(c.edges == want);  // a double edge is retained
  CHECK(has_repeated_edge(c));
}

TEST_CASE("graph statistics") {
  Digraph g = parse_graph("6; 1->2, 1->3, 2->4, 2->6");
  auto st = graph_stats(g);
  CHECK(st.s == 2);  // {1,2,3,4,6} and {5}
  CHECK(!st.has_cycle);
  CHECK(st.epsilon[0][1] == 1);
  CHECK(st.epsilon[1][0] == -1);
  CHECK(st.epsilon[0][3] == 0);
  CHECK(st.outdeg[1] == 2);
  CHECK(st.indeg[3] == 1);

  CHECK(graph_stats(parse_graph("2; 1->2, 2->1")).has_cycle);
  CHECK(has_directed_cycle(parse_graph("3; 1->2, 2->3, 3->1")));
  CHECK(!has_directed_cycle(parse_graph("3; 1->2, 2->3")));
  CHECK(is_oriented_forest(parse_graph("3; 1->2, 2->3")));
  CHECK(is_oriented_forest(parse_graph("3; 1->2, 3->2")));
  CHECK(!is_oriented_forest(parse_graph("2; 1->2, 2->1")));
  CHECK(!is_oriented_forest(parse_graph("3; 1->2, 2->3, 1->3")));
}

TEST_CASE("standard lines and the proper-line basis") {
  CHECK(standard_line({3}) == parse_graph("3; 1->2, 2->3"));
  CHECK(standard_line({1, 2}) == parse_graph("3; 2->3"));
  CHECK(standard_line({1, 1, 1}) == parse_graph("3;"));

  auto b2 = line_basis(2);
  std::set<Digraph> got(b2.begin(), b2.end());
  CHECK(got == std::set<Digraph>{parse_graph("2;"), parse_graph("2; 1->2")});

  CHECK(line_basis(3).size() == 6);
  Rational fact(1);
  for (int n = 1; n <= 5; ++n) {
    fact *= n;
    CHECK(rat(static_cast<long>(line_basis(n).size())) == fact);
  }
}

TEST_CASE("proper-line decomposition") {
  // a reversed two-line
  auto [shape, tau] = decompose_proper_line(parse_graph("2; 2->1"));
  CHECK(shape == LineShape{2});
  CHECK(tau == Perm{1, 0});

  for (int n = 2; n <= 5; ++n)
    for (const auto& g : line_basis(n)) {
      auto [k, p] = decompose_proper_line(g);
      CHECK(act(p, standard_line(k)) == g);
      CHECK(std::is_sorted(k.begin(), k.end()));
    }
}

TEST_CASE("reduction to the proper-line basis") {
  // single reversed edge picks up a sign
  auto r = reduce([&] {
    GraphVector v;
    v.add(parse_graph("2; 2->1"), rat(1));
    return v;
  }());
  REQUIRE(r.size() == 1);
  CHECK(r.begin()->first == parse_graph("2; 1->2"));
  CHECK(r.begin()->second == rat(-1));

  // the triangle relation reduces to zero
  GraphVector tri;
  tri.add(parse_graph("3; 2->3, 3->1"), rat(1));
  tri.add(parse_graph("3; 1->2, 3->1"), rat(1));
  tri.add(parse_graph("3; 1->2, 2->3"), rat(1));
  CHECK(reduce(tri).empty());

  // directed cycles and repeated edges vanish
  GraphVector cyc;
  cyc.add(parse_graph("3; 1->2, 2->3, 3->1"), rat(1));
  CHECK(reduce(cyc).empty());
  GraphVector twocyc;
  twocyc.add(parse_graph("2; 1->2, 2->1"), rat(1));
  CHECK(reduce(twocyc).empty());
  GraphVector rep;
  rep.add(make_graph(3, {{0, 1}, {0, 1}}), rat(1));
  CHECK(reduce(rep).empty());

  // proper lines are fixed points
  for (int n = 1; n <= 4; ++n)
    for (const auto& g : line_basis(n)) {
      GraphVector v;
      v.add(g, rat(1));
      auto rr = reduce(v);
      REQUIRE(rr.size() == 1);
      CHECK(rr.begin()->first == g);
      CHECK(rr.begin()->second == rat(1));
    }
}

TEST_CASE("every relation reduces to zero and the quotient has dim n!") {
  for (int n = 2; n <= 3; ++n) {
    for (const auto& rel : relation_span(n)) CHECK(reduce(rel).empty());

    // rank of the relation span over the simple graphs
    auto graphs = simple_graphs(n);
    std::map<Digraph, int> col;
    for (std::size_t i = 0; i < graphs.size(); ++i)
      col[graphs[i]] = static_cast<int>(i);
    std::vector<SparseVec> rows;
    for (const auto& rel : relation_span(n)) {
      SparseVec r;
      for (const auto& [g, c] : rel.terms) r[col.at(g)] = c;
      rows.push_back(std::move(r));
    }
    long expect = 1;
    for (int i = 0; i < n * (n - 1) / 2; ++i) expect *= 4;
    Rational fact = factorial(n);
    auto rk = rank_kernel(rows, static_cast<int>(graphs.size()));
    CHECK(rat(expect) - fact == rat(rk.rank));
  }
}

TEST_CASE("reduction is linear and idempotent on random vectors") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    GraphVector v;
    for (int t = 0; t < 3; ++t) v.add(random_graph(3, rng), rat(coef(rng)));
    auto r = reduce(v);
    // re-reducing the result changes nothing
    GraphVector w;
    for (const auto& [g, c] : r) w.add(g, c);
    auto r2 = reduce(w);
    CHECK(r == r2);
    for (const auto& [g, c] : r) {
      CHECK(is_oriented_forest(g));
      CHECK(!is_zero(c));
    }
  }
}

TEST_CASE("monotone-relabeling identity for standard lines") {
  for (int n = 2; n <= 4; ++n)
    for (int m = 2; m <= n; ++m) CHECK(check_identity_lemma(n, m));
}

TEST_CASE("graph caps raise resource errors") {
  CHECK_THROWS_AS(line_basis(kLineBasisCap + 1), CapError);
  GraphVector big;
  big.add(make_graph(kGraphReduceCap + 1, {}), rat(1));
  CHECK_THROWS_AS(reduce(big), CapError);
}
