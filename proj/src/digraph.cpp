#include "pvalab/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pvalab {

Digraph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw std::invalid_argument("make_graph: negative n");
  for (auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw std::invalid_argument("make_graph: vertex out of range");
    if (a == b) throw std::invalid_argument("make_graph: tadpole edge");
  }
  std::sort(edges.begin(), edges.end());
  return Digraph{n, std::move(edges)};
}

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s) {
  std::string t = strip(s);
  if (t.empty()) throw ParseError("expected integer");
  size_t pos = 0;
  int v;
  try {
    v = std::stoi(t, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad integer: '" + t + "'");
  }
  if (pos != t.size()) throw ParseError("bad integer: '" + t + "'");
  return v;
}

}  // namespace

Digraph parse_graph(const std::string& text) {
  auto parts = split(text, ';');
  if (parts.size() != 2) throw ParseError("graph: expected 'n; edges'");
  int n = parse_int(parts[0]);
  std::vector<std::pair<int, int>> edges;
  std::string rest = strip(parts[1]);
  if (!rest.empty()) {
    for (const auto& es : split(rest, ',')) {
      auto ends = es.find("->");
      if (ends == std::string::npos) throw ParseError("graph: bad edge '" + es + "'");
      int a = parse_int(es.substr(0, ends));
      int b = parse_int(es.substr(ends + 2));
      if (a < 1 || b < 1) throw ParseError("graph: vertices are 1-based");
      edges.emplace_back(a - 1, b - 1);
    }
  }
  try {
    return make_graph(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

std::string graph_str(const Digraph& g) {
  std::ostringstream os;
  os << g.n << ";";
  for (size_t i = 0; i < g.edges.size(); ++i) {
    os << (i ? ", " : " ") << g.edges[i].first + 1 << "->" << g.edges[i].second + 1;
  }
  return os.str();
}

Digraph act(const Perm& p, const Digraph& g) {
  if (static_cast<int>(p.size()) != g.n)
    throw std::invalid_argument("act: size mismatch");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges.size());
  for (auto [a, b] : g.edges) edges.emplace_back(p[a], p[b]);
  return make_graph(g.n, std::move(edges));
}

Digraph delete_vertex(const Digraph& g, int h) {
  if (h < 0 || h >= g.n) throw std::invalid_argument("delete_vertex: out of range");
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : g.edges) {
    if (a == h || b == h) continue;
    edges.emplace_back(a - (a > h), b - (b > h));
  }
  return make_graph(g.n - 1, std::move(edges));
}

Digraph collapse(const Digraph& g, int i, int j) {
  if (i == j) throw std::invalid_argument("collapse: i == j");
  if (i < 0 || i >= g.n || j < 0 || j >= g.n)
    throw std::invalid_argument("collapse: out of range");
  std::vector<int> relabel(g.n);
  int next = 1;
  for (int v = 0; v < g.n; ++v) relabel[v] = (v == i || v == j) ? 0 : next++;
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : g.edges) {
    int na = relabel[a], nb = relabel[b];
    if (na == 0 && nb == 0) continue;  // edges between i and j are dropped
    edges.emplace_back(na, nb);
  }
  return make_graph(g.n - 1, std::move(edges));
}

bool has_repeated_edge(const Digraph& g) {
  for (size_t i = 1; i < g.edges.size(); ++i)
    if (g.edges[i] == g.edges[i - 1]) return true;
  return false;
}

bool has_directed_cycle(const Digraph& g) {
  std::vector<std::vector<int>> adj(g.n);
  for (auto [a, b] : g.edges) adj[a].push_back(b);
  // 0 = unseen, 1 = on stack, 2 = done
  std::vector<int> color(g.n, 0);
  std::vector<std::pair<int, size_t>> stack;
  for (int s = 0; s < g.n; ++s) {
    if (color[s]) continue;
    stack.push_back({s, 0});
    color[s] = 1;
    while (!stack.empty()) {
      auto& [v, ei] = stack.back();
      if (ei < adj[v].size()) {
        int w = adj[v][ei++];
        if (color[w] == 1) return true;
        if (color[w] == 0) {
          color[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

namespace {

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  // false if already joined
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[a] = b;
    return true;
  }
};

}  // namespace

bool is_oriented_forest(const Digraph& g) {
  UnionFind uf(g.n);
  for (auto [a, b] : g.edges)
    if (!uf.join(a, b)) return false;
  return true;
}

GraphStats graph_stats(const Digraph& g) {
  GraphStats st;
  UnionFind uf(g.n);
  for (auto [a, b] : g.edges) uf.join(a, b);
  std::map<int, std::vector<int>> blocks;
  for (int v = 0; v < g.n; ++v) blocks[uf.find(v)].push_back(v);
  for (auto& [root, vs] : blocks) {
    (void)root;
    std::sort(vs.begin(), vs.end());
    st.components.push_back(vs);
  }
  std::sort(st.components.begin(), st.components.end());
  st.s = static_cast<int>(st.components.size());
  st.has_cycle = has_directed_cycle(g);
  st.indeg.assign(g.n, 0);
  st.outdeg.assign(g.n, 0);
  st.epsilon.assign(g.n, std::vector<int>(g.n, 0));
  for (auto [a, b] : g.edges) {
    ++st.outdeg[a];
    ++st.indeg[b];
    st.epsilon[a][b] = 1;
    st.epsilon[b][a] = -1;
  }
  // a 2-cycle makes epsilon ambiguous; record 0 (only used on acyclic graphs)
  for (auto [a, b] : g.edges)
    if (std::binary_search(g.edges.begin(), g.edges.end(), std::make_pair(b, a))) {
      st.epsilon[a][b] = 0;
      st.epsilon[b][a] = 0;
    }
  return st;
}

LineShape parse_shape(const std::string& text) {
  LineShape k;
  for (const auto& s : split(text, ','))
    if (!strip(s).empty()) k.push_back(parse_int(s));
  return k;
}

std::string shape_str(const LineShape& k) {
  std::ostringstream os;
  for (size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
  return os.str();
}

Digraph standard_line(const LineShape& k) {
  int n = 0;
  for (int kt : k) {
    if (kt < 1) throw std::invalid_argument("standard_line: part < 1");
    n += kt;
  }
  std::vector<std::pair<int, int>> edges;
  int base = 0;
  for (int kt : k) {
    for (int i = 0; i + 1 < kt; ++i) edges.emplace_back(base + i, base + i + 1);
    base += kt;
  }
  return make_graph(n, std::move(edges));
}

namespace {

// all partitions of {0..n-1} into blocks, each block listed sorted,
// blocks ordered by their minima
void set_partitions(int n, std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<std::vector<int>> cur;
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      out.push_back(cur);
      return;
    }
    for (auto& block : cur) {
      block.push_back(v);
      rec(v + 1);
      block.pop_back();
    }
    cur.push_back({v});
    rec(v + 1);
    cur.pop_back();
  };
  rec(0);
}

}  // namespace

std::vector<Digraph> line_basis(int n) {
  if (n < 0 || n > kLineBasisCap) throw CapError("line_basis: n out of range");
  std::vector<std::vector<std::vector<int>>> parts;
  set_partitions(n, parts);
  std::vector<Digraph> out;
  for (const auto& blocks : parts) {
    // per block: directed paths starting at the block minimum
    std::vector<std::vector<std::vector<int>>> block_paths;
    for (const auto& b : blocks) {
      std::vector<std::vector<int>> paths;
      std::vector<int> rest(b.begin() + 1, b.end());
      std::sort(rest.begin(), rest.end());
      do {
        std::vector<int> path = {b[0]};
        path.insert(path.end(), rest.begin(), rest.end());
        paths.push_back(path);
      } while (std::next_permutation(rest.begin(), rest.end()));
      block_paths.push_back(std::move(paths));
    }
    std::vector<size_t> pick(blocks.size(), 0);
    for (;;) {
      std::vector<std::pair<int, int>> edges;
      for (size_t t = 0; t < blocks.size(); ++t) {
        const auto& path = block_paths[t][pick[t]];
        for (size_t i = 0; i + 1 < path.size(); ++i)
          edges.emplace_back(path[i], path[i + 1]);
      }
      out.push_back(make_graph(n, std::move(edges)));
      size_t t = 0;
      while (t < pick.size() && ++pick[t] == block_paths[t].size()) pick[t++] = 0;
      if (t == pick.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<LineShape, Perm> decompose_proper_line(const Digraph& g) {
  GraphStats st = graph_stats(g);
  std::vector<int> next(g.n, -1);
  for (auto [a, b] : g.edges) {
    if (next[a] != -1) throw MathError("decompose_proper_line: not a union of lines");
    next[a] = b;
  }
  if (st.has_cycle || has_repeated_edge(g))
    throw MathError("decompose_proper_line: not a union of lines");

  struct Path {
    std::vector<int> verts;
  };
  std::vector<Path> paths;
  for (const auto& comp : st.components) {
    int start = -1;
    for (int v : comp)
      if (st.indeg[v] == 0) {
        if (start != -1) throw MathError("decompose_proper_line: not a union of lines");
        start = v;
      }
    if (start == -1) throw MathError("decompose_proper_line: not a union of lines");
    Path p;
    for (int v = start; v != -1; v = next[v]) p.verts.push_back(v);
    if (p.verts.size() != comp.size())
      throw MathError("decompose_proper_line: not a union of lines");
    paths.push_back(std::move(p));
  }
  // parts ascending; equal-length parts by minimal vertex (components are
  // already ordered by their minima)
  std::stable_sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) {
    return a.verts.size() < b.verts.size();
  });
  LineShape shape;
  Perm tau;
  for (const auto& p : paths) {
    shape.push_back(static_cast<int>(p.verts.size()));
    for (int v : p.verts) tau.push_back(v);
  }
  return {shape, tau};
}

void GraphVector::add(const Digraph& g, const Rational& c) {
  if (sgn(c) == 0) return;
  auto it = terms.find(g);
  if (it == terms.end()) {
    terms.emplace(g, c);
  } else {
    it->second += c;
    if (pvalab::is_zero(it->second)) terms.erase(it);
  }
}

GraphVector parse_graph_vector(const std::string& text) {
  GraphVector v;
  size_t i = 0;
  const std::string& s = text;
  auto skip_ws = [&] {
    while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_ws();
  bool first = true;
  while (i < s.size()) {
    Rational sign(1);
    skip_ws();
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw ParseError("graph vector: expected '+' or '-'");
    }
    first = false;
    Rational coeff(1);
    if (i < s.size() && (isdigit(static_cast<unsigned char>(s[i])))) {
      size_t j = i;
      while (j < s.size() && (isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
        ++j;
      try {
        coeff = Rational(s.substr(i, j - i));
        coeff.canonicalize();
      } catch (const std::exception&) {
        throw ParseError("graph vector: bad coefficient");
      }
      i = j;
      skip_ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    if (i >= s.size() || s[i] != '[') throw ParseError("graph vector: expected '['");
    size_t close = s.find(']', i);
    if (close == std::string::npos) throw ParseError("graph vector: missing ']'");
    Digraph g = parse_graph(s.substr(i + 1, close - i - 1));
    v.add(g, sign * coeff);
    i = close + 1;
    skip_ws();
  }
  return v;
}

std::string graph_vector_str(const GraphVector& v) {
  if (v.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : v.terms) {
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "- ";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (a != 1) os << rat_str(a) << " * ";
    os << "[" << graph_str(g) << "]";
  }
  return os.str();
}

}  // namespace pvalab
