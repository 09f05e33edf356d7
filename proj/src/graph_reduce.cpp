#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>

#include "pvalab/digraph.hpp"
#include "pvalab/sparse_matrix.hpp"

namespace pvalab {

namespace {

bool is_proper_line(const Digraph& g) {
  try {
    auto [shape, tau] = decompose_proper_line(g);
    // proper: every path starts at the minimum of its component
    int pos = 0;
    for (int part : shape) {
      int start = tau[pos];
      int mn = start;
      for (int i = 0; i < part; ++i) mn = std::min(mn, tau[pos + i]);
      if (start != mn) return false;
      pos += part;
    }
    return true;
  } catch (const MathError&) {
    return false;
  }
}

// all oriented forests on n vertices: per unordered pair a choice of
// none / a->b / b->a, kept when no undirected cycle arises
std::vector<Digraph> oriented_forests(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::vector<Digraph> out;
  std::vector<int> state(pairs.size(), 0);
  for (;;) {
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < pairs.size(); ++i) {
      if (state[i] == 1) edges.push_back(pairs[i]);
      if (state[i] == 2) edges.emplace_back(pairs[i].second, pairs[i].first);
    }
    Digraph g = make_graph(n, std::move(edges));
    if (is_oriented_forest(g)) out.push_back(g);
    size_t i = 0;
    while (i < state.size() && ++state[i] == 3) state[i++] = 0;
    if (i == state.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Quotient machine for one arity: echelon of cycle relations over oriented
// forests, pivoting on non-line forests so the remainder lives on proper
// lines.
class LineReducer {
 public:
  explicit LineReducer(int n) : n_(n) {
    forests_ = oriented_forests(n);
    for (int i = 0; i < static_cast<int>(forests_.size()); ++i)
      index_[forests_[i]] = i;
    line_col_.resize(forests_.size());
    std::vector<int> col_rank(forests_.size());
    int next = 0;
    for (size_t i = 0; i < forests_.size(); ++i)
      if (!(line_col_[i] = is_proper_line(forests_[i]))) col_rank[i] = next++;
    int nlines = 0;
    for (size_t i = 0; i < forests_.size(); ++i)
      if (line_col_[i]) col_rank[i] = next + nlines++;

    ech_ = std::make_unique<Echelon>(static_cast<int>(forests_.size()),
                                     std::move(col_rank));
    if (!load_cache()) {
      build_relations();
      save_cache();
    }

    // the quotient must be exactly the span of the proper lines
    Rational expected = factorial(n);
    long free_cols = static_cast<long>(forests_.size()) - ech_->rank();
    if (Rational(free_cols) != expected)
      throw MathError("line reduction: quotient dimension mismatch");
    for (size_t i = 0; i < forests_.size(); ++i)
      if (line_col_[i] && ech_->is_pivot(static_cast<int>(i)))
        throw MathError("line reduction: pivot landed on a proper line");
  }

  std::map<Digraph, Rational> reduce(const GraphVector& v) const {
    SparseVec row;
    for (const auto& [g, c] : v.terms) {
      if (g.n != n_) throw std::invalid_argument("reduce: mixed arities");
      if (has_repeated_edge(g) || has_directed_cycle(g) || !is_oriented_forest(g))
        continue;  // all three classes are 0 mod R(n)
      row[index_.at(g)] += c;
      if (is_zero(row[index_.at(g)])) row.erase(index_.at(g));
    }
    SparseVec rem = ech_->reduce(std::move(row));
    std::map<Digraph, Rational> out;
    for (const auto& [col, c] : rem) {
      if (!line_col_[col]) throw MathError("line reduction: non-line remainder");
      out.emplace(forests_[col], c);
    }
    return out;
  }

 private:
  void build_relations() {
    // Any cycle relation with a forest term is sum_{e in C} (F+g)\e where F
    // is a forest and g closes the unique directed cycle C of F+g. All other
    // terms of such a relation are forests as well, so the echelon over
    // forest columns captures the full projected relation space.
    for (const auto& f : forests_) {
      std::vector<std::vector<int>> adj(n_);
      for (auto [a, b] : f.edges) adj[a].push_back(b);
      for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) {
          if (a == b) continue;
          if (std::binary_search(f.edges.begin(), f.edges.end(),
                                 std::make_pair(a, b)))
            continue;
          // directed path b -> ... -> a in f (unique if it exists)
          std::vector<int> prev(n_, -1);
          prev[b] = b;
          std::vector<int> queue = {b};
          for (size_t qi = 0; qi < queue.size(); ++qi)
            for (int w : adj[queue[qi]])
              if (prev[w] == -1) {
                prev[w] = queue[qi];
                queue.push_back(w);
              }
          if (prev[a] == -1) continue;
          std::vector<std::pair<int, int>> cycle = {{a, b}};
          for (int v = a; v != b; v = prev[v]) cycle.emplace_back(prev[v], v);
          SparseVec row;
          for (auto e : cycle) {
            std::vector<std::pair<int, int>> edges = f.edges;
            edges.emplace_back(a, b);
            edges.erase(std::find(edges.begin(), edges.end(), e));
            Digraph term = make_graph(n_, std::move(edges));
            auto it = index_.find(term);
            if (it == index_.end())
              throw MathError("line reduction: relation term is not a forest");
            row[it->second] += 1;
            if (is_zero(row[it->second])) row.erase(it->second);
          }
          ech_->add_row(std::move(row));
        }
      }
    }
  }

  std::string cache_path() const {
    const char* dir = std::getenv("PVALAB_CACHE_DIR");
    if (!dir || !*dir) return "";
    return std::string(dir) + "/lines_" + std::to_string(n_) + ".ech";
  }

  bool load_cache() {
    std::string path = cache_path();
    if (path.empty()) return false;
    std::ifstream in(path);
    if (!in) return false;
    int n = 0;
    size_t nf = 0, nrows = 0;
    if (!(in >> n >> nf >> nrows)) return false;
    if (n != n_ || nf != forests_.size()) return false;
    for (size_t r = 0; r < nrows; ++r) {
      size_t len = 0;
      if (!(in >> len)) return false;
      SparseVec row;
      for (size_t i = 0; i < len; ++i) {
        int col;
        std::string val;
        if (!(in >> col >> val)) return false;
        Rational c(val);
        c.canonicalize();
        row[col] = c;
      }
      ech_->add_row(std::move(row));
    }
    return true;
  }

  void save_cache() const {
    std::string path = cache_path();
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) return;
    out << n_ << " " << forests_.size() << " " << ech_->rows().size() << "\n";
    for (const auto& row : ech_->rows()) {
      out << row.size();
      for (const auto& [col, c] : row) out << " " << col << " " << rat_str(c);
      out << "\n";
    }
  }

  int n_;
  std::vector<Digraph> forests_;
  std::map<Digraph, int> index_;
  std::vector<bool> line_col_;
  std::unique_ptr<Echelon> ech_;
};

const LineReducer& reducer_for(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<LineReducer>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, std::make_unique<LineReducer>(n)).first;
  return *it->second;
}

}  // namespace

std::map<Digraph, Rational> reduce(const GraphVector& v) {
  if (v.terms.empty()) return {};
  int n = v.terms.begin()->first.n;
  if (n > kGraphReduceCap) throw CapError("reduce: n exceeds cap");
  if (n == 0) {
    // the empty graph is the basis of F G(0)
    return {{v.terms.begin()->first, v.terms.begin()->second}};
  }
  return reducer_for(n).reduce(v);
}

std::vector<GraphVector> relation_span(int n) {
  if (n > kGraphReduceCap) throw CapError("relation_span: n exceeds cap");
  std::vector<GraphVector> out;
  if (n <= 1) return out;

  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);

  // candidate vertex cycles: a subset with a distinguished minimum plus a
  // cyclic order of the rest
  struct Candidate {
    std::vector<int> verts;  // cyclic sequence, starts at its min
  };
  std::vector<Candidate> candidates;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> vs;
    for (int v = 0; v < n; ++v)
      if (mask & (1 << v)) vs.push_back(v);
    if (vs.size() < 2) continue;
    std::vector<int> rest(vs.begin() + 1, vs.end());
    std::sort(rest.begin(), rest.end());
    do {
      Candidate c;
      c.verts = {vs[0]};
      c.verts.insert(c.verts.end(), rest.begin(), rest.end());
      candidates.push_back(c);
    } while (std::next_permutation(rest.begin(), rest.end()));
  }

  std::vector<int> state(pairs.size(), 0);  // 0 none, 1 a->b, 2 b->a, 3 both
  for (;;) {
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < pairs.size(); ++i) {
      if (state[i] & 1) edges.push_back(pairs[i]);
      if (state[i] & 2) edges.emplace_back(pairs[i].second, pairs[i].first);
    }
    Digraph g = make_graph(n, std::move(edges));

    bool any_cycle = false;
    for (const auto& cand : candidates) {
      bool ok = true;
      size_t m = cand.verts.size();
      for (size_t i = 0; i < m && ok; ++i) {
        int a = cand.verts[i], b = cand.verts[(i + 1) % m];
        ok = std::binary_search(g.edges.begin(), g.edges.end(),
                                std::make_pair(a, b));
      }
      if (!ok) continue;
      any_cycle = true;
      GraphVector rel;
      for (size_t i = 0; i < m; ++i) {
        int a = cand.verts[i], b = cand.verts[(i + 1) % m];
        std::vector<std::pair<int, int>> es = g.edges;
        es.erase(std::find(es.begin(), es.end(), std::make_pair(a, b)));
        rel.add(make_graph(n, std::move(es)), Rational(1));
      }
      out.push_back(std::move(rel));
    }
    if (any_cycle) {
      GraphVector rel;
      rel.add(g, Rational(1));
      out.push_back(std::move(rel));
    }

    size_t i = 0;
    while (i < state.size() && ++state[i] == 4) state[i++] = 0;
    if (i == state.size()) break;
  }
  return out;
}

bool check_identity_lemma(int n, int m) {
  if (m < 2 || m > n || n > kGraphReduceCap)
    throw std::invalid_argument("check_identity_lemma: need 2 <= m <= n <= cap");
  Digraph line = standard_line({n});
  GraphVector v;
  v.add(line, Rational(1));
  Rational sign = (m % 2 == 0) ? Rational(1) : Rational(-1);
  for (const Perm& pi : monotone(n, m)) v.add(act(pi, line), sign);
  return reduce(v).empty();
}

}  // namespace pvalab
