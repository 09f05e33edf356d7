// =====================================================================
// Classical PVA cochains: graph evaluation, the explicit differential,
// the master 2-cochain, insertions, and the adjoint bracket.
// =====================================================================

#include "pvalab/cl_complex.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace pvalab {

namespace {

std::vector<int> offsets(const LineShape& k) {
  std::vector<int> K{0};
  for (int p : k) K.push_back(K.back() + p);
  return K;
}

Rational parity(int e) { return Rational(((e % 2) + 2) % 2 ? -1 : 1); }

std::string tuple_str(const std::vector<DiffMonomial>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += dm_str(v[i], {});
  }
  return out.empty() ? "()" : out;
}

// every choice of one monomial per slot, with the product of coefficients
void expand_tuples(
    const std::vector<DiffPoly>& args,
    const std::function<void(const std::vector<DiffMonomial>&, const Rational&)>&
        fn) {
  int n = static_cast<int>(args.size());
  std::vector<DiffMonomial> cur(static_cast<std::size_t>(n));
  std::function<void(int, const Rational&)> go = [&](int i, const Rational& c) {
    if (i == n) {
      fn(cur, c);
      return;
    }
    for (const auto& [m, r] : args[static_cast<std::size_t>(i)].terms) {
      cur[static_cast<std::size_t>(i)] = m;
      go(i + 1, c * r);
    }
  };
  go(0, Rational(1));
  return;
}

std::vector<DiffPoly> wrap_args(const std::vector<DiffMonomial>& v) {
  std::vector<DiffPoly> out;
  out.reserve(v.size());
  for (const auto& m : v) out.push_back(dp_mono(m));
  return out;
}

// value representative on an arbitrary graph, in g.n local variables
LambdaPoly eval_graph_rep(const ClCochain& y, const Digraph& g,
                          const std::vector<DiffPoly>& args,
                          const WeightTable& wt) {
  if (static_cast<int>(args.size()) != g.n || g.n != y.arity)
    throw MathError("graph evaluation: arity mismatch");
  if (g.n == 0) return y.shapes.at(LineShape{}).at({}).body;
  GraphVector gv;
  gv.add(g, Rational(1));
  auto red = reduce(gv);
  LambdaPoly out = lp_zero(g.n);
  for (const auto& [line, coef] : red) {
    auto [shape, tau] = decompose_proper_line(line);
    auto it = y.shapes.find(shape);
    if (it == y.shapes.end())
      throw MathError("graph evaluation: no table for shape " + shape_str(shape));
    auto K = offsets(shape);
    int s = static_cast<int>(shape.size());
    std::vector<SlotSubst> lsubs(static_cast<std::size_t>(s - 1));
    for (int t = 0; t + 1 < s; ++t)
      for (int i = K[t]; i < K[t + 1]; ++i)
        lsubs[static_cast<std::size_t>(t)].linear[tau[static_cast<std::size_t>(i)]] =
            Rational(1);
    std::vector<DiffPoly> pulled = perm_pull(tau, args);
    Rational base = coef * Rational(perm_sign(tau));
    expand_tuples(pulled, [&](const std::vector<DiffMonomial>& w, const Rational& r) {
      if (is_zero(r)) return;
      if (tuple_weight(w, wt) > y.wcap)
        throw CapError("graph evaluation: tuple (" + tuple_str(w) +
                       ") exceeds the stored weight window");
      auto jt = it->second.find(w);
      if (jt == it->second.end())
        throw CapError("graph evaluation: tuple (" + tuple_str(w) +
                       ") missing from the table for shape " + shape_str(shape));
      if (jt->second.is_zero()) return;
      out = lp_add(out, lp_scale(base * r, substitute(jt->second.body, lsubs, g.n)));
    });
  }
  return out;
}

// rewrite an N-variable class representative in the group variables of a
// shape; MathError when it does not factor through them
QuotientElem regroup_to_shape(const LambdaPoly& raw, const LineShape& shape,
                              const WeightTable& wt) {
  int N = 0;
  for (int p : shape) N += p;
  QuotientElem cls = qe_normalize(N, raw, wt);
  int s = static_cast<int>(shape.size());
  if (s == 0) return cls;
  auto K = offsets(shape);
  // section: the first vertex of each group carries the group variable
  std::vector<SlotSubst> sec(static_cast<std::size_t>(N - 1));
  for (int t = 0; t + 1 < s; ++t)
    sec[static_cast<std::size_t>(K[t])].linear[t] = Rational(1);
  LambdaPoly body = substitute(cls.body, sec, s - 1);
  std::vector<SlotSubst> back(static_cast<std::size_t>(s - 1));
  for (int t = 0; t + 1 < s; ++t)
    for (int i = K[t]; i < K[t + 1]; ++i)
      back[static_cast<std::size_t>(t)].linear[i] = Rational(1);
  if (!(substitute(body, back, N - 1) == cls.body))
    throw MathError("graph value does not factor through the line variables of " +
                    shape_str(shape));
  return QuotientElem{s, body};
}

// split off the tag variables (the last feed_vars.size() variables of p):
// each tag power resolves as (lambda_w + d_w)^b, the lambda_w part staying a
// scalar and d^b' landing on argument w.  Keyed by the derivative profile.
std::map<std::vector<int>, LambdaPoly> resolve_feeds(
    const LambdaPoly& p, int nbase, const std::vector<int>& feed_vars) {
  int nz = static_cast<int>(feed_vars.size());
  if (p.nvars != nbase + nz) throw MathError("feed resolution: variable mismatch");
  std::map<std::vector<int>, LambdaPoly> out;
  std::vector<int> prof(static_cast<std::size_t>(nz), 0);
  for (const auto& [e, c] : p.terms) {
    std::function<void(int, std::vector<int>, const Rational&)> go =
        [&](int w, std::vector<int> expo, const Rational& r) {
          if (w == nz) {
            auto [it, fresh] = out.try_emplace(prof, lp_zero(nbase));
            (void)fresh;
            lp_add_term(it->second, expo, dp_scale(r, c));
            return;
          }
          int b = e[static_cast<std::size_t>(nbase + w)];
          for (int der = 0; der <= b; ++der) {
            prof[static_cast<std::size_t>(w)] = der;
            auto e2 = expo;
            e2[static_cast<std::size_t>(feed_vars[static_cast<std::size_t>(w)])] +=
                b - der;
            go(w + 1, e2, r * binom(b, der));
          }
        };
    go(0, std::vector<int>(e.begin(), e.begin() + nbase), Rational(1));
  }
  return out;
}

int component_of(const GraphStats& st, int v) {
  for (int b = 0; b < static_cast<int>(st.components.size()); ++b)
    if (std::find(st.components[static_cast<std::size_t>(b)].begin(),
                  st.components[static_cast<std::size_t>(b)].end(),
                  v) != st.components[static_cast<std::size_t>(b)].end())
      return b;
  throw MathError("vertex outside its own graph");
}

// the shared four-term differential; graded restricts to the
// component-preserving terms (leaf absorption, edge collapse) and to output
// shapes with exactly s_only lines
ClCochain d_impl(const PVASpec& pva, const ClCochain& y, bool graded, int s_only) {
  const WeightTable& wt = pva.wt;
  int n = y.arity;
  int N = n + 1;
  ClCochain out = cl_zero(N, wt, y.wcap);
  for (auto& [oshape, otable] : out.shapes) {
    if (graded && static_cast<int>(oshape.size()) != s_only) continue;
    Digraph G = standard_line(oshape);
    GraphStats st = graph_stats(G);
    for (auto& [v, slot] : otable) {
      LambdaPoly raw = lp_zero(N);

      for (int h = 0; h < N; ++h) {
        int deg = st.indeg[static_cast<std::size_t>(h)] +
                  st.outdeg[static_cast<std::size_t>(h)];
        std::vector<DiffMonomial> rest = v;
        rest.erase(rest.begin() + h);

        if (deg == 0 && !graded) {
          // [v_h lambda_h Y^{G \ h}(rest)], sign (-1)^{n-h}
          LambdaPoly rep = eval_graph_rep(y, delete_vertex(G, h), wrap_args(rest), wt);
          Rational sgn = parity(n - h - 1);
          for (const auto& [e, c] : rep.terms) {
            LambdaPoly br = bracket(pva, dp_mono(v[static_cast<std::size_t>(h)]), c);
            for (const auto& [be, bc] : br.terms) {
              std::vector<int> E(static_cast<std::size_t>(N), 0);
              for (int i = 0; i < n; ++i)
                E[static_cast<std::size_t>(i < h ? i : i + 1)] =
                    e[static_cast<std::size_t>(i)];
              E[static_cast<std::size_t>(h)] += be[0];
              lp_add_term(raw, E, dp_scale(sgn, bc));
            }
          }
        } else if (deg == 1) {
          // Y^{G \ h} with the neighbour slot shifted by lambda_h + d acting
          // on v_h, v_h multiplied outside; sign (-1)^{outdeg(h)+n-h+1}
          int j = -1;
          for (const auto& e : G.edges) {
            if (e.first == h) j = e.second;
            if (e.second == h) j = e.first;
          }
          LambdaPoly rep = eval_graph_rep(y, delete_vertex(G, h), wrap_args(rest), wt);
          std::vector<SlotSubst> subs(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i)
            subs[static_cast<std::size_t>(i)].linear[i < h ? i : i + 1] = Rational(1);
          int jloc = j < h ? j : j - 1;
          subs[static_cast<std::size_t>(jloc)].linear[h] = Rational(1);
          subs[static_cast<std::size_t>(jloc)].mul_target =
              dp_mono(v[static_cast<std::size_t>(h)]);
          Rational sgn = parity(st.outdeg[static_cast<std::size_t>(h)] + n - h);
          raw = lp_add(raw, lp_scale(sgn, substitute(rep, subs, N)));
        }
      }

      for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
          int eps = st.epsilon[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          if (eps == 0 && graded) continue;
          if (eps == 0 && component_of(st, i) == component_of(st, j))
            continue;  // the collapse closes a cycle
          Digraph pi = collapse(G, i, j);
          std::vector<int> others;
          for (int w = 0; w < N; ++w)
            if (w != i && w != j) others.push_back(w);
          Rational sgn = parity(n + i + j + 1);

          if (eps != 0) {
            // collapse of an edge: the plain product enters the merged slot
            std::vector<DiffPoly> yargs(static_cast<std::size_t>(n));
            yargs[0] = dp_mono(dm_mul(v[static_cast<std::size_t>(i)],
                                      v[static_cast<std::size_t>(j)]));
            for (int r = 1; r < n; ++r)
              yargs[static_cast<std::size_t>(r)] =
                  dp_mono(v[static_cast<std::size_t>(others[static_cast<std::size_t>(r - 1)])]);
            LambdaPoly rep = eval_graph_rep(y, pi, yargs, wt);
            std::vector<SlotSubst> subs(static_cast<std::size_t>(n));
            subs[0].linear[i] = Rational(1);
            subs[0].linear[j] = Rational(1);
            for (int r = 1; r < n; ++r)
              subs[static_cast<std::size_t>(r)]
                  .linear[others[static_cast<std::size_t>(r - 1)]] = Rational(1);
            raw = lp_add(raw, lp_scale(sgn * Rational(eps), substitute(rep, subs, N)));
            continue;
          }

          // non-adjacent pair: the bracket [v_i_{lambda_i + X(i)} v_j] enters
          // the merged slot, X(i) feeding the other members of i's component
          std::vector<int> feeds;
          for (int w : st.components[static_cast<std::size_t>(component_of(st, i))])
            if (w != i) feeds.push_back(w);
          int nf = static_cast<int>(feeds.size());
          LambdaPoly br = bracket_mm(pva, v[static_cast<std::size_t>(i)],
                                     v[static_cast<std::size_t>(j)]);
          std::vector<SlotSubst> bsub(1);
          bsub[0].linear[i] = Rational(1);
          for (int f = 0; f < nf; ++f) bsub[0].linear[N + f] = Rational(1);
          LambdaPoly S = substitute(br, bsub, N + nf);
          std::vector<int> fed_of(static_cast<std::size_t>(N), -1);
          for (int f = 0; f < nf; ++f)
            fed_of[static_cast<std::size_t>(feeds[static_cast<std::size_t>(f)])] = f;
          for (const auto& [prof, lampoly] : resolve_feeds(S, N, feeds)) {
            for (const auto& [E, c] : lampoly.terms) {
              std::vector<DiffPoly> yargs(static_cast<std::size_t>(n));
              yargs[0] = c;
              for (int r = 1; r < n; ++r) {
                int w = others[static_cast<std::size_t>(r - 1)];
                const DiffMonomial& mw = v[static_cast<std::size_t>(w)];
                int f = fed_of[static_cast<std::size_t>(w)];
                yargs[static_cast<std::size_t>(r)] =
                    f < 0 ? dp_mono(mw)
                          : total_derivative(dp_mono(mw),
                                             prof[static_cast<std::size_t>(f)]);
              }
              LambdaPoly rep = eval_graph_rep(y, pi, yargs, wt);
              if (rep.is_zero()) continue;
              std::vector<SlotSubst> subs(static_cast<std::size_t>(n));
              subs[0].linear[i] = Rational(1);
              subs[0].linear[j] = Rational(1);
              for (int r = 1; r < n; ++r)
                subs[static_cast<std::size_t>(r)]
                    .linear[others[static_cast<std::size_t>(r - 1)]] = Rational(1);
              LambdaPoly scalar = lp_zero(N);
              lp_add_term(scalar, E, dp_const(sgn));
              raw = lp_add(raw, lp_mul(scalar, substitute(rep, subs, N)));
            }
          }
        }
      }

      slot = regroup_to_shape(raw, oshape, wt);
    }
  }
  return out;
}

}  // namespace

bool ClCochain::is_zero() const {
  for (const auto& [shape, table] : shapes)
    for (const auto& [v, q] : table)
      if (!q.is_zero()) return false;
  return true;
}

std::vector<LineShape> cl_shapes(int n) {
  std::vector<LineShape> out;
  LineShape cur;
  std::function<void(int, int)> go = [&](int rem, int lo) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = lo; p <= rem; ++p) {
      cur.push_back(p);
      go(rem - p, p);
      cur.pop_back();
    }
  };
  go(n, 1);
  return out;
}

ClCochain cl_zero(int n, const WeightTable& wt, long wcap) {
  ClCochain out;
  out.arity = n;
  out.wcap = wcap;
  auto tuples = monomial_tuples(wt, n, wcap);
  for (const auto& shape : cl_shapes(n)) {
    auto& table = out.shapes[shape];
    for (const auto& v : tuples)
      table[v] = qe_zero(static_cast<int>(shape.size()));
  }
  return out;
}

ClCochain cl_add(const ClCochain& a, const ClCochain& b) {
  if (a.arity != b.arity || a.wcap != b.wcap)
    throw MathError("cochain sum: mismatched arity or weight window");
  ClCochain out = a;
  for (const auto& [shape, table] : b.shapes) {
    auto& otable = out.shapes[shape];
    for (const auto& [v, q] : table) {
      auto it = otable.find(v);
      if (it == otable.end())
        otable.emplace(v, q);
      else
        it->second = qe_add(it->second, q);
    }
  }
  return out;
}

ClCochain cl_scale(const Rational& c, const ClCochain& a) {
  ClCochain out = a;
  for (auto& [shape, table] : out.shapes)
    for (auto& [v, q] : table) q = qe_scale(c, q);
  return out;
}

CheckResult cl_validate(const ClCochain& y, const WeightTable& wt) {
  auto want = cl_shapes(y.arity);
  if (y.shapes.size() != want.size())
    return {false, "shape tables do not cover the partitions of " +
                       std::to_string(y.arity)};
  for (const auto& shape : want)
    if (!y.shapes.count(shape))
      return {false, "missing table for shape " + shape_str(shape)};
  for (const auto& [shape, table] : y.shapes) {
    SesqCochain view{shape, y.wcap, table};
    auto r = sq_validate(view, wt);
    if (!r.ok) return {false, "shape " + shape_str(shape) + ": " + r.detail};
    r = harrison_check_all(view, wt);
    if (!r.ok) return {false, "shape " + shape_str(shape) + ": " + r.detail};
    int s = static_cast<int>(shape.size());
    Perm sigma = perm_id(s);
    while (std::next_permutation(sigma.begin(), sigma.end())) {
      Perm inv = perm_inverse(sigma);
      bool fixes = true;
      for (int t = 0; t < s; ++t)
        if (shape[static_cast<std::size_t>(inv[static_cast<std::size_t>(t)])] !=
            shape[static_cast<std::size_t>(t)])
          fixes = false;
      if (!fixes) continue;
      if (!(act_Ss(view, sigma, wt) == view))
        return {false, "shape " + shape_str(shape) +
                           ": not invariant under the stabilizer element " +
                           perm_str(sigma)};
    }
  }
  return {true, ""};
}

std::optional<long> cl_weight(const ClCochain& y, const WeightTable& wt) {
  // d pairs a bracket term (raw value shift -1) against a product term
  // (shift 0); the two live in one slice only because a shape with s lines
  // carries an edge-count offset.  label the cochain by
  //   delta = wt(value) - wt(tuple) + s,
  // which is constant across shapes exactly when y is slice-homogeneous,
  // and drops by one under d per unit of arity.
  std::optional<long> shift;
  for (const auto& [shape, table] : y.shapes) {
    SesqCochain view{shape, y.wcap, table};
    auto w = sq_weight(view, wt);
    if (!w) continue;
    long labeled = *w + static_cast<long>(shape.size());
    if (shift && *shift != labeled)
      throw MathError("cochain is not weight-homogeneous across shapes");
    shift = labeled;
  }
  return shift;
}

QuotientElem evaluate_on_graph(const ClCochain& y, const Digraph& g,
                               const std::vector<DiffMonomial>& v,
                               const WeightTable& wt) {
  return qe_normalize(g.n, eval_graph_rep(y, g, wrap_args(v), wt), wt);
}

QuotientElem evaluate_on_graph_poly(const ClCochain& y, const Digraph& g,
                                    const std::vector<DiffPoly>& v,
                                    const WeightTable& wt) {
  return qe_normalize(g.n, eval_graph_rep(y, g, v, wt), wt);
}

ClCochain d_cl(const PVASpec& pva, const ClCochain& y) {
  return d_impl(pva, y, false, -1);
}

ClCochain phi(const PVASpec& pva, const VarCochain& f, long wcap) {
  ClCochain out = cl_zero(f.arity, pva.wt, wcap);
  auto& table = out.shapes.at(LineShape(static_cast<std::size_t>(f.arity), 1));
  for (auto& [v, slot] : table) slot = vc_eval(pva, f, v);
  return out;
}

VarCochain to_variational(const ClCochain& y, const PVASpec& pva) {
  int n = y.arity;
  const auto& table = y.shapes.at(LineShape(static_cast<std::size_t>(n), 1));
  VarCochain f;
  f.arity = n;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<DiffMonomial> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int i : idx) v.push_back(dm_gen(i));
    if (tuple_weight(v, pva.wt) > y.wcap)
      throw CapError("generator tuple (" + tuple_str(v) +
                     ") exceeds the stored weight window");
    f.values[idx] = table.at(v);
    int i = n - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == pva.ngen() - 1)
      idx[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
  }
  return f;
}

ClCochain master_x(const PVASpec& pva, long wcap) {
  ClCochain out = cl_zero(2, pva.wt, wcap);
  for (auto& [v, slot] : out.shapes.at(LineShape{2}))
    slot = regroup_to_shape(lp_from(2, dp_mono(dm_mul(v[0], v[1]))), LineShape{2},
                            pva.wt);
  for (auto& [v, slot] : out.shapes.at(LineShape{1, 1})) {
    std::vector<SlotSubst> sub(1);
    sub[0].linear[0] = Rational(1);
    slot = regroup_to_shape(substitute(bracket_mm(pva, v[0], v[1]), sub, 2),
                            LineShape{1, 1}, pva.wt);
  }
  return out;
}

LambdaPoly circ1(const PVASpec& pva, const ClCochain& a, const ClCochain& b,
                 const Digraph& g, const std::vector<DiffMonomial>& v) {
  const WeightTable& wt = pva.wt;
  int m = b.arity, k = a.arity;
  int NT = m + k - 1;
  if (g.n != NT || static_cast<int>(v.size()) != NT)
    throw MathError("insertion: graph or tuple size does not match m + k - 1");

  std::vector<std::pair<int, int>> ein, eout;
  for (const auto& e : g.edges)
    (e.first < m && e.second < m ? ein : eout).push_back(e);
  Digraph gp = make_graph(m, ein);
  std::vector<std::pair<int, int>> ea;
  auto amap = [&](int w) { return w < m ? 0 : w - (m - 1); };
  for (const auto& e : eout) ea.push_back({amap(e.first), amap(e.second)});
  Digraph abar = make_graph(k, ea);

  GraphStats st = graph_stats(make_graph(NT, eout));
  // each component may contain at most one inserted slot, else the collapsed
  // graph acquires a closed walk and the outer evaluation vanishes
  std::vector<int> fed_via(static_cast<std::size_t>(NT), -1);
  std::vector<int> feeds;
  for (const auto& block : st.components) {
    int inner = -1;
    bool twice = false;
    for (int w : block)
      if (w < m) {
        if (inner >= 0) twice = true;
        inner = inner < 0 ? w : inner;
      }
    if (twice) {
      if (is_oriented_forest(abar))
        throw MathError("insertion: feed through the inserted factor on an "
                        "admissible graph");
      return lp_zero(NT);
    }
    if (inner < 0) continue;
    for (int w : block)
      if (w != inner) {
        fed_via[static_cast<std::size_t>(w)] = inner;
        feeds.push_back(w);
      }
  }
  std::sort(feeds.begin(), feeds.end());

  LambdaPoly bval = eval_graph_rep(b, gp, wrap_args({v.begin(), v.begin() + m}), wt);
  int nf = static_cast<int>(feeds.size());
  std::vector<SlotSubst> bsub(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) bsub[static_cast<std::size_t>(i)].linear[i] = Rational(1);
  for (int f = 0; f < nf; ++f)
    bsub[static_cast<std::size_t>(fed_via[static_cast<std::size_t>(
            feeds[static_cast<std::size_t>(f)])])]
        .linear[NT + f] = Rational(1);
  LambdaPoly S = substitute(bval, bsub, NT + nf);

  std::vector<int> fidx(static_cast<std::size_t>(NT), -1);
  for (int f = 0; f < nf; ++f)
    fidx[static_cast<std::size_t>(feeds[static_cast<std::size_t>(f)])] = f;
  LambdaPoly out = lp_zero(NT);
  for (const auto& [prof, lampoly] : resolve_feeds(S, NT, feeds)) {
    for (const auto& [E, c] : lampoly.terms) {
      std::vector<DiffPoly> yargs(static_cast<std::size_t>(k));
      yargs[0] = c;
      for (int r = 1; r < k; ++r) {
        int w = m + r - 1;
        int f = fidx[static_cast<std::size_t>(w)];
        yargs[static_cast<std::size_t>(r)] =
            f < 0 ? dp_mono(v[static_cast<std::size_t>(w)])
                  : total_derivative(dp_mono(v[static_cast<std::size_t>(w)]),
                                     prof[static_cast<std::size_t>(f)]);
      }
      LambdaPoly rep = eval_graph_rep(a, abar, yargs, wt);
      if (rep.is_zero()) continue;
      std::vector<SlotSubst> subs(static_cast<std::size_t>(k));
      for (int t = 0; t < m; ++t) subs[0].linear[t] = Rational(1);
      for (int r = 1; r < k; ++r)
        subs[static_cast<std::size_t>(r)].linear[m + r - 1] = Rational(1);
      LambdaPoly scalar = lp_zero(NT);
      lp_add_term(scalar, E, dp_const(Rational(1)));
      out = lp_add(out, lp_mul(scalar, substitute(rep, subs, NT)));
    }
  }
  return out;
}

ClCochain adx_bracket(const PVASpec& pva, const ClCochain& x, const ClCochain& y) {
  if (x.arity != 2) throw MathError("adjoint bracket requires a 2-cochain");
  const WeightTable& wt = pva.wt;
  int n = y.arity;
  int N = n + 1;
  long wcap = std::min(x.wcap, y.wcap);
  ClCochain out = cl_zero(N, wt, wcap);
  for (auto& [oshape, otable] : out.shapes) {
    Digraph G = standard_line(oshape);
    for (auto& [v, slot] : otable) {
      LambdaPoly raw = lp_zero(N);

      // v_h into the free slot of x, y over the rest
      for (int h = 0; h < N; ++h) {
        Perm p(static_cast<std::size_t>(N));
        for (int t = 0; t + 1 < N; ++t)
          p[static_cast<std::size_t>(t)] = t < h ? t : t + 1;
        p[static_cast<std::size_t>(N - 1)] = h;
        LambdaPoly rep =
            circ1(pva, x, y, act(perm_inverse(p), G), perm_pull(p, v));
        if (rep.is_zero()) continue;
        std::vector<SlotSubst> subs(static_cast<std::size_t>(N));
        for (int t = 0; t < N; ++t)
          subs[static_cast<std::size_t>(t)].linear[p[static_cast<std::size_t>(t)]] =
              Rational(1);
        Rational sgn = parity(n - h);
        raw = lp_add(raw, lp_scale(sgn, substitute(rep, subs, N)));
      }

      // v_i, v_j into x, the result into the first slot of y
      for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
          Perm p;
          p.push_back(i);
          p.push_back(j);
          for (int w = 0; w < N; ++w)
            if (w != i && w != j) p.push_back(w);
          LambdaPoly rep =
              circ1(pva, y, x, act(perm_inverse(p), G), perm_pull(p, v));
          if (rep.is_zero()) continue;
          std::vector<SlotSubst> subs(static_cast<std::size_t>(N));
          for (int t = 0; t < N; ++t)
            subs[static_cast<std::size_t>(t)].linear[p[static_cast<std::size_t>(t)]] =
                Rational(1);
          Rational sgn = parity(n + i + j + 1);
          raw = lp_add(raw, lp_scale(sgn, substitute(rep, subs, N)));
        }
      }

      slot = regroup_to_shape(raw, oshape, wt);
    }
  }
  return out;
}

int filtration_level(const ClCochain& y) {
  int level = y.arity;  // zero cochain: maximal level n by convention
  bool nonzero = false;
  for (const auto& [shape, table] : y.shapes)
    for (const auto& [v, q] : table)
      if (!q.is_zero()) {
        int s = static_cast<int>(shape.size());
        level = nonzero ? std::min(level, s) : s;
        nonzero = true;
      }
  return level;
}

ClCochain gr_d(const PVASpec& pva, const ClCochain& y, int s) {
  return d_impl(pva, y, true, s);
}

SymSesqCochain to_harrison(const ClCochain& y, int s, const WeightTable& wt) {
  (void)wt;
  SymSesqCochain out;
  out.s = s;
  out.arity = y.arity;
  out.wcap = y.wcap;
  for (const auto& shape : sym_shapes(s, y.arity))
    out.components[shape] = SesqCochain{shape, y.wcap, y.shapes.at(shape)};
  return out;
}

ClCochain from_harrison(const SymSesqCochain& f, const WeightTable& wt) {
  auto ok = sym_validate(f, wt);
  if (ok.ok) ok = sym_harrison_check_all(f, wt);
  if (!ok.ok) throw MathError("from_harrison: " + ok.detail);
  ClCochain out = cl_zero(f.arity, wt, f.wcap);
  for (const auto& [shape, comp] : f.components) out.shapes.at(shape) = comp.values;
  return out;
}

}  // namespace pvalab
