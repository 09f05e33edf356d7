// =====================================================================
// Truncated slices of the three complexes: raw coordinate charts,
// validity constraints, differential matrices, cohomology dimensions,
// the vanishing verification, and the straightening algorithm.
// =====================================================================

#include "pvalab/cohomology.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

#include "pvalab/sesq.hpp"

namespace pvalab {

namespace {

std::vector<int> offsets(const LineShape& k) {
  std::vector<int> K{0};
  for (int p : k) K.push_back(K.back() + p);
  return K;
}

// all (lambda exponents, monomial) with |lexp| + wt(mono) == w; for arity 0
// only monomials that are their own reduced form modulo dV
std::vector<std::pair<std::vector<int>, DiffMonomial>> value_cells(
    const WeightTable& wt, int arity, long w) {
  std::vector<std::pair<std::vector<int>, DiffMonomial>> out;
  if (w < 0) return out;
  if (arity == 0) {
    for (const auto& m : monomials_of_weight(wt, w))
      if (normal_form_v0(dp_mono(m), wt) == dp_mono(m)) out.push_back({{}, m});
    return out;
  }
  int nl = arity - 1;
  std::vector<int> e(static_cast<std::size_t>(nl), 0);
  std::function<void(int, long)> rec = [&](int pos, long left) {
    if (pos == nl) {
      for (const auto& m : monomials_of_weight(wt, left)) out.push_back({e, m});
      return;
    }
    for (long j = 0; j <= left; ++j) {
      e[static_cast<std::size_t>(pos)] = static_cast<int>(j);
      rec(pos + 1, left - j);
    }
    e[static_cast<std::size_t>(pos)] = 0;
  };
  rec(0, w);
  return out;
}

std::vector<std::vector<int>> generator_tuples(int ngen, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(len), 0);
  while (true) {
    out.push_back(idx);
    int i = len - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == ngen - 1)
      idx[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
  }
  return out;
}

RawChart build_chart(ComplexKind kind, const PVASpec& pva, int s, int n,
                     long delta, long wcap) {
  RawChart ch;
  ch.kind = kind;
  ch.s = s;
  ch.n = n;
  ch.delta = delta;
  ch.wcap = wcap;
  auto add_key = [&](const LineShape& shape, const std::vector<DiffMonomial>& tuple,
                     int arity, long w) {
    int begin = ch.dim();
    for (auto& [e, m] : value_cells(pva.wt, arity, w))
      ch.cells.push_back({shape, tuple, e, m});
    ch.spans[{shape, tuple}] = {begin, ch.dim()};
  };
  // slice conventions: a slice labeled delta holds, at degree n,
  //   variational values of weight  tuple + delta - n,
  //   classical values of weight    tuple + delta - (line count),
  //   sesquilinear values of weight tuple + delta.
  // each label is preserved by the corresponding differential (classical:
  // the line-count offset absorbs the -1 of every bracket term; variational:
  // the -n anchor does; sesquilinear d is weight-neutral).
  if (kind == ComplexKind::variational) {
    for (const auto& idx : generator_tuples(pva.ngen(), n)) {
      std::vector<DiffMonomial> tuple;
      tuple.reserve(idx.size());
      for (int g : idx) tuple.push_back(dm_gen(g));
      add_key({}, tuple, n, tuple_weight(tuple, pva.wt) + delta - n);
    }
  } else {
    auto shapes = kind == ComplexKind::classical ? cl_shapes(n) : sym_shapes(s, n);
    auto tuples = monomial_tuples(pva.wt, n, wcap);
    for (const auto& shape : shapes)
      for (const auto& v : tuples) {
        long off = kind == ComplexKind::classical
                       ? static_cast<long>(shape.size())
                       : 0;
        add_key(shape, v, static_cast<int>(shape.size()),
                tuple_weight(v, pva.wt) + delta - off);
      }
  }
  for (int i = 0; i < ch.dim(); ++i)
    ch.index[ch.cells[static_cast<std::size_t>(i)]] = i;
  return ch;
}

// a one-cell quotient element
QuotientElem cell_elem(int arity, const std::vector<int>& lexp,
                       const DiffMonomial& mono) {
  LambdaPoly body = lp_zero(std::max(0, arity - 1));
  lp_add_term(body, lexp, dp_mono(mono));
  return QuotientElem{arity, body};
}

// expand a quotient element over the chart cells of one storage key
void expand_value(const RawChart& ch, const LineShape& shape,
                  const std::vector<DiffMonomial>& tuple, const QuotientElem& q,
                  const Rational& scale, SparseVec& row) {
  for (const auto& [e, dp] : q.body.terms)
    for (const auto& [m, c] : dp.terms) {
      auto it = ch.index.find(ChartCell{shape, tuple, e, m});
      if (it == ch.index.end())
        throw MathError("value falls outside the coordinate chart");
      row[it->second] += scale * c;
      if (is_zero(row[it->second])) row.erase(it->second);
    }
}

// validity constraints for a family of shape tables (classical cochains and
// symmetric sesquilinear components share them): per-group sesquilinearity,
// the Harrison conditions, and stabilizer invariance
void family_rows(const PVASpec& pva, const RawChart& ch,
                 const std::vector<LineShape>& shapes,
                 std::vector<SparseVec>& rows) {
  const WeightTable& wt = pva.wt;
  auto tuples = monomial_tuples(wt, ch.n, ch.wcap);
  for (const auto& shape : shapes) {
    int s = static_cast<int>(shape.size());
    auto K = offsets(shape);
    // rows grouped by output value cell
    std::map<std::pair<std::vector<int>, DiffMonomial>, SparseVec> acc;
    auto flush = [&]() {
      for (auto& [cell, row] : acc)
        if (!sv_is_zero(row)) rows.push_back(std::move(row));
      acc.clear();
    };

    for (const auto& v : tuples) {
      long w = tuple_weight(v, wt);
      auto span = ch.spans.at({shape, v});

      // sum_{i in group t} F(..dv_i..) + Lambda_t F(v) == 0
      if (w + 1 <= ch.wcap) {
        for (int t = 1; t <= s; ++t) {
          for (int i = K[t - 1]; i < K[t]; ++i) {
            DiffPoly dv = total_derivative(dp_mono(v[static_cast<std::size_t>(i)]));
            for (const auto& [m, c] : dv.terms) {
              auto v2 = v;
              v2[static_cast<std::size_t>(i)] = m;
              auto sp2 = ch.spans.at({shape, v2});
              for (int r = sp2.first; r < sp2.second; ++r) {
                const ChartCell& cc = ch.cells[static_cast<std::size_t>(r)];
                acc[{cc.lexp, cc.mono}][r] += c;
              }
            }
          }
          for (int r = span.first; r < span.second; ++r) {
            const ChartCell& cc = ch.cells[static_cast<std::size_t>(r)];
            QuotientElem shifted =
                qe_mul_lambda(cell_elem(s, cc.lexp, cc.mono), t, wt);
            for (const auto& [e, dp] : shifted.body.terms)
              for (const auto& [m, c] : dp.terms) acc[{e, m}][r] += c;
          }
          flush();
        }
      }

      // (L_m^(t) F)(v) - F(v) == 0
      for (int t = 1; t <= s; ++t) {
        int kt = shape[static_cast<std::size_t>(t - 1)];
        std::vector<DiffMonomial> block(v.begin() + K[t - 1], v.begin() + K[t]);
        for (int m = 2; m <= kt; ++m) {
          for (const Perm& pi : monotone(kt, m)) {
            auto pulled = perm_pull(pi, block);
            auto v2 = v;
            std::copy(pulled.begin(), pulled.end(), v2.begin() + K[t - 1]);
            auto sp2 = ch.spans.at({shape, v2});
            Rational c(drop_sign(pi));
            for (int r = sp2.first; r < sp2.second; ++r) {
              const ChartCell& cc = ch.cells[static_cast<std::size_t>(r)];
              acc[{cc.lexp, cc.mono}][r] += c;
            }
          }
          for (int r = span.first; r < span.second; ++r) {
            const ChartCell& cc = ch.cells[static_cast<std::size_t>(r)];
            acc[{cc.lexp, cc.mono}][r] += Rational(-1);
          }
          flush();
        }
      }

      // act_Ss(F, sigma)(v) - F(v) == 0 over the shape's stabilizer
      Perm sigma = perm_id(s);
      while (std::next_permutation(sigma.begin(), sigma.end())) {
        Perm inv = perm_inverse(sigma);
        bool stab = true;
        for (int t = 0; t < s; ++t)
          stab = stab && shape[static_cast<std::size_t>(
                             inv[static_cast<std::size_t>(t)])] ==
                             shape[static_cast<std::size_t>(t)];
        if (!stab) continue;
        Rational sign(koszul_exponent(shape, sigma) % 2 ? -1 : 1);
        std::vector<DiffMonomial> cat;
        cat.reserve(v.size());
        for (int r = 0; r < s; ++r) {
          int b = sigma[static_cast<std::size_t>(r)];
          cat.insert(cat.end(), v.begin() + K[b], v.begin() + K[b + 1]);
        }
        auto spc = ch.spans.at({shape, cat});
        for (int r = spc.first; r < spc.second; ++r) {
          const ChartCell& cc = ch.cells[static_cast<std::size_t>(r)];
          QuotientElem moved =
              qe_scale(sign, qe_permute(cell_elem(s, cc.lexp, cc.mono), sigma, wt));
          for (const auto& [e, dp] : moved.body.terms)
            for (const auto& [m, c] : dp.terms) acc[{e, m}][r] += c;
        }
        for (int r = span.first; r < span.second; ++r) {
          const ChartCell& cc = ch.cells[static_cast<std::size_t>(r)];
          acc[{cc.lexp, cc.mono}][r] += Rational(-1);
        }
        flush();
      }
    }
  }
}

// skewsymmetry of a variational cochain under adjacent transpositions
void variational_rows(const PVASpec& pva, const RawChart& ch,
                      std::vector<SparseVec>& rows) {
  const WeightTable& wt = pva.wt;
  int n = ch.n;
  for (int k = 0; k + 1 < n; ++k) {
    Perm sw = perm_id(n);
    std::swap(sw[static_cast<std::size_t>(k)], sw[static_cast<std::size_t>(k + 1)]);
    for (const auto& [key, span] : ch.spans) {
      const auto& tuple = key.second;
      auto pulled = perm_pull(sw, tuple);
      auto spp = ch.spans.at({LineShape{}, pulled});
      std::map<std::pair<std::vector<int>, DiffMonomial>, SparseVec> acc;
      for (int r = spp.first; r < spp.second; ++r) {
        const ChartCell& cc = ch.cells[static_cast<std::size_t>(r)];
        QuotientElem moved = qe_permute(cell_elem(n, cc.lexp, cc.mono), sw, wt);
        for (const auto& [e, dp] : moved.body.terms)
          for (const auto& [m, c] : dp.terms) acc[{e, m}][r] += c;
      }
      for (int r = span.first; r < span.second; ++r) {
        const ChartCell& cc = ch.cells[static_cast<std::size_t>(r)];
        acc[{cc.lexp, cc.mono}][r] += Rational(1);
      }
      for (auto& [cell, row] : acc)
        if (!sv_is_zero(row)) rows.push_back(std::move(row));
    }
  }
}

int gen_index(const DiffMonomial& m) {
  if (m.factors.size() != 1 || m.factors[0].second != 0)
    throw MathError("expected a plain generator");
  return m.factors[0].first;
}

}  // namespace

TruncatedComplex make_complex(ComplexKind kind, const PVASpec& pva, int s,
                              long delta, long wcap) {
  TruncatedComplex tc;
  tc.kind = kind;
  tc.pva = &pva;
  tc.s = s;
  tc.delta = delta;
  tc.wcap = wcap;
  return tc;
}

const RawChart& tc_chart(TruncatedComplex& tc, int n) {
  auto it = tc.charts.find(n);
  if (it == tc.charts.end())
    it = tc.charts.emplace(n, build_chart(tc.kind, *tc.pva, tc.s, n, tc.delta,
                                          tc.wcap))
             .first;
  return it->second;
}

const std::vector<SparseVec>& cochain_basis(TruncatedComplex& tc, int n) {
  auto it = tc.bases.find(n);
  if (it != tc.bases.end()) return it->second;
  const RawChart& ch = tc_chart(tc, n);
  std::vector<SparseVec> rows;
  switch (tc.kind) {
    case ComplexKind::variational:
      variational_rows(*tc.pva, ch, rows);
      break;
    case ComplexKind::classical:
      family_rows(*tc.pva, ch, cl_shapes(n), rows);
      break;
    case ComplexKind::sesq_symmetric:
      family_rows(*tc.pva, ch, sym_shapes(tc.s, n), rows);
      break;
  }
  auto rk = rank_kernel(rows, ch.dim());
  return tc.bases.emplace(n, std::move(rk.kernel)).first->second;
}

const std::vector<SparseVec>& diff_matrix(TruncatedComplex& tc, int n) {
  auto it = tc.dmats.find(n);
  if (it != tc.dmats.end()) return it->second;
  const auto& basis = cochain_basis(tc, n);
  const RawChart& ch = tc_chart(tc, n);
  const RawChart& ch1 = tc_chart(tc, n + 1);
  const WeightTable& wt = tc.pva->wt;
  std::vector<SparseVec> rows;
  rows.reserve(basis.size());
  for (const auto& b : basis) {
    switch (tc.kind) {
      case ComplexKind::variational:
        rows.push_back(var_coords(ch1, d_var(*tc.pva, chart_to_var(ch, wt, b))));
        break;
      case ComplexKind::classical:
        rows.push_back(cl_coords(ch1, d_cl(*tc.pva, chart_to_cl(ch, wt, b))));
        break;
      case ComplexKind::sesq_symmetric:
        rows.push_back(
            sesq_coords(ch1, sym_d_total(chart_to_sesq(ch, wt, b), wt)));
        break;
    }
  }
  return tc.dmats.emplace(n, std::move(rows)).first->second;
}

ClCochain chart_to_cl(const RawChart& ch, const WeightTable& wt, const SparseVec& x) {
  ClCochain out = cl_zero(ch.n, wt, ch.wcap);
  for (const auto& [i, c] : x) {
    const ChartCell& cc = ch.cells.at(static_cast<std::size_t>(i));
    auto& slot = out.shapes.at(cc.shape).at(cc.tuple);
    lp_add_term(slot.body, cc.lexp, dp_mono(cc.mono, c));
  }
  return out;
}

SymSesqCochain chart_to_sesq(const RawChart& ch, const WeightTable& wt,
                             const SparseVec& x) {
  SymSesqCochain out = sym_zero(ch.s, ch.n, wt, ch.wcap);
  for (const auto& [i, c] : x) {
    const ChartCell& cc = ch.cells.at(static_cast<std::size_t>(i));
    auto& slot = out.components.at(cc.shape).values.at(cc.tuple);
    lp_add_term(slot.body, cc.lexp, dp_mono(cc.mono, c));
  }
  return out;
}

VarCochain chart_to_var(const RawChart& ch, const WeightTable& wt,
                        const SparseVec& x) {
  (void)wt;
  VarCochain out;
  out.arity = ch.n;
  for (const auto& [key, span] : ch.spans) {
    std::vector<int> idx;
    idx.reserve(key.second.size());
    for (const auto& m : key.second) idx.push_back(gen_index(m));
    out.values[idx] = qe_zero(ch.n);
  }
  for (const auto& [i, c] : x) {
    const ChartCell& cc = ch.cells.at(static_cast<std::size_t>(i));
    std::vector<int> idx;
    idx.reserve(cc.tuple.size());
    for (const auto& m : cc.tuple) idx.push_back(gen_index(m));
    lp_add_term(out.values.at(idx).body, cc.lexp, dp_mono(cc.mono, c));
  }
  return out;
}

SparseVec cl_coords(const RawChart& ch, const ClCochain& y) {
  SparseVec out;
  for (const auto& [shape, table] : y.shapes)
    for (const auto& [v, q] : table)
      expand_value(ch, shape, v, q, Rational(1), out);
  return out;
}

SparseVec sesq_coords(const RawChart& ch, const SymSesqCochain& f) {
  SparseVec out;
  for (const auto& [shape, comp] : f.components)
    for (const auto& [v, q] : comp.values)
      expand_value(ch, shape, v, q, Rational(1), out);
  return out;
}

SparseVec var_coords(const RawChart& ch, const VarCochain& f) {
  SparseVec out;
  for (const auto& [idx, q] : f.values) {
    std::vector<DiffMonomial> tuple;
    tuple.reserve(idx.size());
    for (int g : idx) tuple.push_back(dm_gen(g));
    expand_value(ch, {}, tuple, q, Rational(1), out);
  }
  return out;
}

std::vector<SliceReport> cohomology_dims(TruncatedComplex& tc, int nmin, int nmax) {
  std::vector<SliceReport> out;
  int prev_rank = 0;
  if (nmin > 0) {
    const auto& prev = diff_matrix(tc, nmin - 1);
    prev_rank = rank_kernel(prev, tc_chart(tc, nmin).dim()).rank;
  }
  for (int n = nmin; n <= nmax; ++n) {
    const auto& basis = cochain_basis(tc, n);
    const auto& rows = diff_matrix(tc, n);
    int rk = rank_kernel(rows, tc_chart(tc, n + 1).dim()).rank;
    SliceReport r;
    r.n = n;
    r.delta = tc.delta;
    r.W = tc.wcap;
    r.dim_space = static_cast<int>(basis.size());
    r.dim_ker = r.dim_space - rk;
    r.dim_im = prev_rank;
    r.dim_H = r.dim_ker - prev_rank;
    r.status = r.dim_H == 0 ? "zero" : "nonzero";
    out.push_back(std::move(r));
    prev_rank = rk;
  }
  return out;
}

bool d_squared_certificate(TruncatedComplex& tc, int n) {
  const auto& rows = diff_matrix(tc, n);
  const auto& basis1 = cochain_basis(tc, n + 1);
  const auto& rows1 = diff_matrix(tc, n + 1);
  int dim1 = tc_chart(tc, n + 1).dim();
  for (const auto& r : rows) {
    auto sol = solve_in_rowspace(basis1, r, dim1);
    if (!sol) return false;  // the differential left the valid subspace
    SparseVec dd;
    for (std::size_t j = 0; j < basis1.size(); ++j)
      axpy(dd, (*sol)[j], rows1[j]);
    if (!sv_is_zero(dd)) return false;
  }
  return true;
}

VanishReport verify_vanishing(const PVASpec& pva, int s, int n, long W, long delta) {
  if (s < 1 || s >= n)
    throw MathError("the vanishing theorem concerns 1 <= s < n");
  VanishReport rep;
  rep.n = n;
  rep.s = s;
  rep.delta = delta;
  rep.W = W;
  auto dim_h = [&](long window) {
    TruncatedComplex tc = make_complex(ComplexKind::sesq_symmetric, pva, s, delta, window);
    return cohomology_dims(tc, n, n).front().dim_H;
  };
  rep.dim_H = dim_h(W);
  if (rep.dim_H == 0) {
    rep.status = "zero";
    return rep;
  }
  rep.dim_H_retry = dim_h(W + 1);
  rep.status = rep.dim_H_retry == 0 ? "retry" : "nonzero";
  return rep;
}

std::map<long, ClCochain> cl_split_weights(const ClCochain& y, const WeightTable& wt) {
  std::map<long, ClCochain> out;
  for (const auto& [shape, table] : y.shapes)
    for (const auto& [v, q] : table) {
      long base = tuple_weight(v, wt);
      for (const auto& [e, dp] : q.body.terms)
        for (const auto& [m, c] : dp.terms) {
          long lam = 0;
          for (int x : e) lam += x;
          // d-invariant slice label: value weight relative to the tuple,
          // offset by the shape's line count (see cl_weight)
          long delta =
              lam + dm_weight(m, wt) - base + static_cast<long>(shape.size());
          auto it = out.find(delta);
          if (it == out.end())
            it = out.emplace(delta, cl_zero(y.arity, wt, y.wcap)).first;
          lp_add_term(it->second.shapes.at(shape).at(v).body, e, dp_mono(m, c));
        }
    }
  return out;
}

StraightenResult straighten(const PVASpec& pva, const ClCochain& y) {
  const WeightTable& wt = pva.wt;
  int n = y.arity;
  if (n < 1) throw MathError("straighten expects arity at least 1");
  if (!d_cl(pva, y).is_zero())
    throw MathError("straighten: the input cochain is not closed");
  StraightenResult out{cl_zero(n - 1, wt, y.wcap), cl_zero(n, wt, y.wcap)};
  for (auto& [delta, part] : cl_split_weights(y, wt)) {
    ClCochain cur = part;
    int s;
    while ((s = filtration_level(cur)) < n) {
      // the level-s tables of a label-delta classical cochain carry value
      // weight tuple + delta - s, i.e. they live in the sesquilinear slice
      // labeled delta - s (at every sesquilinear degree)
      TruncatedComplex tc =
          make_complex(ComplexKind::sesq_symmetric, pva, s, delta - s, y.wcap);
      const auto& rows = diff_matrix(tc, n - 1);
      SparseVec target = sesq_coords(tc_chart(tc, n), to_harrison(cur, s, wt));
      auto sol = solve_in_rowspace(rows, target, tc_chart(tc, n).dim());
      if (!sol)
        throw TruncationError(
            "straighten: no primitive at filtration level " + std::to_string(s) +
            " inside the weight window (truncation artifact)");
      const auto& basis = cochain_basis(tc, n - 1);
      SparseVec zco;
      for (std::size_t i = 0; i < basis.size(); ++i)
        axpy(zco, (*sol)[i], basis[i]);
      ClCochain zs = from_harrison(chart_to_sesq(tc_chart(tc, n - 1), wt, zco), wt);
      cur = cl_add(cur, cl_scale(Rational(-1), d_cl(pva, zs)));
      out.z = cl_add(out.z, zs);
      if (filtration_level(cur) <= s)
        throw MathError("straighten: the filtration level did not increase");
    }
    out.ytilde = cl_add(out.ytilde, cur);
  }
  return out;
}

void parallel_for(int jobs, int count, const std::function<void(int)>& fn) {
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  int width = std::min(jobs, count);
  pool.reserve(static_cast<std::size_t>(width));
  for (int t = 0; t < width; ++t)
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace pvalab
