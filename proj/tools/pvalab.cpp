// =====================================================================
// pvalab: exact checks and computations for Poisson vertex algebra
// cochain complexes.  JSON in, JSON out, human summary on stdout.
//
// Exit codes: 0 pass, 1 mathematical failure, 2 parse error,
//             3 resource cap exceeded, 4 truncation infeasibility.
// =====================================================================

#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "pvalab/cohomology.hpp"
#include "pvalab/json_io.hpp"
#include "pvalab/parse.hpp"

using namespace pvalab;

namespace {

bool report_line(const std::string& name, const CheckResult& r) {
  std::cout << (r.ok ? "ok   " : "FAIL ") << name;
  if (!r.ok && !r.detail.empty()) std::cout << ": " << r.detail;
  std::cout << "\n";
  return r.ok;
}

// first nonzero slot of a classical cochain, for failure messages
std::string first_residual(const ClCochain& y, const PVASpec& pva) {
  for (const auto& [shape, table] : y.shapes)
    for (const auto& [v, q] : table)
      if (!q.is_zero()) {
        std::string key;
        for (std::size_t i = 0; i < v.size(); ++i)
          key += (i ? "," : "") + dm_str(v[i], pva.generators);
        return "shape (" + shape_str(shape) + ") at (" + key +
               "): " + qe_str(q, pva.generators);
      }
  return "";
}

int cmd_check(const std::string& path, std::uint64_t seed, int trials, long wcap) {
  PVASpec pva = load_pva(path);
  bool ok = report_line("skewsymmetry", check_skewsymmetry(pva, seed, trials, wcap));
  ok = report_line("jacobi", check_jacobi(pva, seed, trials, wcap)) && ok;
  long xcap = 2;
  for (long d : pva.wt.delta) xcap = std::max(xcap, 2 * d + 2);
  ClCochain dx = d_cl(pva, master_x(pva, xcap));
  ok = report_line("dX = 0", {dx.is_zero(), first_residual(dx, pva)}) && ok;
  return ok ? 0 : 1;
}

int cmd_graph_reduce(const std::string& expr) {
  GraphVector v = parse_graph_vector(expr);
  GraphVector out;
  out.terms = reduce(v);
  std::cout << graph_vector_str(out) << "\n";
  return 0;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    save_json(out_path, j);
}

int cmd_diff(const std::string& cochain_path, const std::string& pva_path,
             bool oracle, const std::string& out_path) {
  PVASpec pva = load_pva(pva_path);
  Json cj = load_json(cochain_path);
  Json result;
  if (cj.contains("s")) {
    if (oracle) throw ParseError("--oracle applies to classical cochains only");
    SymSesqCochain f = sym_from_json(cj, pva);
    CheckResult r = sym_validate(f, pva.wt);
    if (!r.ok) {
      std::cout << "FAIL validation: " << r.detail << "\n";
      return 1;
    }
    result = sym_to_json(sym_d_total(f, pva.wt), pva);
  } else if (cj.contains("shapes")) {
    ClCochain y = cl_from_json(cj, pva);
    CheckResult r = cl_validate(y, pva.wt);
    if (!r.ok) {
      std::cout << "FAIL validation: " << r.detail << "\n";
      return 1;
    }
    ClCochain dy = d_cl(pva, y);
    if (oracle) {
      ClCochain viaX = adx_bracket(pva, master_x(pva, y.wcap), y);
      if (!(viaX == dy)) {
        std::cout << "FAIL oracle: d(Y) differs from [X, Y]\n";
        return 1;
      }
      std::cout << "ok   oracle: d(Y) = [X, Y]\n";
    }
    result = cl_to_json(dy, pva);
  } else {
    if (oracle) throw ParseError("--oracle applies to classical cochains only");
    VarCochain f = var_from_json(cj, pva);
    vc_validate(pva, f);
    result = var_to_json(d_var(pva, f), pva);
  }
  emit(result, out_path);
  return 0;
}

ComplexKind parse_kind(const std::string& kind) {
  if (kind == "variational") return ComplexKind::variational;
  if (kind == "classical") return ComplexKind::classical;
  if (kind == "sesq") return ComplexKind::sesq_symmetric;
  throw ParseError("unknown complex kind '" + kind + "'");
}

Json slice_json(const SliceReport& r) {
  return Json{{"n", r.n},         {"delta", r.delta},   {"W", r.W},
              {"dim_ker", r.dim_ker}, {"dim_im", r.dim_im}, {"dim_H", r.dim_H},
              {"status", r.status}};
}

int cmd_dims(const std::string& pva_path, const std::string& kind_str, int s,
             long dmin, long dmax, long W, int nmin, int nmax, int jobs,
             const std::string& out_path) {
  PVASpec pva = load_pva(pva_path);
  ComplexKind kind = parse_kind(kind_str);
  int ndeltas = static_cast<int>(dmax - dmin + 1);
  std::vector<std::vector<SliceReport>> slices(static_cast<std::size_t>(ndeltas));
  std::vector<char> certs(static_cast<std::size_t>(ndeltas), 1);
  parallel_for(jobs, ndeltas, [&](int i) {
    TruncatedComplex tc = make_complex(kind, pva, s, dmin + i, W);
    slices[static_cast<std::size_t>(i)] = cohomology_dims(tc, nmin, nmax);
    bool c = true;
    for (int n = nmin; n <= nmax; ++n) c = c && d_squared_certificate(tc, n);
    certs[static_cast<std::size_t>(i)] = c ? 1 : 0;
  });
  bool cert = true;
  Json jslices = Json::array();
  for (int i = 0; i < ndeltas; ++i) {
    cert = cert && certs[static_cast<std::size_t>(i)];
    for (const auto& r : slices[static_cast<std::size_t>(i)]) {
      std::cout << "n=" << r.n << " delta=" << r.delta << " W=" << r.W
                << "  dim=" << r.dim_space << " ker=" << r.dim_ker
                << " im=" << r.dim_im << " H=" << r.dim_H << " (" << r.status
                << ")\n";
      jslices.push_back(slice_json(r));
    }
  }
  Json report{{"complex", Json{{"kind", kind_str},
                               {"s", s},
                               {"delta_min", dmin},
                               {"delta_max", dmax},
                               {"W", W}}},
              {"slices", jslices},
              {"certificates", Json{{"d_squared_zero", cert}}}};
  emit(report, out_path);
  return cert ? 0 : 1;
}

int cmd_vanish(const std::string& pva_path, int s, int n, long W, long delta,
               const std::string& out_path) {
  PVASpec pva = load_pva(pva_path);
  VanishReport r = verify_vanishing(pva, s, n, W, delta);
  std::cout << "H^" << r.n << " (s=" << r.s << ", delta=" << r.delta
            << ", W=" << r.W << "): dim " << r.dim_H;
  if (r.dim_H_retry >= 0) std::cout << ", at W+1 dim " << r.dim_H_retry;
  std::cout << " -> " << r.status << "\n";
  Json slice{{"n", r.n},     {"delta", r.delta}, {"W", r.W},
             {"dim_H", r.dim_H}, {"status", r.status}};
  if (r.dim_H_retry >= 0) slice["dim_H_retry"] = r.dim_H_retry;
  Json report{{"complex",
               Json{{"kind", "sesq"}, {"s", s}, {"delta", delta}, {"W", W}}},
              {"slices", Json::array({slice})},
              {"certificates", Json::object()}};
  emit(report, out_path);
  return r.status == "nonzero" ? 1 : 0;
}

int cmd_straighten(const std::string& y_path, const std::string& pva_path,
                   const std::string& out_path) {
  PVASpec pva = load_pva(pva_path);
  ClCochain y = cl_from_json(load_json(y_path), pva);
  StraightenResult res = straighten(pva, y);
  std::cout << "straightened: Y = d(Z) + Ytilde, level(Ytilde) = "
            << filtration_level(res.ytilde) << " of arity " << y.arity << "\n";
  Json report{{"z", cl_to_json(res.z, pva)},
              {"ytilde", cl_to_json(res.ytilde, pva)}};
  emit(report, out_path);
  return 0;
}

PVASpec builtin_pva(const std::string& which) {
  PVASpec pva;
  if (which == "gfz") {
    pva.generators = {"u"};
    pva.wt.delta = {1};
    pva.brackets[{0, 0}] = parse_lambda("L", pva.generators, 1);
  } else {
    pva.generators = {"T"};
    pva.wt.delta = {2};
    pva.brackets[{0, 0}] =
        parse_lambda("D(T) + 2*L*T + (1/2)*L^3", pva.generators, 1);
  }
  complete_brackets(pva);
  return pva;
}

SparseVec random_combo(const std::vector<SparseVec>& basis, std::mt19937_64& rng) {
  SparseVec x;
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (const auto& b : basis) {
    int c = coeff(rng);
    if (c) axpy(x, Rational(c), b);
  }
  return x;
}

int cmd_selftest(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  bool ok = true;
  auto line = [&](const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "ok   " : "FAIL ") << name;
    if (!pass && !detail.empty()) std::cout << ": " << detail;
    std::cout << "\n";
    ok = ok && pass;
  };

  PVASpec gfz = builtin_pva("gfz");
  PVASpec vir = builtin_pva("virasoro");
  for (const auto* p : {&gfz, &vir}) {
    const std::string tag = p == &gfz ? "gfz" : "virasoro";
    line(tag + " skewsymmetry", check_skewsymmetry(*p, seed, 10, 5).ok);
    line(tag + " jacobi", check_jacobi(*p, seed, 10, 5).ok);
    long xcap = 2 * p->wt.delta[0] + 2;
    line(tag + " dX = 0", d_cl(*p, master_x(*p, xcap)).is_zero());
  }

  bool lines_fixed = true;
  for (const auto& g : line_basis(3)) {
    GraphVector v;
    v.add(g, Rational(1));
    auto red = reduce(v);
    lines_fixed = lines_fixed && red.size() == 1 && red.begin()->first == g &&
                  red.begin()->second == Rational(1);
  }
  line("proper lines reduce to themselves (n=3)", lines_fixed);

  bool rel_zero = true;
  for (const auto& r : relation_span(3)) rel_zero = rel_zero && reduce(r).empty();
  line("cycle relations reduce to zero (n=3)", rel_zero);
  line("identity lemma (n=3, m=2)", check_identity_lemma(3, 2));

  bool eul = true;
  try {
    eulerian_idempotents(4);
  } catch (const MathError&) {
    eul = false;
  }
  line("eulerian idempotents (n=4)", eul);

  {
    TruncatedComplex tc = make_complex(ComplexKind::variational, gfz, 0, 1, 0);
    VarCochain f = chart_to_var(tc_chart(tc, 2), gfz.wt,
                                random_combo(cochain_basis(tc, 2), rng));
    line("d_var^2 = 0 (random 2-cochain)", vc_is_zero(d_var(gfz, d_var(gfz, f))));
  }
  {
    TruncatedComplex tc = make_complex(ComplexKind::classical, gfz, 0, 1, 3);
    ClCochain y = chart_to_cl(tc_chart(tc, 1), gfz.wt,
                              random_combo(cochain_basis(tc, 1), rng));
    line("d_cl^2 = 0 (random 1-cochain)", d_cl(gfz, d_cl(gfz, y)).is_zero());
    ClCochain viaX = adx_bracket(gfz, master_x(gfz, y.wcap), y);
    line("d_cl(Y) = [X, Y] (random 1-cochain)", viaX == d_cl(gfz, y));
  }
  {
    TruncatedComplex tc = make_complex(ComplexKind::sesq_symmetric, gfz, 2, 1, 3);
    SymSesqCochain f = chart_to_sesq(tc_chart(tc, 2), gfz.wt,
                                     random_combo(cochain_basis(tc, 2), rng));
    line("sesq d^2 = 0 (random s=2 cochain)",
         sym_d_total(sym_d_total(f, gfz.wt), gfz.wt).is_zero());
  }
  {
    TruncatedComplex tc = make_complex(ComplexKind::variational, gfz, 0, 0, 0);
    auto dims = cohomology_dims(tc, 0, 0);
    line("variational H^0 at delta=0 is the constants", dims.front().dim_H == 1);
    TruncatedComplex tcl = make_complex(ComplexKind::classical, gfz, 0, 1, 3);
    line("d^2 certificate (classical, n=1)", d_squared_certificate(tcl, 1));
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computer algebra for Poisson vertex algebra cohomology"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int trials = 25;
  int jobs = 1;
  app.add_option("--seed", seed, "random seed (default 0)");
  app.add_option("--trials", trials, "random trials for property checks");
  app.add_option("--jobs", jobs, "worker threads for independent slices");

  std::string spec_path, cochain_path, out_path, expr;
  long wcap = 6;

  auto* check = app.add_subcommand("check", "verify the PVA axioms of a spec file");
  check->add_option("spec", spec_path, "PVA spec JSON")->required();
  check->add_option("--wcap", wcap, "weight cap for random monomials");

  auto* graph = app.add_subcommand("graph", "graph space utilities");
  graph->require_subcommand(1);
  auto* greduce = graph->add_subcommand(
      "reduce", "coordinates of a graph vector in the proper-line basis");
  greduce->add_option("expr", expr, "e.g. \"[2; 2->1] - 1/2*[2; 1->2]\"")
      ->required();

  bool oracle = false;
  auto* diff = app.add_subcommand("diff", "differential of a cochain file");
  diff->add_option("cochain", cochain_path, "cochain JSON")->required();
  diff->add_option("spec", spec_path, "PVA spec JSON")->required();
  diff->add_flag("--oracle", oracle, "also check d(Y) = [X, Y] (classical only)");
  diff->add_option("--out", out_path, "write the result here instead of stdout");

  auto* coh = app.add_subcommand("cohomology", "truncated cohomology computations");
  coh->require_subcommand(1);
  std::string kind = "classical";
  int s = 0, n = 2, nmin = 0, nmax = 2;
  long W = 4, delta = 0;
  bool have_dmin = false, have_dmax = false;
  long dmin = 0, dmax = 0;

  auto* dims = coh->add_subcommand("dims", "dimension table of a truncated slice");
  dims->add_option("spec", spec_path, "PVA spec JSON")->required();
  dims->add_option("--kind", kind, "variational | classical | sesq");
  dims->add_option("--s", s, "group count (sesq only)");
  dims->add_option("--delta", delta, "weight shift of the slice");
  dims->add_option("--dmin", dmin, "first weight shift")->each([&](const std::string&) {
    have_dmin = true;
  });
  dims->add_option("--dmax", dmax, "last weight shift")->each([&](const std::string&) {
    have_dmax = true;
  });
  dims->add_option("--W", W, "tuple weight window");
  dims->add_option("--nmin", nmin, "first degree");
  dims->add_option("--nmax", nmax, "last degree");
  dims->add_option("--out", out_path, "write the JSON report here");

  auto* vanish = coh->add_subcommand("vanish", "vanishing check with W+1 retry");
  vanish->add_option("spec", spec_path, "PVA spec JSON")->required();
  vanish->add_option("--s", s, "group count, 1 <= s < n")->required();
  vanish->add_option("--n", n, "cohomological degree")->required();
  vanish->add_option("--W", W, "tuple weight window");
  vanish->add_option("--delta", delta, "weight shift of the slice");
  vanish->add_option("--out", out_path, "write the JSON report here");

  auto* straight = coh->add_subcommand(
      "straighten", "write a closed cochain as d(Z) plus an edgeless part");
  straight->add_option("cochain", cochain_path, "closed classical cochain JSON")
      ->required();
  straight->add_option("spec", spec_path, "PVA spec JSON")->required();
  straight->add_option("--out", out_path, "write Z and Ytilde here");

  auto* self = app.add_subcommand("selftest", "run the built-in invariant suite");
  (void)self;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(spec_path, seed, trials, wcap);
    if (*greduce) return cmd_graph_reduce(expr);
    if (*diff) return cmd_diff(cochain_path, spec_path, oracle, out_path);
    if (*dims) {
      if (!have_dmin) dmin = delta;
      if (!have_dmax) dmax = have_dmin ? dmin : delta;
      if (dmax < dmin) throw ParseError("--dmax below --dmin");
      return cmd_dims(spec_path, kind, s, dmin, dmax, W, nmin, nmax, jobs,
                      out_path);
    }
    if (*vanish) return cmd_vanish(spec_path, s, n, W, delta, out_path);
    if (*straight) return cmd_straighten(cochain_path, spec_path, out_path);
    if (*self) return cmd_selftest(seed);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const TruncationError& e) {
    std::cerr << "truncation: " << e.what() << "\n";
    return 4;
  } catch (const MathError& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
