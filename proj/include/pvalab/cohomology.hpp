#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pvalab/cl_complex.hpp"
#include "pvalab/sparse_matrix.hpp"

namespace pvalab {

// a linear solve that fails only because of the finite weight window
struct TruncationError : std::runtime_error {
  explicit TruncationError(const std::string& m) : std::runtime_error(m) {}
};

enum class ComplexKind { variational, classical, sesq_symmetric };

// =====================================================================
// Truncated slices.  A slice is (kind, degree n, slice label delta,
// tuple-weight window W); its cochain space is finite-dimensional and
// cut out of a raw coordinate space by the validity conditions of the
// owning module, imposed as exact linear constraints.
//
// Each label is d-invariant.  Concretely a label-delta slice holds, at
// degree n, values of weight
//   variational:    tuple + delta - n
//   classical:      tuple + delta - (line count of the shape)
//   sesquilinear:   tuple + delta
// (classical cochains materialized from a chart satisfy
// cl_weight == delta; variational ones satisfy vc_weight == delta - n.)
// =====================================================================

// one raw coordinate: a storage key plus one monomial of the value body
struct ChartCell {
  LineShape shape;                  // empty for variational cochains
  std::vector<DiffMonomial> tuple;  // argument tuple (generators, variational)
  std::vector<int> lexp;            // body lambda exponents
  DiffMonomial mono;                // body coefficient monomial

  auto operator<=>(const ChartCell&) const = default;
};

struct RawChart {
  ComplexKind kind = ComplexKind::classical;
  int s = 0;  // sesq_symmetric: group count; otherwise unused
  int n = 0;
  long delta = 0;
  long wcap = 0;
  std::vector<ChartCell> cells;
  std::map<ChartCell, int> index;
  // contiguous cell range per storage key
  std::map<std::pair<LineShape, std::vector<DiffMonomial>>, std::pair<int, int>>
      spans;

  int dim() const { return static_cast<int>(cells.size()); }
};

struct TruncatedComplex {
  ComplexKind kind = ComplexKind::classical;
  const PVASpec* pva = nullptr;
  int s = 0;
  long delta = 0;
  long wcap = 0;
  std::map<int, RawChart> charts;
  std::map<int, std::vector<SparseVec>> bases;  // valid cochains, raw coords
  std::map<int, std::vector<SparseVec>> dmats;  // row i = d(basis i), raw coords at n+1
};

TruncatedComplex make_complex(ComplexKind kind, const PVASpec& pva, int s,
                              long delta, long wcap);

const RawChart& tc_chart(TruncatedComplex& tc, int n);
// basis of the degree-n cochain space (kernel of the validity constraints)
const std::vector<SparseVec>& cochain_basis(TruncatedComplex& tc, int n);
// row i = the differential of basis vector i, in degree-(n+1) raw coordinates
const std::vector<SparseVec>& diff_matrix(TruncatedComplex& tc, int n);

// materialization and coordinate extraction (kind must match the chart)
ClCochain chart_to_cl(const RawChart& ch, const WeightTable& wt, const SparseVec& x);
SymSesqCochain chart_to_sesq(const RawChart& ch, const WeightTable& wt,
                             const SparseVec& x);
VarCochain chart_to_var(const RawChart& ch, const WeightTable& wt, const SparseVec& x);
SparseVec cl_coords(const RawChart& ch, const ClCochain& y);
SparseVec sesq_coords(const RawChart& ch, const SymSesqCochain& f);
SparseVec var_coords(const RawChart& ch, const VarCochain& f);

struct SliceReport {
  int n = 0;
  long delta = 0;
  long W = 0;
  int dim_space = 0;
  int dim_ker = 0;
  int dim_im = 0;  // rank of the differential arriving from degree n-1
  int dim_H = 0;
  std::string status;  // "zero" | "nonzero"
};

// exact ranks per degree; dim H = dim ker d|_n - rank d|_{n-1}
std::vector<SliceReport> cohomology_dims(TruncatedComplex& tc, int nmin, int nmax);

// d_{n+1} o d_n == 0 with d(basis) re-expressed in the degree-(n+1) valid
// basis; also certifies that the differential lands in the valid subspace
bool d_squared_certificate(TruncatedComplex& tc, int n);

struct VanishReport {
  int n = 0, s = 0;
  long delta = 0, W = 0;
  int dim_H = 0;        // at window W
  int dim_H_retry = -1; // at window W+1, when the first pass was nonzero
  std::string status;   // "zero" | "retry" (artifact gone at W+1) | "nonzero"
};

// dim H^n of the truncated symmetric s-sesquilinear Harrison complex;
// precondition 1 <= s < n
VanishReport verify_vanishing(const PVASpec& pva, int s, int n, long W, long delta);

struct StraightenResult {
  ClCochain z;       // arity n-1
  ClCochain ytilde;  // supported on the edgeless shape only
};

// Y = d_cl(z) + ytilde for closed Y, peeling one filtration level at a time
// through the symmetric sesquilinear complexes; TruncationError when a level
// has no primitive inside the window
StraightenResult straighten(const PVASpec& pva, const ClCochain& y);

// weight-homogeneous components, keyed by shift
std::map<long, ClCochain> cl_split_weights(const ClCochain& y, const WeightTable& wt);

// run fn(0..count-1), `jobs` threads at a time (sequential when jobs <= 1)
void parallel_for(int jobs, int count, const std::function<void(int)>& fn);

}  // namespace pvalab
