#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pvalab/digraph.hpp"
#include "pvalab/pva.hpp"
#include "pvalab/sesq.hpp"
#include "pvalab/var_complex.hpp"

namespace pvalab {

// =====================================================================
// Classical PVA cochains.
//
// An n-cochain assigns to every n-graph and argument tuple a class in
// V[l_1..l_n]/<d + l_1+..+l_n>, subject to the simultaneous-permutation
// symmetry, the cycle relations, and sesquilinearity.  Graphs reduce to
// the proper-line basis, so a cochain is stored by its values on the
// standard k-lines only: one table per ascending shape, keyed by
// monomial tuples of total weight <= wcap, with values written in the
// group variables L_1..L_s (one per line of the shape).  Validity of a
// table means per-group sesquilinearity, the per-group Harrison
// conditions, and invariance under the shape's stabilizer with the
// Koszul sign - exactly the conditions cut out by the graph relations.
// =====================================================================

struct ClCochain {
  int arity = 0;
  long wcap = 0;
  std::map<LineShape, std::map<std::vector<DiffMonomial>, QuotientElem>> shapes;

  bool is_zero() const;
  bool operator==(const ClCochain&) const = default;
};

// ascending partitions of n with parts >= 1; for n = 0 the single empty shape
std::vector<LineShape> cl_shapes(int n);

ClCochain cl_zero(int n, const WeightTable& wt, long wcap);
ClCochain cl_add(const ClCochain& a, const ClCochain& b);
ClCochain cl_scale(const Rational& c, const ClCochain& a);
CheckResult cl_validate(const ClCochain& y, const WeightTable& wt);
// slice label delta = wt(value) - wt(tuple) + (line count of the shape),
// constant across shapes for slice-homogeneous cochains and preserved by
// d_cl: the line-count offset absorbs the -1 shift of every bracket term
// (the product terms shed one line instead).  nullopt for zero, MathError
// if mixed
std::optional<long> cl_weight(const ClCochain& y, const WeightTable& wt);

// value on an arbitrary n-graph: reduce to proper lines and pull each back
// along its decomposition permutation; CapError if a required tuple exceeds
// the stored window
QuotientElem evaluate_on_graph(const ClCochain& y, const Digraph& g,
                               const std::vector<DiffMonomial>& v,
                               const WeightTable& wt);
// multilinear extension to polynomial entries
QuotientElem evaluate_on_graph_poly(const ClCochain& y, const Digraph& g,
                                    const std::vector<DiffPoly>& v,
                                    const WeightTable& wt);

// the classical differential: per output line, the explicit four-term
// formula (isolated-vertex bracket, leaf absorption, collapse of a
// non-adjacent pair feeding the bracket, collapse of an edge)
ClCochain d_cl(const PVASpec& pva, const ClCochain& y);

// extension by zero of a variational cochain: the edgeless table is the
// master-formula evaluation of f, every shape with an edge vanishes
ClCochain phi(const PVASpec& pva, const VarCochain& f, long wcap);
// read the edgeless table back off at generator tuples
VarCochain to_variational(const ClCochain& y, const PVASpec& pva);

// the 2-cochain encoding the PVA structure: product on the single edge,
// bracket on the edgeless pair
ClCochain master_x(const PVASpec& pva, long wcap);

// insertion a o_1 b evaluated on an (m+k-1)-graph; returns a representative
// in m+k-1 variables (slot i is vertex i's variable)
LambdaPoly circ1(const PVASpec& pva, const ClCochain& a, const ClCochain& b,
                 const Digraph& g, const std::vector<DiffMonomial>& v);

// the adjoint action [x, y] assembled from insertions over vertex and pair
// reorderings; an independent route to d_cl when x is the master cochain
ClCochain adx_bracket(const PVASpec& pva, const ClCochain& x,
                      const ClCochain& y);

// least line count among shapes carrying a nonzero table; the zero cochain
// sits at the maximal level n by convention
int filtration_level(const ClCochain& y);

// the associated-graded differential at level s = filtration_level(y): only
// the leaf-absorption and edge-collapse terms, restricted to output shapes
// with exactly s lines
ClCochain gr_d(const PVASpec& pva, const ClCochain& y, int s);

// the level-s tables, repackaged as an invariant sesquilinear family
SymSesqCochain to_harrison(const ClCochain& y, int s, const WeightTable& wt);
// a classical cochain supported on the s-line shapes of f only; MathError
// naming the violated condition when f is not a valid invariant family
ClCochain from_harrison(const SymSesqCochain& f, const WeightTable& wt);

}  // namespace pvalab
