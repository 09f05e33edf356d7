// Expression parser for differential polynomials and lambda polynomials.
//
// Grammar:
//   expr     := ('+'|'-')? term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := base ('^' uint)?
//   base     := rational | IDENT | 'D' ('^' uint)? '(' IDENT ')'
//             | 'L' uint? | '(' expr ')'
//   rational := uint ('/' uint)?
//
// IDENT refers to a generator by name.  D(u) is the total derivative u',
// D^k(u) the k-th derivative.  L1..Ln are the lambda variables; a bare L is
// accepted only when there is exactly one.  Generator names must avoid the
// reserved identifiers 'D', 'L' and 'L<digits>'.
#pragma once

#include <string>
#include <vector>

#include "pvalab/lambda_poly.hpp"

namespace pvalab {

bool is_reserved_name(const std::string& name);

// Parses an expression with no lambda variables.
DiffPoly parse_diffpoly(const std::string& text, const std::vector<std::string>& names);

// Parses an expression over lambda variables L1..L<nlambda> (bare L if
// nlambda == 1); result has nvars == nlambda.
LambdaPoly parse_lambda(const std::string& text, const std::vector<std::string>& names,
                        int nlambda);

}  // namespace pvalab
