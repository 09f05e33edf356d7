// JSON readers and writers for PVA spec files and cochain files.
//
// PVA spec:        { "generators": ["u"], "weights": [1],
//                    "brackets": { "u,u": "L" } }
// Variational:     { "arity": 2, "values": { "u,u": "L1 - u" } }
// Classical / symmetric sesquilinear:
//                  { "arity": 3, "weight_cap": 5, ["s": 2,]
//                    "shapes": { "1,2": { "u | u,u": "L1*u" } } }
//
// Bracket and value expressions use the diffpoly grammar; stored values are
// normalized to canonical quotient representatives on load, so absent keys
// mean zero.  Writers emit only nonzero entries and round-trip exactly.
#pragma once

#include <string>

#include "json.hpp"
#include "pvalab/cl_complex.hpp"

namespace pvalab {

using Json = nlohmann::ordered_json;

Json load_json(const std::string& path);  // ParseError on unreadable/bad file
void save_json(const std::string& path, const Json& j);

// parses, fills the missing half of the bracket table by skewsymmetry, and
// cross-checks doubly-given entries
PVASpec pva_from_json(const Json& j);
PVASpec load_pva(const std::string& path);

VarCochain var_from_json(const Json& j, const PVASpec& pva);
Json var_to_json(const VarCochain& f, const PVASpec& pva);

ClCochain cl_from_json(const Json& j, const PVASpec& pva);
Json cl_to_json(const ClCochain& y, const PVASpec& pva);

// same file shape as the classical cochain plus the group count "s";
// unsorted shape keys are transported to their ascending representatives
SymSesqCochain sym_from_json(const Json& j, const PVASpec& pva);
Json sym_to_json(const SymSesqCochain& f, const PVASpec& pva);

}  // namespace pvalab
