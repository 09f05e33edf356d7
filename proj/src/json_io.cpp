// =====================================================================
// JSON file formats: PVA specs, cochain files of all three kinds.
// =====================================================================

#include "pvalab/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pvalab/parse.hpp"
#include "pvalab/sesq.hpp"

namespace pvalab {

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string piece;
  while (std::getline(is, piece, sep)) out.push_back(piece);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

int gen_by_name(const PVASpec& pva, const std::string& name) {
  for (int g = 0; g < pva.ngen(); ++g)
    if (pva.generators[static_cast<std::size_t>(g)] == name) return g;
  throw ParseError("unknown generator '" + name + "'");
}

DiffMonomial parse_monomial(const std::string& text, const PVASpec& pva) {
  DiffPoly p = parse_diffpoly(text, pva.generators);
  if (p.terms.size() != 1 || p.terms.begin()->second != Rational(1))
    throw ParseError("tuple entry '" + text + "' is not a plain monomial");
  return p.terms.begin()->first;
}

// "u | u,D(u)" -> monomial tuple grouped by the shape
std::vector<DiffMonomial> parse_tuple(const std::string& key, const LineShape& k,
                                      const PVASpec& pva) {
  std::vector<DiffMonomial> tuple;
  if (k.empty()) {
    if (!strip(key).empty())
      throw ParseError("tuple key '" + key + "' should be empty for this shape");
    return tuple;
  }
  auto groups = split(key, '|');
  if (groups.size() != k.size())
    throw ParseError("tuple key '" + key + "' has " +
                     std::to_string(groups.size()) + " groups, shape wants " +
                     std::to_string(k.size()));
  for (std::size_t t = 0; t < groups.size(); ++t) {
    auto entries = split(groups[t], ',');
    if (static_cast<int>(entries.size()) != k[t])
      throw ParseError("group " + std::to_string(t + 1) + " of '" + key +
                       "' has " + std::to_string(entries.size()) +
                       " entries, shape wants " + std::to_string(k[t]));
    for (const auto& e : entries) tuple.push_back(parse_monomial(strip(e), pva));
  }
  return tuple;
}

std::string tuple_key(const std::vector<DiffMonomial>& v, const LineShape& k,
                      const PVASpec& pva) {
  std::string out;
  int pos = 0;
  for (std::size_t t = 0; t < k.size(); ++t) {
    if (t) out += " | ";
    for (int i = 0; i < k[t]; ++i, ++pos) {
      if (i) out += ",";
      out += dm_str(v[static_cast<std::size_t>(pos)], pva.generators);
    }
  }
  return out;
}

QuotientElem parse_value(const std::string& expr, int arity, const PVASpec& pva) {
  return qe_normalize(arity, parse_lambda(expr, pva.generators, arity), pva.wt);
}

std::string value_str(const QuotientElem& q, const PVASpec& pva) {
  return lp_str(q.body, pva.generators, lambda_names(q.body.nvars));
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("bad JSON in '" + path + "': " + e.what());
  }
  return j;
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

PVASpec pva_from_json(const Json& j) {
  PVASpec pva;
  try {
    pva.generators = j.at("generators").get<std::vector<std::string>>();
    pva.wt.delta = j.at("weights").get<std::vector<long>>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("pva spec: ") + e.what());
  }
  if (pva.generators.empty()) throw ParseError("pva spec: no generators");
  if (pva.generators.size() != pva.wt.delta.size())
    throw ParseError("pva spec: generators and weights differ in length");
  for (const auto& name : pva.generators) {
    if (name.empty() || is_reserved_name(name))
      throw ParseError("pva spec: bad generator name '" + name + "'");
    if (std::count(pva.generators.begin(), pva.generators.end(), name) != 1)
      throw ParseError("pva spec: duplicate generator '" + name + "'");
  }
  if (!j.contains("brackets") || !j.at("brackets").is_object())
    throw ParseError("pva spec: missing bracket table");
  for (const auto& [key, expr] : j.at("brackets").items()) {
    auto names = split(key, ',');
    if (names.size() != 2)
      throw ParseError("bracket key '" + key + "' is not a generator pair");
    int a = gen_by_name(pva, strip(names[0]));
    int b = gen_by_name(pva, strip(names[1]));
    if (!expr.is_string())
      throw ParseError("bracket '" + key + "' is not an expression string");
    pva.brackets[{a, b}] =
        parse_lambda(expr.get<std::string>(), pva.generators, 1);
  }
  complete_brackets(pva);
  return pva;
}

PVASpec load_pva(const std::string& path) { return pva_from_json(load_json(path)); }

VarCochain var_from_json(const Json& j, const PVASpec& pva) {
  int n;
  try {
    n = j.at("arity").get<int>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("variational cochain: ") + e.what());
  }
  if (n < 0) throw ParseError("variational cochain: negative arity");
  VarCochain f = vc_zero(pva, n);
  if (!j.contains("values")) return f;
  for (const auto& [key, expr] : j.at("values").items()) {
    std::vector<int> idx;
    if (!strip(key).empty())
      for (const auto& name : split(key, ','))
        idx.push_back(gen_by_name(pva, strip(name)));
    auto it = f.values.find(idx);
    if (it == f.values.end())
      throw ParseError("value key '" + key + "' does not list " +
                       std::to_string(n) + " generators");
    if (!expr.is_string())
      throw ParseError("value '" + key + "' is not an expression string");
    it->second = parse_value(expr.get<std::string>(), n, pva);
  }
  return f;
}

Json var_to_json(const VarCochain& f, const PVASpec& pva) {
  Json values = Json::object();
  for (const auto& [idx, q] : f.values) {
    if (q.is_zero()) continue;
    std::string key;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i) key += ",";
      key += pva.generators.at(static_cast<std::size_t>(idx[i]));
    }
    values[key] = value_str(q, pva);
  }
  return Json{{"arity", f.arity}, {"values", values}};
}

ClCochain cl_from_json(const Json& j, const PVASpec& pva) {
  int n;
  long W;
  try {
    n = j.at("arity").get<int>();
    W = j.at("weight_cap").get<long>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("classical cochain: ") + e.what());
  }
  if (n < 0) throw ParseError("classical cochain: negative arity");
  ClCochain y = cl_zero(n, pva.wt, W);
  if (!j.contains("shapes")) return y;
  for (const auto& [skey, table] : j.at("shapes").items()) {
    LineShape k = parse_shape(skey);
    auto it = y.shapes.find(k);
    if (it == y.shapes.end())
      throw ParseError("shape '" + skey + "' is not an ascending partition of " +
                       std::to_string(n));
    int s = static_cast<int>(k.size());
    for (const auto& [tkey, expr] : table.items()) {
      auto tuple = parse_tuple(tkey, k, pva);
      auto slot = it->second.find(tuple);
      if (slot == it->second.end())
        throw ParseError("tuple '" + tkey + "' exceeds the weight cap " +
                         std::to_string(W));
      if (!expr.is_string())
        throw ParseError("value at '" + tkey + "' is not an expression string");
      slot->second = parse_value(expr.get<std::string>(), s, pva);
    }
  }
  return y;
}

Json cl_to_json(const ClCochain& y, const PVASpec& pva) {
  Json shapes = Json::object();
  for (const auto& [k, table] : y.shapes) {
    Json tj = Json::object();
    for (const auto& [v, q] : table)
      if (!q.is_zero()) tj[tuple_key(v, k, pva)] = value_str(q, pva);
    if (!tj.empty()) shapes[shape_str(k)] = tj;
  }
  return Json{{"arity", y.arity}, {"weight_cap", y.wcap}, {"shapes", shapes}};
}

SymSesqCochain sym_from_json(const Json& j, const PVASpec& pva) {
  int n, s;
  long W;
  try {
    n = j.at("arity").get<int>();
    s = j.at("s").get<int>();
    W = j.at("weight_cap").get<long>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("sesquilinear cochain: ") + e.what());
  }
  if (n < 0 || s < 0) throw ParseError("sesquilinear cochain: negative arity or s");
  SymSesqCochain f = sym_zero(s, n, pva.wt, W);
  if (!j.contains("shapes")) return f;
  for (const auto& [skey, table] : j.at("shapes").items()) {
    LineShape k = parse_shape(skey);
    // transport an unsorted shape to its ascending representative: sigma
    // sends group r of the file shape to group sigma(r) of the stored one
    Perm inv(k.size());
    std::iota(inv.begin(), inv.end(), 0);
    std::stable_sort(inv.begin(), inv.end(), [&](int a, int b) {
      return k[static_cast<std::size_t>(a)] < k[static_cast<std::size_t>(b)];
    });
    LineShape sorted;
    for (int t : inv) sorted.push_back(k[static_cast<std::size_t>(t)]);
    Perm sigma = perm_inverse(inv);
    auto it = f.components.find(sorted);
    if (it == f.components.end())
      throw ParseError("shape '" + skey + "' does not have " + std::to_string(s) +
                       " parts summing to " + std::to_string(n));
    SesqCochain given = sq_zero(k, pva.wt, W);
    for (const auto& [tkey, expr] : table.items()) {
      auto tuple = parse_tuple(tkey, k, pva);
      auto slot = given.values.find(tuple);
      if (slot == given.values.end())
        throw ParseError("tuple '" + tkey + "' exceeds the weight cap " +
                         std::to_string(W));
      if (!expr.is_string())
        throw ParseError("value at '" + tkey + "' is not an expression string");
      slot->second = parse_value(expr.get<std::string>(), s, pva);
    }
    it->second = sq_add(it->second, k == sorted ? given : act_Ss(given, sigma, pva.wt));
  }
  return f;
}

Json sym_to_json(const SymSesqCochain& f, const PVASpec& pva) {
  Json shapes = Json::object();
  for (const auto& [k, comp] : f.components) {
    Json tj = Json::object();
    for (const auto& [v, q] : comp.values)
      if (!q.is_zero()) tj[tuple_key(v, k, pva)] = value_str(q, pva);
    if (!tj.empty()) shapes[shape_str(k)] = tj;
  }
  return Json{{"arity", f.arity},
              {"s", f.s},
              {"weight_cap", f.wcap},
              {"shapes", shapes}};
}

}  // namespace pvalab
