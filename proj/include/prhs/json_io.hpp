#pragma once

// JSON encodings. Scalars are strings "p" or "p/q"; bare JSON integers are
// accepted on input. Errors name the offending location.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "prhs/flat_lie.hpp"
#include "prhs/group.hpp"

namespace prhs {

using Json = nlohmann::ordered_json;

namespace detail {

inline InputError json_error(const std::string& where, const std::string& what) {
  return InputError(where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw json_error(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

inline Json to_json(const Scalar& s) { return format_scalar(s); }

inline Json to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline Json to_json(const Subspace& s) {
  Json j;
  j["ambient_dim"] = s.ambient_dim();
  j["dim"] = s.dim();
  Json b = Json::array();
  for (const auto& v : s.basis()) b.push_back(to_json(v));
  j["basis"] = std::move(b);
  return j;
}

inline Json to_json(const AffineIsometry& g) {
  Json j;
  j["linear"] = to_json(g.linear);
  j["translation"] = to_json(g.translation);
  return j;
}

inline Json to_json(const AffineLog& l) {
  Json j;
  j["nilpart"] = to_json(l.nilpart);
  j["translation"] = to_json(l.translation);
  return j;
}

inline Scalar scalar_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return parse_scalar(j.get<std::string>());
  } catch (const InputError& e) {
    throw detail::json_error(where, e.what());
  }
  throw detail::json_error(where, "expected a rational string or an integer");
}

inline Vector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw detail::json_error(where, "expected an array");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

inline Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw detail::json_error(where, "expected a non-empty array of rows");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(vector_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  const std::size_t cols = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols) throw detail::json_error(where + "[" + std::to_string(i) + "]", "ragged matrix row");
  return Matrix::from_rows(cols, rows);
}

inline AffineIsometry isometry_from_json(const Json& j, const std::string& where) {
  AffineIsometry g{matrix_from_json(detail::field(j, "linear", where), where + ".linear"),
                   vector_from_json(detail::field(j, "translation", where), where + ".translation")};
  if (!g.linear.square() || g.linear.rows() != g.translation.size())
    throw detail::json_error(where, "linear part and translation have inconsistent dimensions");
  return g;
}

struct GroupFile {
  IsoGroup group;
  bool heisenberg = false;
};

/// {"gram": [[...]], "generators": [{"linear", "translation"}], "presentation": {"type": "heisenberg"}}.
inline GroupFile group_from_json(const Json& j) {
  if (!j.is_object()) throw detail::json_error("$", "expected an object");
  Matrix gram = matrix_from_json(detail::field(j, "gram", "$"), "$.gram");
  std::optional<ScalarProduct> q;
  try {
    q.emplace(std::move(gram));
  } catch (const InputError& e) {
    throw detail::json_error("$.gram", e.what());
  }
  const Json& gens = detail::field(j, "generators", "$");
  if (!gens.is_array()) throw detail::json_error("$.generators", "expected an array");
  std::vector<AffineIsometry> list;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = "$.generators[" + std::to_string(i) + "]";
    auto g = isometry_from_json(gens[i], where);
    if (g.dim() != q->dim()) throw detail::json_error(where, "dimension does not match the gram matrix");
    if (!is_isometry(g, *q)) throw detail::json_error(where, "not an isometry of the gram matrix");
    list.push_back(std::move(g));
  }
  bool heis = false;
  if (j.contains("presentation") && !j["presentation"].is_null()) {
    const Json& p = j["presentation"];
    if (!p.is_object() || !p.contains("type") || p["type"] != "heisenberg")
      throw detail::json_error("$.presentation", "only {\"type\": \"heisenberg\"} is supported");
    if (list.size() != 2) throw detail::json_error("$.presentation", "a Heisenberg presentation needs two generators");
    heis = true;
  }
  return GroupFile{IsoGroup(std::move(*q), std::move(list)), heis};
}

inline Json group_to_json(const IsoGroup& g, bool heisenberg) {
  Json j;
  j["gram"] = to_json(g.form().gram());
  Json gens = Json::array();
  for (const auto& x : g.generators()) gens.push_back(to_json(x));
  j["generators"] = std::move(gens);
  if (heisenberg) j["presentation"] = Json{{"type", "heisenberg"}};
  return j;
}

/// {"m": m, "values": [{"ijk": [i,j,k], "value": "p/q"}]} with 0-based indices.
inline ThreeForm three_form_from_json(const Json& j) {
  const Json& m = detail::field(j, "m", "$");
  if (!m.is_number_unsigned()) throw detail::json_error("$.m", "expected a non-negative integer");
  ThreeForm f(m.get<std::size_t>());
  if (!j.contains("values")) return f;
  const Json& vals = j["values"];
  if (!vals.is_array()) throw detail::json_error("$.values", "expected an array");
  for (std::size_t e = 0; e < vals.size(); ++e) {
    const std::string where = "$.values[" + std::to_string(e) + "]";
    const Json& ijk = detail::field(vals[e], "ijk", where);
    if (!ijk.is_array() || ijk.size() != 3 ||
        !std::all_of(ijk.begin(), ijk.end(), [](const Json& x) { return x.is_number_unsigned(); }))
      throw detail::json_error(where + ".ijk", "expected three non-negative integers");
    const Scalar v = scalar_from_json(detail::field(vals[e], "value", where), where + ".value");
    try {
      f.set(ijk[0].get<std::size_t>(), ijk[1].get<std::size_t>(), ijk[2].get<std::size_t>(), v);
    } catch (const InputError& err) {
      throw detail::json_error(where, err.what());
    }
  }
  return f;
}

inline Json to_json(const ThreeForm& f) {
  Json j;
  j["m"] = f.m();
  Json vals = Json::array();
  for (const auto& [t, v] : f.values()) vals.push_back(Json{{"ijk", {t[0], t[1], t[2]}}, {"value", to_json(v)}});
  j["values"] = std::move(vals);
  return j;
}

inline Json to_json(const MetricLieAlgebra& g) {
  Json j;
  j["dim"] = g.dim();
  j["gram"] = to_json(g.gram());
  Json table = Json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t k = i + 1; k < g.dim(); ++k)
      if (!is_zero(g.bracket_basis(i, k))) table.push_back(Json{{"i", i}, {"j", k}, {"bracket", to_json(g.bracket_basis(i, k))}});
  j["brackets"] = std::move(table);
  return j;
}

}  // namespace prhs
