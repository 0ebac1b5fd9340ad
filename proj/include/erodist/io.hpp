#pragma once

// JSON file formats, tagged "format": "erodist/1".
//
// Module file:
//   {"format": "erodist/1", "dim": n, "axes": [["0/1", "2/1"], ...],
//    "coefficients": {"kind": "field", "p": 2} | {"kind": "int"},
//    "objects": {"i,j": {"dim": d} | {"free": r, "torsion": [t1, ...]}},
//    "edges": {"i,j+axis": [[row], ...]}}
// Point keys are grid indices. Missing objects are zero; missing edges are
// zero maps. Abelian groups use their canonical presentation (free generators
// first, then one generator per invariant factor), and edge matrices act on
// those generators.
//
// Function file (also used for size pairs and complexes):
//   {"format": "erodist/1", "vertices": ["a", ...], "simplices": [["a", "b"], ...],
//    "values": {"a": ["1/2", ...]}}
// Simplices are closed under faces on load.

#include "erodist/category.hpp"
#include "erodist/error.hpp"
#include "erodist/filtration.hpp"
#include "erodist/module.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace erodist {

using Json = nlohmann::json;

inline constexpr const char* format_tag = "erodist/1";

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  return j.at(key);
}

inline Rational rational_from(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  fail(where, "expected a rational string such as \"3/2\"");
}

inline Integer integer_from(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    Rational q = rational_from(j, where);
    if (!is_integral(q)) fail(where, "expected an integer");
    return numerator_of(q);
  }
  fail(where, "expected an integer");
}

inline Json integer_to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline std::size_t count_from(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline std::vector<std::size_t> parse_index(const std::string& key, const GridPoset& grid, const std::string& where) {
  std::vector<std::size_t> idx;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      fail(where, "malformed point key '" + key + "'");
    idx.push_back(std::stoul(part));
  }
  if (idx.size() != grid.dim()) fail(where, "point key '" + key + "' has wrong dimension");
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (idx[i] >= grid.axis(i).size()) fail(where, "point key '" + key + "' is outside the grid");
  return idx;
}

inline std::string index_key(const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s;
}

inline void check_format(const Json& j, const std::string& where) {
  const Json& f = field(j, "format", where);
  if (!f.is_string() || f.get<std::string>() != format_tag)
    fail(where, std::string("unsupported format, expected \"") + format_tag + "\"");
}

}  // namespace detail

inline PersistenceModule module_from_json(const Json& j) {
  using detail::fail;
  using detail::field;
  detail::check_format(j, "module");
  const std::size_t dim = detail::count_from(field(j, "dim", "module"), "dim");
  if (dim == 0) fail("dim", "must be at least 1");
  const Json& axes_j = field(j, "axes", "module");
  if (!axes_j.is_array() || axes_j.size() != dim) fail("axes", "expected " + std::to_string(dim) + " axes");
  std::vector<std::vector<Rational>> axes;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::string where = "axes[" + std::to_string(i) + "]";
    if (!axes_j[i].is_array()) fail(where, "expected an array");
    std::vector<Rational> axis;
    for (std::size_t k = 0; k < axes_j[i].size(); ++k)
      axis.push_back(detail::rational_from(axes_j[i][k], where + "[" + std::to_string(k) + "]"));
    axes.push_back(std::move(axis));
  }
  GridPoset grid = [&] {
    try {
      return GridPoset::embedded(axes);
    } catch (const ValidationError& e) {
      fail("axes", e.what());
    }
  }();

  const Json& cj = field(j, "coefficients", "module");
  const Json& kind = field(cj, "kind", "coefficients");
  Coefficients coeff;
  if (kind == "int") {
    coeff = Coefficients::integers();
  } else if (kind == "field") {
    const Json& p = field(cj, "p", "coefficients");
    if (!p.is_number_integer() || !is_prime(p.get<std::int64_t>())) fail("coefficients.p", "expected a prime");
    coeff = Coefficients::field(p.get<std::int64_t>());
  } else {
    fail("coefficients.kind", "expected \"field\" or \"int\"");
  }

  std::vector<CatObject> objects(grid.num_points(), coeff.zero_object());
  if (j.contains("objects")) {
    const Json& oj = j.at("objects");
    if (!oj.is_object()) fail("objects", "expected an object");
    for (const auto& [key, spec] : oj.items()) {
      const std::string where = "objects[\"" + key + "\"]";
      const std::size_t p = grid.flat_index(detail::parse_index(key, grid, where));
      if (coeff.is_field()) {
        objects[p] = VectObj{detail::count_from(field(spec, "dim", where), where + ".dim"), coeff.p};
      } else {
        std::size_t free = spec.contains("free") ? detail::count_from(spec.at("free"), where + ".free") : 0;
        std::vector<Integer> torsion;
        if (spec.contains("torsion")) {
          if (!spec.at("torsion").is_array()) fail(where + ".torsion", "expected an array");
          for (const auto& t : spec.at("torsion")) torsion.push_back(detail::integer_from(t, where + ".torsion"));
        }
        try {
          objects[p] = make_ab(free, std::move(torsion));
        } catch (const ValidationError& e) {
          fail(where, e.what());
        }
      }
    }
  }

  std::vector<IntMatrix> edges(grid.num_points() * dim);
  std::vector<bool> given(edges.size(), false);
  if (j.contains("edges")) {
    const Json& ej = j.at("edges");
    if (!ej.is_object()) fail("edges", "expected an object");
    for (const auto& [key, rows] : ej.items()) {
      const std::string where = "edges[\"" + key + "\"]";
      const auto plus = key.find('+');
      if (plus == std::string::npos) fail(where, "edge key must look like \"i,j+axis\"");
      const std::string axis_s = key.substr(plus + 1);
      if (axis_s.empty() || axis_s.find_first_not_of("0123456789") != std::string::npos)
        fail(where, "malformed axis");
      const std::size_t axis = std::stoul(axis_s);
      if (axis >= dim) fail(where, "axis out of range");
      auto idx = detail::parse_index(key.substr(0, plus), grid, where);
      if (idx[axis] + 1 >= grid.axis(axis).size()) fail(where, "edge leaves the grid");
      const std::size_t p = grid.flat_index(idx), q = p + grid.stride(axis);
      if (!rows.is_array()) fail(where, "expected an array of rows");
      const std::size_t nr = num_generators(objects[q]), nc = num_generators(objects[p]);
      IntMatrix m(nr, nc);
      if (!(rows.empty() && (nr == 0 || nc == 0))) {
        if (rows.size() != nr) fail(where, "expected " + std::to_string(nr) + " rows");
        for (std::size_t r = 0; r < nr; ++r) {
          if (!rows[r].is_array() || rows[r].size() != nc)
            fail(where + "[" + std::to_string(r) + "]", "expected " + std::to_string(nc) + " entries");
          for (std::size_t c = 0; c < nc; ++c)
            m(r, c) = detail::integer_from(rows[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
        }
      }
      edges[p * dim + axis] = std::move(m);
      given[p * dim + axis] = true;
    }
  }
  for (std::size_t p = 0; p < grid.num_points(); ++p) {
    auto idx = grid.multi_index(p);
    for (std::size_t axis = 0; axis < dim; ++axis)
      if (!given[p * dim + axis] && idx[axis] + 1 < grid.axis(axis).size())
        edges[p * dim + axis] =
            IntMatrix(num_generators(objects[p + grid.stride(axis)]), num_generators(objects[p]));
  }
  PersistenceModule m(std::move(grid), coeff, std::move(objects), std::move(edges));
  require_functorial(m);
  return m;
}

/// Canonical form: sorted keys, zero objects and zero maps omitted.
inline Json module_to_json(const PersistenceModule& m) {
  Json j;
  j["format"] = format_tag;
  j["dim"] = m.dim();
  Json axes = Json::array();
  for (const auto& axis : m.grid().axes()) {
    Json a = Json::array();
    for (const auto& x : axis) a.push_back(format_fraction(x));
    axes.push_back(std::move(a));
  }
  j["axes"] = std::move(axes);
  const auto& c = m.coefficients();
  j["coefficients"] = c.is_field() ? Json{{"kind", "field"}, {"p", c.p}} : Json{{"kind", "int"}};
  Json objects = Json::object(), edges = Json::object();
  for (std::size_t p = 0; p < m.num_points(); ++p) {
    const CatObject& obj = m.object(p);
    const std::string key = detail::index_key(m.grid().multi_index(p));
    if (!is_zero_object(obj)) {
      if (auto v = std::get_if<VectObj>(&obj)) {
        objects[key] = Json{{"dim", v->dim}};
      } else {
        const auto& a = std::get<AbObj>(obj);
        Json t = Json::array();
        for (const auto& x : a.torsion) t.push_back(detail::integer_to_json(x));
        objects[key] = Json{{"free", a.free_rank}, {"torsion", std::move(t)}};
      }
    }
    for (std::size_t axis = 0; axis < m.dim(); ++axis) {
      if (!m.has_edge(p, axis) || m.edge(p, axis).is_zero()) continue;
      const IntMatrix& e = m.edge(p, axis);
      Json rows = Json::array();
      for (std::size_t r = 0; r < e.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t col = 0; col < e.cols(); ++col) row.push_back(detail::integer_to_json(e(r, col)));
        rows.push_back(std::move(row));
      }
      edges[key + "+" + std::to_string(axis)] = std::move(rows);
    }
  }
  j["objects"] = std::move(objects);
  j["edges"] = std::move(edges);
  return j;
}

inline std::string dump_module(const PersistenceModule& m) { return module_to_json(m).dump(2) + "\n"; }

/// A size pair together with the vertex names it was read with.
struct NamedSizePair {
  SizePair pair;
  std::vector<std::string> names;
};

inline NamedSizePair size_pair_from_json(const Json& j) {
  using detail::fail;
  using detail::field;
  detail::check_format(j, "function");
  const Json& vj = field(j, "vertices", "function");
  if (!vj.is_array()) fail("vertices", "expected an array of names");
  NamedSizePair out;
  std::map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    if (!vj[i].is_string()) fail("vertices[" + std::to_string(i) + "]", "expected a string");
    auto name = vj[i].get<std::string>();
    if (!id.emplace(name, i).second) fail("vertices[" + std::to_string(i) + "]", "duplicate vertex '" + name + "'");
    out.names.push_back(std::move(name));
  }
  auto lookup = [&](const Json& v, const std::string& where) {
    if (!v.is_string() || !id.count(v.get<std::string>())) fail(where, "unknown vertex");
    return id.at(v.get<std::string>());
  };
  std::vector<Simplex> gens;
  for (std::size_t v = 0; v < vj.size(); ++v) gens.push_back({v});
  if (j.contains("simplices")) {
    const Json& sj = j.at("simplices");
    if (!sj.is_array()) fail("simplices", "expected an array");
    for (std::size_t k = 0; k < sj.size(); ++k) {
      const std::string where = "simplices[" + std::to_string(k) + "]";
      if (!sj[k].is_array() || sj[k].empty()) fail(where, "expected a non-empty array of vertices");
      Simplex s;
      for (std::size_t t = 0; t < sj[k].size(); ++t)
        s.push_back(lookup(sj[k][t], where + "[" + std::to_string(t) + "]"));
      gens.push_back(std::move(s));
    }
  }
  try {
    out.pair.space = SimplicialComplex::closure(gens);
  } catch (const ValidationError& e) {
    fail("simplices", e.what());
  }
  const Json& val = field(j, "values", "function");
  if (!val.is_object()) fail("values", "expected an object keyed by vertex");
  out.pair.values.assign(vj.size(), Point{});
  std::vector<bool> seen(vj.size(), false);
  std::optional<std::size_t> dim;
  for (const auto& [name, x] : val.items()) {
    const std::string where = "values[\"" + name + "\"]";
    if (!id.count(name)) fail(where, "unknown vertex");
    Point p;
    if (x.is_array()) {
      for (std::size_t i = 0; i < x.size(); ++i)
        p.push_back(detail::rational_from(x[i], where + "[" + std::to_string(i) + "]"));
    } else {
      p.push_back(detail::rational_from(x, where));
    }
    if (p.empty()) fail(where, "empty value");
    if (dim && *dim != p.size()) fail(where, "values have mixed dimensions");
    dim = p.size();
    out.pair.values[id.at(name)] = std::move(p);
    seen[id.at(name)] = true;
  }
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v]) fail("values", "vertex '" + out.names[v] + "' has no value");
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline PersistenceModule load_module(const std::string& path) {
  Json j = read_json_file(path);
  try {
    return module_from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline NamedSizePair load_size_pair(const std::string& path) {
  Json j = read_json_file(path);
  try {
    return size_pair_from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace erodist
