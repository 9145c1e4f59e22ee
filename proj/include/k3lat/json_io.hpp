#pragma once

// JSON (de)serialization. All integers travel as decimal strings so that
// 64-bit JSON consumers cannot truncate them; rationals as "p/q" strings.

#include <json.hpp>

#include "k3lat/k3.hpp"
#include "k3lat/koszul.hpp"

namespace k3lat {

using Json = nlohmann::ordered_json;

inline std::string to_string(const Int& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw InputError("bad integer literal: " + j.get<std::string>());
    }
  }
  throw InputError("expected integer or decimal string");
}

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      Rat r(j.get<std::string>());
      r.canonicalize();
      if (r.get_den() <= 0) throw InputError("bad rational: zero denominator");
      return r;
    } catch (const std::invalid_argument&) {
      throw InputError("bad rational literal: " + j.get<std::string>());
    }
  }
  throw InputError("expected rational string");
}

inline Json to_json(const IntVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}
inline IntVec intvec_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of integers");
  IntVec v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

inline Json to_json(const IntMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}
inline IntMat intmat_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of rows");
  std::vector<IntVec> rows;
  for (const auto& r : j) rows.push_back(intvec_from_json(r));
  return IntMat::from_rows(rows);
}

inline Json to_json(const RatMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    a.push_back(row);
  }
  return a;
}
inline RatMat ratmat_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of rows");
  std::size_t nr = j.size(), nc = nr ? j[0].size() : 0;
  RatMat m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (!j[i].is_array() || j[i].size() != nc)
      throw InputError("ragged rational matrix");
    for (std::size_t c = 0; c < nc; ++c) m(i, c) = rat_from_json(j[i][c]);
  }
  return m;
}

// ---------------------------------------------------------------------------

inline Json to_json(const Lattice& l) { return Json{{"gram", to_json(l.gram)}}; }
inline Lattice lattice_from_json(const Json& j) {
  if (!j.contains("gram")) throw InputError("lattice JSON: missing \"gram\"");
  return Lattice(intmat_from_json(j.at("gram")));
}

inline Json to_json(const Isometry& f) {
  return Json{{"matrix", to_json(f.matrix)},
              {"source", Json{{"gram", to_json(f.source_gram)}}},
              {"target", Json{{"gram", to_json(f.target_gram)}}}};
}
inline Isometry isometry_from_json(const Json& j) {
  Isometry f;
  f.matrix = intmat_from_json(j.at("matrix"));
  f.source_gram = intmat_from_json(j.at("source").at("gram"));
  f.target_gram = intmat_from_json(j.at("target").at("gram"));
  return f;
}

inline Json to_json(const K3SurfaceData& s) {
  Json j{{"name", s.name}, {"ns_gram", to_json(s.ns_gram)}};
  if (s.t_gram) j["t_gram"] = to_json(*s.t_gram);
  if (s.orientation) j["orientation"] = *s.orientation;
  return j;
}
inline K3SurfaceData surface_from_json(const Json& j) {
  K3SurfaceData s;
  s.name = j.value("name", std::string{});
  if (!j.contains("ns_gram"))
    throw InputError("surface JSON: missing \"ns_gram\"");
  s.ns_gram = intmat_from_json(j.at("ns_gram"));
  if (j.contains("t_gram")) s.t_gram = intmat_from_json(j.at("t_gram"));
  if (j.contains("orientation"))
    s.orientation = j.at("orientation").get<std::vector<std::size_t>>();
  return s;
}

inline Json to_json(const MukaiVector& v) {
  Json j{{"r", to_string(v.r)}, {"l", to_json(v.l)}, {"s", to_string(v.s)}};
  if (!v.t.empty()) j["t"] = to_json(v.t);
  return j;
}
inline MukaiVector mukai_vector_from_json(const Json& j) {
  MukaiVector v;
  v.r = int_from_json(j.at("r"));
  v.l = intvec_from_json(j.at("l"));
  v.s = int_from_json(j.at("s"));
  if (j.contains("t")) v.t = intvec_from_json(j.at("t"));
  return v;
}

inline SheafData sheaf_from_json(const Json& j) {
  SheafData d;
  d.r = int_from_json(j.at("r"));
  if (d.r < 0) throw InputError("sheaf JSON: negative rank");
  d.c1 = intvec_from_json(j.at("c1"));
  d.c2 = int_from_json(j.at("c2"));
  return d;
}

inline Json to_json(const KunnethClass& z) {
  return Json{{"matrix", to_json(z.coeff)}};
}
inline KunnethClass kunneth_from_json(const Json& j) {
  return {ratmat_from_json(j.at("matrix"))};
}

inline Json to_json(const GradedAlgebra& a) {
  Json dims = Json::array();
  for (auto d : a.dims) dims.push_back(d);
  Json mult = Json::object();
  for (const auto& [key, m] : a.mult)
    mult[std::to_string(key.first) + "," + std::to_string(key.second)] =
        to_json(m);
  return Json{{"dims", dims}, {"mult", mult}};
}
inline GradedAlgebra algebra_from_json(const Json& j) {
  GradedAlgebra a;
  if (!j.contains("dims")) throw InputError("algebra JSON: missing \"dims\"");
  for (const auto& d : j.at("dims")) {
    if (!d.is_number_unsigned())
      throw InputError("algebra JSON: dims must be nonnegative integers");
    a.dims.push_back(d.get<std::size_t>());
  }
  const Json mult = j.value("mult", Json::object());
  for (const auto& [key, m] : mult.items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos)
      throw InputError("algebra JSON: bad mult key " + key);
    std::size_t i = std::stoul(key.substr(0, comma));
    std::size_t jj = std::stoul(key.substr(comma + 1));
    a.mult[{i, jj}] = ratmat_from_json(m);
  }
  return a;
}

}  // namespace k3lat
