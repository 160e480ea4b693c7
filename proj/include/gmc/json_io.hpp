#pragma once

// JSON encodings of the library types. Rationals are written as "p/q"
// strings and accepted as either integers or such strings.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmc/counting.hpp"
#include "gmc/covers.hpp"
#include "gmc/error.hpp"
#include "gmc/exactalg.hpp"
#include "gmc/variety.hpp"

namespace gmc::json {

using nlohmann::json;
using nlohmann::ordered_json;

namespace detail {
inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(ErrorCode::BadInput, where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorCode::BadInput, where + ": missing field '" + key + "'");
  return *it;
}

template <class T>
T get_as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::BadInput, where + ": wrong type");
  }
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Scalars and vectors

inline Rat rat_from(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  fail(ErrorCode::BadInput, "expected an integer or a \"p/q\" string, got " + j.dump());
}

inline json to_json(const Rat& x) { return to_string(x); }

inline QVec qvec_from(const json& j) {
  if (!j.is_array()) fail(ErrorCode::BadInput, "expected an array of rationals, got " + j.dump());
  QVec out;
  for (const auto& x : j) out.push_back(rat_from(x));
  return out;
}

inline std::vector<QVec> qvecs_from(const json& j) {
  if (!j.is_array()) fail(ErrorCode::BadInput, "expected an array of vectors");
  std::vector<QVec> out;
  for (const auto& v : j) out.push_back(qvec_from(v));
  return out;
}

inline json to_json(const QVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

inline json to_json(const ZVec& v) { return to_json(to_q(v)); }

inline json to_json(const std::vector<QVec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

inline ZMat zmat_from(const json& j, std::size_t cols_if_empty = 0) {
  if (!j.is_array()) fail(ErrorCode::BadInput, "expected an integer matrix");
  std::vector<ZVec> rows;
  for (const auto& r : j) {
    if (!r.is_array()) fail(ErrorCode::BadInput, "expected matrix rows to be arrays");
    ZVec row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) fail(ErrorCode::BadInput, "expected integer matrix entries, got " + x.dump());
      row.push_back(Int(x.get<std::int64_t>()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return ZMat(0, cols_if_empty);
  return ZMat::from_rows(rows);
}

inline json to_json(const ZMat& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).convert_to<std::int64_t>());
    out.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Variety, polarization, cone

inline VarietyData variety_from(const json& j) {
  VarietyData d;
  d.name = detail::get_as<std::string>(detail::field(j, "name", "variety"), "variety.name");
  d.dim = detail::get_as<int>(detail::field(j, "dim", "variety"), "variety.dim");
  d.rho = detail::get_as<int>(detail::field(j, "picard_rank", "variety"), "variety.picard_rank");
  d.eff_generators = qvecs_from(detail::field(j, "eff_generators", "variety"));
  d.canonical_class = qvec_from(detail::field(j, "canonical_class", "variety"));
  if (auto it = j.find("nef_curve_generators"); it != j.end() && !it->is_null()) d.nef_curve_generators = qvecs_from(*it);
  return d;
}

inline json to_json(const VarietyData& d) {
  json j{{"name", d.name},
         {"dim", d.dim},
         {"picard_rank", d.rho},
         {"eff_generators", to_json(d.eff_generators)},
         {"canonical_class", to_json(d.canonical_class)}};
  if (d.nef_curve_generators) j["nef_curve_generators"] = to_json(*d.nef_curve_generators);
  return j;
}

/// "anticanonical" or an explicit divisor class.
inline Polarization polarization_from(const json& j, const Variety& x) {
  if (j.is_string() && j.get<std::string>() == "anticanonical") return x.anticanonical();
  Polarization l{qvec_from(j)};
  if (l.cls.size() != static_cast<std::size_t>(x.rho()))
    fail(ErrorCode::BadInput, "polarization has length " + std::to_string(l.cls.size()) + ", expected " +
                                  std::to_string(x.rho()));
  return l;
}

inline json to_json(const Cone& c) {
  json gens = json::array();
  for (const auto& g : c.generators()) gens.push_back(to_json(g));
  return json{{"ambient_dim", c.ambient_dim()}, {"generators", gens}};
}

inline Cone cone_from(const json& j) {
  auto dim = detail::get_as<std::size_t>(detail::field(j, "ambient_dim", "cone"), "cone.ambient_dim");
  return Cone::from_generators(dim, qvecs_from(detail::field(j, "generators", "cone")));
}

// ---------------------------------------------------------------------------
// Invariant report

inline json to_json(const AValue& a) { return to_string(a); }

inline AValue avalue_from(const json& j) {
  if (j.is_string() && j.get<std::string>() == "infinity") return std::nullopt;
  return rat_from(j);
}

inline json to_json(const InvariantReport& rep) {
  json j{{"a", to_json(rep.a)}, {"r", to_json(rep.r)}, {"big", rep.big}, {"nef_checked", rep.nef_checked}};
  if (rep.a) {
    j["b"] = rep.b;
    j["face_dim"] = rep.face_dim;
    j["b_agrees"] = rep.b_agrees;
    j["face_F"] = to_json(rep.face_F);
    j["alpha"] = to_json(rep.alpha);
  }
  return j;
}

inline InvariantReport report_from(const json& j) {
  InvariantReport rep;
  rep.a = avalue_from(detail::field(j, "a", "report"));
  rep.r = rat_from(detail::field(j, "r", "report"));
  rep.big = detail::get_as<bool>(detail::field(j, "big", "report"), "report.big");
  rep.nef_checked = detail::get_as<bool>(detail::field(j, "nef_checked", "report"), "report.nef_checked");
  if (rep.a) {
    rep.b = detail::get_as<int>(detail::field(j, "b", "report"), "report.b");
    rep.face_dim = detail::get_as<int>(detail::field(j, "face_dim", "report"), "report.face_dim");
    rep.b_agrees = detail::get_as<bool>(detail::field(j, "b_agrees", "report"), "report.b_agrees");
    rep.face_F = cone_from(detail::field(j, "face_F", "report"));
    rep.alpha = rat_from(detail::field(j, "alpha", "report"));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Thin maps and components

inline ThinMapRecord map_from(const json& j) {
  ThinMapRecord m;
  m.id = detail::get_as<std::string>(detail::field(j, "id", "map"), "map.id");
  m.dominant = detail::get_as<bool>(detail::field(j, "dominant", "map " + m.id), "map.dominant");
  m.a_value = rat_from(detail::field(j, "a", "map " + m.id));
  m.b_value = detail::get_as<int>(detail::field(j, "b", "map " + m.id), "map.b");
  m.kappa = detail::get_as<int>(detail::field(j, "kappa", "map " + m.id), "map.kappa");
  if (auto it = j.find("pushforward"); it != j.end() && !it->is_null()) m.pushforward = zmat_from(*it);
  if (auto it = j.find("face_Y_generators"); it != j.end() && !it->is_null()) m.face_Y_generators = qvecs_from(*it);
  if (auto it = j.find("face_contracting"); it != j.end() && !it->is_null())
    m.face_contracting_override = detail::get_as<bool>(*it, "map.face_contracting");
  if (auto it = j.find("relative_dim"); it != j.end() && !it->is_null())
    m.relative_dim = detail::get_as<int>(*it, "map.relative_dim");
  m.validate();
  return m;
}

inline json to_json(const ThinMapRecord& m) {
  json j{{"id", m.id}, {"dominant", m.dominant}, {"a", to_json(m.a_value)}, {"b", m.b_value}, {"kappa", m.kappa}};
  if (m.pushforward) j["pushforward"] = to_json(*m.pushforward);
  if (m.face_Y_generators) j["face_Y_generators"] = to_json(*m.face_Y_generators);
  if (m.face_contracting_override) j["face_contracting"] = *m.face_contracting_override;
  if (m.relative_dim) j["relative_dim"] = *m.relative_dim;
  return j;
}

inline std::vector<ThinMapRecord> maps_from(const json& j) {
  std::vector<ThinMapRecord> out;
  const json& arr = j.is_array() ? j : detail::field(j, "maps", "maps file");
  if (!arr.is_array()) fail(ErrorCode::BadInput, "'maps' must be an array");
  for (const auto& m : arr) out.push_back(map_from(m));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t k = i + 1; k < out.size(); ++k)
      if (out[i].id == out[k].id) fail(ErrorCode::BadInput, "duplicate map id '" + out[i].id + "'");
  return out;
}

/// degree_units is derived from the class when absent: L.class / r.
inline ComponentRecord component_from(const json& j, const Polarization& l, const Rat& r) {
  ComponentRecord c;
  c.id = detail::get_as<std::string>(detail::field(j, "id", "component"), "component.id");
  c.cls = qvec_from(detail::field(j, "class", "component " + c.id));
  for (const auto& x : c.cls)
    if (!is_integer(x)) fail(ErrorCode::BadInput, "component " + c.id + ": class must be integral");
  if (c.cls.size() != l.cls.size()) fail(ErrorCode::BadInput, "component " + c.id + ": class has wrong length");
  c.mor_dim = detail::get_as<std::int64_t>(detail::field(j, "mor_dim", "component " + c.id), "component.mor_dim");
  if (auto it = j.find("factors_through"); it != j.end())
    c.factors_through = detail::get_as<std::vector<std::string>>(*it, "component.factors_through");
  Rat units = dot(l.cls, c.cls) / r;
  if (!is_integer(units) || units <= 0)
    fail(ErrorCode::BadInput, "component " + c.id + ": L-degree is not a positive multiple of r(X,L)");
  c.degree_units = numerator(units).convert_to<int>();
  if (auto it = j.find("degree_units"); it != j.end() && it->get<int>() != c.degree_units)
    fail(ErrorCode::BadInput, "component " + c.id + ": degree_units disagrees with L.class / r");
  return c;
}

inline std::vector<ComponentRecord> components_from(const json& j, const Polarization& l, const Rat& r) {
  const json& arr = j.is_array() ? j : detail::field(j, "components", "components file");
  if (!arr.is_array()) fail(ErrorCode::BadInput, "'components' must be an array");
  std::vector<ComponentRecord> out;
  for (const auto& c : arr) out.push_back(component_from(c, l, r));
  return out;
}

inline json to_json(const ComponentRecord& c) {
  return json{{"id", c.id},
              {"class", to_json(c.cls)},
              {"degree_units", c.degree_units},
              {"mor_dim", c.mor_dim},
              {"factors_through", c.factors_through}};
}

inline json to_json(const ManinVerdict& v) {
  json j{{"accepted", v.accepted}, {"reason", to_string(v.reason)}};
  if (!v.witness.empty()) j["witness"] = v.witness;
  return j;
}

inline ManinReason reason_from(const std::string& s) {
  for (auto r : {ManinReason::Accepted, ManinReason::NotInFace, ManinReason::HigherA, ManinReason::FaceContractingGEQ,
                 ManinReason::PositiveKappa})
    if (to_string(r) == s) return r;
  fail(ErrorCode::BadInput, "unknown verdict reason '" + s + "'");
}

inline ManinVerdict verdict_from(const json& j) {
  ManinVerdict v;
  v.accepted = detail::get_as<bool>(detail::field(j, "accepted", "verdict"), "verdict.accepted");
  v.reason = reason_from(detail::get_as<std::string>(detail::field(j, "reason", "verdict"), "verdict.reason"));
  if (auto it = j.find("witness"); it != j.end()) v.witness = it->get<std::string>();
  if (v.accepted != (v.reason == ManinReason::Accepted)) fail(ErrorCode::BadInput, "verdict is inconsistent");
  return v;
}

// ---------------------------------------------------------------------------
// Count report

struct CountReport {
  std::int64_t q = 2;
  std::int64_t d = 1;
  Int n = 0;
  std::optional<Rat> predicted;
  std::vector<LevelContribution> per_level;
  bool includes_boundary_classes = false;

  double ratio_decimal() const {
    if (!predicted || *predicted == 0) return 0.0;
    return to_double(Rat(n) / *predicted);
  }
};

inline json to_json(const CountReport& r) {
  json levels = json::array();
  for (const auto& lc : r.per_level)
    levels.push_back({{"i", lc.i}, {"classes", lc.classes.str()}, {"contribution", lc.contribution.str()}});
  json j{{"q", r.q}, {"d", r.d}, {"N", r.n.str()}};
  if (r.predicted) {
    j["predicted"] = to_json(*r.predicted);
    j["ratio_decimal"] = r.ratio_decimal();
  }
  j["per_level"] = levels;
  j["includes_boundary_classes"] = r.includes_boundary_classes;
  return j;
}

inline CountReport count_report_from(const json& j) {
  CountReport r;
  r.q = detail::get_as<std::int64_t>(detail::field(j, "q", "count report"), "q");
  r.d = detail::get_as<std::int64_t>(detail::field(j, "d", "count report"), "d");
  r.n = Int(detail::get_as<std::string>(detail::field(j, "N", "count report"), "N"));
  if (auto it = j.find("predicted"); it != j.end()) r.predicted = rat_from(*it);
  for (const auto& lc : detail::field(j, "per_level", "count report"))
    r.per_level.push_back({lc.at("i").get<int>(), Int(lc.at("classes").get<std::string>()),
                           Int(lc.at("contribution").get<std::string>())});
  if (auto it = j.find("includes_boundary_classes"); it != j.end()) r.includes_boundary_classes = it->get<bool>();
  return r;
}

}  // namespace gmc::json
