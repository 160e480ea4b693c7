#pragma once

// Built-in example data, loaded from the JSON files embedded at build time.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmc/catalog_data.hpp"
#include "gmc/counting.hpp"
#include "gmc/covers.hpp"
#include "gmc/error.hpp"
#include "gmc/json_io.hpp"
#include "gmc/variety.hpp"

namespace gmc::catalog {

struct ExpectedValue {
  nlohmann::json value;
  std::string basis;
};

struct PolarizationCase {
  std::string label;  // "anticanonical" or the class as text
  Polarization polarization;
  std::map<std::string, ExpectedValue> expected;
};

struct CoverExpectation {
  std::string map;
  bool balanced_broken = false;
  bool weakly_broken = false;
  bool face_contracting = false;
  int relative_dim = 0;
  std::optional<QVec> batyrev_class;
  int batyrev_degree = 0;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::string source;
  std::optional<Variety> variety;
  std::optional<ABPair> record_only;  // base (a, b) when there is no variety
  std::vector<PolarizationCase> polarizations;  // the first is the default
  std::vector<ThinMapRecord> thin_maps;
  std::vector<ComponentRecord> components;  // for the default polarization unless a rule applies
  std::map<std::string, std::string> expected_verdicts;
  std::vector<CoverExpectation> expected_covers;
  std::string component_rule;
  bool strong_manin_model = false;

  const Variety& require_variety() const {
    if (!variety) fail(ErrorCode::BadInput, name + " is a record-only entry without cone data");
    return *variety;
  }

  Polarization default_polarization() const { return polarizations.front().polarization; }

  /// Components up to degree dmax: the stored list, or the family given by the rule.
  std::vector<ComponentRecord> component_list(int dmax) const {
    if (component_rule == "index2") {
      // Lines, then for each degree the free component R_d and the multiple covers N_d of lines.
      std::vector<ComponentRecord> out;
      if (dmax >= 1) out.push_back({"L1", {1}, 1, 5, {"U"}});
      for (int d = 2; d <= dmax; ++d) {
        out.push_back({"R" + std::to_string(d), {d}, d, 2 * d + 3, {}});
        out.push_back({"N" + std::to_string(d), {d}, d, 2 * d + 3, {"U"}});
      }
      return out;
    }
    std::vector<ComponentRecord> out;
    for (const auto& c : components)
      if (c.degree_units <= dmax) out.push_back(c);
    return out;
  }
};

/// (-1)-classes aH + sum c_i E_i on the blow-up of P^2 in r points: a^2 - sum c_i^2 = -1
/// and K.D = -1 with a <= 2; for r = 1 the pencil class H - E is added.
inline std::vector<QVec> del_pezzo_eff_generators(int r) {
  if (r < 1 || r > 8) fail(ErrorCode::BadInput, "del Pezzo blow-ups need 1 <= r <= 8");
  std::vector<QVec> out;
  const int amax = r <= 6 ? 2 : 6;
  std::vector<int> c(static_cast<std::size_t>(r), -3);
  for (int a = 0; a <= amax; ++a) {
    std::fill(c.begin(), c.end(), -3);
    for (;;) {
      int sq = a * a, kd = -3 * a;
      for (int v : c) {
        sq -= v * v;
        kd -= v;  // K.D with K = -3H + sum E_i and E_i^2 = -1
      }
      if (sq == -1 && kd == -1) {
        QVec d{Rat(a)};
        for (int v : c) d.push_back(Rat(v));
        out.push_back(std::move(d));
      }
      std::size_t i = 0;
      while (i < c.size() && ++c[i] > 3) c[i++] = -3;
      if (i == c.size()) break;
    }
  }
  if (r == 1) out.push_back({1, -1});
  std::sort(out.begin(), out.end());
  return out;
}

inline VarietyData del_pezzo_data(int r) {
  VarietyData d;
  d.name = "delPezzo_" + std::to_string(r);
  d.dim = 2;
  d.rho = r + 1;
  d.eff_generators = del_pezzo_eff_generators(r);
  d.canonical_class = QVec(static_cast<std::size_t>(r) + 1, Rat(1));
  d.canonical_class[0] = -3;
  return d;
}

inline CatalogEntry parse_entry(const nlohmann::json& j) {
  using json::detail::field;
  CatalogEntry e;
  e.name = field(j, "name", "catalog entry").get<std::string>();
  e.description = j.value("description", "");
  e.source = j.value("source", "");
  if (auto it = j.find("variety"); it != j.end()) {
    e.variety.emplace(json::variety_from(*it));
  } else if (auto dp = j.find("del_pezzo"); dp != j.end()) {
    e.variety.emplace(del_pezzo_data(dp->get<int>()));
  } else if (auto rec = j.find("record_only"); rec != j.end()) {
    e.record_only = ABPair{json::rat_from(field(*rec, "a", e.name)), field(*rec, "b", e.name).get<int>()};
  } else {
    fail(ErrorCode::BadInput, e.name + ": entry needs a variety, a del_pezzo rank, or a record_only pair");
  }
  if (e.variety) {
    for (const auto& p : field(j, "polarizations", e.name)) {
      PolarizationCase pc;
      const auto& cls = field(p, "class", e.name);
      pc.label = cls.is_string() ? cls.get<std::string>() : cls.dump();
      pc.polarization = json::polarization_from(cls, *e.variety);
      if (auto ex = p.find("expected"); ex != p.end())
        for (const auto& [key, v] : ex->items())
          pc.expected[key] = {v.at("value"), v.value("basis", "")};
      e.polarizations.push_back(std::move(pc));
    }
    if (e.polarizations.empty()) fail(ErrorCode::BadInput, e.name + ": no polarization");
  }
  if (auto it = j.find("thin_maps"); it != j.end()) e.thin_maps = json::maps_from(*it);
  if (auto it = j.find("components"); it != j.end()) {
    const auto& x = e.require_variety();
    for (const auto& c : *it) {
      auto l = c.contains("polarization") ? json::polarization_from(c["polarization"], x) : e.default_polarization();
      e.components.push_back(json::component_from(c, l, rationality_index(x, l)));
    }
  }
  if (auto it = j.find("expected_verdicts"); it != j.end())
    for (const auto& [id, reason] : it->items()) e.expected_verdicts[id] = reason.get<std::string>();
  if (auto it = j.find("expected_covers"); it != j.end())
    for (const auto& c : *it) {
      CoverExpectation ce;
      ce.map = c.at("map").get<std::string>();
      ce.balanced_broken = c.at("balanced_broken").get<bool>();
      ce.weakly_broken = c.at("weakly_broken").get<bool>();
      ce.face_contracting = c.at("face_contracting").get<bool>();
      ce.relative_dim = c.at("relative_dim").get<int>();
      if (c.contains("batyrev_class")) ce.batyrev_class = json::qvec_from(c["batyrev_class"]);
      ce.batyrev_degree = c.at("batyrev_degree").get<int>();
      e.expected_covers.push_back(std::move(ce));
    }
  e.component_rule = j.value("component_rule", "");
  e.strong_manin_model = j.value("model", "") == "strong-manin";
  return e;
}

/// Names of all built-in entries, sorted.
inline std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& [stem, text] : catalog_data::kEntries) out.emplace_back(stem);
  std::sort(out.begin(), out.end());
  return out;
}

inline CatalogEntry load(const std::string& name) {
  for (const auto& [stem, text] : catalog_data::kEntries)
    if (stem == name) {
      try {
        return parse_entry(nlohmann::json::parse(text));
      } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::BadInput, "catalog entry " + name + " is malformed: " + ex.what());
      }
    }
  fail(ErrorCode::UnknownEntry, "no catalog entry named '" + name + "'");
}

inline std::vector<CatalogEntry> load_all() {
  std::vector<CatalogEntry> out;
  for (const auto& n : names()) out.push_back(load(n));
  return out;
}

/// Differences between stored expectations and the computed values, one
/// message per mismatch.
inline std::vector<std::string> golden_mismatches(const CatalogEntry& e) {
  std::vector<std::string> out;
  auto note = [&](const std::string& what, const std::string& want, const std::string& got) {
    if (want != got) out.push_back(e.name + " " + what + ": expected " + want + ", computed " + got);
  };
  if (e.variety) {
    const auto& x = *e.variety;
    for (const auto& pc : e.polarizations) {
      auto rep = compute_invariants(x, pc.polarization);
      const std::string tag = "[" + pc.label + "]";
      for (const auto& [key, ev] : pc.expected) {
        std::string want = ev.value.is_string() ? ev.value.get<std::string>() : ev.value.dump();
        if (key == "a")
          note(tag + " a", want, to_string(rep.a));
        else if (key == "b")
          note(tag + " b", want, std::to_string(rep.b));
        else if (key == "r")
          note(tag + " r", want, to_string(rep.r));
        else if (key == "alpha")
          note(tag + " alpha", want, rep.a ? to_string(rep.alpha) : "undefined");
        else
          out.push_back(e.name + ": unknown expected key '" + key + "'");
      }
    }
    if (!e.expected_verdicts.empty()) {
      for (const auto& c : e.components) {
        auto it = e.expected_verdicts.find(c.id);
        if (it == e.expected_verdicts.end()) continue;
        auto l = e.default_polarization();
        note("verdict " + c.id, it->second, to_string(classify_component(c, x, l, e.thin_maps).reason));
      }
    }
  }
  for (const auto& ce : e.expected_covers) {
    const auto& m = resolve_map(e.thin_maps, ce.map);
    ABPair base = e.record_only ? *e.record_only
                                : ABPair{require_finite_a(*e.variety, e.default_polarization()),
                                         b_invariant(*e.variety, e.default_polarization()).b};
    auto br = breaks_balanced(m, base);
    note("cover " + m.id + " balanced_broken", ce.balanced_broken ? "true" : "false", br.balanced_broken ? "true" : "false");
    note("cover " + m.id + " weakly_broken", ce.weakly_broken ? "true" : "false", br.weakly_broken ? "true" : "false");
    note("cover " + m.id + " face_contracting", ce.face_contracting ? "true" : "false",
         is_face_contracting(m) ? "true" : "false");
    note("cover " + m.id + " relative_dim", std::to_string(ce.relative_dim), std::to_string(relative_dimension(m)));
    if (e.variety && ce.batyrev_class) {
      auto bi = BaseInvariants::of(*e.variety, e.default_polarization());
      note("batyrev_degree", std::to_string(ce.batyrev_degree), std::to_string(batyrev_degree(*ce.batyrev_class, bi, e.thin_maps)));
    } else if (!e.variety) {
      BaseInvariants bi{base, 1, Cone::full_space(1)};
      note("batyrev_degree", std::to_string(ce.batyrev_degree), std::to_string(batyrev_degree({0}, bi, e.thin_maps)));
    }
  }
  return out;
}

}  // namespace gmc::catalog
