// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cone_gen.hpp"
#include "gmc/catalog.hpp"
#include "gmc/counting.hpp"
#include "gmc/covers.hpp"
#include "gmc/variety.hpp"
#include "oracles.hpp"

using namespace gmc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

void check(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    if (o.pass) o.detail = what;
    o.pass = false;
  }
}

void time_limit(Outcome& o, Clock::time_point t0, double limit) {
  double s = seconds_since(t0);
  check(o, s <= limit, "took " + fmt(s, 3) + " s, limit " + fmt(limit, 3) + " s");
  if (o.pass) o.detail += (o.detail.empty() ? "" : "; ") + fmt(s, 3) + " s";
}

// Golden a, b, r, alpha, verdicts and cover data for every entry.
Outcome golden_values() {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t entries = 0, checks = 0;
  for (const auto& e : catalog::load_all()) {
    ++entries;
    for (const auto& pc : e.polarizations) checks += pc.expected.size();
    checks += e.expected_verdicts.size() + e.expected_covers.size();
    for (const auto& m : catalog::golden_mismatches(e)) check(o, false, m);
  }
  if (o.pass) o.detail = std::to_string(entries) + " entries, " + std::to_string(checks) + " stored values";
  time_limit(o, t0, 5.0);
  return o;
}

// b from the minimal face of a K + L must equal the dimension of F(X,L).
Outcome b_cross_check() {
  Outcome o;
  int n = 0;
  for (const auto& e : catalog::load_all()) {
    if (!e.variety) continue;
    for (const auto& pc : e.polarizations) {
      auto rep = compute_invariants(*e.variety, pc.polarization);
      if (!rep.a) continue;
      ++n;
      check(o, rep.b_agrees && rep.b == static_cast<int>(rep.face_dim),
            e.name + " [" + pc.label + "]: b = " + std::to_string(rep.b) + ", dim F = " + std::to_string(rep.face_dim));
    }
  }
  if (o.pass) o.detail = std::to_string(n) + " polarized entries";
  return o;
}

// Lattice-point growth of the slice polytope against the computed alpha.
Outcome alpha_vs_oracle() {
  Outcome o;
  auto t0 = Clock::now();
  const double tol = 0.01;
  double worst = 0;
  std::string worst_name;
  for (const char* name : {"P2", "P1xP1", "F1", "delPezzo_1", "delPezzo_2", "delPezzo_3", "delPezzo_4", "delPezzo_5",
                           "delPezzo_6"}) {
    auto e = catalog::load(name);
    const auto& x = e.require_variety();
    auto l = x.anticanonical();
    Rat alpha = alpha_constant(x, l);
    auto res = ehrhart_leading_oracle(x, l, 60);
    double diff = std::abs(to_double(res.estimate) - to_double(alpha));
    if (diff > worst) worst = diff, worst_name = name;
    check(o, diff <= tol,
          std::string(name) + ": alpha " + to_string(alpha) + ", oracle " + fmt(to_double(res.estimate)));
  }
  auto f1 = catalog::load("F1").require_variety();
  Rat f1_alpha = alpha_constant(f1, f1.anticanonical());
  check(o, f1_alpha == Rat(1, 6), "F1 alpha is " + to_string(f1_alpha));
  if (o.pass) o.detail = "max |diff| " + fmt(worst, 3) + " (" + worst_name + "), F1 alpha = 1/6";
  time_limit(o, t0, 30.0);
  return o;
}

// Component count on Hilb^2(P1 x P1) and the degree of its growth.
Outcome hilb2_counts() {
  Outcome o;
  auto t0 = Clock::now();
  for (int m = 0; m <= 40; ++m)
    for (int n = 0; n <= 40; ++n) {
      Int brute = oracle::hilb2_orbits_brute(m, n);
      check(o, hilb2_component_count(m, n) == brute && hilb2_orbit_count(m, n) == brute,
            "count mismatch at (" + std::to_string(m) + ", " + std::to_string(n) + ")");
    }
  auto e = catalog::load("hilb2_P1xP1");
  const auto& x = e.require_variety();
  auto l = e.default_polarization();
  for (int m = 1; m <= 10; ++m)
    for (int n = 1; n <= 10; ++n) {
      int deg = batyrev_degree({n, m, 0}, x, l, e.thin_maps);
      check(o, deg == 2, "batyrev degree " + std::to_string(deg) + " at (" + std::to_string(n) + ", " +
                             std::to_string(m) + ", 0)");
    }
  if (o.pass) o.detail = "m, n <= 40 agree with orbit enumeration, degree 2 on interior classes";
  time_limit(o, t0, 5.0);
  return o;
}

// Ratio of the model count to the predicted asymptotic.
Outcome ratio_diagnostics() {
  Outcome o;
  auto t0 = Clock::now();
  auto e = catalog::load("fano3fold_index2_deg3");
  const auto& x = e.require_variety();
  auto l = e.default_polarization();
  auto cat = ComponentCatalog::classify(e.component_list(10), BaseInvariants::of(x, l), e.thin_maps);
  double r1 = to_double(ratio_diagnostic(LevelTable::from(cat), AsymptoticParams::of(x, l), 2, 10));
  check(o, std::abs(r1 - 1) <= 1e-3, "index 2 ratio " + fmt(r1, 10));

  auto f1 = catalog::load("F1").require_variety();
  auto lf = f1.anticanonical();
  double r2 = to_double(ratio_diagnostic(strong_manin_model(f1, lf, 500), AsymptoticParams::of(f1, lf), 2, 500));
  check(o, std::abs(r2 - 1) <= 0.05, "F1 ratio " + fmt(r2, 10));
  if (o.pass) o.detail = "index 2 ratio " + fmt(r1, 10) + ", F1 ratio " + fmt(r2, 6);
  time_limit(o, t0, 10.0);
  return o;
}

// N(q, d) <= C d q^{d(ar + eps) + n} with eps = 1/4 and C = 16 on every model.
Outcome manin_type_bound() {
  Outcome o;
  const Rat eps(1, 4);
  const Int c = 16;
  int models = 0;
  for (const auto& e : catalog::load_all()) {
    if (!e.variety) continue;
    const auto& x = *e.variety;
    auto l = e.default_polarization();
    LevelTable table;
    if (e.strong_manin_model) {
      table = strong_manin_model(x, l, 200);
    } else if (!e.component_rule.empty()) {
      table = LevelTable::from(ComponentCatalog::classify(e.component_list(200), BaseInvariants::of(x, l), e.thin_maps));
    } else {
      continue;
    }
    ++models;
    auto p = AsymptoticParams::of(x, l);
    for (std::int64_t q : {2, 3, 5})
      for (int d = 1; d <= 200; ++d)
        check(o, manin_type_bound_holds(counting_N(table, q, d), p, q, d, eps, c),
              e.name + " exceeds the bound at q = " + std::to_string(q) + ", d = " + std::to_string(d));
  }
  if (o.pass) o.detail = std::to_string(models) + " models, q in {2,3,5}, d <= 200, eps = 1/4, C = 16";
  return o;
}

// One accepted component per degree on index 2 threefolds, rejected covers elsewhere.
Outcome classifier_goldens() {
  Outcome o;
  int checked = 0;
  for (const auto& name : catalog::names()) {
    auto e = catalog::load(name);
    if (!e.variety) continue;
    auto l = e.default_polarization();
    auto base = BaseInvariants::of(*e.variety, l);
    if (e.component_rule == "index2") {
      auto comps = e.component_list(12);
      std::map<std::int64_t, int> accepted;
      for (const auto& comp : comps) {
        auto v = classify_component(comp, base, e.thin_maps);
        if (v.accepted) ++accepted[comp.degree_units];
        if (comp.id.front() == 'N')
          check(o, v.reason == ManinReason::PositiveKappa, name + " " + comp.id + ": " + to_string(v.reason));
        ++checked;
      }
      for (int d = 2; d <= 12; ++d)
        check(o, accepted[d] == 1, name + ": " + std::to_string(accepted[d]) + " accepted in degree " + std::to_string(d));
    } else if (name.rfind("delPezzo_", 0) == 0) {
      for (const auto& comp : e.components) {
        auto v = classify_component(comp, base, e.thin_maps);
        check(o, v.reason == ManinReason::HigherA, name + " " + comp.id + ": " + to_string(v.reason));
        ++checked;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " components";
  return o;
}

bool smith_ok(const ZMat& a) {
  auto f = smith_normal_form(a);
  if (!(f.U * a * f.V == f.D)) return false;
  if (abs(determinant(f.U)) != 1 || abs(determinant(f.V)) != 1) return false;
  const std::size_t k = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < f.D.rows(); ++i)
    for (std::size_t j = 0; j < f.D.cols(); ++j)
      if (i != j && f.D(i, j) != 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (f.D(i, i) < 0) return false;
    if (i + 1 < k && f.D(i + 1, i + 1) != 0 && (f.D(i, i) == 0 || f.D(i + 1, i + 1) % f.D(i, i) != 0)) return false;
    if (i + 1 < k && f.D(i, i) == 0 && f.D(i + 1, i + 1) != 0) return false;
  }
  return true;
}

// Randomized invariants: cone duality, face dimensions, Smith form, scaling of a.
Outcome property_suites() {
  Outcome o;
  std::mt19937_64 rng(20260101);
  for (int t = 0; t < 200; ++t) {
    std::vector<QVec> raw;
    Cone c = testgen::random_cone(rng, 6, &raw);
    Cone d = c.dual();
    check(o, d.dual() == c, "duality is not an involution on trial " + std::to_string(t));
    for (const auto& g : raw) check(o, c.contains(g), "cone misses an input generator");
    if (c.is_full_dimensional() && d.is_full_dimensional()) {
      QVec v = testgen::random_point_in(rng, c, 0.4);
      Face face = minimal_face(c, v);
      std::vector<ZVec> tight;
      for (const auto& f : c.facets())
        if (dot(v, f) == 0) tight.push_back(f);
      check(o, face.dim + rank(tight, c.ambient_dim()) == c.ambient_dim(),
            "face dimension identity fails on trial " + std::to_string(t));
    }
  }
  std::uniform_int_distribution<int> size(1, 5), entry(-1000, 1000);
  for (int t = 0; t < 200; ++t) {
    ZMat a(size(rng), size(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    check(o, smith_ok(a), "Smith form identities fail on trial " + std::to_string(t));
  }
  std::uniform_int_distribution<int> num(1, 20), den(1, 9);
  int scaled_entries = 0;
  for (const auto& e : catalog::load_all()) {
    if (!e.variety) continue;
    for (const auto& pc : e.polarizations) {
      auto a = fujita_a(*e.variety, pc.polarization);
      if (!a) continue;
      int b = b_invariant(*e.variety, pc.polarization).b;
      for (int k = 0; k < 5; ++k) {
        Rat s(num(rng), den(rng));
        Polarization ls{scaled(pc.polarization.cls, s)};
        auto as = fujita_a(*e.variety, ls);
        check(o, as && *as == *a / s, e.name + ": a(sL) != a(L)/s for s = " + to_string(s));
        check(o, b_invariant(*e.variety, ls).b == b, e.name + ": b changes under scaling");
      }
      ++scaled_entries;
    }
  }
  if (o.pass)
    o.detail = "200 cones (dim <= 6), 200 Smith forms (|entries| <= 1000), scaling on " +
               std::to_string(scaled_entries) + " polarized entries";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden invariants", golden_values},
      {"b cross-check", b_cross_check},
      {"alpha vs lattice-point oracle", alpha_vs_oracle},
      {"Hilb2 component counts", hilb2_counts},
      {"ratio diagnostics", ratio_diagnostics},
      {"Manin-type upper bound", manin_type_bound},
      {"classifier goldens", classifier_goldens},
      {"property suites", property_suites},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << o.detail << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
