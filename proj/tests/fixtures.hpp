#pragma once

// Small hand-entered varieties shared by the unit tests.

#include <string>
#include <utility>
#include <vector>

#include "gmc/variety.hpp"

namespace fixture {

using gmc::QVec;
using gmc::Variety;
using gmc::VarietyData;

inline Variety make(std::string name, int dim, std::vector<QVec> eff, QVec k) {
  VarietyData d;
  d.name = std::move(name);
  d.dim = dim;
  d.rho = static_cast<int>(k.size());
  d.eff_generators = std::move(eff);
  d.canonical_class = std::move(k);
  return Variety(std::move(d));
}

inline Variety p2() { return make("P2", 2, {{1}}, {-3}); }
inline Variety p3() { return make("P3", 3, {{1}}, {-4}); }
inline Variety index2() { return make("index2", 3, {{1}}, {-2}); }
inline Variety p1xp1() { return make("P1xP1", 2, {{1, 0}, {0, 1}}, {-2, -2}); }
// Divisor coordinates (H, E); curve coordinates (H.C, E.C).
inline Variety f1() { return make("F1", 2, {{0, 1}, {1, -1}}, {-3, 1}); }
// Basis (H1, H2, delta) with B = 2 delta.
inline Variety hilb2() { return make("hilb2", 4, {{0, 0, 2}, {1, 0, -1}, {0, 1, -1}}, {-2, -2, 0}); }

}  // namespace fixture
