#pragma once

// Lattice points in slices of F(X,L), the counting function N(X,L,q,d), its
// conjectured asymptotic, and the combinatorics of component growth.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gmc/cones.hpp"
#include "gmc/covers.hpp"
#include "gmc/error.hpp"
#include "gmc/exactalg.hpp"
#include "gmc/variety.hpp"

namespace gmc {

// ---------------------------------------------------------------------------
// Slice enumeration

/// Integral classes of F(X,L) at a fixed L-degree.
///
/// Points are written in a basis z of the saturated lattice of span F chosen
/// so that L = g * z_0 (up to r). For every prefix length the projection of F
/// is precomputed, which turns each coordinate into an interval given the
/// earlier ones; the last coordinate is counted without being visited.
class SliceCounter {
 public:
  SliceCounter(const Variety& x, const Polarization& l) {
    Cone f = face_F(x, l);
    if (f.is_origin()) fail(ErrorCode::EmptyFace, x.name() + ": F(X,L) is the origin");
    rho_ = static_cast<std::size_t>(x.rho());
    Rat r = rationality_index(x, l);
    auto lattice = saturate(f.generators());
    b_ = lattice.size();

    std::vector<QVec> basis;
    for (const auto& v : lattice) basis.push_back(to_q(v));
    ZMat ell(1, b_);
    for (std::size_t j = 0; j < b_; ++j) {
      Rat v = dot(l.cls, lattice[j]) / r;
      if (!is_integer(v)) fail(ErrorCode::BadInput, "L-degree of a lattice vector is not a multiple of r");
      ell(0, j) = numerator(v);
    }
    auto snf = smith_normal_form(ell);
    // ell * V = (U^{-1} g, 0, ..., 0) and U = +-1.
    step_ = snf.D(0, 0) * snf.U(0, 0);
    ZMat vinv = inverse_unimodular(snf.V);

    // Map from z coordinates back to curve classes: lattice * V.
    to_class_ = ZMat(rho_, b_);
    for (std::size_t i = 0; i < rho_; ++i)
      for (std::size_t k = 0; k < b_; ++k) {
        Int s = 0;
        for (std::size_t j = 0; j < b_; ++j) s += lattice[j][i] * snf.V(j, k);
        to_class_(i, k) = s;
      }

    std::vector<ZVec> gens_z;
    for (const auto& g : f.generators()) {
      auto c = coordinates_in(basis, to_q(g));
      if (!c) fail(ErrorCode::BadInput, "face generator outside its saturated lattice");
      gens_z.push_back(vinv * to_z(*c));
    }

    offsets_.assign(b_ + 1, 0);
    for (std::size_t depth = 1; depth < b_; ++depth) {
      std::vector<ZVec> proj;
      for (const auto& g : gens_z) proj.emplace_back(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(depth + 1));
      Cone p = Cone::from_integer_generators(depth + 1, proj);
      offsets_[depth] = coef_.size();
      for (const auto& n : p.facets()) {
        if (n[depth] == 0) continue;  // implied by the shorter prefixes
        std::vector<std::int64_t> row(b_, 0);
        for (std::size_t i = 0; i <= depth; ++i) row[i] = to_small(n[i]);
        coef_.push_back(std::move(row));
      }
    }
    offsets_[b_] = coef_.size();
    for (std::size_t depth = 1; depth < b_; ++depth)
      if (offsets_[depth] == offsets_[depth + 1]) fail(ErrorCode::BadInput, "unbounded slice direction");
  }

  std::size_t b() const noexcept { return b_; }

  std::uint64_t count(std::int64_t level) const {
    std::uint64_t total = 0;
    walk<false>(level, total, nullptr);
    return total;
  }

  /// Classes in lexicographic order.
  std::vector<ZVec> enumerate(std::int64_t level) const {
    std::uint64_t total = 0;
    std::vector<ZVec> out;
    walk<true>(level, total, &out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static std::int64_t to_small(const Int& v) {
    if (abs(v) > Int(1) << 40) fail(ErrorCode::BadInput, "slice coordinates too large for enumeration");
    return v.convert_to<std::int64_t>();
  }

  static std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  // Interval for coordinate `depth` given the partial sums of earlier coordinates.
  bool bounds(std::size_t depth, const std::int64_t* sums, std::int64_t& lo, std::int64_t& hi) const {
    lo = std::numeric_limits<std::int64_t>::min();
    hi = std::numeric_limits<std::int64_t>::max();
    for (std::size_t k = offsets_[depth]; k < offsets_[depth + 1]; ++k) {
      const std::int64_t c = coef_[k][depth];
      const std::int64_t s = sums[k];
      // c z + s >= 0
      if (c == 1) {
        lo = std::max(lo, -s);
      } else if (c == -1) {
        hi = std::min(hi, s);
      } else if (c > 0) {
        lo = std::max(lo, -floor_div64(s, c));
      } else {
        hi = std::min(hi, floor_div64(s, -c));
      }
      if (lo > hi) return false;
    }
    if (lo == std::numeric_limits<std::int64_t>::min() || hi == std::numeric_limits<std::int64_t>::max())
      fail(ErrorCode::BadInput, "unbounded slice coordinate");
    return true;
  }

  template <bool Collect>
  void walk(std::int64_t level, std::uint64_t& total, std::vector<ZVec>* out) const {
    if (level <= 0) return;
    const std::int64_t g = step_.convert_to<std::int64_t>();
    if (level % g != 0) return;
    const std::int64_t z0 = level / g;
    std::vector<std::int64_t> z(b_, 0);
    z[0] = z0;
    if (b_ == 1) {
      ++total;
      if constexpr (Collect) out->push_back(to_classes(z));
      return;
    }
    const std::size_t nf = coef_.size();
    // sums[d] holds partial sums for every facet, valid for depths >= d.
    std::vector<std::vector<std::int64_t>> sums(b_, std::vector<std::int64_t>(nf, 0));
    for (std::size_t k = 0; k < nf; ++k) sums[1][k] = coef_[k][0] * z0;
    descend<Collect>(1, z, sums, total, out);
  }

  template <bool Collect>
  void descend(std::size_t depth, std::vector<std::int64_t>& z, std::vector<std::vector<std::int64_t>>& sums,
               std::uint64_t& total, std::vector<ZVec>* out) const {
    std::int64_t lo, hi;
    if (!bounds(depth, sums[depth].data(), lo, hi)) return;
    if (depth + 1 == b_) {
      if constexpr (Collect) {
        for (std::int64_t v = lo; v <= hi; ++v) {
          z[depth] = v;
          out->push_back(to_classes(z));
        }
      }
      total += static_cast<std::uint64_t>(hi - lo + 1);
      return;
    }
    const std::size_t from = offsets_[depth + 1];
    const std::size_t to = coef_.size();
    auto& next = sums[depth + 1];
    const auto& cur = sums[depth];
    for (std::size_t k = from; k < to; ++k) next[k] = cur[k] + coef_[k][depth] * lo;
    for (std::int64_t v = lo; v <= hi; ++v) {
      z[depth] = v;
      descend<Collect>(depth + 1, z, sums, total, out);
      for (std::size_t k = from; k < to; ++k) next[k] += coef_[k][depth];
    }
  }

  ZVec to_classes(const std::vector<std::int64_t>& z) const {
    ZVec out(rho_, Int(0));
    for (std::size_t i = 0; i < rho_; ++i)
      for (std::size_t k = 0; k < b_; ++k) out[i] += to_class_(i, k) * z[k];
    return out;
  }

  std::size_t rho_ = 0;
  std::size_t b_ = 0;
  Int step_ = 1;
  ZMat to_class_;
  std::vector<std::vector<std::int64_t>> coef_;
  std::vector<std::size_t> offsets_;
};

/// Integral classes of F(X,L) with L-degree level * r(X,L), lexicographically.
inline std::vector<QVec> enumerate_nef_classes(const Variety& x, const Polarization& l, std::int64_t level) {
  std::vector<QVec> out;
  for (const auto& v : SliceCounter(x, l).enumerate(level)) out.push_back(to_q(v));
  return out;
}

inline std::uint64_t count_nef_classes(const Variety& x, const Polarization& l, std::int64_t level) {
  return SliceCounter(x, l).count(level);
}

// ---------------------------------------------------------------------------
// Ehrhart oracle

struct OracleResult {
  Rat estimate;
  int b = 0;
  std::int64_t kmin = 0;
  std::int64_t kmax = 0;
  std::vector<std::pair<std::int64_t, std::uint64_t>> counts;
};

/// Least-squares polynomial fit of degree b-1 to the slice counts over the
/// upper half of [1, kmax]; the top coefficient estimates alpha.
inline OracleResult ehrhart_leading_oracle(const Variety& x, const Polarization& l, std::int64_t kmax) {
  OracleResult res;
  res.b = b_invariant(x, l).b;
  res.kmax = kmax;
  res.kmin = (kmax + 1) / 2;
  if (res.b == 1) {
    res.estimate = 1;
    return res;
  }
  const std::int64_t levels = kmax - res.kmin + 1;
  if (kmax < 20 || levels < 2 * res.b)
    fail(ErrorCode::InsufficientData, "kmax " + std::to_string(kmax) + " too small for an oracle window with b = " +
                                          std::to_string(res.b));
  SliceCounter counter(x, l);
  for (std::int64_t k = res.kmin; k <= kmax; ++k) res.counts.emplace_back(k, counter.count(k));

  const std::size_t deg = static_cast<std::size_t>(res.b);  // unknowns c_0..c_{b-1}
  const Rat center = Rat(res.kmin + kmax, 2);
  QMat normal(deg, deg);
  QVec rhs(deg, Rat(0));
  for (const auto& [k, c] : res.counts) {
    Rat t = Rat(k) - center;
    QVec powers(deg);
    powers[0] = 1;
    for (std::size_t j = 1; j < deg; ++j) powers[j] = powers[j - 1] * t;
    for (std::size_t i = 0; i < deg; ++i) {
      rhs[i] += powers[i] * Rat(c);
      for (std::size_t j = 0; j < deg; ++j) normal(i, j) += powers[i] * powers[j];
    }
  }
  res.estimate = (inverse(normal) * rhs)[deg - 1];
  return res;
}

// ---------------------------------------------------------------------------
// Component catalogs and the counting function

struct CatalogItem {
  ComponentRecord component;
  ManinVerdict verdict;
};

/// Components of Mor(P^1, X) sorted by (degree, id), with classifier verdicts.
class ComponentCatalog {
 public:
  ComponentCatalog() = default;

  static ComponentCatalog classify(const std::vector<ComponentRecord>& comps, const BaseInvariants& base,
                                   const std::vector<ThinMapRecord>& maps) {
    ComponentCatalog cat;
    for (const auto& c : comps) {
      if (c.degree_units <= 0) fail(ErrorCode::BadInput, "component " + c.id + ": degree must be positive");
      cat.items_.push_back({c, classify_component(c, base, maps)});
    }
    cat.sort();
    return cat;
  }

  /// Every component is taken as accepted.
  static ComponentCatalog accepted(const std::vector<ComponentRecord>& comps) {
    ComponentCatalog cat;
    for (const auto& c : comps) {
      if (c.degree_units <= 0) fail(ErrorCode::BadInput, "component " + c.id + ": degree must be positive");
      cat.items_.push_back({c, {true, ManinReason::Accepted, {}}});
    }
    cat.sort();
    return cat;
  }

  const std::vector<CatalogItem>& items() const noexcept { return items_; }

 private:
  void sort() {
    std::sort(items_.begin(), items_.end(), [](const CatalogItem& a, const CatalogItem& b) {
      return std::tie(a.component.degree_units, a.component.id) < std::tie(b.component.degree_units, b.component.id);
    });
  }

  std::vector<CatalogItem> items_;
};

/// Accepted components aggregated by degree and dimension.
struct LevelTable {
  struct Row {
    int i = 0;
    std::int64_t mor_dim = 0;
    Int count = 0;
  };
  std::vector<Row> rows;  // sorted by (i, mor_dim)
  bool includes_boundary_classes = false;

  static LevelTable from(const ComponentCatalog& cat) {
    std::map<std::pair<int, std::int64_t>, Int> agg;
    for (const auto& it : cat.items())
      if (it.verdict.accepted) agg[{it.component.degree_units, it.component.mor_dim}] += 1;
    LevelTable t;
    for (const auto& [key, n] : agg) t.rows.push_back({key.first, key.second, n});
    return t;
  }
};

struct LevelContribution {
  int i = 0;
  Int classes = 0;
  Int contribution = 0;
};

inline Int int_pow(const Int& base, std::int64_t e) {
  if (e < 0) fail(ErrorCode::BadInput, "negative exponent in an integer power");
  return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

inline std::vector<LevelContribution> per_level(const LevelTable& t, std::int64_t q, std::int64_t d) {
  if (q < 2) fail(ErrorCode::BadInput, "q must be at least 2");
  std::vector<LevelContribution> out;
  for (const auto& row : t.rows) {
    if (row.i > d) break;
    if (out.empty() || out.back().i != row.i) out.push_back({row.i, 0, 0});
    out.back().classes += row.count;
    out.back().contribution += row.count * int_pow(q, row.mor_dim);
  }
  return out;
}

/// N(X, L, q, d): sum of q^{dim W} over accepted components of degree <= d.
inline Int counting_N(const LevelTable& t, std::int64_t q, std::int64_t d) {
  Int total = 0;
  for (const auto& lc : per_level(t, q, d)) total += lc.contribution;
  return total;
}

inline Int counting_N(const ComponentCatalog& cat, std::int64_t q, std::int64_t d) {
  return counting_N(LevelTable::from(cat), q, d);
}

/// One component per integral class of F(X,L) at each level 1..dmax, of
/// expected dimension. On F the expected dimension is a*r*i + dim X.
inline LevelTable strong_manin_model(const Variety& x, const Polarization& l, int dmax) {
  Rat a = require_finite_a(x, l);
  Rat r = rationality_index(x, l);
  SliceCounter counter(x, l);
  LevelTable t;
  t.includes_boundary_classes = true;
  for (int i = 1; i <= dmax; ++i) {
    Rat dim = a * r * i + x.dim();
    if (!is_integer(dim)) fail(ErrorCode::NonIntegralExponent, "expected dimension a*r*i + dim X is not integral");
    std::uint64_t n = counter.count(i);
    if (n > 0) t.rows.push_back({i, numerator(dim).convert_to<std::int64_t>(), Int(n)});
  }
  return t;
}

/// Explicit version of the model for small ranges.
inline std::vector<ComponentRecord> strong_manin_components(const Variety& x, const Polarization& l, int dmax) {
  SliceCounter counter(x, l);
  std::vector<ComponentRecord> out;
  for (int i = 1; i <= dmax; ++i) {
    int k = 0;
    for (const auto& c : counter.enumerate(i)) {
      QVec cls = to_q(c);
      out.push_back({"M" + std::to_string(i) + "_" + std::to_string(k++), cls, i, expected_dim_mor(x, cls), {}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Predicted asymptotic

struct AsymptoticParams {
  int n = 0;
  Rat a;
  Rat r;
  int b = 1;
  Rat alpha;

  static AsymptoticParams of(const Variety& x, const Polarization& l) {
    return {x.dim(), require_finite_a(x, l), rationality_index(x, l), b_invariant(x, l).b, alpha_constant(x, l)};
  }
};

inline Rat rat_pow(const Rat& base, std::int64_t e) {
  Rat out = 1;
  Rat b = e >= 0 ? base : Rat(1) / base;
  for (std::int64_t k = 0; k < (e >= 0 ? e : -e); ++k) out *= b;
  return out;
}

/// q^n alpha / (1 - q^{-ar}) * q^{d a r} * d^{b-1}.
inline Rat predicted_N(const AsymptoticParams& p, std::int64_t q, std::int64_t d) {
  if (q < 2) fail(ErrorCode::BadInput, "q must be at least 2");
  Rat ar = p.a * p.r;
  if (!is_integer(ar)) fail(ErrorCode::NonIntegralExponent, "a*r = " + to_string(ar) + " is not an integer");
  const std::int64_t e = numerator(ar).convert_to<std::int64_t>();
  if (e <= 0) fail(ErrorCode::DegenerateParams, "a*r must be positive");
  Rat qq(q);
  Rat lead = rat_pow(qq, p.n) * p.alpha / (Rat(1) - rat_pow(qq, -e));
  return lead * rat_pow(qq, d * e) * rat_pow(Rat(d), p.b - 1);
}

inline Rat ratio_diagnostic(const Int& n, const Rat& predicted) {
  if (predicted == 0) fail(ErrorCode::DegenerateParams, "predicted count is zero");
  return Rat(n) / predicted;
}

inline Rat ratio_diagnostic(const LevelTable& t, const AsymptoticParams& p, std::int64_t q, std::int64_t d) {
  return ratio_diagnostic(counting_N(t, q, d), predicted_N(p, q, d));
}

/// N <= C d q^{d(ar + eps) + n}, compared exactly after raising to the
/// denominator of eps. Needs a*r integral.
inline bool manin_type_bound_holds(const Int& n_count, const AsymptoticParams& p, std::int64_t q, std::int64_t d,
                                   const Rat& eps, const Int& c) {
  Rat ar = p.a * p.r;
  if (!is_integer(ar)) fail(ErrorCode::NonIntegralExponent, "a*r is not an integer");
  const Int s = denominator(eps);
  const unsigned su = s.convert_to<unsigned>();
  const std::int64_t exponent =
      (s * (d * numerator(ar) + p.n) + numerator(eps) * d).convert_to<std::int64_t>();
  Int lhs = boost::multiprecision::pow(n_count, su);
  Int rhs = boost::multiprecision::pow(Int(c * d), su) * int_pow(q, exponent);
  return lhs <= rhs;
}

// ---------------------------------------------------------------------------
// Component growth combinatorics

/// Multisets over the labelled generators with degree sum exactly d.
inline Int multiset_count(const std::vector<int>& degrees, int d) {
  if (d < 0) return 0;
  for (int g : degrees)
    if (g <= 0) fail(ErrorCode::BadInput, "generator degrees must be positive");
  std::vector<Int> ways(static_cast<std::size_t>(d) + 1, Int(0));
  ways[0] = 1;
  for (int g : degrees)
    for (int s = g; s <= d; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - g)];
  return ways[static_cast<std::size_t>(d)];
}

/// Free rank of Z^s / (row lattice of the relations).
inline int lambda_quotient_rank(int num_generators, const ZMat& relations) {
  if (num_generators < 0) fail(ErrorCode::BadInput, "negative generator count");
  if (relations.rows() == 0) return num_generators;
  if (relations.cols() != static_cast<std::size_t>(num_generators))
    fail(ErrorCode::BadInput, "relation matrix has " + std::to_string(relations.cols()) + " columns, expected " +
                                  std::to_string(num_generators));
  if (num_generators == 0) return 0;
  auto snf = smith_normal_form(relations);
  int nonzero = 0;
  for (std::size_t i = 0; i < std::min(snf.D.rows(), snf.D.cols()); ++i)
    if (snf.D(i, i) != 0) ++nonzero;
  return num_generators - nonzero;
}

/// Components of class m F1 + n F2 on Hilb^2(P1 x P1).
inline Int hilb2_component_count(int m, int n) {
  if (m < 0 || n < 0) fail(ErrorCode::BadInput, "m and n must be nonnegative");
  Int cells = Int(m + 1) * (n + 1);
  return (cells + 1) / 2;
}

/// Orbits of {(a,b,c,d) >= 0 : a+c = m, b+d = n} under (a,b,c,d) -> (c,d,a,b).
inline Int hilb2_orbit_count(int m, int n) {
  if (m < 0 || n < 0) fail(ErrorCode::BadInput, "m and n must be nonnegative");
  std::set<std::pair<int, int>> reps;
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= n; ++b) reps.insert(std::min(std::pair{a, b}, std::pair{m - a, n - b}));
  return Int(reps.size());
}

}  // namespace gmc
