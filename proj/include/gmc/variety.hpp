#pragma once

// Polarized varieties presented by cone data, and the invariants a, b, F, r, alpha.
//
// Divisor classes and curve classes live in mutually dual copies of Q^rho;
// intersection is the dot product. Eff^1 is given by generators, and the nef
// cone of curves is its dual.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmc/cones.hpp"
#include "gmc/error.hpp"
#include "gmc/exactalg.hpp"
#include "gmc/polytope.hpp"

namespace gmc {

struct VarietyData {
  std::string name;
  int dim = 0;
  int rho = 0;
  std::vector<QVec> eff_generators;
  QVec canonical_class;
  std::optional<std::vector<QVec>> nef_curve_generators;  // validation only
};

struct Polarization {
  QVec cls;

  static Polarization anticanonical(const VarietyData& x) { return {scaled(x.canonical_class, Rat(-1))}; }
};

/// a(X, L); std::nullopt stands for +infinity (L not big).
using AValue = std::optional<Rat>;

inline std::string to_string(const AValue& a) { return a ? to_string(*a) : std::string("infinity"); }

/// Validated variety with its effective divisor cone and nef curve cone.
class Variety {
 public:
  explicit Variety(VarietyData data)
      : data_(std::move(data)),
        eff_(build_eff(data_)),
        nef_curves_(eff_.dual()) {
    validate();
  }

  const VarietyData& data() const noexcept { return data_; }
  const std::string& name() const noexcept { return data_.name; }
  int dim() const noexcept { return data_.dim; }
  int rho() const noexcept { return data_.rho; }
  const QVec& canonical_class() const noexcept { return data_.canonical_class; }
  const Cone& eff() const noexcept { return eff_; }
  const Cone& nef_curves() const noexcept { return nef_curves_; }
  Polarization anticanonical() const { return Polarization::anticanonical(data_); }

 private:
  static Cone build_eff(const VarietyData& d) {
    if (d.rho <= 0) fail(ErrorCode::BadInput, d.name + ": picard rank must be positive");
    if (d.dim <= 0) fail(ErrorCode::BadInput, d.name + ": dimension must be positive");
    for (const auto& g : d.eff_generators)
      if (g.size() != static_cast<std::size_t>(d.rho))
        fail(ErrorCode::BadInput, d.name + ": effective generator has wrong length");
    return Cone::from_generators(static_cast<std::size_t>(d.rho), d.eff_generators);
  }

  void validate() const {
    const auto n = static_cast<std::size_t>(data_.rho);
    if (data_.canonical_class.size() != n) fail(ErrorCode::BadInput, data_.name + ": canonical class has wrong length");
    if (!eff_.is_full_dimensional()) fail(ErrorCode::BadInput, data_.name + ": effective cone is not full-dimensional");
    bool uniruled = false;
    for (const auto& c : nef_curves_.generators())
      if (dot(data_.canonical_class, c) < 0) uniruled = true;
    if (!uniruled) fail(ErrorCode::BadInput, data_.name + ": -K is not positive on any nef curve (not uniruled)");
    if (data_.nef_curve_generators) {
      for (const auto& g : *data_.nef_curve_generators)
        if (g.size() != n) fail(ErrorCode::BadInput, data_.name + ": nef curve generator has wrong length");
      if (!(Cone::from_generators(n, *data_.nef_curve_generators) == nef_curves_))
        fail(ErrorCode::BadInput, data_.name + ": supplied nef curve generators disagree with the dual of Eff");
    }
  }

  VarietyData data_;
  Cone eff_;
  Cone nef_curves_;
};

namespace detail {
inline void check_length(const Variety& x, const QVec& v, const char* what) {
  if (v.size() != static_cast<std::size_t>(x.rho()))
    fail(ErrorCode::BadInput, std::string(what) + ": expected a vector of length " + std::to_string(x.rho()));
}
}  // namespace detail

/// L is big iff it is interior to Eff^1, i.e. positive on every nef curve ray.
inline bool is_big(const Variety& x, const Polarization& l) {
  detail::check_length(x, l.cls, "polarization");
  for (const auto& c : x.nef_curves().generators())
    if (dot(l.cls, c) <= 0) return false;
  return true;
}

/// Least t with tL + K in Eff^1; infinite when L is not big.
inline AValue fujita_a(const Variety& x, const Polarization& l) {
  if (!is_big(x, l)) return std::nullopt;
  std::optional<Rat> best;
  for (const auto& c : x.nef_curves().generators()) {
    Rat t = -dot(x.canonical_class(), c) / dot(l.cls, c);
    if (!best || t > *best) best = t;
  }
  return best;
}

inline Rat require_finite_a(const Variety& x, const Polarization& l) {
  auto a = fujita_a(x, l);
  if (!a) fail(ErrorCode::NotBig, x.name() + ": polarization is not big, a(X,L) is infinite");
  return *a;
}

/// The divisor class a(X,L) L + K_X.
inline QVec adjoint_class(const Variety& x, const Polarization& l) {
  Rat a = require_finite_a(x, l);
  return add(scaled(l.cls, a), x.canonical_class());
}

/// F(X,L): the face of the nef curve cone annihilated by aL + K.
inline Cone face_F(const Variety& x, const Polarization& l) {
  return face_from_functional(x.nef_curves(), adjoint_class(x, l));
}

struct BInvariant {
  int b = 0;           // codimension of the minimal face of Eff^1 containing aL + K
  int face_dim = 0;    // dim F(X,L), computed independently
  bool agrees = false;
};

inline BInvariant b_invariant(const Variety& x, const Polarization& l) {
  QVec adj = adjoint_class(x, l);
  Face face = minimal_face(x.eff(), adj);
  BInvariant out;
  out.b = static_cast<int>(face.codim());
  out.face_dim = static_cast<int>(face_from_functional(x.nef_curves(), adj).dimension());
  out.agrees = out.b == out.face_dim;
  return out;
}

/// Smallest positive value of L on integral curve classes.
inline Rat rationality_index(const Variety& x, const Polarization& l) {
  detail::check_length(x, l.cls, "polarization");
  if (is_zero(l.cls)) fail(ErrorCode::AllZero, "rationality_index: L is zero");
  return gcd_of_rationals(l.cls);
}

/// Integral basis of the lattice Λ_V ∩ L^⊥, where V is the span of F.
inline std::vector<ZVec> degree_zero_lattice(const std::vector<ZVec>& face_lattice, const QVec& l) {
  const std::size_t b = face_lattice.size();
  if (b <= 1) return {};
  QMat row(1, b);
  for (std::size_t j = 0; j < b; ++j) row(0, j) = dot(l, face_lattice[j]);
  std::vector<ZVec> ker;
  for (const auto& k : kernel_basis(row)) ker.push_back(primitive(k));
  std::vector<ZVec> out;
  for (const auto& y : saturate(ker)) {
    ZVec v(l.size(), Int(0));
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += y[j] * face_lattice[j][i];
    out.push_back(std::move(v));
  }
  return out;
}

/// Slice of F(X,L) at L-degree r(X,L), in coordinates of a basis of Λ_V ∩ L^⊥.
inline VertexPolytope alpha_polytope(const Variety& x, const Polarization& l) {
  Cone f = face_F(x, l);
  if (f.is_origin()) fail(ErrorCode::EmptyFace, x.name() + ": F(X,L) is the origin");
  Rat r = rationality_index(x, l);
  std::vector<QVec> slice;
  for (const auto& g : f.generators()) slice.push_back(scaled(to_q(g), r / dot(l.cls, g)));
  auto lattice_v = saturate(f.generators());
  auto lattice_q = degree_zero_lattice(lattice_v, l.cls);
  std::vector<QVec> basis;
  for (const auto& q : lattice_q) basis.push_back(to_q(q));
  std::vector<QVec> coords;
  for (const auto& p : slice) {
    auto c = coordinates_in(basis, sub(p, slice.front()));
    if (!c) fail(ErrorCode::BadInput, "slice point outside its own lattice span");
    coords.push_back(std::move(*c));
  }
  return VertexPolytope(basis.size(), std::move(coords));
}

/// Lattice-normalized volume of F(X,L) ∩ {L = r(X,L)}.
inline Rat alpha_constant(const Variety& x, const Polarization& l) { return alpha_polytope(x, l).volume(); }

/// -K.alpha + dim X, the expected dimension of Mor(P^1, X, alpha).
inline std::int64_t expected_dim_mor(const Variety& x, const QVec& curve) {
  detail::check_length(x, curve, "curve class");
  Rat d = -dot(x.canonical_class(), curve) + x.dim();
  if (!is_integer(d)) fail(ErrorCode::BadInput, "expected dimension is not an integer");
  return numerator(d).convert_to<std::int64_t>();
}

/// Expected dimension of unpointed stable maps: three less.
inline std::int64_t expected_dim_stable(const Variety& x, const QVec& curve) { return expected_dim_mor(x, curve) - 3; }

struct InvariantReport {
  AValue a;
  int b = 0;
  int face_dim = 0;
  bool b_agrees = false;
  Rat r;
  Cone face_F = Cone::origin(1);
  Rat alpha;
  bool big = false;
  // L lies in the closed cone Eff^1. This is the only nefness-related check
  // the cone data supports.
  bool nef_checked = false;
};

inline InvariantReport compute_invariants(const Variety& x, const Polarization& l) {
  InvariantReport rep;
  rep.big = is_big(x, l);
  rep.nef_checked = x.eff().contains(l.cls);
  rep.a = fujita_a(x, l);
  rep.r = rationality_index(x, l);
  if (!rep.a) return rep;
  auto b = b_invariant(x, l);
  rep.b = b.b;
  rep.face_dim = b.face_dim;
  rep.b_agrees = b.agrees;
  rep.face_F = face_F(x, l);
  rep.alpha = alpha_constant(x, l);
  return rep;
}

}  // namespace gmc
