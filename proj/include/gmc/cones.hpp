#pragma once

// Rational polyhedral cones in generator form, with the dual (facet) form
// computed by the double description method.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <vector>

#include "gmc/error.hpp"
#include "gmc/exactalg.hpp"

namespace gmc {

namespace detail {

inline bool lex_less(const ZVec& a, const ZVec& b) { return a < b; }

// Canonical generating set: a lineality basis in primitive RREF form (both
// signs emitted) plus rays projected orthogonally to the lineality space.
inline std::vector<ZVec> canonical_generators(std::vector<ZVec> rays, std::vector<ZVec> lineality,
                                              std::size_t dim) {
  std::vector<ZVec> out;
  std::vector<QVec> lin_basis;
  if (!lineality.empty()) {
    QMat m = to_q(ZMat::from_rows(lineality, dim));
    auto pivots = rref(m);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      ZVec l = primitive(m.row(i));
      lin_basis.push_back(to_q(l));
      out.push_back(l);
      out.push_back(scaled(l, Int(-1)));
    }
  }
  if (!lin_basis.empty()) {
    // Orthogonal projection away from the lineality space.
    QMat gram(lin_basis.size(), lin_basis.size());
    for (std::size_t i = 0; i < lin_basis.size(); ++i)
      for (std::size_t j = 0; j < lin_basis.size(); ++j) gram(i, j) = dot(lin_basis[i], lin_basis[j]);
    QMat ginv = inverse(gram);
    for (auto& r : rays) {
      QVec q = to_q(r);
      QVec proj(lin_basis.size());
      for (std::size_t i = 0; i < lin_basis.size(); ++i) proj[i] = dot(lin_basis[i], q);
      QVec coef = ginv * proj;
      for (std::size_t i = 0; i < lin_basis.size(); ++i) q = sub(q, scaled(lin_basis[i], coef[i]));
      r = primitive(q);
    }
  }
  for (auto& r : rays)
    if (!is_zero(r)) out.push_back(std::move(r));
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Generators of {x : a.x >= 0 for every a in constraints} (double description).
inline std::vector<ZVec> solve_inequalities(const std::vector<ZVec>& constraints, std::size_t dim) {
  struct Ray {
    ZVec v;
    std::vector<bool> zero;  // zero[k]: constraint k is tight
  };
  std::vector<ZVec> lineality;
  for (std::size_t i = 0; i < dim; ++i) {
    ZVec e(dim, Int(0));
    e[i] = 1;
    lineality.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const ZVec& a = constraints[k];
    if (a.size() != dim) fail(ErrorCode::BadInput, "constraint dimension mismatch");
    if (is_zero(a)) {
      for (auto& r : rays) r.zero.push_back(true);
      continue;
    }

    std::size_t li = lineality.size();
    for (std::size_t i = 0; i < lineality.size(); ++i)
      if (dot(a, lineality[i]) != 0) {
        li = i;
        break;
      }

    if (li != lineality.size()) {
      ZVec l = lineality[li];
      Int s = dot(a, l);
      if (s < 0) {
        l = scaled(l, Int(-1));
        s = -s;
      }
      std::vector<ZVec> next_lin;
      for (std::size_t i = 0; i < lineality.size(); ++i) {
        if (i == li) continue;
        Int t = dot(a, lineality[i]);
        next_lin.push_back(primitive(sub(scaled(lineality[i], s), scaled(l, t))));
      }
      lineality = std::move(next_lin);
      for (auto& r : rays) {
        Int t = dot(a, r.v);
        if (t != 0) r.v = primitive(sub(scaled(r.v, s), scaled(l, t)));
        r.zero.push_back(true);
      }
      Ray nr{l, std::vector<bool>(k, true)};
      nr.zero.push_back(false);
      rays.push_back(std::move(nr));
      continue;
    }

    std::vector<Ray> pos, neg, next;
    std::vector<Int> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0)
        pos.push_back(rays[i]);
      else if (val[i] < 0)
        neg.push_back(rays[i]);
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] < 0) continue;
      Ray r = rays[i];
      r.zero.push_back(val[i] == 0);
      next.push_back(std::move(r));
    }

    if (!neg.empty() && !pos.empty()) {
      const std::size_t need = dim >= lineality.size() + 2 ? dim - lineality.size() - 2 : 0;
      for (const auto& p : pos)
        for (const auto& n : neg) {
          std::vector<bool> common(k);
          std::size_t count = 0;
          for (std::size_t j = 0; j < k; ++j) {
            common[j] = p.zero[j] && n.zero[j];
            count += common[j];
          }
          if (count < need) continue;
          bool adjacent = true;
          for (const auto& r : rays) {
            if (r.v == p.v || r.v == n.v) continue;
            bool covers = true;
            for (std::size_t j = 0; j < k && covers; ++j)
              if (common[j] && !r.zero[j]) covers = false;
            if (covers) {
              adjacent = false;
              break;
            }
          }
          if (!adjacent) continue;
          Int vp = dot(a, p.v), vn = dot(a, n.v);
          ZVec c = primitive(add(scaled(p.v, Int(-vn)), scaled(n.v, vp)));
          common.push_back(true);
          next.push_back(Ray{std::move(c), std::move(common)});
        }
    }
    rays = std::move(next);
  }

  std::vector<ZVec> ray_vectors;
  for (auto& r : rays) ray_vectors.push_back(std::move(r.v));
  return canonical_generators(std::move(ray_vectors), std::move(lineality), dim);
}

}  // namespace detail

/// A rational polyhedral cone. Generators are canonical primitive integer
/// vectors; facets are the generators of the dual cone (inner normals, with
/// both signs of each equation when the cone is not full-dimensional).
class Cone {
 public:
  /// Smallest cone containing the given vectors; redundant generators are dropped.
  static Cone from_generators(std::size_t dim, const std::vector<QVec>& gens) {
    std::vector<ZVec> z;
    for (const auto& g : gens) {
      if (g.size() != dim) fail(ErrorCode::BadInput, "generator dimension mismatch");
      if (!is_zero(g)) z.push_back(primitive(g));
    }
    return from_integer_generators(dim, z);
  }

  static Cone from_integer_generators(std::size_t dim, const std::vector<ZVec>& gens) {
    if (dim == 0) fail(ErrorCode::BadInput, "cone ambient dimension must be positive");
    std::vector<ZVec> z;
    for (const auto& g : gens) {
      if (g.size() != dim) fail(ErrorCode::BadInput, "generator dimension mismatch");
      if (!is_zero(g)) z.push_back(primitive(g));
    }
    auto facets = detail::solve_inequalities(z, dim);
    auto extreme = detail::solve_inequalities(facets, dim);
    return Cone(dim, std::move(extreme), std::move(facets));
  }

  /// {x : n.x >= 0 for every normal n}.
  static Cone from_inequalities(std::size_t dim, const std::vector<QVec>& normals) {
    if (dim == 0) fail(ErrorCode::BadInput, "cone ambient dimension must be positive");
    std::vector<ZVec> z;
    for (const auto& n : normals) {
      if (n.size() != dim) fail(ErrorCode::BadInput, "normal dimension mismatch");
      if (!is_zero(n)) z.push_back(primitive(n));
    }
    auto gens = detail::solve_inequalities(z, dim);
    auto facets = detail::solve_inequalities(gens, dim);
    return Cone(dim, std::move(gens), std::move(facets));
  }

  static Cone origin(std::size_t dim) { return from_integer_generators(dim, {}); }

  static Cone full_space(std::size_t dim) {
    std::vector<ZVec> gens;
    for (std::size_t i = 0; i < dim; ++i) {
      ZVec e(dim, Int(0));
      e[i] = 1;
      gens.push_back(e);
      e[i] = -1;
      gens.push_back(e);
    }
    return from_integer_generators(dim, gens);
  }

  std::size_t ambient_dim() const noexcept { return dim_; }
  const std::vector<ZVec>& generators() const noexcept { return gens_; }
  const std::vector<ZVec>& facets() const noexcept { return facets_; }

  std::vector<QVec> rational_generators() const {
    std::vector<QVec> out;
    for (const auto& g : gens_) out.push_back(to_q(g));
    return out;
  }

  /// Dimension of the linear span.
  std::size_t dimension() const { return rank(gens_, dim_); }
  bool is_full_dimensional() const { return dimension() == dim_; }
  bool is_origin() const noexcept { return gens_.empty(); }

  bool contains(const QVec& v) const {
    if (v.size() != dim_) fail(ErrorCode::BadInput, "membership: dimension mismatch");
    return std::all_of(facets_.begin(), facets_.end(), [&](const ZVec& f) { return dot(v, f) >= 0; });
  }

  /// Dual cone {y : y.x >= 0 for all x in this cone}.
  Cone dual() const { return Cone(dim_, facets_, gens_); }

  friend bool operator==(const Cone& a, const Cone& b) { return a.dim_ == b.dim_ && a.gens_ == b.gens_; }

 private:
  Cone(std::size_t dim, std::vector<ZVec> gens, std::vector<ZVec> facets)
      : dim_(dim), gens_(std::move(gens)), facets_(std::move(facets)) {}

  std::size_t dim_ = 0;
  std::vector<ZVec> gens_;
  std::vector<ZVec> facets_;
};

inline Cone dual(const Cone& c) { return c.dual(); }

/// A face of a cone, described by a basis of its linear span.
struct Face {
  std::shared_ptr<const Cone> parent;
  std::vector<QVec> span_basis;
  std::size_t dim = 0;

  std::size_t codim() const { return parent->ambient_dim() - dim; }
};

/// Smallest face of a full-dimensional cone containing v.
inline Face minimal_face(const Cone& c, const QVec& v) {
  if (v.size() != c.ambient_dim()) fail(ErrorCode::BadInput, "minimal_face: dimension mismatch");
  if (!c.is_full_dimensional()) fail(ErrorCode::NotFullDimensional, "minimal_face needs a full-dimensional cone");
  if (!c.contains(v)) fail(ErrorCode::NotInCone, "minimal_face: vector is not in the cone");
  std::vector<ZVec> tight;
  for (const auto& f : c.facets())
    if (dot(v, f) == 0) tight.push_back(f);
  Face face;
  face.parent = std::make_shared<const Cone>(c);
  face.dim = c.ambient_dim() - rank(tight, c.ambient_dim());
  for (const auto& g : c.generators()) {
    bool on_face = std::all_of(tight.begin(), tight.end(), [&](const ZVec& f) { return dot(g, f) == 0; });
    if (!on_face) continue;
    auto trial = face.span_basis;
    trial.push_back(to_q(g));
    if (rank(trial, c.ambient_dim()) == trial.size()) face.span_basis = std::move(trial);
  }
  return face;
}

/// The face C ∩ ℓ^⊥ for a functional ℓ that is nonnegative on C.
inline Cone face_from_functional(const Cone& c, const QVec& functional) {
  if (functional.size() != c.ambient_dim()) fail(ErrorCode::BadInput, "face_from_functional: dimension mismatch");
  std::vector<ZVec> kept;
  for (const auto& g : c.generators()) {
    Rat p = dot(functional, g);
    if (p < 0) fail(ErrorCode::NotSupporting, "functional is negative on a generator");
    if (p == 0) kept.push_back(g);
  }
  return Cone::from_integer_generators(c.ambient_dim(), kept);
}

}  // namespace gmc
