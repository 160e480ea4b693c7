#pragma once

// Thin maps f: Y -> X recorded by their numerical data, and the component
// classifier built on top of them.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gmc/cones.hpp"
#include "gmc/error.hpp"
#include "gmc/exactalg.hpp"
#include "gmc/variety.hpp"

namespace gmc {

/// The pair (a, b) compared lexicographically.
struct ABPair {
  Rat a;
  int b = 0;

  friend bool operator<(const ABPair& x, const ABPair& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); }
  friend bool operator==(const ABPair& x, const ABPair& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator>(const ABPair& x, const ABPair& y) { return y < x; }
  friend bool operator>=(const ABPair& x, const ABPair& y) { return !(x < y); }
};

struct ThinMapRecord {
  std::string id;
  bool dominant = false;
  Rat a_value;
  int b_value = 1;
  int kappa = 0;
  std::optional<ZMat> pushforward;                       // N_1(Y) -> N_1(X), rho(X) rows
  std::optional<std::vector<QVec>> face_Y_generators;    // F(Y, f*L) in Y's curve coordinates
  std::optional<bool> face_contracting_override;
  // Used with the override when no pushforward is stored.
  std::optional<int> relative_dim;

  ABPair ab() const { return {a_value, b_value}; }

  void validate() const {
    if (id.empty()) fail(ErrorCode::BadInput, "thin map without id");
    if (a_value <= 0) fail(ErrorCode::BadInput, "thin map " + id + ": a must be positive");
    if (b_value < 1) fail(ErrorCode::BadInput, "thin map " + id + ": b must be positive");
    if (kappa < 0) fail(ErrorCode::BadInput, "thin map " + id + ": kappa must be nonnegative");
    if (pushforward && face_Y_generators)
      for (const auto& g : *face_Y_generators)
        if (g.size() != pushforward->cols())
          fail(ErrorCode::BadInput, "thin map " + id + ": face generator length differs from pushforward columns");
    if (relative_dim && *relative_dim < 0) fail(ErrorCode::BadInput, "thin map " + id + ": negative relative dimension");
  }
};

struct ComponentRecord {
  std::string id;
  QVec cls;
  int degree_units = 1;
  std::int64_t mor_dim = 0;
  std::vector<std::string> factors_through;
};

enum class ManinReason { Accepted, NotInFace, HigherA, FaceContractingGEQ, PositiveKappa };

inline std::string to_string(ManinReason r) {
  switch (r) {
    case ManinReason::Accepted: return "Accepted";
    case ManinReason::NotInFace: return "NotInFace";
    case ManinReason::HigherA: return "HigherA";
    case ManinReason::FaceContractingGEQ: return "FaceContractingGEQ";
    case ManinReason::PositiveKappa: return "PositiveKappa";
  }
  return "?";
}

struct ManinVerdict {
  bool accepted = false;
  ManinReason reason = ManinReason::NotInFace;
  std::string witness;  // id of the map causing a rejection, if any
};

/// (a, b) and F(X, L) for a big polarization, computed once and reused.
struct BaseInvariants {
  ABPair ab;
  Rat r;
  Cone face = Cone::origin(1);

  static BaseInvariants of(const Variety& x, const Polarization& l) {
    BaseInvariants out;
    out.ab = {require_finite_a(x, l), b_invariant(x, l).b};
    out.r = rationality_index(x, l);
    out.face = face_F(x, l);
    return out;
  }
};

struct BalanceBreak {
  bool balanced_broken = false;
  bool weakly_broken = false;
};

inline BalanceBreak breaks_balanced(const ThinMapRecord& rec, const ABPair& base) {
  return {rec.ab() >= base, rec.ab() > base};
}

inline BalanceBreak breaks_balanced(const ThinMapRecord& rec, const Variety& x, const Polarization& l) {
  return breaks_balanced(rec, ABPair{require_finite_a(x, l), b_invariant(x, l).b});
}

namespace detail {
struct FaceImage {
  std::size_t source_dim = 0;
  std::size_t image_dim = 0;
  std::vector<QVec> image_generators;
};

inline FaceImage push_face(const ThinMapRecord& rec) {
  FaceImage out;
  const QMat p = to_q(*rec.pushforward);
  for (const auto& g : *rec.face_Y_generators) {
    if (g.size() != p.cols()) fail(ErrorCode::BadInput, "thin map " + rec.id + ": face generator length mismatch");
    out.image_generators.push_back(p * g);
  }
  out.source_dim = rank(*rec.face_Y_generators, p.cols());
  out.image_dim = rank(out.image_generators, p.rows());
  return out;
}

inline bool has_face_data(const ThinMapRecord& rec) { return rec.pushforward && rec.face_Y_generators; }
}  // namespace detail

/// f_* restricted to span F(Y, f*L) fails to be injective.
inline bool is_face_contracting(const ThinMapRecord& rec) {
  if (rec.face_contracting_override) return *rec.face_contracting_override;
  if (!detail::has_face_data(rec))
    fail(ErrorCode::InsufficientData, "thin map " + rec.id + ": no pushforward/face data and no override");
  auto img = detail::push_face(rec);
  return img.image_dim < img.source_dim;
}

inline bool is_face_contracting(const ThinMapRecord& rec, const Variety& x, const Polarization&) {
  if (detail::has_face_data(rec) && rec.pushforward->rows() != static_cast<std::size_t>(x.rho()))
    fail(ErrorCode::BadInput, "thin map " + rec.id + ": pushforward row count differs from rho(X)");
  return is_face_contracting(rec);
}

/// dim F(Y) minus the dimension of its image.
inline int relative_dimension(const ThinMapRecord& rec) {
  if (detail::has_face_data(rec)) {
    auto img = detail::push_face(rec);
    return static_cast<int>(img.source_dim - img.image_dim);
  }
  if (rec.relative_dim) return *rec.relative_dim;
  fail(ErrorCode::InsufficientData, "thin map " + rec.id + ": relative dimension unknown");
}

inline const ThinMapRecord& resolve_map(const std::vector<ThinMapRecord>& maps, const std::string& id) {
  auto it = std::find_if(maps.begin(), maps.end(), [&](const ThinMapRecord& m) { return m.id == id; });
  if (it == maps.end()) fail(ErrorCode::UnknownMap, "no thin map with id '" + id + "'");
  return *it;
}

/// Exclusion tests in the order: higher a, class outside F, dominant
/// face-contracting map with (a,b) at least as large, a-cover with kappa > 0.
inline ManinVerdict classify_component(const ComponentRecord& comp, const BaseInvariants& base,
                                       const std::vector<ThinMapRecord>& maps) {
  std::vector<const ThinMapRecord*> through;
  for (const auto& id : comp.factors_through) through.push_back(&resolve_map(maps, id));
  if (comp.cls.size() != base.face.ambient_dim())
    fail(ErrorCode::BadInput, "component " + comp.id + ": class has wrong length");

  for (const auto* m : through)
    if (m->a_value > base.ab.a) return {false, ManinReason::HigherA, m->id};
  if (!base.face.contains(comp.cls)) return {false, ManinReason::NotInFace, {}};
  for (const auto* m : through)
    if (m->dominant && m->ab() >= base.ab && is_face_contracting(*m))
      return {false, ManinReason::FaceContractingGEQ, m->id};
  for (const auto* m : through)
    if (m->dominant && m->a_value == base.ab.a && m->kappa > 0) return {false, ManinReason::PositiveKappa, m->id};
  return {true, ManinReason::Accepted, {}};
}

inline ManinVerdict classify_component(const ComponentRecord& comp, const Variety& x, const Polarization& l,
                                       const std::vector<ThinMapRecord>& maps) {
  return classify_component(comp, BaseInvariants::of(x, l), maps);
}

/// Largest relative dimension of a face-contracting a-cover whose image face
/// contains the class. A map known only through its override is taken to
/// cover all of F(X, L).
inline int batyrev_degree(const QVec& cls, const BaseInvariants& base, const std::vector<ThinMapRecord>& maps) {
  if (cls.size() != base.face.ambient_dim()) fail(ErrorCode::BadInput, "batyrev_degree: class has wrong length");
  if (!base.face.contains(cls)) fail(ErrorCode::NotInFace, "batyrev_degree: class is outside F(X,L)");
  int best = 0;
  for (const auto& m : maps) {
    if (!m.dominant || m.a_value != base.ab.a) continue;
    if (!is_face_contracting(m)) continue;
    if (detail::has_face_data(m)) {
      auto img = detail::push_face(m);
      if (!Cone::from_generators(base.face.ambient_dim(), img.image_generators).contains(cls)) continue;
    }
    best = std::max(best, relative_dimension(m));
  }
  return best;
}

inline int batyrev_degree(const QVec& cls, const Variety& x, const Polarization& l,
                          const std::vector<ThinMapRecord>& maps) {
  return batyrev_degree(cls, BaseInvariants::of(x, l), maps);
}

}  // namespace gmc
