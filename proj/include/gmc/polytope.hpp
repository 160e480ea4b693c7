#pragma once

// Exact volume of a full-dimensional rational polytope given by its vertices,
// via the pulling triangulation from the lexicographically least vertex.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <vector>

#include "gmc/cones.hpp"
#include "gmc/exactalg.hpp"

namespace gmc {

class VertexPolytope {
 public:
  /// `vertices` must be exactly the vertex set and affinely span R^dim.
  VertexPolytope(std::size_t dim, std::vector<QVec> vertices) : dim_(dim), vertices_(std::move(vertices)) {
    if (vertices_.empty()) fail(ErrorCode::BadInput, "polytope without vertices");
    for (const auto& v : vertices_)
      if (v.size() != dim_) fail(ErrorCode::BadInput, "polytope vertex dimension mismatch");
    if (affine_dim(all_indices()) != dim_) fail(ErrorCode::BadInput, "polytope is not full-dimensional");
    if (dim_ == 0) return;
    // Facets from the homogenized cone over {1} x P.
    std::vector<QVec> lifted;
    for (const auto& v : vertices_) {
      QVec h{Rat(1)};
      h.insert(h.end(), v.begin(), v.end());
      lifted.push_back(std::move(h));
    }
    Cone c = Cone::from_generators(dim_ + 1, lifted);
    for (const auto& f : c.facets()) {
      std::vector<std::size_t> tight;
      for (std::size_t i = 0; i < lifted.size(); ++i)
        if (dot(lifted[i], f) == 0) tight.push_back(i);
      facets_.push_back(std::move(tight));
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<QVec>& vertices() const noexcept { return vertices_; }
  const std::vector<std::vector<std::size_t>>& facet_vertex_sets() const noexcept { return facets_; }

  /// Simplices (as vertex index lists) of the pulling triangulation.
  std::vector<std::vector<std::size_t>> triangulation() const {
    std::map<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>> memo;
    return triangulate(all_indices(), dim_, memo);
  }

  /// Euclidean volume; a point has volume 1.
  Rat volume() const {
    if (dim_ == 0) return 1;
    Rat total = 0;
    Int fact = 1;
    for (std::size_t i = 2; i <= dim_; ++i) fact *= i;
    for (const auto& simplex : triangulation()) {
      QMat m(dim_, dim_);
      for (std::size_t i = 1; i <= dim_; ++i) {
        QVec d = sub(vertices_[simplex[i]], vertices_[simplex[0]]);
        for (std::size_t j = 0; j < dim_; ++j) m(i - 1, j) = d[j];
      }
      total += abs(determinant(m));
    }
    return total / Rat(fact);
  }

 private:
  std::vector<std::size_t> all_indices() const {
    std::vector<std::size_t> idx(vertices_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
  }

  std::size_t affine_dim(const std::vector<std::size_t>& idx) const {
    if (idx.size() <= 1) return 0;
    std::vector<QVec> diffs;
    for (std::size_t i = 1; i < idx.size(); ++i) diffs.push_back(sub(vertices_[idx[i]], vertices_[idx[0]]));
    return rank(diffs, dim_);
  }

  std::vector<std::vector<std::size_t>> triangulate(
      const std::vector<std::size_t>& face, std::size_t d,
      std::map<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>>& memo) const {
    if (auto it = memo.find(face); it != memo.end()) return it->second;
    std::vector<std::vector<std::size_t>> out;
    if (d == 0) {
      out.push_back({face.front()});
      memo.emplace(face, out);
      return out;
    }
    std::size_t apex = *std::min_element(face.begin(), face.end(), [&](std::size_t a, std::size_t b) {
      return vertices_[a] < vertices_[b];
    });
    // Facets of this face are its intersections with global facets of dimension d - 1.
    std::vector<std::vector<std::size_t>> subfaces;
    for (const auto& f : facets_) {
      std::vector<std::size_t> meet;
      std::set_intersection(face.begin(), face.end(), f.begin(), f.end(), std::back_inserter(meet));
      if (meet.size() < d || meet.size() == face.size()) continue;
      if (std::find(meet.begin(), meet.end(), apex) != meet.end()) continue;
      if (affine_dim(meet) != d - 1) continue;
      if (std::find(subfaces.begin(), subfaces.end(), meet) == subfaces.end()) subfaces.push_back(std::move(meet));
    }
    for (const auto& g : subfaces)
      for (auto simplex : triangulate(g, d - 1, memo)) {
        simplex.insert(simplex.begin(), apex);
        out.push_back(std::move(simplex));
      }
    memo.emplace(face, out);
    return out;
  }

  std::size_t dim_;
  std::vector<QVec> vertices_;
  std::vector<std::vector<std::size_t>> facets_;
};

}  // namespace gmc
