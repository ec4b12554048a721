#pragma once

#include <utility>
#include <vector>

#include "rgit/exactgeom/linalg.hpp"
#include "rgit/exactgeom/rational.hpp"

namespace rgit::geom {

/// Affine hyperplane  normal . x = offset, in canonical form: the normal is a
/// primitive integer vector whose first nonzero entry is positive.
class Hyperplane {
 public:
  Hyperplane(QVec normal, Rat offset);

  const QVec& normal() const { return normal_; }
  const Rat& offset() const { return offset_; }
  /// normal . x - offset
  Rat eval(const QVec& x) const { return normal_.dot(x) - offset_; }

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
  friend auto operator<=>(const Hyperplane&, const Hyperplane&) = default;

 private:
  QVec normal_;
  Rat offset_;
};

/// Closed halfspace  normal . x <= offset, normal primitive integer.
class Halfspace {
 public:
  Halfspace(QVec normal, Rat offset);

  const QVec& normal() const { return normal_; }
  const Rat& offset() const { return offset_; }
  /// offset - normal . x  (nonnegative inside)
  Rat slack(const QVec& x) const { return offset_ - normal_.dot(x); }

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
  friend auto operator<=>(const Halfspace&, const Halfspace&) = default;

 private:
  QVec normal_;
  Rat offset_;
};

/// Bounded convex polytope with both representations. The H-representation
/// consists of the affine-hull equalities plus facet halfspaces whose normals
/// lie in the direction space of the affine hull.
class Polytope {
 public:
  std::size_t ambient_dim() const { return ambient_dim_; }
  int affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return affine_dim_ == static_cast<int>(ambient_dim_); }

  /// Irredundant vertices, lexicographically sorted.
  const std::vector<QVec>& vertices() const { return vertices_; }
  /// Facet halfspaces, sorted. Empty for points.
  const std::vector<Halfspace>& facets() const { return facets_; }
  /// Canonical hyperplanes cutting out the affine hull.
  const std::vector<Hyperplane>& equalities() const { return equalities_; }

  bool in_affine_hull(const QVec& p) const;
  /// Indices of vertices lying on facet `f`.
  std::vector<std::size_t> facet_vertices(std::size_t f) const;

  friend Polytope convex_hull(const std::vector<QVec>& points);

 private:
  std::size_t ambient_dim_ = 0;
  int affine_dim_ = 0;
  std::vector<QVec> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Hyperplane> equalities_;
};

/// Convex hull of a nonempty point list (double description in affine-hull
/// coordinates). Throws InputError on empty input or mixed dimensions.
Polytope convex_hull(const std::vector<QVec>& points);

enum class Membership { Outside, OnBoundary, InteriorFullDim, RelativeInteriorOnly };

/// Exact position of p relative to P. `reference_dim` is the dimension of the
/// space in which full-dimensionality is judged (defaults to the ambient
/// dimension); P is assumed to lie in that space.
Membership membership(const QVec& p, const Polytope& poly, int reference_dim = -1);

struct SignedSqDistance {
  int sign;         ///< +1 outside, 0 boundary or lower-dimensional, -1 interior
  Rat sq_magnitude;  ///< exact squared Euclidean distance to the boundary
};

SignedSqDistance signed_sq_distance_to_boundary(const QVec& p, const Polytope& poly,
                                                int reference_dim = -1);

struct NearestPoint {
  QVec point;
  Rat sq_dist;
};

/// Euclidean projection of p onto P (minimum-norm point over the vertex set,
/// solved exactly), checked against the variational inequality.
NearestPoint nearest_point(const QVec& p, const Polytope& poly);

}  // namespace rgit::geom
