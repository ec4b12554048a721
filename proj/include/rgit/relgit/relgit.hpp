#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "rgit/chambers/chambers.hpp"

namespace rgit::relgit {

using chambers::Wall;
using geom::QVec;
using geom::Rat;
using stability::SetPartition;
using stability::StabilityClass;
using stability::WeightVector;

/// Finite model of an equivariant map pi: Y -> X. Points are indices.
struct FiberedModel {
  int base_count = 0;
  int total_count = 0;
  std::vector<int> projection;  ///< total point -> base point
  /// Class of a base point under G for the base linearization L.
  std::function<StabilityClass(int)> base_oracle;
  /// Class of a total point under G0 for the fiber linearization M.
  std::function<StabilityClass(int)> fiber_oracle;
  /// Optional direct class of a total point under pi^*L^n (x) M.
  std::function<StabilityClass(int, long)> total_oracle;
  /// Least n0 with the direct classes constant for all n >= n0, when known.
  std::optional<long> stable_from;

  /// Throws InputError unless the projection is total and onto.
  void validate() const;
};

struct Finite {
  long n;
};
struct Limit {};

struct PairLinearization {
  std::variant<Finite, Limit> mode;
};

enum class Contract {
  Equality,       ///< base has no strictly semistable points
  InclusionOnly,  ///< base has strictly semistable points; some classes undetermined
  Limit,
};

struct PointVerdict {
  /// nullopt when only the inclusion contract applies and it does not decide the point.
  std::optional<StabilityClass> cls;
  StabilityClass fiber_class;
  StabilityClass base_class;
};

struct RelativeVerdict {
  Contract contract;
  std::vector<PointVerdict> points;
  std::optional<long> stable_from;

  std::vector<int> semistable() const;
  std::vector<int> stable() const;
  std::vector<int> undetermined() const;
};

/// Finite mode: direct classes when the model has a total oracle, otherwise
/// semistable iff fiber-semistable over a base-stable point (three-valued when
/// the base has strictly semistable points). Limit mode: semistable = stable
/// iff the image is semistable; throws DomainError(BoundaryAmbiguous) when the
/// base has strictly semistable points.
RelativeVerdict relative_classify(const FiberedModel& model, const PairLinearization& lin);

/// Forgetful map (P^1)^m -> (P^1)^{m-1} dropping point i, points are set
/// partitions (all_set_partitions order). The total linearization for n is
/// n*alpha on the kept points and `mu` on point i. The fiber group is trivial.
FiberedModel forgetful_model(const WeightVector& alpha, int i, const Rat& mu = Rat(1));

/// Product X0 x X with G0 acting on X0 only. Total point a * |X| + x.
FiberedModel product_model(const std::vector<StabilityClass>& fiber_classes,
                           const std::vector<StabilityClass>& base_classes);

/// alpha~_eps: alpha_j - eps/(m-1) at the kept points and eps at point i.
WeightVector lifted_weight(const WeightVector& alpha, int i, const Rat& eps);

/// Supremum of eps for which alpha~_eps stays in one chamber of Delta^m_2.
/// Throws DomainError(WallBase) when alpha lies on a wall or on the boundary.
Rat epsilon_threshold(const WeightVector& alpha, int i);

struct ForgetfulReport {
  int m;
  int index;
  Rat eps;
  Rat threshold;
  WeightVector lifted;
  std::vector<SetPartition> semistable;
  std::vector<SetPartition> stable;
  std::vector<SetPartition> preimage;  ///< partitions whose image is base-stable
  bool equality_verified;
  /// Walls crossed by eps' in (0, eps], in crossing order.
  std::vector<Wall> violated_walls;
};

/// Throws DomainError(WallBase) when alpha lies on a wall of Delta^{m-1}_2,
/// InputError for eps <= 0 or a bad index.
ForgetfulReport forgetful_instance(int m, int i, const WeightVector& alpha, const Rat& eps);

struct FacetReport {
  int m;
  int index;
  std::vector<SetPartition> partitions;
  std::vector<StabilityClass> table;
  bool coincident_unstable;  ///< every partition joining i to another point is Unstable
  bool no_stable;
};

/// alpha must have alpha_i = 1 and every other entry positive.
FacetReport facet_instance(int m, int i, const WeightVector& alpha);

}  // namespace rgit::relgit
