#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rgit/exactgeom/linalg.hpp"
#include "rgit/exactgeom/polytope.hpp"
#include "rgit/moment/moment.hpp"

namespace rgit::stability {

using geom::Polytope;
using geom::QMat;
using geom::QVec;
using geom::Rat;
using moment::Subset;
using moment::WeightSet;

/// Linearization alpha with sum(alpha) = n. Entries outside [0,1] are allowed
/// (the point is then not effective and every configuration is unstable).
class WeightVector {
 public:
  WeightVector(QVec alpha, int n);

  const QVec& alpha() const { return alpha_; }
  const Rat& operator[](std::size_t i) const { return alpha_[i]; }
  int m() const { return static_cast<int>(alpha_.dim()); }
  int n() const { return n_; }
  /// 0 <= alpha_i <= 1 for all i, i.e. alpha lies in the hypersimplex.
  bool is_effective() const;
  /// Throws DomainError(NotEffective) unless is_effective().
  void require_effective() const;
  Rat weight(const Subset& subset) const;

  /// Normalizes a positive vector to sum n.
  static WeightVector normalized(const QVec& v, int n);

 private:
  QVec alpha_;
  int n_;
};

/// Set partition of {0..m-1} stored as a restricted growth string.
class SetPartition {
 public:
  explicit SetPartition(std::vector<int> rgs);

  static SetPartition discrete(int m);
  static SetPartition from_blocks(int m, const std::vector<Subset>& blocks);
  /// "12|3|4" with 1-based digits.
  static SetPartition parse(std::string_view text);

  int m() const { return static_cast<int>(rgs_.size()); }
  const std::vector<int>& rgs() const { return rgs_; }
  int block_count() const { return blocks_; }
  /// Blocks ordered by smallest element, elements ascending.
  std::vector<Subset> blocks() const;
  int block_of(int i) const { return rgs_[i]; }
  bool same_block(int i, int j) const { return rgs_[i] == rgs_[j]; }
  /// True if every block of *this lies inside a block of coarser.
  bool refines(const SetPartition& coarser) const;
  /// "12|3|4" for m <= 9, "1,2|3|4" style otherwise.
  std::string str() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend auto operator<=>(const SetPartition&, const SetPartition&) = default;

 private:
  std::vector<int> rgs_;
  int blocks_;
};

/// All set partitions of {0..m-1} in restricted-growth-string lexicographic order.
std::vector<SetPartition> all_set_partitions(int m);

/// m labeled points on P^1 up to their coincidence pattern.
class ConfigurationP1 {
 public:
  explicit ConfigurationP1(SetPartition partition);
  /// Points given as homogeneous pairs (a:b); (0:0) is rejected.
  static ConfigurationP1 from_points(const std::vector<std::pair<Rat, Rat>>& points);

  const SetPartition& partition() const { return partition_; }
  const std::optional<std::vector<std::pair<Rat, Rat>>>& coordinates() const { return coords_; }
  int m() const { return partition_.m(); }
  /// 2 x m matrix of homogeneous coordinates (canonical points when none were given).
  QMat matrix() const;

 private:
  SetPartition partition_;
  std::optional<std::vector<std::pair<Rat, Rat>>> coords_;
};

/// n x m matrix of homogeneous coordinates of m points in P^{n-1}.
class SLnConfig {
 public:
  explicit SLnConfig(QMat matrix);

  int n() const { return static_cast<int>(matrix_.size()); }
  int m() const { return static_cast<int>(matrix_.front().dim()); }
  const QMat& matrix() const { return matrix_; }
  int column_rank(const Subset& cols) const;

 private:
  QMat matrix_;
};

enum class StabilityClass { Stable, StrictlySemistable, Unstable };

std::string_view class_name(StabilityClass c);

struct StabilityVerdict {
  StabilityClass cls;
  int sign;
  Rat sq_magnitude;
  std::vector<Subset> witnesses;
  /// Destabilizing 1-PS direction, when one is known.
  std::optional<QVec> direction;

  bool semistable() const { return cls != StabilityClass::Unstable; }
  bool stable() const { return cls == StabilityClass::Stable; }
};

/// Class of mu against the weight polytope P. `reference_dim` is the dimension
/// of the character space (m-1 for the hypersimplex slice); -1 uses the ambient dimension.
StabilityVerdict torus_classify(const Polytope& poly, const QVec& mu, int reference_dim = -1);

/// Cluster criterion: blocks of weight <= 1 (semistable), < 1 (stable).
StabilityVerdict sl2_classify(const ConfigurationP1& cfg, const WeightVector& w);

/// Class only, in O(m) for effective weights; agrees with sl2_classify.
StabilityClass sl2_class(const SetPartition& partition, const WeightVector& w);

/// Rank criterion: sum_J alpha <= rank(J) for all proper J. Throws RankDeficient.
StabilityVerdict sln_classify(const SLnConfig& cfg, const WeightVector& w);

/// sln_classify class == torus_classify class on the matroid polytope.
bool gm_check(const SLnConfig& cfg, const WeightVector& w);

/// Brute-force Hilbert-Mumford test over the extreme rays of the cone of
/// 1-PS directions pairing nonnegatively with every shifted weight.
/// `reference` spans the character directions on which the torus acts
/// effectively (empty: all of Q^r). The magnitude is not computed.
StabilityVerdict oracle_1ps(const WeightSet& support_weights, const QVec& mu, const QMat& reference = {});

/// Basis of {x in Q^m : sum x = 0}.
QMat slice_directions(int m);

/// Classifies each configuration, in input order, using the worker pool.
std::vector<StabilityVerdict> classify_all(const std::vector<ConfigurationP1>& cfgs, const WeightVector& w);

}  // namespace rgit::stability
