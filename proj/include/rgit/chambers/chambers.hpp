#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rgit/stability/stability.hpp"

namespace rgit::chambers {

using geom::QVec;
using geom::Rat;
using moment::Subset;
using stability::SetPartition;
using stability::StabilityClass;
using stability::WeightVector;

/// Hyperplane sum_{i in J} alpha_i = d inside the hypersimplex slice.
struct Wall {
  Subset J;  ///< canonical side: contains index 0
  int d;
  bool is_facet;
  bool is_relevant;

  Rat value(const QVec& alpha) const;  ///< sum_J alpha - d
  std::string label(int m) const;      ///< "12" style subset label
  friend bool operator==(const Wall& a, const Wall& b) { return a.J == b.J && a.d == b.d; }
};

/// All walls of Delta^m_n meeting the hypersimplex, canonically ordered by
/// (d, |J|, J). Cached per (m, n).
const std::vector<Wall>& walls(int m, int n);

/// The relevant walls (those meeting the interior), in the same order.
const std::vector<Wall>& relevant_walls(int m, int n);

/// Sign of sum_J alpha - d for each relevant wall of (m, n).
struct ChamberSignature {
  int m;
  int n;
  std::vector<int> signs;

  bool open() const;
  std::string str() const;  ///< e.g. "-+-"
  friend bool operator==(const ChamberSignature&, const ChamberSignature&) = default;
  friend auto operator<=>(const ChamberSignature&, const ChamberSignature&) = default;
};

struct Location {
  ChamberSignature signature;
  std::vector<Wall> on_walls;           ///< relevant walls through alpha
  std::vector<Wall> on_boundary_walls;  ///< facet-type walls through alpha
};

/// Throws DomainError(NotEffective) when alpha lies outside the hypersimplex.
Location locate(const WeightVector& alpha);

struct Chamber {
  ChamberSignature signature;
  QVec witness;
  /// Class of every set partition of {1..m} (all_set_partitions order) at the witness.
  std::vector<StabilityClass> table;
};

/// Classification table at alpha (n = 2).
std::vector<StabilityClass> classification_table(const WeightVector& alpha);

/// Open chambers of Delta^m_2, sorted by signature. Requires n = 2 and 3 <= m <= 7.
std::vector<Chamber> enumerate_chambers(int m, int n);

/// Chamber across wall `w` (index into relevant_walls), or nullopt when that
/// signature is not realizable. Throws DomainError(NotRelevant) for non-relevant walls.
std::optional<Chamber> adjacent(const Chamber& c, const Wall& w);

/// Interior point maximizing the minimum slack of the signature's strict
/// inequalities, or nullopt if the signature has no interior point.
std::optional<QVec> chamber_witness(const ChamberSignature& sig);

/// True iff the open region of `sig` is nonempty, decided by an exact
/// feasibility problem (a Farkas certificate is produced otherwise).
bool realizable(const ChamberSignature& sig);

}  // namespace rgit::chambers
