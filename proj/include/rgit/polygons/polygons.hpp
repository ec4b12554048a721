#pragma once

#include <optional>
#include <vector>

#include "rgit/chambers/chambers.hpp"

namespace rgit::polygons {

using chambers::ChamberSignature;
using chambers::Wall;
using geom::QVec;
using geom::Rat;
using stability::WeightVector;

/// Side lengths of a closed spatial polygon, all positive, at least 3 of them.
class SideLengths {
 public:
  explicit SideLengths(QVec r);
  static SideLengths parse(std::string_view text);  ///< "2,1,1,1"

  const QVec& r() const { return r_; }
  int m() const { return static_cast<int>(r_.dim()); }
  /// alpha = 2r / sum(r).
  WeightVector alpha() const;

 private:
  QVec r_;
};

struct PolygonReport {
  bool exists;
  bool degenerate;  ///< lined polygons exist
  WeightVector alpha;
  std::optional<ChamberSignature> chamber;  ///< when it exists and is wall-free
  std::vector<Wall> on_walls;               ///< relevant and facet walls through alpha
  std::optional<int> moduli_dim;
};

PolygonReport analyze(const SideLengths& r);

struct Crossing {
  Rat t;
  std::vector<Wall> walls;
  ChamberSignature before;
  ChamberSignature after;
};

/// Walls met by t -> (1-t) alpha_start + t alpha_end, ordered by t. Throws
/// DomainError(NotEffective) when a polygon does not exist and
/// DomainError(WallBase) when an endpoint lies on a wall.
std::vector<Crossing> wall_crossing_path(const SideLengths& start, const SideLengths& end);

}  // namespace rgit::polygons
