#include "rgit/polygons/polygons.hpp"

#include <algorithm>
#include <map>

#include "rgit/common/errors.hpp"

namespace rgit::polygons {

SideLengths::SideLengths(QVec r) : r_(std::move(r)) {
  if (r_.dim() < 3) throw InputError("a polygon needs at least 3 sides");
  for (const auto& x : r_) {
    if (x.sign() <= 0) throw InputError("side lengths must be positive");
  }
}

SideLengths SideLengths::parse(std::string_view text) { return SideLengths(QVec::parse_list(text)); }

WeightVector SideLengths::alpha() const { return WeightVector::normalized(r_, 2); }

PolygonReport analyze(const SideLengths& r) {
  PolygonReport rep{false, false, r.alpha(), std::nullopt, {}, std::nullopt};
  rep.exists = rep.alpha.is_effective();
  if (!rep.exists) return rep;
  const int m = r.m();
  auto loc = chambers::locate(rep.alpha);
  rep.on_walls = loc.on_walls;
  rep.on_walls.insert(rep.on_walls.end(), loc.on_boundary_walls.begin(), loc.on_boundary_walls.end());
  rep.degenerate = !rep.on_walls.empty();
  if (!rep.degenerate) {
    rep.chamber = loc.signature;
    rep.moduli_dim = m - 3;
  }
  return rep;
}

std::vector<Crossing> wall_crossing_path(const SideLengths& start, const SideLengths& end) {
  if (start.m() != end.m()) throw InputError("endpoints need the same number of sides");
  const auto a = analyze(start);
  const auto b = analyze(end);
  for (const auto* rep : {&a, &b}) {
    if (!rep->exists) throw DomainError(ErrorKind::NotEffective, "no closed polygon with these side lengths");
    if (rep->degenerate) {
      throw DomainError(ErrorKind::WallBase, "endpoint lies on wall " + rep->on_walls.front().label(start.m()));
    }
  }
  const int m = start.m();
  const auto& rel = chambers::relevant_walls(m, 2);
  std::map<Rat, std::vector<std::size_t>> events;
  for (std::size_t k = 0; k < rel.size(); ++k) {
    const Rat v0 = rel[k].value(a.alpha.alpha());
    const Rat v1 = rel[k].value(b.alpha.alpha());
    if (v0.sign() == v1.sign()) continue;
    events[v0 / (v0 - v1)].push_back(k);
  }
  std::vector<Crossing> out;
  ChamberSignature sig = *a.chamber;
  for (const auto& [t, idx] : events) {
    Crossing c{t, {}, sig, sig};
    for (std::size_t k : idx) {
      c.walls.push_back(rel[k]);
      c.after.signs[k] = -c.after.signs[k];
    }
    sig = c.after;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace rgit::polygons
