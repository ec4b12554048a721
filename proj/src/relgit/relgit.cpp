#include "rgit/relgit/relgit.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <string>

#include "rgit/common/errors.hpp"
#include "rgit/common/parallel.hpp"

namespace rgit::relgit {

using stability::all_set_partitions;
using stability::sl2_class;

namespace {

// Image of p under the map forgetting point i.
SetPartition forget(const SetPartition& p, int i) {
  std::vector<moment::Subset> blocks;
  for (const auto& b : p.blocks()) {
    moment::Subset kept;
    for (int j : b) {
      if (j != i) kept.push_back(j < i ? j : j - 1);
    }
    if (!kept.empty()) blocks.push_back(std::move(kept));
  }
  return SetPartition::from_blocks(p.m() - 1, blocks);
}

int index_of(const std::vector<SetPartition>& sorted, const SetPartition& p) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
  return static_cast<int>(it - sorted.begin());
}

void check_index(int m, int i) {
  if (i < 0 || i >= m) throw InputError("point index out of range");
}

void require_base(const WeightVector& alpha, int i) {
  if (alpha.n() != 2) throw InputError("base weight must sum to 2");
  if (alpha.m() < 3) throw InputError("forgetful maps need at least 4 points");
  check_index(alpha.m() + 1, i);
  alpha.require_effective();
}

void require_wall_free(const WeightVector& alpha) {
  auto loc = chambers::locate(alpha);
  if (!loc.on_walls.empty()) {
    throw DomainError(ErrorKind::WallBase, "base weight lies on wall " + loc.on_walls.front().label(alpha.m()));
  }
  if (!loc.on_boundary_walls.empty()) {
    throw DomainError(ErrorKind::WallBase, "base weight lies on the facet " + loc.on_boundary_walls.front().label(alpha.m()));
  }
  for (int j = 0; j < alpha.m(); ++j) {
    if (alpha[j].sign() == 0) throw DomainError(ErrorKind::WallBase, "base weight has a zero entry");
  }
}

// Hyperplane alpha_j = 0 of Delta^m_2 in wall form (J containing 0).
Wall zero_facet(int m, int j) {
  if (j == 0) return Wall{{0}, 0, true, false};
  moment::Subset rest;
  for (int k = 0; k < m; ++k) {
    if (k != j) rest.push_back(k);
  }
  return Wall{rest, 2, true, false};
}

// (eps, wall) where the path eps -> alpha~_eps meets each wall or leaves Delta.
std::vector<std::pair<Rat, Wall>> crossings(const WeightVector& alpha, int i) {
  const int m = alpha.m() + 1;
  const Rat shift = Rat(1) / Rat(m - 1);
  const QVec start = lifted_weight(alpha, i, Rat(0)).alpha();
  std::vector<std::pair<Rat, Wall>> out;
  for (const auto& w : chambers::walls(m, 2)) {
    const Rat v0 = w.value(start);
    Rat v1;
    for (int j : w.J) v1 += j == i ? Rat(1) : -shift;
    if (v0.sign() == 0 || v1.sign() == 0) continue;
    Rat eps = -v0 / v1;
    if (eps.sign() > 0) out.emplace_back(eps, w);
  }
  for (int j = 0; j < m; ++j) {
    if (j != i) out.emplace_back(start[j] * Rat(m - 1), zero_facet(m, j));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<StabilityClass> classes_at(const std::vector<SetPartition>& parts, const WeightVector& w) {
  return parallel_map(parts.size(), [&](std::size_t k) { return sl2_class(parts[k], w); });
}

}  // namespace

void FiberedModel::validate() const {
  if (base_count < 1 || total_count < 1) throw InputError("fibered model needs points");
  if (static_cast<int>(projection.size()) != total_count) throw InputError("projection must cover every total point");
  if (!base_oracle || !fiber_oracle) throw InputError("fibered model needs base and fiber oracles");
  std::vector<bool> hit(static_cast<std::size_t>(base_count), false);
  for (int x : projection) {
    if (x < 0 || x >= base_count) throw InputError("projection leaves the base");
    hit[static_cast<std::size_t>(x)] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) throw InputError("projection is not onto");
}

std::vector<int> RelativeVerdict::semistable() const {
  std::vector<int> out;
  for (std::size_t y = 0; y < points.size(); ++y) {
    if (points[y].cls && *points[y].cls != StabilityClass::Unstable) out.push_back(static_cast<int>(y));
  }
  return out;
}

std::vector<int> RelativeVerdict::stable() const {
  std::vector<int> out;
  for (std::size_t y = 0; y < points.size(); ++y) {
    if (points[y].cls == StabilityClass::Stable) out.push_back(static_cast<int>(y));
  }
  return out;
}

std::vector<int> RelativeVerdict::undetermined() const {
  std::vector<int> out;
  for (std::size_t y = 0; y < points.size(); ++y) {
    if (!points[y].cls) out.push_back(static_cast<int>(y));
  }
  return out;
}

RelativeVerdict relative_classify(const FiberedModel& model, const PairLinearization& lin) {
  model.validate();
  const auto base = parallel_map(static_cast<std::size_t>(model.base_count),
                                 [&](std::size_t x) { return model.base_oracle(static_cast<int>(x)); });
  const bool walled = std::find(base.begin(), base.end(), StabilityClass::StrictlySemistable) != base.end();
  const auto total = static_cast<std::size_t>(model.total_count);

  RelativeVerdict out{Contract::Limit, {}, model.stable_from};
  if (std::holds_alternative<Limit>(lin.mode)) {
    if (walled) {
      throw DomainError(ErrorKind::BoundaryAmbiguous, "limit mode is undefined over strictly semistable base points");
    }
    out.points = parallel_map(total, [&](std::size_t y) {
      const StabilityClass b = base[static_cast<std::size_t>(model.projection[y])];
      const StabilityClass cls = b == StabilityClass::Unstable ? StabilityClass::Unstable : StabilityClass::Stable;
      return PointVerdict{cls, model.fiber_oracle(static_cast<int>(y)), b};
    });
    return out;
  }

  const long n = std::get<Finite>(lin.mode).n;
  if (n < 1) throw InputError("pair linearization needs n >= 1");
  out.contract = walled ? Contract::InclusionOnly : Contract::Equality;
  out.points = parallel_map(total, [&](std::size_t y) {
    const int yi = static_cast<int>(y);
    const StabilityClass f = model.fiber_oracle(yi);
    const StabilityClass b = base[static_cast<std::size_t>(model.projection[y])];
    PointVerdict v{std::nullopt, f, b};
    if (model.total_oracle) {
      v.cls = model.total_oracle(yi, n);
    } else if (f == StabilityClass::Unstable || b == StabilityClass::Unstable) {
      v.cls = StabilityClass::Unstable;
    } else if (b == StabilityClass::Stable) {
      v.cls = f;
    }
    return v;
  });
  return out;
}

FiberedModel forgetful_model(const WeightVector& alpha, int i, const Rat& mu) {
  require_base(alpha, i);
  if (mu.sign() <= 0) throw InputError("fiber degree must be positive");
  const int m = alpha.m() + 1;
  auto base_parts = std::make_shared<std::vector<SetPartition>>(all_set_partitions(m - 1));
  auto total_parts = std::make_shared<std::vector<SetPartition>>(all_set_partitions(m));

  FiberedModel model;
  model.base_count = static_cast<int>(base_parts->size());
  model.total_count = static_cast<int>(total_parts->size());
  for (const auto& p : *total_parts) model.projection.push_back(index_of(*base_parts, forget(p, i)));
  model.base_oracle = [base_parts, alpha](int x) { return sl2_class((*base_parts)[static_cast<std::size_t>(x)], alpha); };
  model.fiber_oracle = [](int) { return StabilityClass::Stable; };

  auto weight_at = [alpha, i, mu, m](long n) {
    QVec k(static_cast<std::size_t>(m));
    for (int j = 0, s = 0; j < m; ++j) k[j] = j == i ? mu : alpha[s++] * Rat(n);
    return WeightVector::normalized(k, 2);
  };
  model.total_oracle = [total_parts, weight_at](int y, long n) {
    return sl2_class((*total_parts)[static_cast<std::size_t>(y)], weight_at(n));
  };

  // Each block's class is constant once n |alpha(S) - 1| > mu / 2.
  long bound = 1;
  const int k = m - 1;
  for (unsigned long bits = 0; bits < (1UL << k); ++bits) {
    Rat a;
    for (int j = 0; j < k; ++j) {
      if (bits & (1UL << j)) a += alpha[j];
    }
    Rat gap = a - Rat(1);
    if (gap.sign() == 0) continue;
    if (gap.sign() < 0) gap = -gap;
    const Rat r = mu / (Rat(2) * gap);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    q += 1;
    if (q.fits_slong_p()) bound = std::max(bound, q.get_si());
    else bound = std::numeric_limits<long>::max();
  }
  long least = bound;
  if (bound <= 1000000) {
    const auto limit = classes_at(*total_parts, weight_at(bound));
    while (least > 1 && classes_at(*total_parts, weight_at(least - 1)) == limit) --least;
  }
  model.stable_from = least;
  return model;
}

FiberedModel product_model(const std::vector<StabilityClass>& fiber_classes,
                           const std::vector<StabilityClass>& base_classes) {
  const int a = static_cast<int>(fiber_classes.size());
  const int x = static_cast<int>(base_classes.size());
  FiberedModel model;
  model.base_count = x;
  model.total_count = a * x;
  for (int y = 0; y < a * x; ++y) model.projection.push_back(y % x);
  model.base_oracle = [base_classes](int p) { return base_classes[static_cast<std::size_t>(p)]; };
  model.fiber_oracle = [fiber_classes, x](int y) { return fiber_classes[static_cast<std::size_t>(y / x)]; };
  return model;
}

WeightVector lifted_weight(const WeightVector& alpha, int i, const Rat& eps) {
  const int m = alpha.m() + 1;
  check_index(m, i);
  const Rat shift = eps / Rat(m - 1);
  QVec out(static_cast<std::size_t>(m));
  for (int j = 0, s = 0; j < m; ++j) out[j] = j == i ? eps : alpha[s++] - shift;
  return WeightVector(out, alpha.n());
}

Rat epsilon_threshold(const WeightVector& alpha, int i) {
  require_base(alpha, i);
  require_wall_free(alpha);
  return crossings(alpha, i).front().first;
}

ForgetfulReport forgetful_instance(int m, int i, const WeightVector& alpha, const Rat& eps) {
  if (alpha.m() != m - 1) throw InputError("base weight must have m-1 entries");
  require_base(alpha, i);
  if (eps.sign() <= 0) throw InputError("eps must be positive");
  require_wall_free(alpha);
  const auto events = crossings(alpha, i);

  ForgetfulReport rep{m, i, eps, events.front().first, lifted_weight(alpha, i, eps), {}, {}, {}, false, {}};
  const auto parts = all_set_partitions(m);
  const auto base_parts = all_set_partitions(m - 1);
  const auto cls = classes_at(parts, rep.lifted);
  const auto base_cls = classes_at(base_parts, alpha);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (cls[k] != StabilityClass::Unstable) rep.semistable.push_back(parts[k]);
    if (cls[k] == StabilityClass::Stable) rep.stable.push_back(parts[k]);
    const auto x = static_cast<std::size_t>(index_of(base_parts, forget(parts[k], i)));
    if (base_cls[x] == StabilityClass::Stable) rep.preimage.push_back(parts[k]);
  }
  rep.equality_verified = rep.semistable == rep.stable && rep.stable == rep.preimage;
  for (const auto& [at, w] : events) {
    if (at <= eps) rep.violated_walls.push_back(w);
  }
  return rep;
}

FacetReport facet_instance(int m, int i, const WeightVector& alpha) {
  if (alpha.m() != m || alpha.n() != 2) throw InputError("facet weight must have m entries summing to 2");
  check_index(m, i);
  if (alpha[i] != Rat(1)) throw InputError("facet weight needs alpha_i = 1");
  for (int j = 0; j < m; ++j) {
    if (j != i && alpha[j].sign() <= 0) throw InputError("facet weight must lie in the open facet");
  }
  FacetReport rep{m, i, all_set_partitions(m), {}, true, true};
  rep.table = classes_at(rep.partitions, alpha);
  for (std::size_t k = 0; k < rep.partitions.size(); ++k) {
    const auto& p = rep.partitions[k];
    bool joined = false;
    for (int j = 0; j < m; ++j) joined = joined || (j != i && p.same_block(i, j));
    if (joined && rep.table[k] != StabilityClass::Unstable) rep.coincident_unstable = false;
    if (rep.table[k] == StabilityClass::Stable) rep.no_stable = false;
  }
  return rep;
}

}  // namespace rgit::relgit
