#include "rgit/chambers/chambers.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "rgit/common/errors.hpp"
#include "rgit/common/parallel.hpp"
#include "rgit/exactgeom/lp.hpp"

namespace rgit::chambers {

using geom::LinearConstraint;
using geom::QMat;
using geom::Relation;

namespace {

// Strict inequality  sign * (sum_{i in mask} alpha_i - d) > 0.
struct SignedRow {
  unsigned long mask;
  int d;
  int sign;
};

unsigned long subset_mask(const Subset& j) {
  unsigned long mk = 0;
  for (int i : j) mk |= 1UL << i;
  return mk;
}

QVec mask_row(unsigned long mask, std::size_t width) {
  QVec row(width);
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1) row[i] = 1;
  }
  return row;
}

// max t  s.t.  t <= alpha_i <= 1 - t,  sum alpha = n,  each row has slack >= t,
// plus the equalities. Returns the optimal (alpha, t).
std::pair<QVec, Rat> max_slack(int m, int n, const std::vector<SignedRow>& strict,
                               const std::vector<SignedRow>& on) {
  const std::size_t width = static_cast<std::size_t>(m) + 1;
  const std::size_t t = static_cast<std::size_t>(m);
  std::vector<LinearConstraint> cons;
  for (int i = 0; i < m; ++i) {
    QVec lo(width);
    lo[i] = 1;
    lo[t] = -1;
    cons.push_back({lo, Relation::GreaterEq, Rat(0)});
    QVec hi(width);
    hi[i] = 1;
    hi[t] = 1;
    cons.push_back({hi, Relation::LessEq, Rat(1)});
  }
  QVec total(width);
  for (int i = 0; i < m; ++i) total[i] = 1;
  cons.push_back({total, Relation::Equal, Rat(n)});
  for (const auto& r : strict) {
    QVec row = mask_row(r.mask, width) * Rat(r.sign);
    row[t] = -1;
    cons.push_back({row, Relation::GreaterEq, Rat(r.sign * r.d)});
  }
  for (const auto& r : on) cons.push_back({mask_row(r.mask, width), Relation::Equal, Rat(r.d)});
  QVec obj(width);
  obj[t] = 1;
  cons.push_back({obj, Relation::LessEq, Rat(1)});
  std::vector<bool> nonneg(width, true);
  nonneg[t] = false;
  auto res = geom::lp_maximize(obj, cons, nonneg);
  const auto* opt = std::get_if<geom::LpOptimal>(&res);
  if (!opt) return {QVec(static_cast<std::size_t>(m)), Rat(-1)};
  QVec alpha(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) alpha[i] = opt->x[i];
  return {alpha, opt->value};
}

// Strict system in homogenized form: with y = tau * alpha,
//   y_i >= 1,  y_i + 1 <= tau,  sum y = n tau,  s (sum_J y - d tau) >= 1,  tau >= 1.
// Feasible iff the open region is nonempty; otherwise lp_feasible certifies it.
std::optional<QVec> strict_point(int m, int n, const std::vector<SignedRow>& strict) {
  const std::size_t width = static_cast<std::size_t>(m) + 1;
  const std::size_t tau = static_cast<std::size_t>(m);
  std::vector<LinearConstraint> cons;
  for (int i = 0; i < m; ++i) {
    cons.push_back({QVec::unit(width, i), Relation::GreaterEq, Rat(1)});
    QVec hi(width);
    hi[i] = 1;
    hi[tau] = -1;
    cons.push_back({hi, Relation::LessEq, Rat(-1)});
  }
  QVec total(width);
  for (int i = 0; i < m; ++i) total[i] = 1;
  total[tau] = -n;
  cons.push_back({total, Relation::Equal, Rat(0)});
  for (const auto& r : strict) {
    QVec row = mask_row(r.mask, width);
    row[tau] = -r.d;
    cons.push_back({row * Rat(r.sign), Relation::GreaterEq, Rat(1)});
  }
  cons.push_back({QVec::unit(width, tau), Relation::GreaterEq, Rat(1)});
  auto res = geom::lp_feasible(cons, width);
  const auto* ok = std::get_if<geom::Feasible>(&res);
  if (!ok) return std::nullopt;
  QVec alpha(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) alpha[i] = ok->witness[i] / ok->witness[tau];
  return alpha;
}

// For n = 2 a signature says which sets weigh more than 1. Those sets form an
// up-closed family, so only its minimal members constrain the region.
std::vector<SignedRow> heavy_rows(int m, const std::vector<unsigned long>& masks, const std::vector<int>& signs) {
  const unsigned long full = (1UL << m) - 1;
  std::vector<unsigned long> heavy;
  for (std::size_t k = 0; k < signs.size(); ++k) heavy.push_back(signs[k] > 0 ? masks[k] : full & ~masks[k]);
  std::sort(heavy.begin(), heavy.end(), [](unsigned long a, unsigned long b) {
    const int pa = __builtin_popcountl(a), pb = __builtin_popcountl(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<SignedRow> rows;
  for (auto h : heavy) {
    bool implied = false;
    for (const auto& r : rows) {
      if ((r.mask & ~h) == 0) {
        implied = true;
        break;
      }
    }
    if (!implied) rows.push_back({h, 1, 1});
  }
  return rows;
}

std::vector<unsigned long> relevant_masks(int m, int n) {
  std::vector<unsigned long> out;
  for (const auto& w : relevant_walls(m, n)) out.push_back(subset_mask(w.J));
  return out;
}

std::vector<SignedRow> signature_rows(const ChamberSignature& sig) {
  const auto& rel = relevant_walls(sig.m, sig.n);
  if (sig.signs.size() != rel.size()) throw InputError("signature length does not match the wall system");
  if (!sig.open()) throw InputError("signature has a zero sign");
  if (sig.n == 2) return heavy_rows(sig.m, relevant_masks(sig.m, sig.n), sig.signs);
  std::vector<SignedRow> out;
  for (std::size_t k = 0; k < rel.size(); ++k) out.push_back({subset_mask(rel[k].J), rel[k].d, sig.signs[k]});
  return out;
}

int affine_rank(const std::vector<QVec>& pts) {
  if (pts.empty()) return -1;
  QMat diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return static_cast<int>(geom::rank(diffs, pts[0].dim()));
}

std::vector<Wall> compute_walls(int m, int n) {
  std::vector<Wall> out;
  const unsigned long others = 1UL << (m - 1);
  for (int d = 1; d < n; ++d) {
    for (unsigned long bits = 0; bits < others; ++bits) {
      Subset j{0};
      for (int i = 1; i < m; ++i) {
        if (bits & (1UL << (i - 1))) j.push_back(i);
      }
      if (static_cast<int>(j.size()) == m) continue;
      const int size = static_cast<int>(j.size());
      if (size < d || m - size < n - d) continue;  // hyperplane misses the hypersimplex
      Wall w{j, d, false, false};
      auto [point, slack] = max_slack(m, n, {}, {{subset_mask(j), d, 1}});
      w.is_relevant = slack.sign() > 0;
      if (!w.is_relevant) {
        std::vector<QVec> on;
        for (const auto& k : moment::subsets_of_size(m, n)) {
          int inter = 0;
          for (int i : k) inter += std::binary_search(j.begin(), j.end(), i);
          if (inter == d) on.push_back(moment::indicator(m, k));
        }
        w.is_facet = affine_rank(on) == m - 2;
      }
      out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end(), [](const Wall& a, const Wall& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.J.size() != b.J.size()) return a.J.size() < b.J.size();
    return a.J < b.J;
  });
  return out;
}

struct WallCache {
  std::mutex mu;
  std::map<std::pair<int, int>, std::pair<std::vector<Wall>, std::vector<Wall>>> entries;
};

const std::pair<std::vector<Wall>, std::vector<Wall>>& cached(int m, int n) {
  if (n < 1 || n >= m) throw InputError("wall system needs 1 <= n < m");
  if (m > 12) throw InputError("wall enumeration limited to m <= 12");
  static WallCache cache;
  std::lock_guard<std::mutex> lock(cache.mu);
  auto it = cache.entries.find({m, n});
  if (it == cache.entries.end()) {
    auto all = compute_walls(m, n);
    std::vector<Wall> rel;
    for (const auto& w : all) {
      if (w.is_relevant) rel.push_back(w);
    }
    it = cache.entries.emplace(std::make_pair(m, n), std::make_pair(std::move(all), std::move(rel))).first;
  }
  return it->second;
}

Chamber make_chamber(ChamberSignature sig) {
  auto witness = chamber_witness(sig);
  if (!witness) throw std::logic_error("chamber signature lost its interior point");
  Chamber c{std::move(sig), *witness, {}};
  c.table = classification_table(WeightVector(c.witness, c.signature.n));
  return c;
}

}  // namespace

Rat Wall::value(const QVec& alpha) const {
  Rat s;
  for (int i : J) s += alpha[i];
  return s - Rat(d);
}

std::string Wall::label(int m) const { return moment::subset_label(J, m); }

const std::vector<Wall>& walls(int m, int n) { return cached(m, n).first; }

const std::vector<Wall>& relevant_walls(int m, int n) { return cached(m, n).second; }

bool ChamberSignature::open() const {
  return std::none_of(signs.begin(), signs.end(), [](int s) { return s == 0; });
}

std::string ChamberSignature::str() const {
  std::string s;
  for (int x : signs) s += x < 0 ? '-' : x > 0 ? '+' : '0';
  return s;
}

Location locate(const WeightVector& alpha) {
  alpha.require_effective();
  const int m = alpha.m();
  const int n = alpha.n();
  Location loc{{m, n, {}}, {}, {}};
  for (const auto& w : walls(m, n)) {
    const int s = w.value(alpha.alpha()).sign();
    if (w.is_relevant) {
      loc.signature.signs.push_back(s);
      if (s == 0) loc.on_walls.push_back(w);
    } else if (s == 0) {
      loc.on_boundary_walls.push_back(w);
    }
  }
  return loc;
}

std::vector<StabilityClass> classification_table(const WeightVector& alpha) {
  if (alpha.n() != 2) throw InputError("classification tables are defined for n = 2");
  std::vector<StabilityClass> out;
  for (const auto& p : stability::all_set_partitions(alpha.m())) out.push_back(stability::sl2_class(p, alpha));
  return out;
}

std::optional<QVec> chamber_witness(const ChamberSignature& sig) {
  auto [alpha, slack] = max_slack(sig.m, sig.n, signature_rows(sig), {});
  if (slack.sign() <= 0) return std::nullopt;
  return alpha;
}

bool realizable(const ChamberSignature& sig) { return strict_point(sig.m, sig.n, signature_rows(sig)).has_value(); }

std::vector<Chamber> enumerate_chambers(int m, int n) {
  if (n != 2) throw InputError("chamber enumeration is implemented for n = 2");
  if (m < 3 || m > 7) throw InputError("chamber enumeration supports 3 <= m <= 7");
  const auto& rel = relevant_walls(m, n);

  struct Region {
    std::vector<int> signs;
    QVec point;
  };
  const unsigned long full = (1UL << m) - 1;
  const auto masks = relevant_masks(m, n);
  std::vector<Region> regions{{{}, QVec::constant(m, Rat(n, m))}};
  for (std::size_t k = 0; k < rel.size(); ++k) {
    auto split = parallel_map(regions.size(), [&](std::size_t r) {
      const Region& reg = regions[r];
      const int here = rel[k].value(reg.point).sign();
      // A side is impossible when a set already known to be heavy lies inside
      // the set that side would make light.
      std::vector<Region> out;
      for (int s : {-1, 1}) {
        std::vector<int> signs = reg.signs;
        signs.push_back(s);
        if (here == s) {
          out.push_back({std::move(signs), reg.point});
          continue;
        }
        const unsigned long light = s > 0 ? full & ~masks[k] : masks[k];
        bool forced = false;
        for (std::size_t i = 0; i < k && !forced; ++i) {
          const unsigned long heavy = reg.signs[i] > 0 ? masks[i] : full & ~masks[i];
          forced = (heavy & ~light) == 0;
        }
        if (forced) continue;
        if (auto p = strict_point(m, n, heavy_rows(m, masks, signs))) out.push_back({std::move(signs), *p});
      }
      return out;
    });
    std::vector<Region> next;
    for (auto& part : split) {
      for (auto& reg : part) next.push_back(std::move(reg));
    }
    regions = std::move(next);
  }

  auto out = parallel_map(regions.size(), [&](std::size_t r) {
    return make_chamber(ChamberSignature{m, n, regions[r].signs});
  });
  std::sort(out.begin(), out.end(), [](const Chamber& a, const Chamber& b) { return a.signature < b.signature; });
  return out;
}

std::optional<Chamber> adjacent(const Chamber& c, const Wall& w) {
  const auto& rel = relevant_walls(c.signature.m, c.signature.n);
  auto it = std::find(rel.begin(), rel.end(), w);
  if (it == rel.end()) {
    throw DomainError(ErrorKind::NotRelevant, "wall " + w.label(c.signature.m) + " does not meet the interior");
  }
  ChamberSignature flipped = c.signature;
  auto& s = flipped.signs[static_cast<std::size_t>(it - rel.begin())];
  if (s == 0) throw InputError("chamber lies on the wall being crossed");
  s = -s;
  if (!realizable(flipped)) return std::nullopt;
  return make_chamber(std::move(flipped));
}

}  // namespace rgit::chambers
