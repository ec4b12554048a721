#include "rgit/stability/stability.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rgit/common/errors.hpp"
#include "rgit/common/parallel.hpp"

namespace rgit::stability {

namespace {

constexpr int kMaxSubsetEnumeration = 20;

Subset mask_to_subset(unsigned long mask, int m) {
  Subset s;
  for (int i = 0; i < m; ++i) {
    if (mask & (1UL << i)) s.push_back(i);
  }
  return s;
}

// Verdict from the rank inequalities sum_J alpha <= rank(J) over proper nonempty J.
// Distances are measured inside the hyperplane sum = n, where the normal e_J
// projects to a vector of squared length |J|(m-|J|)/m.
template <class RankFn>
StabilityVerdict rank_verdict(const WeightVector& w, RankFn rank_of) {
  const int m = w.m();
  if (m > kMaxSubsetEnumeration) throw InputError("subset enumeration limited to m <= 20");
  const unsigned long full = (1UL << m) - 1;
  std::optional<Rat> min_slack;
  std::vector<unsigned long> argmin;
  Rat nearest, farthest;
  bool have_nearest = false;
  // Gray-code walk keeps the subset weight incremental.
  Rat sum;
  unsigned long mask = 0;
  for (unsigned long k = 1; k <= full; ++k) {
    const unsigned long next = k ^ (k >> 1);
    const unsigned long flip = next ^ mask;
    const int bit = __builtin_ctzl(flip);
    if (next & flip) {
      sum += w[bit];
    } else {
      sum -= w[bit];
    }
    mask = next;
    if (mask == full) continue;
    const int size = __builtin_popcountl(mask);
    const Rat slack = Rat(rank_of(mask)) - sum;
    const Rat dist = slack * slack * Rat(m) / Rat(static_cast<long>(size) * (m - size));
    if (!min_slack || slack < *min_slack) {
      min_slack = slack;
      argmin.assign(1, mask);
    } else if (slack == *min_slack) {
      argmin.push_back(mask);
    }
    if (slack.sign() > 0) {
      if (!have_nearest || dist < nearest) nearest = dist;
      have_nearest = true;
    } else if (slack.sign() < 0 && dist > farthest) {
      farthest = dist;
    }
  }
  StabilityVerdict v{StabilityClass::Stable, -1, nearest, {}, std::nullopt};
  if (!min_slack) return v;  // m == 1: no proper subsets
  if (min_slack->sign() < 0) {
    v = {StabilityClass::Unstable, 1, farthest, {}, std::nullopt};
  } else if (min_slack->is_zero()) {
    v = {StabilityClass::StrictlySemistable, 0, Rat(0), {}, std::nullopt};
  }
  if (v.cls != StabilityClass::Stable) {
    for (auto mk : argmin) v.witnesses.push_back(mask_to_subset(mk, m));
    std::sort(v.witnesses.begin(), v.witnesses.end());
  }
  return v;
}

}  // namespace

WeightVector::WeightVector(QVec alpha, int n) : alpha_(std::move(alpha)), n_(n) {
  if (alpha_.dim() < 1) throw InputError("weight vector must be nonempty");
  if (n < 1) throw InputError("target rank must be positive");
  if (alpha_.sum() != Rat(n)) {
    throw InputError("weights must sum to " + std::to_string(n) + ", got " + alpha_.sum().str());
  }
}

bool WeightVector::is_effective() const {
  for (const auto& a : alpha_) {
    if (a.sign() < 0 || a > Rat(1)) return false;
  }
  return true;
}

void WeightVector::require_effective() const {
  if (!is_effective()) {
    throw DomainError(ErrorKind::NotEffective, "weight " + alpha_.str() + " lies outside the hypersimplex");
  }
}

Rat WeightVector::weight(const Subset& subset) const {
  Rat s;
  for (int i : subset) s += alpha_[i];
  return s;
}

WeightVector WeightVector::normalized(const QVec& v, int n) {
  const Rat total = v.sum();
  if (total.sign() <= 0) throw InputError("cannot normalize a vector with nonpositive sum");
  return WeightVector(v * (Rat(n) / total), n);
}

SetPartition::SetPartition(std::vector<int> rgs) : rgs_(std::move(rgs)), blocks_(0) {
  if (rgs_.empty()) throw InputError("partition of an empty set");
  for (int label : rgs_) {
    if (label < 0 || label > blocks_) throw InputError("not a restricted growth string");
    if (label == blocks_) ++blocks_;
  }
}

SetPartition SetPartition::discrete(int m) {
  std::vector<int> rgs(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) rgs[i] = i;
  return SetPartition(std::move(rgs));
}

SetPartition SetPartition::from_blocks(int m, const std::vector<Subset>& blocks) {
  if (m < 1) throw InputError("partition size must be positive");
  std::vector<int> owner(static_cast<std::size_t>(m), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw InputError("partition has an empty block");
    for (int i : blocks[b]) {
      if (i < 0 || i >= m) throw InputError("partition index out of range");
      if (owner[i] != -1) throw InputError("partition blocks overlap");
      owner[i] = static_cast<int>(b);
    }
  }
  std::map<int, int> relabel;
  std::vector<int> rgs;
  for (int i = 0; i < m; ++i) {
    if (owner[i] == -1) throw InputError("partition does not cover index " + std::to_string(i + 1));
    auto [it, fresh] = relabel.emplace(owner[i], static_cast<int>(relabel.size()));
    rgs.push_back(it->second);
  }
  return SetPartition(std::move(rgs));
}

SetPartition SetPartition::parse(std::string_view text) {
  std::vector<Subset> blocks;
  int count = 0;
  std::size_t start = 0;
  while (true) {
    auto bar = text.find('|', start);
    std::string_view part = text.substr(start, bar == std::string_view::npos ? bar : bar - start);
    Subset block;
    if (part.find(',') != std::string_view::npos) {
      std::size_t s = 0;
      while (true) {
        auto comma = part.find(',', s);
        std::string_view tok = part.substr(s, comma == std::string_view::npos ? comma : comma - s);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string_view::npos || tok.size() > 6) {
          throw InputError("malformed partition: '" + std::string(text) + "'");
        }
        block.push_back(std::stoi(std::string(tok)) - 1);
        if (comma == std::string_view::npos) break;
        s = comma + 1;
      }
    } else {
      for (char c : part) {
        if (c < '1' || c > '9') throw InputError("malformed partition: '" + std::string(text) + "'");
        block.push_back(c - '1');
      }
    }
    if (block.empty()) throw InputError("malformed partition: '" + std::string(text) + "'");
    std::sort(block.begin(), block.end());
    count += static_cast<int>(block.size());
    blocks.push_back(std::move(block));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return from_blocks(count, blocks);
}

std::vector<Subset> SetPartition::blocks() const {
  std::vector<Subset> out(static_cast<std::size_t>(blocks_));
  for (int i = 0; i < m(); ++i) out[rgs_[i]].push_back(i);
  return out;
}

bool SetPartition::refines(const SetPartition& coarser) const {
  if (coarser.m() != m()) throw InputError("refines: partitions of different sets");
  std::vector<int> image(static_cast<std::size_t>(blocks_), -1);
  for (int i = 0; i < m(); ++i) {
    int& img = image[rgs_[i]];
    if (img == -1) {
      img = coarser.rgs_[i];
    } else if (img != coarser.rgs_[i]) {
      return false;
    }
  }
  return true;
}

std::string SetPartition::str() const {
  std::string s;
  bool first_block = true;
  for (const auto& b : blocks()) {
    if (!first_block) s += '|';
    first_block = false;
    s += moment::subset_label(b, m());
  }
  return s;
}

std::vector<SetPartition> all_set_partitions(int m) {
  if (m < 1) throw InputError("partition size must be positive");
  std::vector<SetPartition> out;
  std::vector<int> rgs(static_cast<std::size_t>(m), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(m), 0);
  while (true) {
    out.emplace_back(rgs);
    int i = m - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (int j = i + 1; j < m; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

ConfigurationP1::ConfigurationP1(SetPartition partition) : partition_(std::move(partition)) {}

ConfigurationP1 ConfigurationP1::from_points(const std::vector<std::pair<Rat, Rat>>& points) {
  if (points.empty()) throw InputError("configuration has no points");
  std::vector<int> rgs;
  std::vector<std::size_t> reps;
  for (const auto& [a, b] : points) {
    if (a.is_zero() && b.is_zero()) throw InputError("(0:0) is not a point of P^1");
    int label = -1;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const auto& [c, d] = points[reps[k]];
      if (a * d == b * c) {
        label = static_cast<int>(k);
        break;
      }
    }
    if (label == -1) {
      label = static_cast<int>(reps.size());
      reps.push_back(rgs.size());
    }
    rgs.push_back(label);
  }
  ConfigurationP1 cfg{SetPartition(std::move(rgs))};
  cfg.coords_ = points;
  return cfg;
}

QMat ConfigurationP1::matrix() const {
  QMat out(2, QVec(static_cast<std::size_t>(m())));
  for (int j = 0; j < m(); ++j) {
    if (coords_) {
      out[0][j] = (*coords_)[j].first;
      out[1][j] = (*coords_)[j].second;
    } else {
      out[0][j] = 1;
      out[1][j] = partition_.block_of(j);
    }
  }
  return out;
}

SLnConfig::SLnConfig(QMat matrix) : matrix_(std::move(matrix)) {
  if (matrix_.empty() || matrix_.front().dim() == 0) throw InputError("configuration matrix is empty");
  const std::size_t m = matrix_.front().dim();
  for (const auto& row : matrix_) {
    if (row.dim() != m) throw InputError("configuration matrix is ragged");
  }
  for (std::size_t j = 0; j < m; ++j) {
    bool nonzero = false;
    for (const auto& row : matrix_) nonzero |= !row[j].is_zero();
    if (!nonzero) throw InputError("configuration column " + std::to_string(j + 1) + " is zero");
  }
}

int SLnConfig::column_rank(const Subset& cols) const {
  QMat sub;
  for (const auto& row : matrix_) {
    QVec r(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) r[k] = row[cols[k]];
    sub.push_back(std::move(r));
  }
  return static_cast<int>(geom::rank(sub, cols.size()));
}

std::string_view class_name(StabilityClass c) {
  switch (c) {
    case StabilityClass::Stable: return "stable";
    case StabilityClass::StrictlySemistable: return "strictly_semistable";
    case StabilityClass::Unstable: return "unstable";
  }
  return "unknown";
}

StabilityVerdict torus_classify(const Polytope& poly, const QVec& mu, int reference_dim) {
  if (mu.dim() != poly.ambient_dim()) throw InputError("torus_classify: dimension mismatch");
  const auto where = geom::membership(mu, poly, reference_dim);
  const auto dist = geom::signed_sq_distance_to_boundary(mu, poly, reference_dim);
  StabilityClass cls = StabilityClass::StrictlySemistable;
  if (where == geom::Membership::InteriorFullDim) cls = StabilityClass::Stable;
  if (where == geom::Membership::Outside) cls = StabilityClass::Unstable;
  return {cls, dist.sign, dist.sq_magnitude, {}, std::nullopt};
}

StabilityVerdict sl2_classify(const ConfigurationP1& cfg, const WeightVector& w) {
  if (w.n() != 2) throw InputError("sl2_classify needs weights summing to 2");
  if (w.m() != cfg.m()) throw InputError("sl2_classify: weight length differs from point count");
  const int m = cfg.m();
  std::vector<unsigned long> block_masks(static_cast<std::size_t>(cfg.partition().block_count()), 0);
  for (int i = 0; i < m; ++i) block_masks[cfg.partition().block_of(i)] |= 1UL << i;
  auto verdict = rank_verdict(w, [&](unsigned long mask) {
    for (auto b : block_masks) {
      if ((mask & ~b) == 0) return 1;
    }
    return 2;
  });
  // Report the heavy coincidence blocks when they explain the verdict.
  std::vector<Subset> heavy;
  for (const auto& b : cfg.partition().blocks()) {
    if (w.weight(b) >= Rat(1)) heavy.push_back(b);
  }
  if (!heavy.empty()) verdict.witnesses = std::move(heavy);
  return verdict;
}

StabilityClass sl2_class(const SetPartition& partition, const WeightVector& w) {
  if (!w.is_effective() || w.n() != 2 || w.m() != partition.m()) {
    return sl2_classify(ConfigurationP1(partition), w).cls;
  }
  std::vector<Rat> load(static_cast<std::size_t>(partition.block_count()));
  bool zero_weight = false;
  for (int i = 0; i < w.m(); ++i) {
    load[partition.block_of(i)] += w[i];
    zero_weight |= w[i].is_zero();
  }
  bool critical = zero_weight;
  for (const auto& b : load) {
    const int c = (b - Rat(1)).sign();
    if (c > 0) return StabilityClass::Unstable;
    critical |= c == 0;
  }
  return critical ? StabilityClass::StrictlySemistable : StabilityClass::Stable;
}

StabilityVerdict sln_classify(const SLnConfig& cfg, const WeightVector& w) {
  if (w.n() != cfg.n()) throw InputError("sln_classify: weights must sum to the number of rows");
  if (w.m() != cfg.m()) throw InputError("sln_classify: weight length differs from column count");
  if (cfg.column_rank(mask_to_subset((1UL << cfg.m()) - 1, cfg.m())) < cfg.n()) {
    throw DomainError(ErrorKind::RankDeficient, "configuration matrix has rank < " + std::to_string(cfg.n()));
  }
  return rank_verdict(w, [&](unsigned long mask) { return cfg.column_rank(mask_to_subset(mask, cfg.m())); });
}

bool gm_check(const SLnConfig& cfg, const WeightVector& w) {
  const auto direct = sln_classify(cfg, w);
  const auto poly = moment::matroid_polytope(moment::plucker(cfg.matrix()));
  const auto torus = torus_classify(poly, w.alpha(), cfg.m() - 1);
  return direct.cls == torus.cls;
}

QMat slice_directions(int m) {
  QMat out;
  for (int i = 0; i + 1 < m; ++i) {
    QVec d(static_cast<std::size_t>(m));
    d[i] = 1;
    d[m - 1] = -1;
    out.push_back(std::move(d));
  }
  return out;
}

StabilityVerdict oracle_1ps(const WeightSet& support_weights, const QVec& mu, const QMat& reference) {
  const std::size_t r = support_weights.rank();
  if (mu.dim() != r) throw InputError("oracle_1ps: dimension mismatch");
  std::vector<QVec> u;
  for (const auto& chi : support_weights.characters()) u.push_back(chi - mu);

  QMat vbasis;
  if (reference.empty()) {
    for (std::size_t i = 0; i < r; ++i) vbasis.push_back(QVec::unit(r, i));
  } else {
    vbasis = geom::rref(reference, r).rows;
  }
  const std::size_t dim_v = vbasis.size();

  // Components outside the reference space come from the central directions,
  // which act on every weight through the same character.
  if (dim_v < r) {
    std::optional<QVec> off;
    for (const auto& x : u) {
      QVec c = geom::project_out(x, vbasis);
      if (!off) {
        off = c;
      } else if (*off != c) {
        throw InputError("oracle_1ps: weights do not lie in a translate of the reference space");
      }
    }
    if (!off->is_zero()) {
      return {StabilityClass::Unstable, 1, Rat(0), {}, geom::primitive(*off)};
    }
  }

  QMat ubasis = geom::rref(u, r).rows;
  const std::size_t k = ubasis.size();
  if (k == 0) {
    StabilityClass cls = dim_v == 0 ? StabilityClass::Stable : StabilityClass::StrictlySemistable;
    return {cls, dim_v == 0 ? -1 : 0, Rat(0), {}, std::nullopt};
  }
  std::vector<QVec> w;
  bool has_zero = false;
  for (const auto& x : u) {
    QVec c(k);
    for (std::size_t j = 0; j < k; ++j) c[j] = x.dot(ubasis[j]);
    has_zero |= x.is_zero();
    w.push_back(std::move(c));
  }

  // Extreme rays of {c : w_i . c >= 0}: one-dimensional solution spaces of
  // k-1 of the equations, oriented into the cone.
  std::set<QVec> rays;
  const std::size_t s = w.size();
  for (const auto& pick : moment::subsets_of_size(static_cast<int>(s), static_cast<int>(k - 1))) {
    QMat eqs;
    for (int idx : pick) eqs.push_back(w[idx]);
    QMat ns = geom::nullspace(eqs, k);
    if (ns.size() != 1) continue;
    for (int orient : {1, -1}) {
      QVec ray = ns.front() * Rat(orient);
      bool inside = true;
      for (const auto& wi : w) {
        if (wi.dot(ray).sign() < 0) {
          inside = false;
          break;
        }
      }
      if (inside) rays.insert(geom::primitive(ray));
    }
  }

  if (!has_zero && !rays.empty()) {
    QVec total(k);
    for (const auto& ray : rays) total += ray;
    bool strict = true;
    for (const auto& wi : w) strict &= wi.dot(total).sign() > 0;
    if (strict) {
      QVec dir(r);
      for (std::size_t j = 0; j < k; ++j) dir += ubasis[j] * total[j];
      return {StabilityClass::Unstable, 1, Rat(0), {}, geom::primitive(dir)};
    }
  }
  if (k == dim_v && rays.empty()) return {StabilityClass::Stable, -1, Rat(0), {}, std::nullopt};
  return {StabilityClass::StrictlySemistable, 0, Rat(0), {}, std::nullopt};
}

std::vector<StabilityVerdict> classify_all(const std::vector<ConfigurationP1>& cfgs, const WeightVector& w) {
  return parallel_map(cfgs.size(), [&](std::size_t i) { return sl2_classify(cfgs[i], w); });
}

}  // namespace rgit::stability
