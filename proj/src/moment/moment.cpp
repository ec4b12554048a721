#include "rgit/moment/moment.hpp"

#include <algorithm>
#include <set>

#include "rgit/common/errors.hpp"

namespace rgit::moment {

std::vector<Subset> subsets_of_size(int m, int n) {
  std::vector<Subset> out;
  if (n < 0 || n > m) return out;
  Subset cur(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == m - n + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < n; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

QVec indicator(int m, const Subset& subset) {
  QVec e(static_cast<std::size_t>(m));
  for (int i : subset) {
    if (i < 0 || i >= m) throw InputError("subset index out of range");
    e[i] = 1;
  }
  return e;
}

std::string subset_label(const Subset& subset, int m) {
  std::string s;
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (m > 9 && k) s += ',';
    s += std::to_string(subset[k] + 1);
  }
  return s;
}

WeightSet::WeightSet(std::vector<QVec> characters) : chars_(std::move(characters)) {
  if (chars_.empty()) throw InputError("weight set must be nonempty");
  rank_ = chars_.front().dim();
  for (const auto& c : chars_) {
    if (c.dim() != rank_) throw InputError("weight set: characters of different rank");
  }
}

PluckerVector::PluckerVector(int m, int n, std::map<Subset, Rat> entries)
    : m_(m), n_(n), entries_(std::move(entries)) {
  if (n < 1 || n > m) throw InputError("plucker vector: invalid shape");
  bool nonzero = false;
  for (const auto& [k, val] : entries_) {
    if (static_cast<int>(k.size()) != n) throw InputError("plucker vector: subset of wrong size");
    nonzero |= !val.is_zero();
  }
  if (!nonzero) throw InputError("plucker vector: all entries zero");
}

std::vector<Subset> PluckerVector::support() const {
  std::vector<Subset> out;
  for (const auto& [k, val] : entries_) {
    if (!val.is_zero()) out.push_back(k);
  }
  return out;
}

MatroidData::MatroidData(const PluckerVector& pv) : m_(pv.m()), n_(pv.n()), bases_(pv.support()) {
  // Basis exchange: for B1, B2 and x in B1 \ B2 there is y in B2 \ B1 with B1 - x + y a basis.
  std::set<Subset> lookup(bases_.begin(), bases_.end());
  for (const auto& b1 : bases_) {
    for (const auto& b2 : bases_) {
      for (int x : b1) {
        if (std::binary_search(b2.begin(), b2.end(), x)) continue;
        bool found = false;
        for (int y : b2) {
          if (std::binary_search(b1.begin(), b1.end(), y)) continue;
          Subset s;
          for (int z : b1) {
            if (z != x) s.push_back(z);
          }
          s.push_back(y);
          std::sort(s.begin(), s.end());
          if (lookup.count(s)) {
            found = true;
            break;
          }
        }
        if (!found) throw std::logic_error("matroid: basis exchange axiom violated");
      }
    }
  }
}

bool MatroidData::is_basis(const Subset& s) const {
  return std::binary_search(bases_.begin(), bases_.end(), s);
}

int MatroidData::rank_of(const Subset& s) const {
  int best = 0;
  for (const auto& b : bases_) {
    int c = 0;
    for (int x : s) c += std::binary_search(b.begin(), b.end(), x);
    best = std::max(best, c);
  }
  return best;
}

LatticeMap::LatticeMap(std::vector<std::vector<long>> matrix) : a_(std::move(matrix)) {
  rows_ = a_.size();
  cols_ = rows_ ? a_.front().size() : 0;
  for (const auto& r : a_) {
    if (r.size() != cols_) throw InputError("lattice map: ragged matrix");
  }
}

QVec LatticeMap::apply(const QVec& x) const {
  if (x.dim() != cols_) throw InputError("lattice map: dimension mismatch");
  QVec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (a_[i][j] != 0) y[i] += Rat(a_[i][j]) * x[j];
    }
  }
  return y;
}

LatticeMap LatticeMap::identity(std::size_t n) {
  std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  return LatticeMap(std::move(a));
}

Polytope hypersimplex(int m, int n) {
  if (n < 1 || n >= m) throw InputError("hypersimplex requires 1 <= n < m");
  std::vector<QVec> pts;
  for (const auto& j : subsets_of_size(m, n)) pts.push_back(indicator(m, j));
  return geom::convex_hull(pts);
}

PluckerVector plucker(const QMat& matrix) {
  const int n = static_cast<int>(matrix.size());
  if (n == 0) throw InputError("plucker: empty matrix");
  const int m = static_cast<int>(matrix.front().dim());
  for (const auto& row : matrix) {
    if (static_cast<int>(row.dim()) != m) throw InputError("plucker: ragged matrix");
  }
  if (n > m) throw InputError("plucker: more rows than columns");
  if (static_cast<int>(geom::rank(matrix, static_cast<std::size_t>(m))) < n) {
    throw DomainError(ErrorKind::RankDeficient, "configuration matrix has rank < " + std::to_string(n));
  }
  std::map<Subset, Rat> entries;
  for (const auto& j : subsets_of_size(m, n)) {
    QMat minor(static_cast<std::size_t>(n), QVec(static_cast<std::size_t>(n)));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) minor[r][c] = matrix[r][j[c]];
    }
    entries.emplace(j, geom::determinant(std::move(minor)));
  }
  return PluckerVector(m, n, std::move(entries));
}

Polytope matroid_polytope(const PluckerVector& pv) {
  std::vector<QVec> pts;
  for (const auto& j : pv.support()) pts.push_back(indicator(pv.m(), j));
  return geom::convex_hull(pts);
}

Polytope weight_polytope(const std::vector<int>& support, const WeightSet& chars) {
  if (support.empty()) throw InputError("weight_polytope: empty support");
  std::vector<QVec> pts;
  for (int i : support) {
    if (i < 0 || static_cast<std::size_t>(i) >= chars.size()) {
      throw InputError("weight_polytope: support index out of range");
    }
    pts.push_back(chars[i]);
  }
  return geom::convex_hull(pts);
}

Polytope pushforward(const Polytope& poly, const LatticeMap& f) {
  if (f.cols() != poly.ambient_dim()) throw InputError("pushforward: dimension mismatch");
  std::vector<QVec> pts;
  for (const auto& v : poly.vertices()) pts.push_back(f.apply(v));
  return geom::convex_hull(pts);
}

Polytope tensor_linearization(const Polytope& base, const Polytope& fiber, int n) {
  if (base.ambient_dim() != fiber.ambient_dim()) throw InputError("tensor_linearization: dimension mismatch");
  if (n < 1) throw InputError("tensor_linearization: n must be positive");
  const Rat scale(1, n);
  std::vector<QVec> pts;
  for (const auto& b : base.vertices()) {
    for (const auto& f : fiber.vertices()) pts.push_back(b + f * scale);
  }
  return geom::convex_hull(pts);
}

}  // namespace rgit::moment
