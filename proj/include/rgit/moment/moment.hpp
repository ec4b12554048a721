#pragma once

#include <map>
#include <string>
#include <vector>

#include "rgit/exactgeom/linalg.hpp"
#include "rgit/exactgeom/polytope.hpp"

namespace rgit::moment {

using geom::Polytope;
using geom::QMat;
using geom::QVec;
using geom::Rat;

/// Sorted 0-based index subset of {0..m-1}.
using Subset = std::vector<int>;

/// All n-subsets of {0..m-1} in lexicographic order.
std::vector<Subset> subsets_of_size(int m, int n);

/// 0/1 indicator vector e_J in Q^m.
QVec indicator(int m, const Subset& subset);

/// Subset label as 1-based digits ("13"); comma separated when m > 9.
std::string subset_label(const Subset& subset, int m);

/// Characters of a diagonal torus action, all in Q^rank.
class WeightSet {
 public:
  explicit WeightSet(std::vector<QVec> characters);

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return chars_.size(); }
  const QVec& operator[](std::size_t i) const { return chars_[i]; }
  const std::vector<QVec>& characters() const { return chars_; }

 private:
  std::vector<QVec> chars_;
  std::size_t rank_;
};

/// Plücker coordinates of an n x m matrix, one entry per n-subset in
/// lexicographic order.
class PluckerVector {
 public:
  PluckerVector(int m, int n, std::map<Subset, Rat> entries);

  int m() const { return m_; }
  int n() const { return n_; }
  const std::map<Subset, Rat>& entries() const { return entries_; }
  const Rat& at(const Subset& subset) const { return entries_.at(subset); }
  /// n-subsets with nonzero coordinate.
  std::vector<Subset> support() const;

 private:
  int m_;
  int n_;
  std::map<Subset, Rat> entries_;
};

/// Matroid whose bases are the support of a Plücker vector.
class MatroidData {
 public:
  explicit MatroidData(const PluckerVector& pv);

  int ground_size() const { return m_; }
  int rank() const { return n_; }
  const std::vector<Subset>& bases() const { return bases_; }
  bool is_basis(const Subset& s) const;
  /// Rank function via the bases (max |S cap B|).
  int rank_of(const Subset& s) const;

 private:
  int m_;
  int n_;
  std::vector<Subset> bases_;
};

/// Integer matrix acting on character vectors (rows x cols).
class LatticeMap {
 public:
  explicit LatticeMap(std::vector<std::vector<long>> matrix);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  QVec apply(const QVec& x) const;

  static LatticeMap identity(std::size_t n);

 private:
  std::vector<std::vector<long>> a_;
  std::size_t rows_;
  std::size_t cols_;
};

/// conv{e_J : |J| = n}. Throws InputError unless 1 <= n < m.
Polytope hypersimplex(int m, int n);

/// Maximal minors of an n x m matrix. Throws DomainError(RankDeficient) when rank < n.
PluckerVector plucker(const QMat& matrix);

/// conv{e_J : p_J != 0}.
Polytope matroid_polytope(const PluckerVector& pv);

/// conv{chars[i] : i in support}; indices are 0-based.
Polytope weight_polytope(const std::vector<int>& support, const WeightSet& chars);

/// conv{f(v) : v vertex of P}.
Polytope pushforward(const Polytope& poly, const LatticeMap& f);

/// Minkowski sum base + (1/n) fiber.
Polytope tensor_linearization(const Polytope& base, const Polytope& fiber, int n);

}  // namespace rgit::moment
