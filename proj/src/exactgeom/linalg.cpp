#include "rgit/exactgeom/linalg.hpp"

#include "rgit/common/errors.hpp"

namespace rgit::geom {

RowEchelon rref(QMat rows, std::size_t cols) {
  for (const auto& r : rows) {
    if (r.dim() != cols) throw InputError("rref: row dimension mismatch");
  }
  RowEchelon out;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows.size(); ++col) {
    std::size_t piv = lead;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[lead], rows[piv]);
    Rat inv = Rat(1) / rows[lead][col];
    rows[lead] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col].is_zero()) continue;
      Rat f = rows[r][col];
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= f * rows[lead][c];
    }
    out.pivots.push_back(col);
    ++lead;
  }
  rows.resize(lead);
  out.rows = std::move(rows);
  return out;
}

std::size_t rank(const QMat& rows, std::size_t cols) { return rref(rows, cols).pivots.size(); }

QMat nullspace(const QMat& rows, std::size_t cols) {
  RowEchelon e = rref(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  QMat basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve_square(const QMat& a, const QVec& b) {
  const std::size_t n = a.size();
  if (b.dim() != n) throw InputError("solve_square: shape mismatch");
  QMat aug;
  aug.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].dim() != n) throw InputError("solve_square: matrix not square");
    QVec row(n + 1);
    for (std::size_t j = 0; j < n; ++j) row[j] = a[i][j];
    row[n] = b[i];
    aug.push_back(std::move(row));
  }
  RowEchelon e = rref(std::move(aug), n + 1);
  if (e.pivots.size() != n || e.pivots.back() != n - 1) return std::nullopt;
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.rows[i][n];
  return x;
}

Rat determinant(QMat a) {
  const std::size_t n = a.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      Rat f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

QVec project_out(const QVec& v, const QMat& normals) {
  if (normals.empty()) return v;
  // Solve (N N^T) y = N v, then v - N^T y.
  const std::size_t k = normals.size();
  QMat gram(k, QVec(k));
  QVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    rhs[i] = normals[i].dot(v);
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = normals[i].dot(normals[j]);
  }
  auto y = solve_square(gram, rhs);
  if (!y) throw std::logic_error("project_out: dependent normals");
  QVec out = v;
  for (std::size_t i = 0; i < k; ++i) out -= normals[i] * (*y)[i];
  return out;
}

}  // namespace rgit::geom
