#include "rgit/exactgeom/lp.hpp"

#include <optional>
#include <stdexcept>

#include "rgit/common/errors.hpp"

namespace rgit::geom {

Rat LinearConstraint::slack(const QVec& x) const {
  Rat ax = coeffs.dot(x);
  return rel == Relation::GreaterEq ? ax - rhs : rhs - ax;
}

bool LinearConstraint::satisfied_by(const QVec& x) const {
  Rat s = slack(x);
  return rel == Relation::Equal ? s.is_zero() : s.sign() >= 0;
}

namespace {

// Dense two-phase primal simplex over Q with Bland's rule.
//
// Each constraint row is rewritten as  sigma*rho*(a.x) [+ sigma*s] [+ art] = sigma*rho*b
// with rho = -1 for >= rows, sigma chosen so the right-hand side is nonnegative.
class Simplex {
 public:
  Simplex(const std::vector<LinearConstraint>& cons, std::size_t dim, const std::vector<bool>& nonneg)
      : dim_(dim), nrows_(cons.size()) {
    // structural columns
    for (std::size_t j = 0; j < dim; ++j) {
      bool nn = !nonneg.empty() && nonneg[j];
      var_pos_.push_back(ncols_++);
      var_neg_.push_back(nn ? npos : ncols_++);
    }
    nstruct_ = ncols_;
    sigma_.resize(nrows_);
    rho_.resize(nrows_);
    slack_col_.assign(nrows_, npos);
    art_col_.assign(nrows_, npos);
    for (std::size_t r = 0; r < nrows_; ++r) {
      rho_[r] = cons[r].rel == Relation::GreaterEq ? -1 : 1;
      if (cons[r].rel != Relation::Equal) slack_col_[r] = ncols_++;
    }
    for (std::size_t r = 0; r < nrows_; ++r) {
      Rat b = cons[r].rhs * Rat(rho_[r]);
      sigma_[r] = b.sign() < 0 ? -1 : 1;
      bool slack_basis = slack_col_[r] != npos && sigma_[r] == 1;
      if (!slack_basis) art_col_[r] = ncols_++;
    }
    rhs_ = ncols_;
    t_.assign(nrows_, std::vector<mpq_class>(ncols_ + 1, 0));
    basis_.resize(nrows_);
    for (std::size_t r = 0; r < nrows_; ++r) {
      const mpq_class sr = sigma_[r] * rho_[r];
      for (std::size_t j = 0; j < dim; ++j) {
        const mpq_class& a = cons[r].coeffs[j].raw();
        if (sgn(a) == 0) continue;
        t_[r][var_pos_[j]] = sr * a;
        if (var_neg_[j] != npos) t_[r][var_neg_[j]] = -sr * a;
      }
      if (slack_col_[r] != npos) t_[r][slack_col_[r]] = sigma_[r];
      if (art_col_[r] != npos) t_[r][art_col_[r]] = 1;
      t_[r][rhs_] = sr * cons[r].rhs.raw();
      basis_[r] = art_col_[r] != npos ? art_col_[r] : slack_col_[r];
    }
    allowed_.assign(ncols_, true);
  }

  /// Phase I. Returns false if infeasible; fills `farkas_` in that case.
  bool phase_one() {
    bool any_art = false;
    for (auto c : art_col_) any_art |= c != npos;
    if (!any_art) return true;
    std::vector<mpq_class> cost(ncols_, 0);
    for (auto c : art_col_) {
      if (c != npos) cost[c] = -1;
    }
    set_objective(cost);
    run();
    if (sgn(obj_[rhs_]) != 0) {
      // Phase-I optimum -obj_[rhs_] < 0: extract Farkas multipliers.
      farkas_ = QVec(nrows_);
      for (std::size_t r = 0; r < nrows_; ++r) {
        mpq_class y = art_col_[r] != npos ? mpq_class(-1 - obj_[art_col_[r]])
                                          : mpq_class(-obj_[slack_col_[r]]);
        farkas_[r] = Rat(mpq_class(y * sigma_[r]));
      }
      return false;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < t_.size();) {
      if (!is_art(basis_[r])) {
        ++r;
        continue;
      }
      std::size_t col = npos;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (!is_art(j) && sgn(t_[r][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col == npos) {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      pivot(r, col);
      ++r;
    }
    for (auto c : art_col_) {
      if (c != npos) allowed_[c] = false;
    }
    return true;
  }

  /// Phase II on a feasible basis. Returns false if unbounded.
  bool phase_two(const QVec& objective) {
    std::vector<mpq_class> cost(ncols_, 0);
    for (std::size_t j = 0; j < dim_; ++j) {
      cost[var_pos_[j]] = objective[j].raw();
      if (var_neg_[j] != npos) cost[var_neg_[j]] = -objective[j].raw();
    }
    set_objective(cost);
    return run();
  }

  QVec solution() const {
    std::vector<mpq_class> val(ncols_, 0);
    for (std::size_t r = 0; r < t_.size(); ++r) val[basis_[r]] = t_[r][rhs_];
    QVec x(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      mpq_class v = val[var_pos_[j]];
      if (var_neg_[j] != npos) v -= val[var_neg_[j]];
      x[j] = Rat(v);
    }
    return x;
  }

  Rat value() const { return Rat(mpq_class(-obj_[rhs_])); }
  const QVec& farkas() const { return farkas_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool is_art(std::size_t col) const { return col >= nstruct_ && !is_slack(col); }
  bool is_slack(std::size_t col) const {
    for (auto c : slack_col_) {
      if (c == col) return true;
    }
    return false;
  }

  void set_objective(const std::vector<mpq_class>& cost) {
    obj_.assign(ncols_ + 1, 0);
    for (std::size_t j = 0; j < ncols_; ++j) obj_[j] = cost[j];
    for (std::size_t r = 0; r < t_.size(); ++r) {
      const mpq_class& cb = cost[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= ncols_; ++j) {
        if (sgn(t_[r][j]) != 0) obj_[j] -= cb * t_[r][j];
      }
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& pr = t_[row];
    const mpq_class inv = 1 / pr[col];
    for (auto& v : pr) {
      if (sgn(v) != 0) v *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= ncols_; ++j) {
      if (sgn(pr[j]) != 0) nz.push_back(j);
    }
    auto eliminate = [&](std::vector<mpq_class>& target) {
      if (sgn(target[col]) == 0) return;
      const mpq_class f = target[col];
      for (auto j : nz) target[j] -= f * pr[j];
    };
    for (std::size_t r = 0; r < t_.size(); ++r) {
      if (r != row) eliminate(t_[r]);
    }
    eliminate(obj_);
    basis_[row] = col;
  }

  // Maximizes the current objective row. Returns false if unbounded.
  bool run() {
    while (true) {
      std::size_t enter = npos;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (allowed_[j] && sgn(obj_[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == npos) return true;
      std::size_t leave = npos;
      mpq_class best;
      for (std::size_t r = 0; r < t_.size(); ++r) {
        if (sgn(t_[r][enter]) <= 0) continue;
        mpq_class ratio = t_[r][rhs_] / t_[r][enter];
        if (leave == npos || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == npos) return false;
      pivot(leave, enter);
    }
  }

  std::size_t dim_;
  std::size_t nrows_;
  std::size_t ncols_ = 0;
  std::size_t nstruct_ = 0;
  std::size_t rhs_ = 0;
  std::vector<std::size_t> var_pos_, var_neg_, slack_col_, art_col_;
  std::vector<int> sigma_, rho_;
  std::vector<std::vector<mpq_class>> t_;
  std::vector<mpq_class> obj_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  QVec farkas_;
};

void check_dims(const std::vector<LinearConstraint>& constraints, std::size_t dim) {
  for (const auto& c : constraints) {
    if (c.coeffs.dim() != dim) throw InputError("linear constraint dimension mismatch");
  }
}

}  // namespace

Feasibility lp_feasible(const std::vector<LinearConstraint>& constraints, std::size_t dim) {
  check_dims(constraints, dim);
  Simplex s(constraints, dim, {});
  if (!s.phase_one()) {
    QVec y = s.farkas();
    // Normalize so the constant combination equals -1.
    Rat constant;
    for (std::size_t k = 0; k < constraints.size(); ++k) {
      const auto& c = constraints[k];
      constant += y[k] * (c.rel == Relation::GreaterEq ? -c.rhs : c.rhs);
    }
    if (constant.sign() >= 0) throw std::logic_error("lp_feasible: invalid Farkas certificate");
    y *= Rat(-1) / constant;
    if (!verify_certificate(constraints, y)) {
      throw std::logic_error("lp_feasible: Farkas certificate failed verification");
    }
    return Infeasible{std::move(y)};
  }
  QVec x = s.solution();
  if (!verify_witness(constraints, x)) throw std::logic_error("lp_feasible: witness failed verification");
  return Feasible{std::move(x)};
}

bool verify_witness(const std::vector<LinearConstraint>& constraints, const QVec& witness) {
  for (const auto& c : constraints) {
    if (c.coeffs.dim() != witness.dim() || !c.satisfied_by(witness)) return false;
  }
  return true;
}

bool verify_certificate(const std::vector<LinearConstraint>& constraints, const QVec& y) {
  if (y.dim() != constraints.size()) return false;
  if (constraints.empty()) return false;
  const std::size_t dim = constraints.front().coeffs.dim();
  // sum_k y_k slack_k(x) = constant + linear . x; require linear == 0, constant < 0.
  QVec linear(dim);
  Rat constant;
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& c = constraints[k];
    if (c.rel != Relation::Equal && y[k].sign() < 0) return false;
    if (c.rel == Relation::GreaterEq) {
      linear += c.coeffs * y[k];
      constant -= y[k] * c.rhs;
    } else {
      linear -= c.coeffs * y[k];
      constant += y[k] * c.rhs;
    }
  }
  return linear.is_zero() && constant.sign() < 0;
}

LpResult lp_maximize(const QVec& objective, const std::vector<LinearConstraint>& constraints,
                     const std::vector<bool>& nonnegative) {
  const std::size_t dim = objective.dim();
  check_dims(constraints, dim);
  if (!nonnegative.empty() && nonnegative.size() != dim) {
    throw InputError("lp_maximize: nonnegativity mask dimension mismatch");
  }
  Simplex s(constraints, dim, nonnegative);
  if (!s.phase_one()) return LpInfeasible{};
  if (!s.phase_two(objective)) return LpUnbounded{};
  return LpOptimal{s.solution(), s.value()};
}

}  // namespace rgit::geom
