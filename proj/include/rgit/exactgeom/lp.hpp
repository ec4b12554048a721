#pragma once

#include <variant>
#include <vector>

#include "rgit/exactgeom/rational.hpp"

namespace rgit::geom {

enum class Relation { LessEq, GreaterEq, Equal };

/// coeffs . x  (<= | >= | =)  rhs
struct LinearConstraint {
  QVec coeffs;
  Relation rel;
  Rat rhs;

  /// Signed slack, oriented so that satisfaction means slack >= 0
  /// (or == 0 for equalities): rhs - a.x for <= and =, a.x - rhs for >=.
  Rat slack(const QVec& x) const;
  bool satisfied_by(const QVec& x) const;
};

struct Feasible {
  QVec witness;
};

/// Farkas certificate: multipliers y (y_k >= 0 on inequalities, free on
/// equalities) such that sum_k y_k * slack_k(x) is the constant -1 for every x.
struct Infeasible {
  QVec certificate;
};

using Feasibility = std::variant<Feasible, Infeasible>;

/// Exact feasibility of a system over free variables in R^dim.
/// Throws InputError when a constraint has the wrong dimension.
Feasibility lp_feasible(const std::vector<LinearConstraint>& constraints, std::size_t dim);

bool verify_witness(const std::vector<LinearConstraint>& constraints, const QVec& witness);
bool verify_certificate(const std::vector<LinearConstraint>& constraints, const QVec& certificate);

struct LpOptimal {
  QVec x;
  Rat value;
};
struct LpInfeasible {};
struct LpUnbounded {};

using LpResult = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

/// maximize objective . x subject to constraints. Variables flagged in
/// `nonnegative` carry an implicit x_j >= 0 bound (empty mask = all free).
LpResult lp_maximize(const QVec& objective, const std::vector<LinearConstraint>& constraints,
                     const std::vector<bool>& nonnegative = {});

}  // namespace rgit::geom
