#pragma once

// Exact linear programming over Q(sqrt 5): two-phase primal simplex with
// Bland's anti-cycling rule.

#include <optional>
#include <variant>
#include <vector>

#include "jspec/exact.hpp"

namespace jspec {

enum class Relation { LessEq, Equal, GreaterEq };

struct Constraint {
  ExactVector row;
  Relation rel;
  Exact rhs;
};

struct VariableBound {
  std::optional<Exact> lower;
  std::optional<Exact> upper;
};

/// Variables are free unless bounded; the objective, when present, is maximized.
struct LinearProgram {
  int num_vars = 0;
  std::optional<ExactVector> objective;
  std::vector<Constraint> constraints;
  std::vector<VariableBound> bounds;  // empty, or one entry per variable

  explicit LinearProgram(int n = 0) : num_vars(n) {}
  void add(ExactVector row, Relation rel, Exact rhs) {
    constraints.push_back({std::move(row), rel, std::move(rhs)});
  }
  void set_bounds(int var, std::optional<Exact> lower, std::optional<Exact> upper);

  /// Constraints followed by one row per finite bound, in variable order.
  std::vector<Constraint> all_rows() const;
};

struct Feasible {
  ExactVector witness;
};
struct Infeasible {};
struct Unbounded {};
struct Optimal {
  Exact value;
  ExactVector witness;
  ExactVector dual;  // one multiplier per row of all_rows()
};

using FeasibilityResult = std::variant<Feasible, Infeasible>;
using OptimizationResult = std::variant<Optimal, Unbounded, Infeasible>;

FeasibilityResult lp_feasible(const LinearProgram& lp);
OptimizationResult lp_optimize(const LinearProgram& lp);

/// Exact check of every constraint and bound.
bool satisfies(const LinearProgram& lp, const ExactVector& x);
/// Checks the dual certificate: sign conditions, A^T y = c, and b^T y = value.
bool verify_dual(const LinearProgram& lp, const Optimal& opt);

}  // namespace jspec
