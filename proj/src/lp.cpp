#include "jspec/lp.hpp"

#include "jspec/error.hpp"

namespace jspec {

void LinearProgram::set_bounds(int var, std::optional<Exact> lower, std::optional<Exact> upper) {
  if (bounds.empty()) bounds.resize(num_vars);
  bounds.at(var) = {std::move(lower), std::move(upper)};
}

std::vector<Constraint> LinearProgram::all_rows() const {
  std::vector<Constraint> rows = constraints;
  for (int j = 0; j < int(bounds.size()); ++j) {
    ExactVector e(num_vars);
    e[j] = 1;
    if (bounds[j].lower) rows.push_back({e, Relation::GreaterEq, *bounds[j].lower});
    if (bounds[j].upper) rows.push_back({e, Relation::LessEq, *bounds[j].upper});
  }
  return rows;
}

namespace {

void validate(const LinearProgram& lp) {
  if (lp.num_vars < 0) throw InvalidInput("negative variable count");
  for (const auto& c : lp.constraints) {
    if (int(c.row.size()) != lp.num_vars) throw InvalidInput("constraint row has wrong dimension");
  }
  if (lp.objective && int(lp.objective->size()) != lp.num_vars) {
    throw InvalidInput("objective has wrong dimension");
  }
  if (!lp.bounds.empty() && int(lp.bounds.size()) != lp.num_vars) {
    throw InvalidInput("bounds list has wrong dimension");
  }
}

// Tableau for: minimize cost . z subject to A z = b, z >= 0, b >= 0.
// Columns: x+ (n), x- (n), one slack per inequality row, one artificial per row.
class Simplex {
 public:
  explicit Simplex(const std::vector<Constraint>& rows, int n) : n_(n), m_(int(rows.size())) {
    slack_of_.assign(m_, -1);
    int slacks = 0;
    for (int i = 0; i < m_; ++i)
      if (rows[i].rel != Relation::Equal) slack_of_[i] = 2 * n_ + slacks++;
    art0_ = 2 * n_ + slacks;
    cols_ = art0_ + m_;
    t_ = ExactMatrix(m_, cols_ + 1);
    flip_.assign(m_, 1);
    for (int i = 0; i < m_; ++i) {
      const bool neg = rows[i].rhs.sign() < 0;
      flip_[i] = neg ? -1 : 1;
      const Exact f(flip_[i]);
      for (int j = 0; j < n_; ++j) {
        if (rows[i].row[j].sign() == 0) continue;
        t_(i, j) = f * rows[i].row[j];
        t_(i, n_ + j) = -t_(i, j);
      }
      if (slack_of_[i] >= 0) t_(i, slack_of_[i]) = Exact(rows[i].rel == Relation::LessEq ? 1 : -1) * f;
      t_(i, art0_ + i) = 1;
      t_(i, cols_) = f * rows[i].rhs;
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = art0_ + i;
  }

  // Phase I; returns false when infeasible.
  bool phase_one() {
    std::vector<Exact> cost(cols_);
    for (int i = 0; i < m_; ++i) cost[art0_ + i] = 1;
    set_objective(cost);
    run(cols_);
    if (obj_value_.sign() != 0) return false;
    // Drive zero-level artificials out of the basis where possible.
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < art0_) continue;
      for (int j = 0; j < art0_; ++j) {
        if (t_(i, j).sign() != 0) {
          pivot(i, j);
          break;
        }
      }
    }
    return true;
  }

  // Phase II on the original objective (maximize c); returns false when unbounded.
  bool phase_two(const ExactVector& c) {
    std::vector<Exact> cost(cols_);
    for (int j = 0; j < n_; ++j) {
      cost[j] = -c[j];
      cost[n_ + j] = c[j];
    }
    set_objective(cost);
    return run(art0_);
  }

  // Phase II minimizing sum |x_j|; picks a canonical least-norm witness.
  void minimize_l1() {
    std::vector<Exact> cost(cols_);
    for (int j = 0; j < 2 * n_; ++j) cost[j] = 1;
    set_objective(cost);
    run(art0_);
  }

  ExactVector witness() const {
    ExactVector x(n_);
    for (int i = 0; i < m_; ++i) {
      const int b = basis_[i];
      if (b < n_) x[b] += t_(i, cols_);
      else if (b < 2 * n_) x[b - n_] -= t_(i, cols_);
    }
    return x;
  }

  // Multipliers for the maximization problem, one per input row.
  ExactVector dual() const {
    ExactVector y(m_);
    for (int i = 0; i < m_; ++i) {
      // Reduced cost of artificial i is -y_std_i (its phase-two cost is 0).
      const Exact y_std = -obj_[art0_ + i];
      y[i] = -Exact(flip_[i]) * y_std;
    }
    return y;
  }

  Exact value() const { return -obj_value_; }

 private:
  void set_objective(const std::vector<Exact>& cost) {
    cost_ = cost;
    obj_ = std::vector<Exact>(cost.begin(), cost.end());
    obj_value_ = 0;
    for (int i = 0; i < m_; ++i) {
      const Exact& cb = cost_[basis_[i]];
      if (cb.sign() == 0) continue;
      for (int j = 0; j < cols_; ++j)
        if (t_(i, j).sign() != 0) obj_[j] -= cb * t_(i, j);
      obj_value_ += cb * t_(i, cols_);
    }
  }

  // Bland's rule; entering columns restricted to [0, limit). Returns false if unbounded.
  bool run(int limit) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < limit; ++j)
        if (obj_[j].sign() < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Exact best;
      for (int i = 0; i < m_; ++i) {
        if (t_(i, enter).sign() <= 0) continue;
        const Exact ratio = t_(i, cols_) / t_(i, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int r, int s) {
    const Exact inv = Exact(1) / t_(r, s);
    for (int j = 0; j <= cols_; ++j)
      if (t_(r, j).sign() != 0) t_(r, j) *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == r || t_(i, s).sign() == 0) continue;
      const Exact f = t_(i, s);
      for (int j = 0; j <= cols_; ++j)
        if (t_(r, j).sign() != 0) t_(i, j) -= f * t_(r, j);
    }
    if (!obj_.empty() && obj_[s].sign() != 0) {
      const Exact f = obj_[s];
      for (int j = 0; j < cols_; ++j)
        if (t_(r, j).sign() != 0) obj_[j] -= f * t_(r, j);
      obj_value_ += f * t_(r, cols_);
    }
    basis_[r] = s;
  }

  int n_, m_;
  int art0_ = 0, cols_ = 0;
  std::vector<int> slack_of_;
  std::vector<int> flip_;
  ExactMatrix t_;
  std::vector<int> basis_;
  std::vector<Exact> cost_;
  std::vector<Exact> obj_;
  Exact obj_value_;
};

}  // namespace

FeasibilityResult lp_feasible(const LinearProgram& lp) {
  validate(lp);
  const auto rows = lp.all_rows();
  Simplex s(rows, lp.num_vars);
  if (!s.phase_one()) return Infeasible{};
  s.minimize_l1();
  return Feasible{s.witness()};
}

OptimizationResult lp_optimize(const LinearProgram& lp) {
  validate(lp);
  if (!lp.objective) throw InvalidInput("lp_optimize requires an objective");
  const auto rows = lp.all_rows();
  Simplex s(rows, lp.num_vars);
  if (!s.phase_one()) return Infeasible{};
  if (!s.phase_two(*lp.objective)) return Unbounded{};
  return Optimal{s.value(), s.witness(), s.dual()};
}

bool satisfies(const LinearProgram& lp, const ExactVector& x) {
  if (int(x.size()) != lp.num_vars) return false;
  for (const auto& c : lp.all_rows()) {
    const Exact lhs = dot(c.row, x);
    switch (c.rel) {
      case Relation::LessEq:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

bool verify_dual(const LinearProgram& lp, const Optimal& opt) {
  if (!lp.objective) return false;
  const auto rows = lp.all_rows();
  if (opt.dual.size() != rows.size()) return false;
  ExactVector aty(lp.num_vars);
  Exact by;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Exact& y = opt.dual[i];
    if (rows[i].rel == Relation::LessEq && y.sign() < 0) return false;
    if (rows[i].rel == Relation::GreaterEq && y.sign() > 0) return false;
    for (int j = 0; j < lp.num_vars; ++j) aty[j] += rows[i].row[j] * y;
    by += rows[i].rhs * y;
  }
  return aty == *lp.objective && by == opt.value && dot(*lp.objective, opt.witness) == opt.value;
}

}  // namespace jspec
