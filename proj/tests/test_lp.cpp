#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "jspec/error.hpp"
#include "jspec/lp.hpp"

using namespace jspec;

namespace {

ExactVector vec(std::initializer_list<long> xs) {
  ExactVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Brute-force oracle: maximum of c.x over every vertex obtained by making n
// constraints tight. Valid for bounded, full-dimensional fixtures.
std::optional<Exact> brute_force_max(const LinearProgram& lp) {
  const auto rows = lp.all_rows();
  const int n = lp.num_vars, m = int(rows.size());
  std::optional<Exact> best;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      ExactMatrix a(n, n);
      ExactVector b(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = rows[pick[i]].row[j];
        b[i] = rows[pick[i]].rhs;
      }
      auto x = solve(a, b);
      if (x && satisfies(lp, *x)) {
        const Exact v = dot(*lp.objective, *x);
        if (!best || v > *best) best = v;
      }
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST(Exact, ParseAndFormat) {
  EXPECT_EQ(to_string(parse_exact("3/7")), "3/7");
  EXPECT_EQ(to_string(parse_exact("6/14")), "3/7");
  EXPECT_EQ(to_string(parse_exact("-1/4-1/4*sqrt5")), "-1/4-1/4*sqrt5");
  EXPECT_EQ(to_string(parse_exact("sqrt5")), "sqrt5");
  EXPECT_EQ(to_string(parse_exact("0.553")), "553/1000");
  EXPECT_EQ(parse_exact("1/2 + 1/2*sqrt(5)"), Exact(Rational(1, 2), Rational(1, 2)));
  EXPECT_THROW(parse_exact("1/0"), InvalidInput);
  EXPECT_THROW(parse_exact("abc"), InvalidInput);
}

TEST(Exact, OrderedFieldSigns) {
  const Exact r5 = Exact::sqrt5();
  EXPECT_EQ(r5 * r5, Exact(5));
  EXPECT_GT(r5, Exact(2));
  EXPECT_LT(r5, Exact(Rational(9, 4)));
  EXPECT_LT(Exact(Rational(1), Rational(-1)), Exact(0));  // 1 - sqrt5
  const Exact phi = (Exact(1) + r5) / Exact(2);
  EXPECT_EQ(phi * phi, phi + Exact(1));
  EXPECT_EQ(Exact(1) / phi, phi - Exact(1));
}

TEST(Exact, LinearAlgebra) {
  ExactMatrix a = ExactMatrix::from_rows({vec({2, 1}), vec({1, 3})});
  EXPECT_EQ(determinant(a), Exact(5));
  auto x = solve(a, vec({3, 4}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, vec({1, 1}));
  auto inv = inverse(a);
  ASSERT_TRUE(inv);
  EXPECT_EQ(a * *inv, ExactMatrix::identity(2));
  EXPECT_EQ(matrix_rank(ExactMatrix::from_rows({vec({1, 2}), vec({2, 4})})), 1);
  EXPECT_FALSE(solve_any(ExactMatrix::from_rows({vec({1, 1}), vec({1, 1})}), vec({0, 1})));
}

TEST(LpFeasible, Examples) {
  LinearProgram lp(1);
  lp.add(vec({1}), Relation::GreaterEq, 0);
  lp.add(vec({1}), Relation::LessEq, 1);
  auto r = lp_feasible(lp);
  ASSERT_TRUE(std::holds_alternative<Feasible>(r));
  EXPECT_EQ(std::get<Feasible>(r).witness, vec({0}));

  LinearProgram bad(1);
  bad.add(vec({1}), Relation::GreaterEq, 1);
  bad.add(vec({1}), Relation::LessEq, 0);
  EXPECT_TRUE(std::holds_alternative<Infeasible>(lp_feasible(bad)));
}

TEST(LpFeasible, DimensionMismatch) {
  LinearProgram lp(2);
  lp.add(vec({1}), Relation::LessEq, 0);
  EXPECT_THROW(lp_feasible(lp), InvalidInput);
}

TEST(LpOptimize, Examples) {
  LinearProgram lp(1);
  lp.objective = vec({1});
  lp.set_bounds(0, Exact(0), Exact(1));
  auto r = lp_optimize(lp);
  ASSERT_TRUE(std::holds_alternative<Optimal>(r));
  EXPECT_EQ(std::get<Optimal>(r).value, Exact(1));
  EXPECT_EQ(std::get<Optimal>(r).witness, vec({1}));
  EXPECT_TRUE(verify_dual(lp, std::get<Optimal>(r)));

  LinearProgram sq(2);
  sq.objective = vec({1, 1});
  for (int j = 0; j < 2; ++j) sq.set_bounds(j, Exact(-1), Exact(1));
  auto s = lp_optimize(sq);
  ASSERT_TRUE(std::holds_alternative<Optimal>(s));
  EXPECT_EQ(std::get<Optimal>(s).value, Exact(2));
  EXPECT_EQ(std::get<Optimal>(s).witness, vec({1, 1}));
  EXPECT_TRUE(verify_dual(sq, std::get<Optimal>(s)));

  LinearProgram unb(1);
  unb.objective = vec({1});
  unb.add(vec({1}), Relation::GreaterEq, 0);
  EXPECT_TRUE(std::holds_alternative<Unbounded>(lp_optimize(unb)));
  EXPECT_THROW(lp_optimize(LinearProgram(1)), InvalidInput);
}

TEST(LpOptimize, PentagonFunctionalAttainedAtTopVertex) {
  // Affinely regular pentagon in Q(sqrt5); maximize y over convex weights.
  const Exact r5 = Exact::sqrt5();
  const Exact c1 = (r5 - Exact(1)) / Exact(4), c2 = -(r5 + Exact(1)) / Exact(4);
  const Exact inv_phi = (r5 - Exact(1)) / Exact(2);
  const std::vector<ExactVector> verts = {
      {Exact(1), Exact(0)}, {c1, Exact(1)}, {c2, inv_phi}, {c2, -inv_phi}, {c1, Exact(-1)}};
  // f(x, y) = (y + 1) / 2, an effect on the pentagon.
  auto f = [](const ExactVector& v) { return (v[1] + Exact(1)) / Exact(2); };
  LinearProgram lp(5);
  ExactVector obj, ones(5, Exact(1));
  for (const auto& v : verts) obj.push_back(f(v));
  lp.objective = obj;
  lp.add(ones, Relation::Equal, 1);
  for (int j = 0; j < 5; ++j) lp.set_bounds(j, Exact(0), std::nullopt);
  auto r = lp_optimize(lp);
  ASSERT_TRUE(std::holds_alternative<Optimal>(r));
  Exact best = f(verts[0]);
  for (const auto& v : verts) best = std::max(best, f(v));
  EXPECT_EQ(std::get<Optimal>(r).value, best);
  EXPECT_EQ(std::get<Optimal>(r).witness[1], Exact(1));
  EXPECT_TRUE(verify_dual(lp, std::get<Optimal>(r)));
}

TEST(LpOptimize, DegenerateProgramTerminates) {
  // Many constraints through the optimum: a classic cycling trap for Dantzig's rule.
  LinearProgram lp(4);
  lp.objective = ExactVector{Exact(Rational(3, 4)), Exact(-20), Exact(Rational(1, 2)), Exact(-6)};
  lp.add({Exact(Rational(1, 4)), Exact(-8), Exact(-1), Exact(9)}, Relation::LessEq, 0);
  lp.add({Exact(Rational(1, 2)), Exact(-12), Exact(Rational(-1, 2)), Exact(3)}, Relation::LessEq, 0);
  lp.add({Exact(0), Exact(0), Exact(1), Exact(0)}, Relation::LessEq, 1);
  for (int j = 0; j < 4; ++j) lp.set_bounds(j, Exact(0), std::nullopt);
  auto r = lp_optimize(lp);
  ASSERT_TRUE(std::holds_alternative<Optimal>(r));
  EXPECT_EQ(std::get<Optimal>(r).value, Exact(Rational(5, 4)));
  EXPECT_TRUE(satisfies(lp, std::get<Optimal>(r).witness));
  EXPECT_TRUE(verify_dual(lp, std::get<Optimal>(r)));
}

TEST(LpOptimize, RandomProgramsMatchVertexEnumeration) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 2;
    LinearProgram lp(n);
    ExactVector c(n);
    for (auto& v : c) v = coef(rng);
    lp.objective = c;
    for (int j = 0; j < n; ++j) lp.set_bounds(j, Exact(-3), Exact(3));
    for (int k = 0; k < 3; ++k) {
      ExactVector row(n);
      for (auto& v : row) v = coef(rng);
      lp.add(row, k == 2 ? Relation::GreaterEq : Relation::LessEq, coef(rng));
    }
    const auto oracle = brute_force_max(lp);
    const auto r = lp_optimize(lp);
    if (!oracle) {
      EXPECT_TRUE(std::holds_alternative<Infeasible>(r)) << trial;
      continue;
    }
    ASSERT_TRUE(std::holds_alternative<Optimal>(r)) << trial;
    const auto& opt = std::get<Optimal>(r);
    EXPECT_EQ(opt.value, *oracle) << trial;
    EXPECT_TRUE(satisfies(lp, opt.witness)) << trial;
    EXPECT_TRUE(verify_dual(lp, opt)) << trial;
  }
}
