#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "jspec/catalog.hpp"
#include "jspec/classification.hpp"
#include "jspec/error.hpp"
#include "jspec/operational.hpp"

using namespace jspec;

namespace {

AlgebraDescriptor alg(Family f, int p) { return AlgebraDescriptor::make(f, p); }

const CheckResult& check(const TheoremReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  throw std::runtime_error("no check " + name);
}

}  // namespace

TEST(Formula, Arithmetic) {
  EXPECT_EQ(evaluate_formula("(n-1)*(n+2)/2", {{"n", 4}}), 9);
  EXPECT_EQ(evaluate_formula("n//2", {{"n", 7}}), 3);
  EXPECT_EQ(evaluate_formula("-7//2"), -4);
  EXPECT_EQ(evaluate_formula("(p+q)%2==1 && q<p", {{"p", 3}, {"q", 2}}), 1);
  EXPECT_EQ(evaluate_formula("p==1 || q>=5", {{"p", 2}, {"q", 4}}), 0);
  EXPECT_THROW(evaluate_formula("n/2", {{"n", 3}}), InvalidInput);
  EXPECT_THROW(evaluate_formula("m+1", {{"n", 3}}), InvalidInput);
  EXPECT_THROW(evaluate_formula("(1+2"), InvalidInput);
  EXPECT_THROW(evaluate_formula("1 $ 2"), InvalidInput);
  EXPECT_EQ(substitute_label("A_{n-1}", {{"n", 4}}), "A_3");
  EXPECT_EQ(substitute_label("C_{q} (q < p)", {}), "C_{q} (q < p)");
}

TEST(Tables, LookupExamples) {
  const auto ai = evaluate_row(mr_table_lookup("AI"), {{"n", 4}});
  EXPECT_EQ(ai.rank, 3);
  EXPECT_EQ(ai.isotropy_dim, 9);
  EXPECT_EQ(ai.root_space, "A_3");
  EXPECT_EQ(ai.polytopes, std::vector<std::string>{"Delta_3"});
  ASSERT_TRUE(ai.eja.has_value());
  EXPECT_EQ(*ai.eja, alg(Family::SymR, 4));

  const auto eiv = evaluate_row(mr_table_lookup("EIV"), {});
  EXPECT_EQ(eiv.rank, 2);
  EXPECT_EQ(eiv.isotropy_dim, 26);
  EXPECT_EQ(eiv.root_space, "A_2");
  EXPECT_EQ(eiv.polytopes, std::vector<std::string>{"Delta_2"});
  EXPECT_EQ(*eiv.eja, alg(Family::HermO, 3));

  const auto an = evaluate_row(mr_table_lookup("A_n"), {{"n", 2}});
  EXPECT_EQ(an.isotropy_dim, 8);
  EXPECT_EQ(an.polytopes, std::vector<std::string>{"Delta_2"});
  EXPECT_EQ(mr_table_lookup("A_n").eja->printed, "Herm(n,C)");
  EXPECT_TRUE(mr_table_lookup("A_n").open_question.has_value());

  EXPECT_FALSE(evaluate_row(mr_table_lookup("BI"), {{"p", 4}, {"q", 3}}).eja.has_value());
  EXPECT_EQ(*evaluate_row(mr_table_lookup("BI"), {{"p", 4}, {"q", 1}}).eja, alg(Family::Spin, 4));
  EXPECT_EQ(mr_table_lookup("DIII").root_space, "C_{q} (q odd); BC_{q} (q even)");
}

TEST(Tables, Errors) {
  EXPECT_THROW(mr_table_lookup("XYZ"), InvalidInput);
  EXPECT_THROW(evaluate_row(mr_table_lookup("AI"), {}), InvalidInput);
  EXPECT_THROW(evaluate_row(mr_table_lookup("BI"), {{"p", 2}, {"q", 2}}), InvalidInput);
}

TEST(Tables, RowCounts) {
  int per_table[5] = {0, 0, 0, 0, 0};
  for (const auto& r : mr_table_all()) ++per_table[r.table];
  EXPECT_EQ(per_table[2], 8);
  EXPECT_EQ(per_table[3], 8);
  EXPECT_EQ(per_table[4], 6);
}

TEST(Tables, RoundTrip) {
  const auto& t = mr_tables();
  const std::string once = tables_to_json(t);
  const auto back = tables_from_json(once);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(tables_to_json(back), once);
}

TEST(Tables, ConsistencyArithmetic) {
  const auto rep = table_consistency_check(mr_tables());
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.flagged_rows, std::vector<std::string>{"A_n"});
  bool aii3 = false, eiv = false, bi = false;
  for (const auto& e : rep.entries) {
    if (e.type == "AII" && e.bindings.at("n") == 3) {
      aii3 = true;
      EXPECT_EQ(e.isotropy_dim, 14);
      EXPECT_EQ(e.eja_dim, 15);
    }
    if (e.type == "EIV") {
      eiv = true;
      EXPECT_EQ(e.isotropy_dim, 26);
      EXPECT_EQ(e.eja_dim, 27);
      EXPECT_EQ(e.eja_rank, 3);
    }
    if (e.type == "BI" && e.bindings.at("q") == 1) {
      bi = true;
      EXPECT_EQ(e.isotropy_dim, e.bindings.at("p"));
      EXPECT_EQ(e.status, "pass");
    }
    if (e.type == "A_n") EXPECT_EQ(e.status, "flagged");
  }
  EXPECT_TRUE(aii3 && eiv && bi);
}

TEST(Tables, ConsistencyCatchesCorruption) {
  MrTables t = mr_tables();
  for (auto& r : t.rows)
    if (r.type == "AI") r.isotropy_dim = "(n-1)*(n+2)";
  const auto rep = table_consistency_check(t);
  EXPECT_FALSE(rep.pass());
}

TEST(Tables, EnvironmentOverride) {
  const std::string path = ::testing::TempDir() + "tables_override.json";
  {
    std::ofstream out(path);
    out << R"({"schema_version": 1, "rows": []})";
  }
  setenv("JORDAN_SPECTRA_TABLES", path.c_str(), 1);
  EXPECT_EQ(default_tables_path(), path);
  EXPECT_TRUE(load_mr_tables(default_tables_path()).rows.empty());
  unsetenv("JORDAN_SPECTRA_TABLES");
  EXPECT_NE(default_tables_path(), path);
}

TEST(FrPolytope, JordanAlgebras) {
  for (auto a : {alg(Family::SymR, 3), alg(Family::HermC, 3)}) {
    const auto s = fr_polytope(a, 10000, 3);
    EXPECT_EQ(s.simplex.num_vertices(), 3);
    EXPECT_EQ(s.simplex.dim(), 2);
    EXPECT_LE(s.vertex_residual, 1e-9);
    EXPECT_EQ(s.samples, 10000);
    EXPECT_EQ(s.mismatches, 0);
    EXPECT_GE(s.min_frame_coordinate, -1e-10);
  }
  const auto sp = fr_polytope(alg(Family::Spin, 5), 2000, 1);
  EXPECT_EQ(sp.simplex.num_vertices(), 2);
  EXPECT_EQ(sp.mismatches, 0);
}

TEST(FrPolytope, StandardFrameOfSymR) {
  // The standard frame of Herm(3,R) is the diagonal matrix units.
  const auto a = alg(Family::SymR, 3);
  const auto f = standard_jordan_frame(a);
  for (int i = 0; i < 3; ++i) {
    const auto m = to_matrix(f[i]);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) EXPECT_NEAR(m(r, c).re(), r == i && c == i ? 1.0 : 0.0, 1e-15);
  }
}

TEST(FrPolytope, Polytopes) {
  const auto s = fr_polytope(simplex(3));
  EXPECT_EQ(s.section.vertices(), simplex(3).vertices());
  EXPECT_TRUE(s.is_simplex);
  EXPECT_TRUE(s.vertices_form_frame);
  EXPECT_EQ(s.basis.size(), 4u);
  EXPECT_THROW(fr_polytope(square()), InvalidInput);
  EXPECT_THROW(fr_polytope(pentagon()), InvalidInput);
}

TEST(FrPolytope, Symmetry) {
  const auto a = fr_polytope_symmetry(fr_polytope(alg(Family::SymR, 3), 100));
  EXPECT_EQ(a.order, 6);
  EXPECT_EQ(a.name, "S_3");
  EXPECT_LT(a.transporter_residual, 1e-9);
  const auto b = fr_polytope_symmetry(fr_polytope(alg(Family::Spin, 4), 100));
  EXPECT_EQ(b.order, 2);
  EXPECT_EQ(b.name, "Z_2");
  const auto c = fr_polytope_symmetry(fr_polytope(simplex(2)));
  EXPECT_EQ(c.order, 6);
  EXPECT_TRUE(c.full_symmetric);
  const auto o = fr_polytope_symmetry(fr_polytope(alg(Family::HermO, 3), 100));
  EXPECT_EQ(o.order, 6);
  EXPECT_TRUE(o.transporters_unsupported);
}

TEST(Theorem, EjaFamilies) {
  for (auto a : {alg(Family::HermC, 3), alg(Family::SymR, 3), alg(Family::HermH, 2), alg(Family::Spin, 4)}) {
    const auto r = verify_main_theorem_if_direction(a, 100, 7);
    EXPECT_TRUE(r.fully_supported()) << a.name();
    for (const auto& c : r.checks) EXPECT_EQ(c.status, "pass") << a.name() << ": " << c.name << " " << c.detail;
  }
}

TEST(Theorem, Octonions) {
  const auto r = verify_main_theorem_if_direction(alg(Family::HermO, 3), 100, 0);
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.fully_supported());
  EXPECT_EQ(check(r, "strong symmetry").status, "unsupported");
  for (const auto& c : r.checks)
    if (c.name != "strong symmetry") EXPECT_EQ(c.status, "pass") << c.name << " " << c.detail;
}

TEST(Theorem, SimplicesExactly) {
  for (int n = 1; n <= 4; ++n) {
    const auto r = verify_main_theorem_if_direction(n);
    for (const auto& c : r.checks) EXPECT_EQ(c.status, "pass") << n << ": " << c.name;
  }
}

TEST(Converse, Catalog) {
  std::vector<Polytope> cat;
  for (const auto& name : catalog_names()) cat.push_back(polytope_by_name(name));
  const auto rep = verify_converse_on_polytopes(cat);
  EXPECT_TRUE(rep.pass());
  for (const auto& e : rep.entries) {
    EXPECT_EQ(e.sss(), e.is_simplex) << e.name;
    if (e.counterexample) EXPECT_TRUE(recheck_spectral_counterexample(polytope_by_name(e.name), *e.counterexample));
    if (e.orbit_witness)
      EXPECT_TRUE(recheck_orbit_witness(polytope_by_name(e.name), e.orbit_witness->first, e.orbit_witness->second));
    if (e.name == "pentagon") {
      EXPECT_TRUE(e.strongly_symmetric);
      EXPECT_FALSE(e.spectral);
    }
    if (e.name == "square") {
      EXPECT_FALSE(e.strongly_symmetric);
      EXPECT_FALSE(e.spectral);
      EXPECT_TRUE(e.counterexample && e.orbit_witness);
    }
  }
}

TEST(Recheck, RejectsBogusWitnesses) {
  const Polytope sq = square();
  // The centre lies on both diagonals.
  EXPECT_FALSE(recheck_spectral_counterexample(sq, {Exact(0), Exact(0)}));
  EXPECT_FALSE(recheck_spectral_counterexample(sq, {Exact(5), Exact(0)}));
  EXPECT_FALSE(recheck_orbit_witness(sq, {0, 1}, {1, 2}));
  EXPECT_FALSE(recheck_orbit_witness(sq, {0, 0}, {0, 2}));
  EXPECT_FALSE(recheck_orbit_witness(simplex(2), {0, 1}, {1, 2}));
}
