#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "jspec/catalog.hpp"
#include "jspec/error.hpp"
#include "jspec/operational.hpp"
#include "jspec/symmetry.hpp"

using namespace jspec;

namespace {

AlgebraDescriptor alg(Family f, int p) { return AlgebraDescriptor::make(f, p); }

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST(Automorphisms, GroupOrders) {
  EXPECT_EQ(automorphism_group(simplex(2)).size(), 6u);
  EXPECT_EQ(automorphism_group(simplex(3)).size(), 24u);
  EXPECT_EQ(automorphism_group(square()).size(), 8u);
  EXPECT_EQ(automorphism_group(pentagon()).size(), 10u);
  EXPECT_EQ(automorphism_group(hexagon()).size(), 12u);
  EXPECT_EQ(automorphism_group(rectangle()).size(), 8u);
  EXPECT_EQ(automorphism_group(cube()).size(), 48u);
  EXPECT_EQ(automorphism_group(octahedron()).size(), 48u);
}

TEST(Automorphisms, ClosedUnderCompositionAndInverse) {
  for (const auto& name : catalog_names()) {
    const auto g = automorphism_group(polytope_by_name(name));
    EXPECT_TRUE(is_group(g)) << name;
    for (std::size_t i = 0; i < g[0].perm.size(); ++i) EXPECT_EQ(g[0].perm[i], int(i)) << name;
  }
}

TEST(Automorphisms, CapExceeded) {
  EXPECT_THROW(automorphism_group(cube(), 6), CapExceeded);
}

TEST(Automorphisms, FixBarycenterAndMapFacesToFaces) {
  for (const auto& name : catalog_names()) {
    const Polytope p = polytope_by_name(name);
    const auto c = barycenter(p);
    const auto local_c = *p.to_local(c);
    const auto lattice = exposed_faces(p);
    for (const auto& g : automorphism_group(p)) {
      EXPECT_EQ(g.apply(local_c), local_c) << name;
      for (const auto& f : lattice.faces()) EXPECT_TRUE(lattice.is_face(act(g, f.vertices))) << name;
    }
  }
}

TEST(Automorphisms, OrbitAverageIsBarycenter) {
  for (const char* name : {"square", "pentagon", "hexagon", "simplex3"}) {
    const Polytope p = polytope_by_name(name);
    const auto g = automorphism_group(p);
    ExactVector sum(p.dim());
    for (const auto& x : g) sum = sum + x.apply(p.local(0));
    EXPECT_EQ(Exact(Rational(1, long(g.size()))) * sum, *p.to_local(barycenter(p))) << name;
  }
}

TEST(Orbits, OrbitStabilizer) {
  for (const char* name : {"square", "pentagon", "cube", "simplex3"}) {
    const Polytope p = polytope_by_name(name);
    const auto g = automorphism_group(p);
    std::vector<Tuple> tuples;
    for (const auto& f : enumerate_frames(p, 2)) tuples.push_back(f.vertices);
    for (const auto& o : orbits(g, tuples)) {
      long stab = 0;
      for (const auto& x : g) stab += act(x, tuples[o.front()]) == tuples[o.front()];
      EXPECT_EQ(long(o.size()) * stab, long(g.size())) << name;
    }
  }
}

TEST(StrongSymmetry, Simplices) {
  for (int n = 1; n <= 4; ++n) {
    const auto r = is_strongly_symmetric(simplex(n));
    EXPECT_TRUE(r.strongly_symmetric) << n;
    EXPECT_EQ(r.rank, n + 1);
    EXPECT_EQ(r.group_order, factorial(n + 1));
    for (const auto& fo : r.by_k) EXPECT_EQ(fo.orbit_sizes.size(), 1u);
  }
}

TEST(StrongSymmetry, PentagonYesSquareNo) {
  EXPECT_TRUE(is_strongly_symmetric(pentagon()).strongly_symmetric);
  const auto sq = is_strongly_symmetric(square());
  EXPECT_FALSE(sq.strongly_symmetric);
  ASSERT_TRUE(sq.witness.has_value());
  EXPECT_TRUE(frames_in_different_orbits(square(), sq.witness->first, sq.witness->second));
  // An edge pair and a diagonal pair of the square.
  EXPECT_TRUE(frames_in_different_orbits(square(), {0, 1}, {0, 2}));
  EXPECT_FALSE(frames_in_different_orbits(square(), {0, 1}, {1, 2}));
}

TEST(StrongSymmetry, SerialMatchesParallel) {
  const auto a = is_strongly_symmetric(hexagon(), 12, ExecPolicy::Serial);
  const auto b = is_strongly_symmetric(hexagon(), 12, ExecPolicy::Parallel);
  EXPECT_EQ(a.strongly_symmetric, b.strongly_symmetric);
  ASSERT_EQ(a.by_k.size(), b.by_k.size());
  for (std::size_t i = 0; i < a.by_k.size(); ++i) {
    EXPECT_EQ(a.by_k[i].orbit_sizes, b.by_k[i].orbit_sizes);
    EXPECT_EQ(a.by_k[i].representatives, b.by_k[i].representatives);
  }
}

TEST(Regularity, Examples) {
  const auto sq = is_regular(square());
  EXPECT_TRUE(sq.regular);
  EXPECT_EQ(sq.maximal_flags, 8);
  EXPECT_TRUE(is_regular(rectangle()).regular);
  EXPECT_TRUE(is_regular(pentagon()).regular);
  EXPECT_TRUE(is_regular(cube()).regular);
  for (int n = 1; n <= 4; ++n) {
    const auto r = is_regular(simplex(n));
    EXPECT_TRUE(r.regular);
    EXPECT_EQ(r.maximal_flags, factorial(n + 1));
  }
}

TEST(Regularity, IrregularQuadrilateral) {
  const Polytope kite({{Exact(0), Exact(2)}, {Exact(1), Exact(0)}, {Exact(0), Exact(-1)}, {Exact(-1), Exact(0)}},
                      "kite");
  const auto r = is_regular(kite);
  EXPECT_FALSE(r.regular);
  EXPECT_EQ(r.group_order, 2);
  ASSERT_TRUE(r.witness.has_value());
}

TEST(Bijection, Simplices) {
  for (int n = 2; n <= 4; ++n) {
    const auto b = frame_flag_bijection(simplex(n));
    EXPECT_EQ(b.frames, factorial(n + 1));
    EXPECT_EQ(b.flags, factorial(n + 1));
    EXPECT_TRUE(b.bijective);
  }
}

TEST(Bijection, RejectsNonSpectral) {
  EXPECT_THROW(frame_flag_bijection(square()), InvalidInput);
  EXPECT_THROW(frame_flag_bijection(pentagon()), InvalidInput);
}

TEST(Bijection, JordanFrames) {
  for (auto a : {alg(Family::SymR, 3), alg(Family::HermC, 3), alg(Family::HermO, 3), alg(Family::SymR, 4)}) {
    const auto b = frame_flag_bijection(random_jordan_frame(a, 5));
    EXPECT_EQ(b.frames, factorial(a.rank())) << a.name();
    EXPECT_EQ(b.flags, factorial(a.rank())) << a.name();
    EXPECT_TRUE(b.bijective) << a.name();
  }
}

TEST(Transporter, HermCSwap) {
  const auto a = alg(Family::HermC, 2);
  const auto f = standard_jordan_frame(a);
  const std::vector<EjaElement> g = {f[1], f[0]};
  const auto t = jordan_frame_transporter(f, g);
  EXPECT_EQ(t.kind, "unitary");
  EXPECT_LT(check_transporter(t, f, g).max(), 1e-10);
}

TEST(Transporter, RandomFramesAllFamilies) {
  for (auto a : {alg(Family::SymR, 3), alg(Family::HermC, 3), alg(Family::HermH, 3), alg(Family::Spin, 3),
                 alg(Family::Spin, 1), alg(Family::SymR, 5)}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto f = random_jordan_frame(a, 2 * s), g = random_jordan_frame(a, 2 * s + 1);
      const auto t = jordan_frame_transporter(f, g);
      EXPECT_LT(check_transporter(t, f, g, s).max(), 1e-9) << a.name() << " seed " << s;
    }
  }
}

TEST(Transporter, SpinAntipodalAndIdentity) {
  const auto a = alg(Family::Spin, 3);
  const auto f = random_jordan_frame(a, 1);
  const std::vector<EjaElement> g = {f[1], f[0]};
  EXPECT_LT(check_transporter(jordan_frame_transporter(f, g), f, g).max(), 1e-10);
  EXPECT_LT(check_transporter(jordan_frame_transporter(f, f), f, f).max(), 1e-10);
}

TEST(Transporter, OctonionUnsupported) {
  const auto a = alg(Family::HermO, 3);
  EXPECT_THROW(jordan_frame_transporter(random_jordan_frame(a, 0), random_jordan_frame(a, 1)), Unsupported);
  const auto r = verify_strong_symmetry_eja(a, 5, 0);
  EXPECT_TRUE(r.unsupported);
  EXPECT_FALSE(r.pass());
}

TEST(Transporter, RejectsNonFrames) {
  const auto a = alg(Family::SymR, 3);
  const auto f = standard_jordan_frame(a);
  EXPECT_THROW(jordan_frame_transporter({f[0], f[1]}, {f[0], f[1]}), InvalidInput);
  EXPECT_THROW(jordan_frame_transporter({f[0], f[0], f[2]}, f), InvalidInput);
}

TEST(ExtendFrame, CompletesSubframes) {
  for (auto a : {alg(Family::SymR, 4), alg(Family::HermH, 3), alg(Family::Spin, 6), alg(Family::HermO, 3)}) {
    const auto f = random_jordan_frame(a, 9);
    for (int k = 1; k <= a.rank(); ++k) {
      const std::vector<EjaElement> part(f.begin(), f.begin() + k);
      const auto full = extend_frame(part, 17);
      ASSERT_EQ(int(full.size()), a.rank());
      for (int i = 0; i < k; ++i) EXPECT_LT(norm(full[i] - f[i]), 1e-12);
      for (const auto& c : full) EXPECT_TRUE(is_primitive_idempotent(c));
      const auto r = frame_residuals(full);
      EXPECT_LT(r.orthogonality, 1e-9) << a.name();
      EXPECT_LT(r.completeness, 1e-9) << a.name();
    }
  }
}

TEST(EjaStrongSymmetry, HundredTrials) {
  for (auto a : {alg(Family::SymR, 4), alg(Family::Spin, 10), alg(Family::HermH, 3), alg(Family::HermC, 3)}) {
    const auto r = verify_strong_symmetry_eja(a, 100, 0);
    EXPECT_TRUE(r.pass()) << a.name() << " passed " << r.passed << " max residual " << r.max_residual;
    EXPECT_LT(r.max_residual, 1e-8);
  }
}

TEST(EjaStrongSymmetry, SerialMatchesParallel) {
  const auto a = alg(Family::HermC, 3);
  const auto s = verify_strong_symmetry_eja(a, 20, 7, 1e-8, ExecPolicy::Serial);
  const auto p = verify_strong_symmetry_eja(a, 20, 7, 1e-8, ExecPolicy::Parallel);
  ASSERT_EQ(s.results.size(), p.results.size());
  for (std::size_t i = 0; i < s.results.size(); ++i) EXPECT_EQ(s.results[i].residual, p.results[i].residual);
}

TEST(SpinFactor, TwoFramesAreAntipodal) {
  for (int n : {1, 2, 5}) {
    const auto a = alg(Family::Spin, n);
    for (std::uint64_t s = 0; s < 4; ++s) {
      const auto f = random_jordan_frame(a, s);
      ASSERT_EQ(f.size(), 2u);
      for (int k = 0; k < n; ++k) EXPECT_NEAR(f[0][k], -f[1][k], 1e-12);
      EXPECT_NEAR(f[0][n], f[1][n], 1e-12);
    }
  }
}

TEST(CanonicalEmbedding, Examples) {
  {
    const Polytope p = simplex(2);
    const auto c = canonical_embed(p, automorphism_group(p));
    const Exact n0 = canonical_inner(c, c.points[0], c.points[0]);
    const Exact i01 = canonical_inner(c, c.points[0], c.points[1]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(canonical_inner(c, c.points[i], c.points[j]), i == j ? n0 : i01);
  }
  {
    const Polytope p = rectangle();
    const auto c = canonical_embed(p, automorphism_group(p));
    for (int i = 1; i < 4; ++i)
      EXPECT_EQ(canonical_inner(c, c.points[i], c.points[i]), canonical_inner(c, c.points[0], c.points[0]));
    // The affine square: diagonals are orthogonal.
    EXPECT_EQ(canonical_inner(c, c.points[0] - c.points[2], c.points[1] - c.points[3]), Exact(0));
  }
  {
    const Polytope p = pentagon();
    const auto c = canonical_embed(p, automorphism_group(p));
    for (int d = 0; d < 3; ++d)
      for (int i = 0; i < 5; ++i)
        EXPECT_EQ(canonical_inner(c, c.points[i], c.points[(i + d) % 5]),
                  canonical_inner(c, c.points[0], c.points[d]));
  }
}

TEST(CanonicalEmbedding, AutomorphismsAreIsometries) {
  for (const char* name : {"hexagon", "cube", "rectangle"}) {
    const Polytope p = polytope_by_name(name);
    const auto g = automorphism_group(p);
    const auto c = canonical_embed(p, g);
    for (const auto& x : g)
      for (int i = 0; i < p.num_vertices(); ++i)
        for (int j = 0; j < p.num_vertices(); ++j)
          EXPECT_EQ(canonical_inner(c, c.points[x.perm[i]], c.points[x.perm[j]]),
                    canonical_inner(c, c.points[i], c.points[j]));
  }
}
