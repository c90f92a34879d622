#include <gtest/gtest.h>

#include "jspec/catalog.hpp"
#include "jspec/error.hpp"
#include "jspec/io.hpp"

using namespace jspec;

TEST(Io, ExactRoundTrip) {
  for (const char* s : {"0", "-3/7", "1/2+1/2*sqrt5", "-1/4*sqrt5"}) {
    const Exact x = parse_exact(s);
    EXPECT_EQ(exact_from_json(to_json(x)), x);
  }
  EXPECT_EQ(exact_from_json(json(5)), Exact(5));
  EXPECT_THROW(exact_from_json(json(0.5)), InvalidInput);
}

TEST(Io, BodyRoundTrip) {
  const ConvexBody pent = pentagon();
  const ConvexBody back = body_from_json(body_to_json(pent));
  EXPECT_EQ(std::get<Polytope>(back).vertices(), std::get<Polytope>(pent).vertices());

  const auto ball = body_from_json(json{{"type", "ball"}, {"n", 4}});
  EXPECT_EQ(std::get<Ball>(ball).n, 4);

  const auto eja = body_from_json(json{{"type", "eja"}, {"family", "spin"}, {"n", 5}});
  EXPECT_EQ(std::get<EjaStateSpace>(eja).algebra.dim(), 6);
  const auto back_eja = body_from_json(body_to_json(eja));
  EXPECT_EQ(std::get<EjaStateSpace>(back_eja).algebra.name(), std::get<EjaStateSpace>(eja).algebra.name());
}

TEST(Io, CatalogNameBody) {
  const auto p = body_from_json(json{{"type", "polytope"}, {"name", "cube"}});
  EXPECT_EQ(std::get<Polytope>(p).num_vertices(), 8);
}

TEST(Io, SchemaViolations) {
  EXPECT_THROW(body_from_json(json::array()), InvalidInput);
  EXPECT_THROW(body_from_json(json{{"type", "torus"}}), InvalidInput);
  EXPECT_THROW(body_from_json(json{{"type", "ball"}, {"n", 0}}), InvalidInput);
  EXPECT_THROW(body_from_json(json{{"type", "eja"}, {"family", "herm_c"}}), InvalidInput);
  EXPECT_THROW(body_from_json(json{{"type", "polytope"}}), InvalidInput);
}

TEST(Io, WitnessRecheck) {
  const Polytope sq = square();
  EXPECT_TRUE(recheck_witness(sq, orbit_witness({0, 1}, {0, 2})));
  EXPECT_FALSE(recheck_witness(sq, orbit_witness({0, 2}, {1, 3})));
  // The center lies in a frame hull, so it is not a counterexample.
  EXPECT_FALSE(recheck_witness(sq, spectral_witness({Exact(0), Exact(0)})));
  EXPECT_THROW(recheck_witness(sq, json{{"kind", "mystery"}}), InvalidInput);
  EXPECT_THROW(recheck_witness(sq, json{{"kind", "orbit_pair"}, {"frames", {json::array()}}}), InvalidInput);
}
