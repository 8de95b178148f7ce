#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>

#include "lpproj/projection.hpp"
#include "lpproj/rng.hpp"
#include "lpproj/sampling.hpp"

using namespace lpproj;

TEST_CASE("projection of a member is the identity") {
  const SpaceSpec s3 = SpaceSpec::make(2, 3.0);
  const ConvexSet box = Box{{-1.0, -1.0}, {1.0, 1.0}};
  const ProjectionResult r = project(s3, box, {0.25, -0.5});
  CHECK(r.argmin == Vec{0.25, -0.5});
  CHECK(r.distance == 0.0);
  CHECK(r.converged);
  CHECK(r.method == ProjMethod::closed_form);
}

TEST_CASE("hyperplane closed forms") {
  const SpaceSpec s2 = SpaceSpec::make(2, 2.0);
  const ConvexSet plane = Hyperplane{{1.0, 1.0}, 0.0};
  const ProjectionResult r = project(s2, plane, {2.0, 0.0});
  CHECK(r.argmin[0] == Catch::Approx(1.0));
  CHECK(r.argmin[1] == Catch::Approx(-1.0));

  const SpaceSpec s3 = SpaceSpec::make(2, 3.0);
  const ConvexSet axis = Hyperplane{{1.0, 0.0}, 0.0};
  const ProjectionResult r3 = project(s3, axis, {2.0, 5.0});
  CHECK(r3.argmin[0] == Catch::Approx(0.0).margin(1e-12));
  CHECK(r3.argmin[1] == Catch::Approx(5.0));
  CHECK(r3.method == ProjMethod::closed_form);

  const BruteForceResult oracle = brute_force_project(s3, axis, {2.0, 5.0}, 60);
  CHECK(norm(s3, sub(r3.argmin, oracle.argmin)) <= 2.0 * oracle.grid_step);
}

TEST_CASE("project validates tolerance") {
  const SpaceSpec s2 = SpaceSpec::make(2, 2.0);
  const ConvexSet box = Box{{0.0, 0.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(project(s2, box, {2.0, 2.0}, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(project(s2, box, {2.0, 2.0}, 1e-13), std::invalid_argument);
}

TEST_CASE("certificate residual") {
  const SpaceSpec s2 = SpaceSpec::make(2, 2.0);
  const ConvexSet plane = Hyperplane{{1.0, 1.0}, 0.0};

  SECTION("member projects to itself with zero residual") {
    CHECK(certificate_residual(s2, plane, {1.0, -1.0}, {1.0, -1.0}, 100, 9) == 0.0);
  }
  SECTION("orthogonal foot has residual ~0") {
    const double res = certificate_residual(s2, plane, {2.0, 0.0}, {1.0, -1.0}, 1000, 9);
    CHECK(std::fabs(res) <= 1e-9);
  }
  SECTION("p=3 hyperplane example") {
    const SpaceSpec s3 = SpaceSpec::make(2, 3.0);
    const ConvexSet axis = Hyperplane{{1.0, 0.0}, 0.0};
    const double res = certificate_residual(s3, axis, {2.0, 5.0}, {0.0, 5.0}, 1000, 9);
    CHECK(res >= -1e-8);
  }
  SECTION("infeasible xbar rejected") {
    CHECK_THROWS_AS(certificate_residual(s2, plane, {2.0, 0.0}, {1.0, 0.0}, 10, 9),
                    std::invalid_argument);
  }
  SECTION("wrong projection is caught") {
    const double res = certificate_residual(s2, plane, {2.0, 0.0}, {0.5, -0.5}, 500, 9);
    CHECK(res < -1e-3);
  }
}

TEST_CASE("brute force oracle basics") {
  const SpaceSpec s2 = SpaceSpec::make(2, 2.0);
  const ConvexSet box = Box{{-1.0, -1.0}, {1.0, 1.0}};
  const BruteForceResult inside = brute_force_project(s2, box, {0.3, 0.4}, 20);
  CHECK(inside.argmin == Vec{0.3, 0.4});

  const ConvexSet plane = Hyperplane{{1.0, 1.0}, 0.0};
  const BruteForceResult pr = brute_force_project(s2, plane, {2.0, 0.0}, 100);
  CHECK(std::fabs(pr.argmin[0] - 1.0) <= 0.01);
  CHECK(std::fabs(pr.argmin[1] + 1.0) <= 0.01);

  const SpaceSpec s4d4 = SpaceSpec::make(4, 4.0);
  CHECK_THROWS_AS(brute_force_project(s4d4, Simplex{1.0}, {1.0, 0.0, 0.0, 0.0}, 10),
                  std::invalid_argument);
}

TEST_CASE("descent solver matches the oracle on the simplex example") {
  const SpaceSpec s4 = SpaceSpec::make(2, 4.0);
  const ConvexSet simplex = Simplex{1.0};
  const Vec x = {2.0, 0.0};
  const ProjectionResult r = project(s4, simplex, x);
  REQUIRE(r.converged);
  CHECK(r.method == ProjMethod::descent);
  const BruteForceResult oracle = brute_force_project(s4, simplex, x, 41);
  CHECK(norm(s4, sub(r.argmin, oracle.argmin)) <= 2.0 * oracle.grid_step);
  CHECK(r.distance <= norm(s4, sub(x, oracle.argmin)) + 1e-6);
  // the optimum here is the vertex (1, 0)
  CHECK(r.argmin[0] == Catch::Approx(1.0).margin(1e-6));
  CHECK(r.argmin[1] == Catch::Approx(0.0).margin(1e-6));
}

TEST_CASE("solver vs oracle across kinds and exponents") {
  Rng root(2718);
  int instance = 0;
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    for (int dim : {2, 3}) {
      const SpaceSpec space = SpaceSpec::make(dim, p);
      for (int i = 0; i < 6; ++i) {
        Rng rng = root.stream(static_cast<std::uint64_t>(instance++));
        const SetKind kind = kAllSetKinds[static_cast<std::size_t>(instance) %
                                          kAllSetKinds.size()];
        const ConvexSet set = sample_set(kind, space, rng, 10.0);
        auto [x, y] = sample_pair(space, 10.0, std::nullopt, rng);
        (void)y;
        const ProjectionResult r = project(space, set, x);
        REQUIRE(r.converged);
        const double scale = std::max(1.0, r.distance * r.distance);
        REQUIRE(r.certificate_residual >= -1e-6 * scale);
        const BruteForceResult oracle = brute_force_project(space, set, x, 41);
        REQUIRE(norm(space, sub(r.argmin, oracle.argmin)) <= 2.0 * oracle.grid_step);
        REQUIRE(r.distance <= norm(space, sub(x, oracle.argmin)) + 1e-6);
      }
    }
  }
}

TEST_CASE("idempotence") {
  Rng root(1618);
  int instance = 0;
  for (double p : {1.5, 3.0}) {
    const SpaceSpec space = SpaceSpec::make(3, p);
    for (int i = 0; i < 12; ++i) {
      Rng rng = root.stream(static_cast<std::uint64_t>(instance++));
      const SetKind kind = kAllSetKinds[static_cast<std::size_t>(i) % kAllSetKinds.size()];
      const ConvexSet set = sample_set(kind, space, rng, 10.0);
      const Vec x = sample_point(space, 10.0, rng);
      const ProjectionResult once = project(space, set, x);
      REQUIRE(once.converged);
      const ProjectionResult twice = project(space, set, once.argmin);
      REQUIRE(norm(space, sub(twice.argmin, once.argmin)) <= 1e-8);
    }
  }
}

TEST_CASE("hilbert non-expansiveness") {
  Rng root(41);
  const SpaceSpec space = SpaceSpec::make(4, 2.0);
  for (int i = 0; i < 200; ++i) {
    Rng rng = root.stream(static_cast<std::uint64_t>(i));
    const SetKind kind = kAllSetKinds[static_cast<std::size_t>(i) % kAllSetKinds.size()];
    const ConvexSet set = sample_set(kind, space, rng, 10.0);
    auto [x, y] = sample_pair(space, 10.0, std::nullopt, rng);
    const ProjectionResult px = project(space, set, x);
    const ProjectionResult py = project(space, set, y);
    REQUIRE(norm(space, sub(px.argmin, py.argmin)) <=
            norm(space, sub(x, y)) * (1.0 + 1e-10));
  }
}

TEST_CASE("alternating projections") {
  SECTION("feasible start returns immediately") {
    const SpaceSpec s2 = SpaceSpec::make(2, 2.0);
    Vec a1 = {1.0, 0.0}, a2 = {0.0, 1.0};
    const ConvexSet A = Halfspace{a1, 0.0};
    const ConvexSet B = Halfspace{a2, 0.0};
    const AlternatingResult r =
        alternating_projections(s2, A, B, {-1.0, -1.0}, 50, 1e-6);
    CHECK(r.feasible);
    CHECK(r.trajectory.size() == 1);
    CHECK(r.iterations == 0);
  }
  SECTION("euclidean case reaches the corner fast") {
    const SpaceSpec s2 = SpaceSpec::make(2, 2.0);
    const ConvexSet A = Halfspace{{1.0, 0.0}, 0.0};
    const ConvexSet B = Halfspace{{0.0, 1.0}, 0.0};
    const AlternatingResult r = alternating_projections(s2, A, B, {1.0, 1.0}, 50, 1e-6);
    CHECK(r.feasible);
    CHECK(r.iterations <= 2);
  }
  SECTION("p=3 smoke case") {
    const SpaceSpec s3 = SpaceSpec::make(2, 3.0);
    const ConvexSet A = Halfspace{{1.0, 0.0}, 0.0};
    const ConvexSet B = Halfspace{{0.0, 1.0}, 0.0};
    const AlternatingResult r = alternating_projections(s3, A, B, {1.0, 1.0}, 200, 1e-6);
    CHECK(r.feasible);
    CHECK(r.iterations <= 200);
    CHECK(std::max(r.infeasibility_a.back(), r.infeasibility_b.back()) < 1e-6);
  }
}
