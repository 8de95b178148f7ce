#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "lpproj/moduli.hpp"

using namespace lpproj;

namespace {

// Test-side quadrature oracle, independent of the library's integration path:
// plain composite Simpson with enough panels to hit ~1e-11.
double simpson_oracle(const std::function<double(double)>& f, double a, double b) {
  const int panels = 20000;
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("rho_upper examples") {
  const ModuliProfile p15 = ModuliProfile::make(1.5);
  const ModuliProfile p4 = ModuliProfile::make(4.0);
  CHECK(rho_upper(p15, 0.0) == 0.0);
  CHECK(rho_upper(p4, 0.0) == 0.0);
  CHECK(rho_upper(p15, 0.5) == Catch::Approx(std::pow(0.5, 1.5) / 1.5).epsilon(1e-12));
  CHECK(rho_upper(p15, 0.5) == Catch::Approx(0.235702).margin(1e-6));
  CHECK(rho_upper(p4, 0.1) == Catch::Approx(0.03));
  CHECK_THROWS_AS(rho_upper(p4, -1.0), std::invalid_argument);

  // clamp at tau: (p-1) tau^2 > tau once tau > 1/(p-1)
  CHECK(rho_upper(p4, 1.0) == Catch::Approx(1.0));
  CHECK(rho_upper_clamped(p4, 1.0));
  CHECK_FALSE(rho_upper_clamped(p4, 0.1));
  const ModuliProfile p2 = ModuliProfile::make(2.0);
  CHECK_FALSE(rho_upper_clamped(p2, 100.0));  // Hilbert branch is below tau everywhere
  CHECK(rho_upper(p2, 1.0) == Catch::Approx(std::sqrt(2.0) - 1.0));
}

TEST_CASE("delta_lower examples") {
  const ModuliProfile p15 = ModuliProfile::make(1.5);
  const ModuliProfile p4 = ModuliProfile::make(4.0);
  CHECK(delta_lower(p15, 0.0) == 0.0);
  CHECK(delta_lower(p15, 1.0) == Catch::Approx(0.0625));
  CHECK(delta_lower(p4, 1.0) == Catch::Approx(0.015625));
  CHECK_THROWS_AS(delta_lower(p4, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(delta_lower(p4, -0.1), std::invalid_argument);
}

TEST_CASE("delta_lower_inverse examples") {
  const ModuliProfile p2 = ModuliProfile::make(2.0);
  CHECK(delta_lower_inverse(p2, 0.0).value == 0.0);
  CHECK_FALSE(delta_lower_inverse(p2, 0.0).saturated);
  CHECK(delta_lower_inverse(p2, 0.02).value == Catch::Approx(0.4).epsilon(1e-10));

  const ModuliProfile p4 = ModuliProfile::make(4.0);
  const InverseResult inv = delta_lower_inverse(p4, 0.015625);
  CHECK(inv.value == Catch::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(inv.saturated);

  const InverseResult sat = delta_lower_inverse(p4, 10.0);
  CHECK(sat.value == 2.0);
  CHECK(sat.saturated);
  CHECK_THROWS_AS(delta_lower_inverse(p4, -1.0), std::invalid_argument);
}

TEST_CASE("g_lower and inverse") {
  const ModuliProfile p2 = ModuliProfile::make(2.0);
  CHECK(g_lower(p2, 1.0) == Catch::Approx(0.125));
  CHECK(g_lower_inverse(p2, 0.125).value == Catch::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(g_lower(p2, 0.0), std::invalid_argument);

  const ModuliProfile p4 = ModuliProfile::make(4.0);
  const double t = g_lower(p4, 0.5);
  CHECK(g_lower_inverse(p4, t).value == Catch::Approx(0.5).margin(1e-10));
}

TEST_CASE("inverse round trips and monotonicity") {
  for (double p : {1.2, 1.5, 2.0, 3.0, 4.0, 6.0}) {
    const ModuliProfile m = ModuliProfile::make(p);
    for (double eps : {0.1, 0.5, 1.0, 1.9}) {
      const double t = delta_lower(m, eps);
      CHECK(delta_lower_inverse(m, t).value == Catch::Approx(eps).margin(1e-9));
    }
    double prev_d = -1.0, prev_g = -1.0;
    for (double t = 0.0; t <= delta_lower(m, 2.0) * 1.2; t += delta_lower(m, 2.0) / 17.0) {
      const double vd = delta_lower_inverse(m, t).value;
      const double vg = g_lower_inverse(m, t).value;
      CHECK(vd >= prev_d - 1e-12);
      CHECK(vg >= prev_g - 1e-12);
      prev_d = vd;
      prev_g = vg;
    }
  }
}

TEST_CASE("h_upper examples") {
  const ModuliProfile p4 = ModuliProfile::make(4.0);
  CHECK(h_upper(p4, 0.1) == Catch::Approx(0.3));
  const ModuliProfile p15 = ModuliProfile::make(1.5);
  CHECK(h_upper(p15, 1.0) == Catch::Approx(1.0 / 1.5).epsilon(1e-12));
  CHECK_THROWS_AS(h_upper(p4, 0.0), std::invalid_argument);
  for (double p : {1.2, 1.5, 2.0, 3.0, 6.0}) {
    const ModuliProfile m = ModuliProfile::make(p);
    for (double t = 0.05; t < 40.0; t *= 1.7) CHECK(h_upper(m, t) <= 1.0 + 1e-12);
  }
}

TEST_CASE("psi closed forms against quadrature oracle") {
  const ModuliProfile p15 = ModuliProfile::make(1.5);
  CHECK(psi(p15, 0.0) == 0.0);
  CHECK(psi(p15, 1.0) == Catch::Approx(4.0 / 9.0).epsilon(1e-12));
  const ModuliProfile p4 = ModuliProfile::make(4.0);
  CHECK(psi(p4, 0.1) == Catch::Approx(0.015).epsilon(1e-12));
  CHECK_THROWS_AS(psi(p4, -1.0), std::invalid_argument);

  for (double p : {1.5, 4.0}) {
    const ModuliProfile m = ModuliProfile::make(p);
    for (double t : {0.3, 1.0, 2.0, 5.0}) {  // spans the clamp onset both ways
      const double oracle = simpson_oracle(
          [&](double s) { return s == 0.0 ? 0.0 : rho_upper(m, s) / s; }, 0.0, t);
      CHECK(psi(m, t) == Catch::Approx(oracle).margin(1e-9));
    }
  }

  // Hilbert branch: library integrates; oracle is the closed antiderivative
  // sqrt(1+t^2) - log(1 + sqrt(1+t^2)) - 1 + log 2.
  const ModuliProfile p2 = ModuliProfile::make(2.0);
  for (double t : {0.25, 1.0, 3.0}) {
    const double s = std::sqrt(1.0 + t * t);
    const double closed = s - std::log1p(s) - 1.0 + std::log(2.0);
    CHECK(psi(p2, t) == Catch::Approx(closed).margin(1e-9));
  }
}

TEST_CASE("figiel margins") {
  const ModuliProfile p4 = ModuliProfile::make(4.0);
  const double L = 3.18;
  // equal arguments: margin = (L-1) tau^2 rho(tau)
  for (double tau : {0.1, 0.2}) {
    CHECK(figiel_margin(p4, tau, tau, L) ==
          Catch::Approx((L - 1.0) * tau * tau * rho_upper(p4, tau)).epsilon(1e-12));
  }
  // quadratic branch cancels exactly: margin = (L-1) tau2^2 rho(tau1)
  CHECK(figiel_margin(p4, 0.1, 0.2, L) ==
        Catch::Approx((L - 1.0) * 0.04 * rho_upper(p4, 0.1)).epsilon(1e-12));
  const ModuliProfile p15 = ModuliProfile::make(1.5);
  CHECK(figiel_margin(p15, 0.1, 1.0, 3.18) >= 0.0);
  CHECK_THROWS_AS(figiel_margin(p4, 0.5, 0.1, L), std::invalid_argument);
}

TEST_CASE("empirical convexity") {
  const SpaceSpec h2 = SpaceSpec::make(5, 2.0);
  CHECK(empirical_convexity(h2, 2.0, 50, 7) == Catch::Approx(1.0));
  const double hilbert_delta1 = 1.0 - std::sqrt(3.0) / 2.0;
  CHECK(empirical_convexity(h2, 1.0, 2000, 11) >= hilbert_delta1 - 1e-9);

  const SpaceSpec s4 = SpaceSpec::make(5, 4.0);
  CHECK(empirical_convexity(s4, 1.0, 2000, 13) >= 0.015625 - 1e-9);

  CHECK_THROWS_AS(empirical_convexity(h2, 0.0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(empirical_convexity(h2, 2.5, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(empirical_convexity(SpaceSpec::make(1, 2.0), 1.0, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("empirical smoothness") {
  const SpaceSpec h2 = SpaceSpec::make(5, 2.0);
  const ModuliProfile p2 = ModuliProfile::make(2.0);
  const double v = empirical_smoothness(h2, 1.0, 2000, 3);
  CHECK(v <= std::sqrt(2.0) - 1.0 + 1e-9);
  CHECK(v <= rho_upper(p2, 1.0) + 1e-9);
  CHECK(v >= 0.0);

  const SpaceSpec s15 = SpaceSpec::make(5, 1.5);
  const ModuliProfile p15 = ModuliProfile::make(1.5);
  CHECK(empirical_smoothness(s15, 0.5, 2000, 5) <= rho_upper(p15, 0.5) + 1e-9);
  CHECK_THROWS_AS(empirical_smoothness(h2, 0.0, 10, 1), std::invalid_argument);
}

TEST_CASE("empirical samplers are deterministic in the seed") {
  const SpaceSpec s3 = SpaceSpec::make(4, 3.0);
  CHECK(empirical_convexity(s3, 0.7, 500, 42) == empirical_convexity(s3, 0.7, 500, 42));
  CHECK(empirical_smoothness(s3, 0.7, 500, 42) == empirical_smoothness(s3, 0.7, 500, 42));
}

TEST_CASE("hilbert sandwich") {
  for (double eps = 0.05; eps <= 2.0; eps += 0.05) {
    const double exact = 1.0 - std::sqrt(1.0 - eps * eps / 4.0);
    CHECK(eps * eps / 8.0 <= exact + 1e-15);
    CHECK(exact <= eps * eps / 4.0 + 1e-15);
  }
}

TEST_CASE("hilbert smoothness lower chain") {
  // tau^2/(tau+2) <= sqrt(1+tau^2) - 1, which the p = 2 branch realizes exactly
  const ModuliProfile p2 = ModuliProfile::make(2.0);
  for (double tau = 0.05; tau < 5.0; tau *= 1.4) {
    CHECK(tau * tau / (tau + 2.0) <= rho_upper(p2, tau) + 1e-15);
  }
}
