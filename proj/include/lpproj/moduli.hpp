#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>

#include "lpproj/rng.hpp"
#include "lpproj/space.hpp"

namespace lpproj {

/// Result of a numeric inverse; `saturated` means the requested value lies
/// beyond the function's range on [0, 2] and the endpoint was returned, which
/// makes any bound built on it vacuous but keeps batch verification total.
struct InverseResult {
  double value = 0.0;
  bool saturated = false;
};

/// Per-exponent bound functions for the moduli of convexity and smoothness
/// of l^p:
///
///   1 < p < 2:  rho_upper(t) = t^p / p,        delta_lower(e) = (p-1) e^2 / 8
///   p = 2:      rho_upper(t) = sqrt(1+t^2)-1,  delta_lower(e) = e^2 / 8
///   p > 2:      rho_upper(t) = (p-1) t^2,      delta_lower(e) = (e/2)^p / p
///
/// rho_upper is additionally clamped to min(formula, t): any modulus of
/// smoothness satisfies rho(t) <= t, so the clamp keeps the surrogate inside
/// a universally valid envelope.
struct ModuliProfile {
  double p = 2.0;

  static ModuliProfile make(double p) {
    if (!(p >= 1.05 && p <= 50.0))
      throw std::invalid_argument("ModuliProfile: exponent p must lie in [1.05, 50]");
    return ModuliProfile{p};
  }
};

namespace detail {

/// Pure power/Hilbert branch of the smoothness bound, no clamp.
inline double rho_formula(double p, double tau) {
  if (p < 2.0) return std::pow(tau, p) / p;
  if (p == 2.0) return std::sqrt(1.0 + tau * tau) - 1.0;
  return (p - 1.0) * tau * tau;
}

}  // namespace detail

inline double rho_upper(const ModuliProfile& m, double tau) {
  if (tau < 0.0) throw std::invalid_argument("rho_upper: negative argument");
  if (tau == 0.0) return 0.0;
  return std::min(detail::rho_formula(m.p, tau), tau);
}

/// True when the min(formula, tau) clamp is the active branch.
inline bool rho_upper_clamped(const ModuliProfile& m, double tau) {
  if (tau <= 0.0) return false;
  return detail::rho_formula(m.p, tau) > tau;
}

inline double delta_lower(const ModuliProfile& m, double eps) {
  if (eps < 0.0 || eps > 2.0)
    throw std::invalid_argument("delta_lower: argument outside [0, 2]");
  if (m.p <= 2.0) return (m.p - 1.0) * eps * eps / 8.0;
  return std::pow(eps / 2.0, m.p) / m.p;
}

/// delta_lower(e) / e, increasing on (0, 2]; undefined at 0.
inline double g_lower(const ModuliProfile& m, double eps) {
  if (eps <= 0.0 || eps > 2.0)
    throw std::invalid_argument("g_lower: argument outside (0, 2]");
  return delta_lower(m, eps) / eps;
}

/// rho_upper(t) / t; undefined at 0 (callers use the limit 0). The clamp
/// makes h_upper <= 1 everywhere.
inline double h_upper(const ModuliProfile& m, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("h_upper: argument must be positive");
  return rho_upper(m, tau) / tau;
}

namespace detail {

/// Bisection inverse of an increasing f on [0, hi] with f(0) = 0.
inline InverseResult invert_increasing(const std::function<double(double)>& f,
                                       double t, double hi, double f_hi) {
  if (t < 0.0) throw std::invalid_argument("inverse: negative argument");
  if (t == 0.0) return {0.0, false};
  if (t >= f_hi) return {hi, true};
  double lo = 0.0, up = hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + up);
    const double fm = f(mid);
    // the argument interval must close too: the round-trip contract holds in
    // eps-space, not just in value-space
    if (std::fabs(fm - t) <= 1e-12 * std::max(1.0, t) && up - lo <= 1e-13)
      return {mid, false};
    if (fm < t)
      lo = mid;
    else
      up = mid;
  }
  return {0.5 * (lo + up), false};
}

}  // namespace detail

/// Inverse of delta_lower on [0, 2]; saturates to 2 when t exceeds
/// delta_lower(2).
inline InverseResult delta_lower_inverse(const ModuliProfile& m, double t) {
  return detail::invert_increasing(
      [&](double e) { return delta_lower(m, e); }, t, 2.0, delta_lower(m, 2.0));
}

/// Inverse of g_lower on (0, 2] (extended by the limit g(0)=0); same
/// saturation contract as delta_lower_inverse.
inline InverseResult g_lower_inverse(const ModuliProfile& m, double t) {
  auto g = [&](double e) { return e == 0.0 ? 0.0 : delta_lower(m, e) / e; };
  return detail::invert_increasing(g, t, 2.0, g(2.0));
}

namespace detail {

/// Adaptive Simpson quadrature with absolute tolerance.
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double fa, double fm, double fb,
                               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Crossover point where the rho_upper clamp becomes active (formula = tau);
/// infinity for the Hilbert branch.
inline double rho_clamp_onset(double p) {
  if (p < 2.0) return std::pow(p, 1.0 / (p - 1.0));
  if (p == 2.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (p - 1.0);
}

}  // namespace detail

/// psi(t) = integral_0^t rho_upper(s)/s ds. Power branches use the closed
/// antiderivative, piecewise-adjusted where the clamp rho_upper = s is active
/// (the integrand is 1 there); the Hilbert branch integrates numerically with
/// absolute error <= 1e-10.
inline double psi(const ModuliProfile& m, double t) {
  if (t < 0.0) throw std::invalid_argument("psi: negative argument");
  if (t == 0.0) return 0.0;
  const double p = m.p;
  if (p == 2.0) {
    auto integrand = [](double s) {
      if (s == 0.0) return 0.0;
      // (sqrt(1+s^2)-1)/s, stable form for small s
      return s / (std::sqrt(1.0 + s * s) + 1.0);
    };
    return detail::integrate(integrand, 0.0, t, 1e-10);
  }
  const double star = detail::rho_clamp_onset(p);
  auto power_part = [&](double u) {
    return p < 2.0 ? std::pow(u, p) / (p * p) : (p - 1.0) * u * u / 2.0;
  };
  if (t <= star) return power_part(t);
  return power_part(star) + (t - star);
}

/// Margin of the Figiel-type comparison L t2^2 rho(t1) >= t1^2 rho(t2) for
/// 0 < t1 <= t2, evaluated on the profile's surrogate.
inline double figiel_margin(const ModuliProfile& m, double tau1, double tau2,
                            double L) {
  if (!(tau1 > 0.0) || tau1 > tau2)
    throw std::invalid_argument("figiel_margin: need 0 < tau1 <= tau2");
  return L * tau2 * tau2 * rho_upper(m, tau1) -
         tau1 * tau1 * rho_upper(m, tau2);
}

namespace detail {

inline Vec random_unit(const SpaceSpec& s, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec v(s.n);
    for (auto& c : v) c = rng.normal();
    const double nv = pnorm(v, s.p);
    if (nv > 1e-12) {
      for (auto& c : v) c /= nv;
      return v;
    }
  }
  throw std::runtime_error("random_unit: degenerate draws");
}

}  // namespace detail

/// Sampling witness for the convexity bound: draws unit pairs at chord length
/// eps and returns min over samples of 1 - ||(x+y)/2||. Upper estimate of
/// delta_B(eps), so it must dominate delta_lower(eps) - 1e-9.
inline double empirical_convexity(const SpaceSpec& s, double eps, int samples,
                                  std::uint64_t seed) {
  if (!(eps > 0.0) || eps > 2.0)
    throw std::invalid_argument("empirical_convexity: eps outside (0, 2]");
  if (samples < 1) throw std::invalid_argument("empirical_convexity: samples >= 1");
  if (s.n < 2)
    throw std::invalid_argument(
        "empirical_convexity: needs dimension >= 2 to realize the chord");
  Rng root(seed);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    Rng rng = root.stream(static_cast<std::uint64_t>(k));
    const Vec x = detail::random_unit(s, rng);
    Vec y;
    if (eps == 2.0) {
      // the antipodal pair is forced: ||x - y|| = 2 only at y = -x
      y = scaled(x, -1.0);
    } else {
      Vec z;
      for (int attempt = 0;; ++attempt) {
        z = detail::random_unit(s, rng);
        const double away = std::min(max_abs_diff(z, x),
                                     max_abs_diff(z, scaled(x, -1.0)));
        if (away > 1e-6) break;
        if (attempt > 1000)
          throw std::runtime_error("empirical_convexity: degenerate chord draws");
      }
      // Continuous unit-sphere path x -> z -> -x; the chord length runs from
      // 0 to 2, so bisection lands on ||x - y|| = eps.
      auto at = [&](double t) {
        Vec blend(static_cast<std::size_t>(s.n));
        if (t <= 1.0) {
          for (int i = 0; i < s.n; ++i)
            blend[i] = (1.0 - t) * x[i] + t * z[i];
        } else {
          const double u = t - 1.0;
          for (int i = 0; i < s.n; ++i)
            blend[i] = (1.0 - u) * z[i] - u * x[i];
        }
        const double nb = detail::pnorm(blend, s.p);
        for (auto& c : blend) c /= nb;
        return blend;
      };
      double lo = 0.0, hi = 2.0;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double dist = detail::pnorm(sub(x, at(mid)), s.p);
        if (dist < eps)
          lo = mid;
        else
          hi = mid;
      }
      y = at(hi);
    }
    Vec mid = add(x, y);
    for (auto& c : mid) c *= 0.5;
    best = std::min(best, 1.0 - detail::pnorm(mid, s.p));
  }
  return best;
}

/// Sampling witness for the smoothness bound: max over samples of
/// (||x+y|| + ||x-y||)/2 - 1 with ||x|| = 1, ||y|| = tau. Lower estimate of
/// rho_B(tau), so it must stay below rho_upper(tau) + 1e-9.
inline double empirical_smoothness(const SpaceSpec& s, double tau, int samples,
                                   std::uint64_t seed) {
  if (!(tau > 0.0)) throw std::invalid_argument("empirical_smoothness: tau must be positive");
  if (samples < 1) throw std::invalid_argument("empirical_smoothness: samples >= 1");
  Rng root(seed);
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    Rng rng = root.stream(static_cast<std::uint64_t>(k));
    const Vec x = detail::random_unit(s, rng);
    Vec y = detail::random_unit(s, rng);
    for (auto& c : y) c *= tau;
    const double val = 0.5 * (detail::pnorm(add(x, y), s.p) +
                              detail::pnorm(sub(x, y), s.p)) -
                       1.0;
    best = std::max(best, val);
  }
  return best;
}

}  // namespace lpproj
