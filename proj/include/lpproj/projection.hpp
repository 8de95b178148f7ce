#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "lpproj/rng.hpp"
#include "lpproj/sets.hpp"
#include "lpproj/space.hpp"

namespace lpproj {

enum class ProjMethod { closed_form, descent };

struct ProjectionResult {
  Vec argmin;
  double distance = 0.0;
  double certificate_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  ProjMethod method = ProjMethod::closed_form;
};

namespace detail {

constexpr double kFeasibilityTol = 1e-9;
constexpr int kInnerCertSamples = 128;
constexpr std::uint64_t kCertSeed = 0x5eedf00dcafe1234ull;
constexpr int kDescentCap = 10000;

inline double linf(const Vec& v) {
  double m = 0.0;
  for (double c : v) m = std::max(m, std::fabs(c));
  return m;
}

}  // namespace detail

/// Residual of the variational optimality test: min over sampled feasible xi
/// (plus enumerable extreme candidates) of <J(x - xbar), xbar - xi>. A
/// correct projection keeps this above -tol * max(1, ||x - xbar||^2).
inline double certificate_residual(const SpaceSpec& space, const ConvexSet& set,
                                   const Vec& x, const Vec& xbar, int nsamples,
                                   std::uint64_t seed) {
  detail::check_vector(space, x, "certificate_residual");
  detail::check_vector(space, xbar, "certificate_residual");
  if (nsamples < 0)
    throw std::invalid_argument("certificate_residual: negative sample count");
  if (!contains(set, xbar, detail::kFeasibilityTol))
    throw std::invalid_argument("certificate_residual: xbar is not feasible");
  const Vec w = duality_map(space, sub(x, xbar));
  bool w_zero = true;
  for (double c : w)
    if (c != 0.0) {
      w_zero = false;
      break;
    }
  if (w_zero) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  for (const Vec& cand : support_candidates(set, w))
    best = std::min(best, pairing(w, sub(xbar, cand)));

  const double dist = detail::pnorm(sub(x, xbar), space.p);
  const double sigma = 2.0 * std::max(1.0, dist);
  Rng root(seed);
  for (int k = 0; k < nsamples; ++k) {
    Rng rng = root.stream(static_cast<std::uint64_t>(k));
    const Vec xi = sample_feasible(set, xbar, sigma, rng);
    best = std::min(best, pairing(w, sub(xbar, xi)));
  }
  return std::isfinite(best) ? best : 0.0;
}

namespace detail {

struct DescentOutcome {
  Vec xi;
  int iterations = 0;
  bool converged = false;
  double certificate = 0.0;
};

/// Projected descent on f(xi) = sum |x_i - xi_i|^p / p with Armijo
/// backtracking (factor 0.5, initial step 1, sufficient decrease 1e-4) and
/// the exact Euclidean oracle for re-projection. The stopping test is the
/// sampled variational certificate, evaluated once progress stalls and
/// periodically on slow crawls; gradient norms are never consulted.
inline DescentOutcome descend(const SpaceSpec& space, const ConvexSet& set,
                              const Vec& x, double tol) {
  const double p = space.p;
  const int n = space.n;
  auto fval = [&](const Vec& v) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::pow(std::fabs(x[i] - v[i]), p);
    return s / p;
  };

  Vec xi = euclidean_project(set, x);
  double f = fval(xi);
  Vec g(n), trial(n);
  double last_cert = -std::numeric_limits<double>::infinity();

  auto certified = [&](const Vec& v) {
    const double dist = pnorm(sub(x, v), p);
    last_cert = certificate_residual(space, set, x, v, kInnerCertSamples, kCertSeed);
    return last_cert >= -tol * (1.0 + dist * dist);
  };

  for (int it = 1; it <= kDescentCap; ++it) {
    for (int i = 0; i < n; ++i) g[i] = -signed_pow(x[i] - xi[i], p - 1.0);

    double alpha = 1.0;
    bool found = false;
    double ftrial = f;
    while (alpha >= 1e-20) {
      trial = euclidean_project(set, sub(xi, scaled(g, alpha)));
      ftrial = fval(trial);
      const double model = dot(g, sub(trial, xi));
      if (ftrial <= f + 1e-4 * model) {
        found = true;
        break;
      }
      alpha *= 0.5;
    }

    double moved = 0.0;
    if (found) {
      moved = max_abs_diff(trial, xi);
      xi = trial;
      f = ftrial;
    }

    const bool stalled = !found || moved <= 1e-11 * (1.0 + linf(xi));
    const bool crawl = (it % 200) == 0 && moved <= 1e-6 * (1.0 + linf(xi));
    if (stalled || crawl) {
      if (certified(xi)) return {xi, it, true, last_cert};
      if (!found) return {xi, it, false, last_cert};
    }
  }
  const bool ok = certified(xi);
  return {xi, kDescentCap, ok, last_cert};
}

/// In-place SPD solve (Cholesky), row-major k x k. Returns false when the
/// matrix is not positive definite.
inline bool spd_solve(std::vector<double>& a, Vec& b, int k) {
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i * k + j];
      for (int m = 0; m < j; ++m) s -= a[i * k + m] * a[j * k + m];
      if (i == j) {
        if (s <= 0.0) return false;
        a[i * k + i] = std::sqrt(s);
      } else {
        a[i * k + j] = s / a[j * k + j];
      }
    }
  }
  for (int i = 0; i < k; ++i) {
    double s = b[i];
    for (int m = 0; m < i; ++m) s -= a[i * k + m] * b[m];
    b[i] = s / a[i * k + i];
  }
  for (int i = k - 1; i >= 0; --i) {
    double s = b[i];
    for (int m = i + 1; m < k; ++m) s -= a[m * k + i] * b[m];
    b[i] = s / a[i * k + i];
  }
  return true;
}

/// Damped Newton in the subspace parameters for affine sets: the constraint
/// is linear, so the problem is smooth and unconstrained in t where
/// xi = foot + B t. First-order descent crawls here whenever a residual
/// coordinate sits near zero (the Hessian weights |r_i|^{p-2} degenerate),
/// so the quadratic model does the work. Steps are accepted on objective
/// decrease OR on tangent-gradient-norm decrease: the gradient stays
/// resolvable long after f-differences drop below float resolution, and the
/// certificate needs the gradient driven to ~1e-10. The certificate still
/// decides convergence.
inline DescentOutcome descend_affine(const SpaceSpec& space, const ConvexSet& set,
                                     const AffineSubspace& aff, const Vec& x,
                                     double tol) {
  std::vector<Vec> scratch;
  const std::vector<Vec>& onb = *affine_onb(aff, scratch);
  const int k = static_cast<int>(onb.size());
  const int n = space.n;
  const double p = space.p;

  auto fval = [&](const Vec& v) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::pow(std::fabs(x[i] - v[i]), p);
    return s / p;
  };
  // residual powers u and tangent gradient; returns ||u||_2 for scaling
  Vec u(n);
  auto grad_at = [&](const Vec& v, Vec& g) {
    double unorm = 0.0;
    for (int i = 0; i < n; ++i) {
      u[i] = signed_pow(x[i] - v[i], p - 1.0);
      unorm += u[i] * u[i];
    }
    for (int a = 0; a < k; ++a) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s -= onb[a][i] * u[i];
      g[a] = s;
    }
    return std::sqrt(unorm);
  };

  Vec xi = euclidean_project(set, x);
  double f = fval(xi);
  Vec grad(k), gtrial(k), dt(k), w(n), trial(n);
  grad_at(xi, grad);
  double gnorm = norm2(grad);

  double last_cert = -std::numeric_limits<double>::infinity();
  auto certified = [&](const Vec& v) {
    const double dist = pnorm(sub(x, v), p);
    last_cert = certificate_residual(space, set, x, v, kInnerCertSamples, kCertSeed);
    return last_cert >= -tol * (1.0 + dist * dist);
  };

  std::vector<double> hess(static_cast<std::size_t>(k) * k);
  double lambda = 0.0;

  for (int it = 1; it <= kDescentCap; ++it) {
    double wmax = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = x[i] - xi[i];
      const double floored = std::max(std::fabs(r), 1e-9 * (1.0 + std::fabs(x[i])));
      w[i] = (p - 1.0) * std::pow(floored, p - 2.0);
      wmax = std::max(wmax, w[i]);
    }

    bool stepped = false;
    double moved = 0.0;
    for (int attempt = 0; attempt < 60 && !stepped; ++attempt) {
      std::vector<double>& H = hess;
      for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
          double s = 0.0;
          for (int i = 0; i < n; ++i) s += onb[a][i] * w[i] * onb[b][i];
          H[a * k + b] = H[b * k + a] = s;
        }
      for (int a = 0; a < k; ++a) H[a * k + a] += lambda;
      for (int a = 0; a < k; ++a) dt[a] = -grad[a];
      if (!spd_solve(H, dt, k)) {
        lambda = std::max(lambda * 10.0, 1e-12 * std::max(wmax, 1.0));
        continue;
      }
      for (int i = 0; i < n; ++i) {
        double c = xi[i];
        for (int a = 0; a < k; ++a) c += dt[a] * onb[a][i];
        trial[i] = c;
      }
      const double ftrial = fval(trial);
      grad_at(trial, gtrial);
      const double gtnorm = norm2(gtrial);
      const double model = dot(grad, dt);
      if (ftrial <= f + 1e-4 * model || gtnorm <= gnorm * (1.0 - 1e-9)) {
        moved = max_abs_diff(trial, xi);
        xi = trial;
        f = ftrial;
        grad = gtrial;
        gnorm = gtnorm;
        stepped = true;
        lambda /= 3.0;
        if (lambda < 1e-14 * std::max(wmax, 1.0)) lambda = 0.0;
      } else {
        lambda = std::max(lambda * 10.0, 1e-12 * std::max(wmax, 1.0));
      }
    }

    // No small-gradient bailout: the certificate threshold is absolute while
    // the tangent gradient scales like dist^{p-1}, so "small" gradients can
    // still fail the certificate; the gradient stays resolvable down to its
    // noise floor, which sits far below what the certificate needs.
    const bool tiny_move = stepped && moved <= 1e-12 * (1.0 + linf(xi));
    if (!stepped || tiny_move || it % 25 == 0) {
      if (certified(xi)) return {xi, it, true, last_cert};
      if (!stepped) return {xi, it, false, last_cert};
    }
  }
  const bool ok = certified(xi);
  return {xi, kDescentCap, ok, last_cert};
}

}  // namespace detail

/// Metric projection of x onto the set in the l^p norm. Box, hyperplane and
/// halfspace have exact closed forms for every p (the box objective is
/// separable; the hyperplane solution comes from the stationarity condition
/// |x_i - xi_i|^{p-1} sign(x_i - xi_i) = lambda a_i). For p = 2 every
/// supported set has an exact Euclidean form. Everything else runs projected
/// descent and stops on the variational certificate.
inline ProjectionResult project(const SpaceSpec& space, const ConvexSet& set,
                                const Vec& x, double tol = 1e-8) {
  if (!(tol >= 1e-12 && tol <= 1e-4))
    throw std::invalid_argument("project: tol outside [1e-12, 1e-4]");
  detail::check_vector(space, x, "project");
  validate_set(set, space.n);

  if (contains(set, x, detail::kFeasibilityTol))
    return {x, 0.0, 0.0, 0, true, ProjMethod::closed_form};

  auto finish_closed = [&](Vec xi) {
    ProjectionResult r;
    r.distance = detail::pnorm(sub(x, xi), space.p);
    r.argmin = std::move(xi);
    r.certificate_residual = certificate_residual(
        space, set, x, r.argmin, detail::kInnerCertSamples, detail::kCertSeed);
    r.iterations = 0;
    r.converged = true;
    r.method = ProjMethod::closed_form;
    return r;
  };

  if (std::holds_alternative<Box>(set))
    return finish_closed(euclidean_project(set, x));

  auto lp_hyperplane = [&](const Vec& a, double b) {
    double aq = 0.0;
    for (double c : a) aq += std::pow(std::fabs(c), space.q);
    const double s = (pairing(a, x) - b) / aq;
    Vec xi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      xi[i] = x[i] - s * signed_pow(a[i], space.q - 1.0);
    return xi;
  };

  if (const auto* hp = std::get_if<Hyperplane>(&set))
    return finish_closed(lp_hyperplane(hp->a, hp->b));
  if (const auto* hs = std::get_if<Halfspace>(&set))
    return finish_closed(lp_hyperplane(hs->a, hs->b));  // x is infeasible here

  if (space.p == 2.0) return finish_closed(euclidean_project(set, x));

  detail::DescentOutcome d =
      std::holds_alternative<AffineSubspace>(set)
          ? detail::descend_affine(space, set, std::get<AffineSubspace>(set), x, tol)
          : detail::descend(space, set, x, tol);
  ProjectionResult r;
  r.distance = detail::pnorm(sub(x, d.xi), space.p);
  r.argmin = std::move(d.xi);
  r.certificate_residual = d.certificate;
  r.iterations = d.iterations;
  r.converged = d.converged;
  r.method = ProjMethod::descent;
  return r;
}

struct BruteForceResult {
  Vec argmin;
  double grid_step = 0.0;
};

namespace detail {

/// Orthonormal basis of the orthogonal complement of span{a}.
inline std::vector<Vec> tangent_basis(const Vec& a) {
  std::vector<Vec> onb;
  onb.push_back(scaled(a, 1.0 / norm2(a)));
  for (std::size_t i = 0; i < a.size() && onb.size() < a.size(); ++i) {
    Vec e(a.size(), 0.0);
    e[i] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& v : onb) {
        const double c = dot(e, v);
        for (std::size_t j = 0; j < e.size(); ++j) e[j] -= c * v[j];
      }
    const double ne = norm2(e);
    if (ne > 1e-10) {
      for (auto& c : e) c /= ne;
      onb.push_back(std::move(e));
    }
  }
  return {onb.begin() + 1, onb.end()};
}

struct GridParam {
  int k = 0;
  std::vector<double> lo, hi;            // initial window per axis
  std::vector<double> hard_lo, hard_hi;  // feasible parameter bounds
  std::vector<double> scale;             // point-space length per unit step
  std::vector<double> seed;              // parameters of a feasible seed point
  std::function<void(const std::vector<double>&, Vec&)> to_point;
  std::function<bool(const std::vector<double>&)> ok;
};

inline GridParam tangent_piece(const Vec& center, std::vector<Vec> dirs, double w) {
  GridParam gp;
  gp.k = static_cast<int>(dirs.size());
  const double inf = std::numeric_limits<double>::infinity();
  gp.lo.assign(gp.k, -w);
  gp.hi.assign(gp.k, w);
  gp.hard_lo.assign(gp.k, -inf);
  gp.hard_hi.assign(gp.k, inf);
  gp.scale.assign(gp.k, 1.0);
  gp.seed.assign(gp.k, 0.0);
  gp.to_point = [center, dirs = std::move(dirs)](const std::vector<double>& t, Vec& out) {
    out = center;
    for (std::size_t j = 0; j < dirs.size(); ++j)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[j] * dirs[j][i];
  };
  gp.ok = [](const std::vector<double>&) { return true; };
  return gp;
}

/// Search pieces for the oracle. Minimizers on oblique or curved boundary
/// parts are parametrized directly (boundary hyperplane of a halfspace,
/// sphere angles of a ball, the sum facet of the 3d simplex): a feasibility
/// filter over a full-dimensional grid aliases against such boundaries (the
/// staircase of near-boundary grid nodes beats the tangentially correct cell)
/// and the refinement cannot walk the error back.
inline std::vector<GridParam> make_grid_pieces(const ConvexSet& set,
                                               const SpaceSpec& space, const Vec& x,
                                               const Vec& foot, double r) {
  const int n = space.n;
  const double inf = std::numeric_limits<double>::infinity();
  const double kp =
      space.p <= 2.0 ? 1.0 : std::pow(static_cast<double>(n), 0.5 - 1.0 / space.p);
  std::vector<GridParam> pieces;

  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          GridParam gp;
          gp.k = n;
          gp.lo.resize(n);
          gp.hi.resize(n);
          gp.hard_lo.resize(n);
          gp.hard_hi.resize(n);
          gp.scale.assign(n, 1.0);
          for (int i = 0; i < n; ++i) {
            gp.hard_lo[i] = s.lo[i];
            gp.hard_hi[i] = s.hi[i];
            gp.lo[i] = std::max(x[i] - 2.0 * r, s.lo[i]);
            gp.hi[i] = std::min(x[i] + 2.0 * r, s.hi[i]);
          }
          gp.seed = foot;
          gp.to_point = [](const std::vector<double>& t, Vec& out) {
            std::copy(t.begin(), t.end(), out.begin());
          };
          gp.ok = [](const std::vector<double>&) { return true; };
          pieces.push_back(std::move(gp));
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          // x is infeasible here, so the minimizer lies on the boundary plane
          const Vec bfoot = euclidean_project(ConvexSet{Hyperplane{s.a, s.b}}, x);
          const double w = kp * r + norm2(sub(x, bfoot)) + 1e-9 * (1.0 + r);
          pieces.push_back(tangent_piece(bfoot, tangent_basis(s.a), w));
        } else if constexpr (std::is_same_v<T, Hyperplane>) {
          const double w = kp * r + norm2(sub(x, foot)) + 1e-9 * (1.0 + r);
          if (n > 1) pieces.push_back(tangent_piece(foot, tangent_basis(s.a), w));
        } else if constexpr (std::is_same_v<T, AffineSubspace>) {
          std::vector<Vec> scratch;
          const std::vector<Vec> onb = *affine_onb(s, scratch);
          const double w = kp * r + norm2(sub(x, foot)) + 1e-9 * (1.0 + r);
          pieces.push_back(tangent_piece(foot, onb, w));
        } else if constexpr (std::is_same_v<T, EuclideanBall>) {
          // x outside: minimizer on the sphere
          const Vec c = s.center;
          const double rad = s.radius;
          if (n == 1) {
            GridParam gp;
            gp.k = 1;
            gp.lo = {c[0] - rad};
            gp.hi = {c[0] + rad};
            gp.hard_lo = gp.lo;
            gp.hard_hi = gp.hi;
            gp.scale = {1.0};
            gp.seed = {foot[0]};
            gp.to_point = [](const std::vector<double>& t, Vec& out) { out[0] = t[0]; };
            gp.ok = [](const std::vector<double>&) { return true; };
            pieces.push_back(std::move(gp));
          } else if (n == 2) {
            const Vec d = sub(x, c);
            double seed_t = std::atan2(d[1], d[0]);
            if (seed_t < 0.0) seed_t += 2.0 * std::numbers::pi;
            GridParam gp;
            gp.k = 1;
            gp.lo = {0.0};
            gp.hi = {2.0 * std::numbers::pi};
            gp.hard_lo = {-inf};  // trig periodicity makes clamping unnecessary
            gp.hard_hi = {inf};
            gp.scale = {rad};
            gp.seed = {seed_t};
            gp.to_point = [c, rad](const std::vector<double>& t, Vec& out) {
              out[0] = c[0] + rad * std::cos(t[0]);
              out[1] = c[1] + rad * std::sin(t[0]);
            };
            gp.ok = [](const std::vector<double>&) { return true; };
            pieces.push_back(std::move(gp));
          } else {
            const Vec d = sub(x, c);
            const double nd = norm2(d);
            double seed_polar = std::acos(std::clamp(d[2] / nd, -1.0, 1.0));
            double seed_az = std::atan2(d[1], d[0]);
            if (seed_az < 0.0) seed_az += 2.0 * std::numbers::pi;
            GridParam gp;
            gp.k = 2;
            gp.lo = {0.0, 0.0};
            gp.hi = {std::numbers::pi, 2.0 * std::numbers::pi};
            gp.hard_lo = {-inf, -inf};
            gp.hard_hi = {inf, inf};
            gp.scale = {rad, rad};
            gp.seed = {seed_polar, seed_az};
            gp.to_point = [c, rad](const std::vector<double>& t, Vec& out) {
              const double sp = std::sin(t[0]);
              out[0] = c[0] + rad * sp * std::cos(t[1]);
              out[1] = c[1] + rad * sp * std::sin(t[1]);
              out[2] = c[2] + rad * std::cos(t[0]);
            };
            gp.ok = [](const std::vector<double>&) { return true; };
            pieces.push_back(std::move(gp));
          }
        } else if constexpr (std::is_same_v<T, Simplex>) {
          const double sc = s.scale;
          if (n == 1) return;  // the singleton {scale}; the foot is exact
          {
            GridParam gp;
            gp.k = n - 1;
            gp.lo.resize(gp.k);
            gp.hi.resize(gp.k);
            gp.hard_lo.assign(gp.k, 0.0);
            gp.hard_hi.assign(gp.k, sc);
            gp.scale.assign(gp.k, 1.0);
            for (int i = 0; i < gp.k; ++i) {
              gp.lo[i] = std::max(x[i] - 2.0 * r, 0.0);
              gp.hi[i] = std::min(x[i] + 2.0 * r, sc);
            }
            gp.seed.assign(foot.begin(), foot.end() - 1);
            gp.to_point = [sc](const std::vector<double>& t, Vec& out) {
              double sum = 0.0;
              for (std::size_t i = 0; i < t.size(); ++i) {
                out[i] = t[i];
                sum += t[i];
              }
              out.back() = std::max(sc - sum, 0.0);
            };
            gp.ok = [sc](const std::vector<double>& t) {
              double sum = 0.0;
              for (double c : t) sum += c;
              return sum <= sc * (1.0 + 1e-12);
            };
            pieces.push_back(std::move(gp));
          }
          if (n == 3) {
            // the facet xi_3 = 0 is oblique in the parametrization above
            GridParam gp;
            gp.k = 1;
            gp.lo = {std::max(x[0] - 2.0 * r, 0.0)};
            gp.hi = {std::min(x[0] + 2.0 * r, sc)};
            gp.hard_lo = {0.0};
            gp.hard_hi = {sc};
            gp.scale = {1.0};
            gp.seed = {std::clamp(x[0], 0.0, sc)};
            gp.to_point = [sc](const std::vector<double>& t, Vec& out) {
              out[0] = t[0];
              out[1] = sc - t[0];
              out[2] = 0.0;
            };
            gp.ok = [](const std::vector<double>&) { return true; };
            pieces.push_back(std::move(gp));
          }
        }
      },
      set);
  return pieces;
}

}  // namespace detail

/// Grid-search oracle for the metric projection, dimension <= 3. Searches the
/// feasible region inside [x - 2r, x + 2r] (r = distance to the Euclidean
/// foot point, which also seeds the incumbent), then runs 3 local refinement
/// rounds that shrink the grid step 10x around the incumbent. The final grid
/// step is reported so callers can budget the comparison tolerance.
inline BruteForceResult brute_force_project(const SpaceSpec& space,
                                            const ConvexSet& set, const Vec& x,
                                            int resolution) {
  if (space.n > 3)
    throw std::invalid_argument("brute_force_project: dimension must be <= 3");
  if (resolution < 3)
    throw std::invalid_argument("brute_force_project: resolution too small");
  detail::check_vector(space, x, "brute_force_project");
  validate_set(set, space.n);

  if (contains(set, x, detail::kFeasibilityTol)) return {x, 1e-12};

  const Vec foot = euclidean_project(set, x);
  const double r = detail::pnorm(sub(x, foot), space.p);
  const std::vector<detail::GridParam> pieces =
      detail::make_grid_pieces(set, space, x, foot, r);

  Vec best_point = foot;
  double best_obj = std::numeric_limits<double>::infinity();
  {
    double s = 0.0;
    for (int i = 0; i < space.n; ++i)
      s += std::pow(std::fabs(x[i] - foot[i]), space.p);
    best_obj = s;
  }
  double best_step = 1e-12;

  Vec buf(static_cast<std::size_t>(space.n));
  for (const detail::GridParam& gp : pieces) {
    auto objective = [&](const std::vector<double>& t) {
      if (!gp.ok(t)) return std::numeric_limits<double>::infinity();
      gp.to_point(t, buf);
      double s = 0.0;
      for (int i = 0; i < space.n; ++i)
        s += std::pow(std::fabs(x[i] - buf[i]), space.p);
      return s;
    };

    std::vector<double> best_t = gp.seed;
    double piece_best = objective(best_t);
    if (!std::isfinite(piece_best))
      throw std::runtime_error("brute_force_project: empty feasible grid");

    auto sweep = [&](const std::vector<std::vector<double>>& axes) {
      std::vector<std::size_t> idx(axes.size(), 0);
      std::vector<double> t(axes.size());
      while (true) {
        for (std::size_t j = 0; j < axes.size(); ++j) t[j] = axes[j][idx[j]];
        const double f = objective(t);
        if (f < piece_best) {
          piece_best = f;
          best_t = t;
        }
        std::size_t j = 0;
        for (; j < axes.size(); ++j) {
          if (++idx[j] < axes[j].size()) break;
          idx[j] = 0;
        }
        if (j == axes.size()) break;
      }
    };

    std::vector<double> step(gp.k, 0.0);
    {
      std::vector<std::vector<double>> axes(gp.k);
      for (int j = 0; j < gp.k; ++j) {
        const double lo = gp.lo[j], hi = gp.hi[j];
        if (hi <= lo) {
          axes[j] = {lo};
          step[j] = 0.0;
          continue;
        }
        step[j] = (hi - lo) / static_cast<double>(resolution - 1);
        axes[j].resize(resolution);
        for (int i = 0; i < resolution; ++i)
          axes[j][i] = lo + step[j] * static_cast<double>(i);
      }
      sweep(axes);
    }

    for (int round = 0; round < 3; ++round) {
      std::vector<std::vector<double>> axes(gp.k);
      for (int j = 0; j < gp.k; ++j) {
        if (step[j] == 0.0) {
          axes[j] = {best_t[j]};
          continue;
        }
        const double h = step[j] / 10.0;
        for (int i = -20; i <= 20; ++i) {
          const double c = best_t[j] + h * static_cast<double>(i);
          if (c >= gp.hard_lo[j] - 1e-15 && c <= gp.hard_hi[j] + 1e-15)
            axes[j].push_back(std::clamp(c, gp.hard_lo[j], gp.hard_hi[j]));
        }
        step[j] = h;
      }
      sweep(axes);
    }

    if (piece_best <= best_obj) {
      gp.to_point(best_t, buf);
      best_point = buf;
      best_obj = piece_best;
      double final_step = 0.0;
      for (int j = 0; j < gp.k; ++j)
        final_step = std::max(final_step, step[j] * gp.scale[j]);
      best_step = std::max(final_step, 1e-12);
    }
  }
  return {best_point, best_step};
}

struct AlternatingResult {
  std::vector<Vec> trajectory;
  std::vector<double> infeasibility_a;
  std::vector<double> infeasibility_b;
  bool feasible = false;
  int iterations = 0;
};

/// Alternating metric projections x <- P_A(P_B(x)) in the l^p norm.
/// Infeasibility is the cheap surrogate ||v - euclidean_project(S, v)||_p;
/// it is reported, not used for optimality claims.
inline AlternatingResult alternating_projections(const SpaceSpec& space,
                                                 const ConvexSet& set_a,
                                                 const ConvexSet& set_b,
                                                 const Vec& x0, int maxiter,
                                                 double tol) {
  detail::check_vector(space, x0, "alternating_projections");
  validate_set(set_a, space.n);
  validate_set(set_b, space.n);
  if (maxiter < 1)
    throw std::invalid_argument("alternating_projections: maxiter must be >= 1");
  if (!(tol > 0.0))
    throw std::invalid_argument("alternating_projections: tol must be positive");

  auto infeas = [&](const ConvexSet& s, const Vec& v) {
    return detail::pnorm(sub(v, euclidean_project(s, v)), space.p);
  };

  AlternatingResult out;
  Vec cur = x0;
  out.trajectory.push_back(cur);
  out.infeasibility_a.push_back(infeas(set_a, cur));
  out.infeasibility_b.push_back(infeas(set_b, cur));

  for (int it = 1; it <= maxiter; ++it) {
    if (out.infeasibility_a.back() < tol && out.infeasibility_b.back() < tol) {
      out.feasible = true;
      return out;
    }
    ProjectionResult pb = project(space, set_b, cur);
    if (!pb.converged)
      throw std::runtime_error("alternating_projections: inner projection failed");
    ProjectionResult pa = project(space, set_a, pb.argmin);
    if (!pa.converged)
      throw std::runtime_error("alternating_projections: inner projection failed");
    cur = pa.argmin;
    out.iterations = it;
    out.trajectory.push_back(cur);
    out.infeasibility_a.push_back(infeas(set_a, cur));
    out.infeasibility_b.push_back(infeas(set_b, cur));
  }
  out.feasible = out.infeasibility_a.back() < tol && out.infeasibility_b.back() < tol;
  return out;
}

}  // namespace lpproj
