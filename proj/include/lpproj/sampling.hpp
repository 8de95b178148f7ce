#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "lpproj/moduli.hpp"
#include "lpproj/rng.hpp"
#include "lpproj/sets.hpp"
#include "lpproj/space.hpp"

namespace lpproj {

/// Uniform-ish draw in the l^p ball: Gaussian direction normalized in the
/// space's norm, radius scaled by u^{1/n}. Guarantees ||x||_p <= radius.
inline Vec sample_point(const SpaceSpec& space, double radius, Rng& rng) {
  if (!(radius > 0.0))
    throw std::invalid_argument("sample_point: radius must be positive");
  Vec v = detail::random_unit(space, rng);
  const double r =
      radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(space.n));
  for (auto& c : v) c *= r;
  return v;
}

/// Pair draw; with d_target set, the chord y - x is rescaled so that
/// ||x - y||_p lands on d_target (within 1e-12).
inline std::pair<Vec, Vec> sample_pair(const SpaceSpec& space, double radius,
                                       std::optional<double> d_target, Rng& rng) {
  if (d_target && (!(*d_target >= 0.0) || *d_target > 2.0 * radius))
    throw std::invalid_argument("sample_pair: impossible d_target");
  Vec x = sample_point(space, radius, rng);
  Vec y = sample_point(space, radius, rng);
  if (!d_target) return {std::move(x), std::move(y)};
  if (*d_target == 0.0) return {x, x};
  Vec dir = sub(y, x);
  double nd = detail::pnorm(dir, space.p);
  if (nd < 1e-12) {
    dir = detail::random_unit(space, rng);
    nd = 1.0;
  }
  const double t = *d_target / nd;
  for (std::size_t i = 0; i < dir.size(); ++i) y[i] = x[i] + t * dir[i];
  return {std::move(x), std::move(y)};
}

enum class SetKind { hyperplane, halfspace, box, ball, simplex, affine };

inline constexpr std::array<SetKind, 6> kAllSetKinds = {
    SetKind::hyperplane, SetKind::halfspace, SetKind::box,
    SetKind::ball,       SetKind::simplex,   SetKind::affine};

/// Random well-formed instance of the requested kind that intersects the
/// sampling ball of the given radius (redrawn up to 100 times, witnessed by
/// an explicit feasible point).
inline ConvexSet sample_set(SetKind kind, const SpaceSpec& space, Rng& rng,
                            double radius = 10.0) {
  const int n = space.n;
  const double fit = 0.9 * radius;
  for (int attempt = 0; attempt < 100; ++attempt) {
    switch (kind) {
      case SetKind::hyperplane:
      case SetKind::halfspace: {
        Vec a(n);
        for (auto& c : a) c = rng.normal();
        const double na = detail::pnorm(a, space.q);
        if (na < 1e-12) continue;
        for (auto& c : a) c /= na;
        const double b = rng.uniform(-5.0, 5.0);
        // l^p distance from the origin is |b| / ||a||_q = |b|
        const double dist = kind == SetKind::halfspace && b >= 0.0 ? 0.0 : std::fabs(b);
        if (dist > fit) continue;
        if (kind == SetKind::hyperplane) return Hyperplane{std::move(a), b};
        return Halfspace{std::move(a), b};
      }
      case SetKind::box: {
        Vec lo(n), hi(n), witness(n);
        for (int i = 0; i < n; ++i) {
          const double center = rng.uniform(-4.0, 4.0);
          const double half = rng.uniform(0.25, 2.0);
          lo[i] = center - half;
          hi[i] = center + half;
          witness[i] = std::clamp(0.0, lo[i], hi[i]);
        }
        if (detail::pnorm(witness, space.p) > fit) continue;
        return Box{std::move(lo), std::move(hi)};
      }
      case SetKind::ball: {
        Vec center = sample_point(space, std::min(5.0, fit), rng);
        const double r = rng.uniform(0.5, 3.0);
        if (detail::pnorm(center, space.p) > fit) continue;
        return EuclideanBall{std::move(center), r};
      }
      case SetKind::simplex: {
        const double scale = rng.uniform(0.5, 5.0);
        if (scale > fit) continue;
        return Simplex{scale};
      }
      case SetKind::affine: {
        Vec base = sample_point(space, std::min(3.0, fit), rng);
        const int k = n == 1 ? 1 : 1 + static_cast<int>(rng.uniform_index(
                                            static_cast<std::uint64_t>(n - 1)));
        std::vector<Vec> basis(k, Vec(n));
        for (auto& v : basis)
          for (auto& c : v) c = rng.normal();
        try {
          return AffineSubspace::make(std::move(base), std::move(basis));
        } catch (const std::invalid_argument&) {
          continue;  // rank-deficient draw
        }
      }
    }
  }
  throw std::runtime_error("sample_set: no admissible instance in 100 attempts");
}

}  // namespace lpproj
