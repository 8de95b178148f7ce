#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lpproj/rng.hpp"
#include "lpproj/space.hpp"

namespace lpproj {

// Canonical convex sets. Hyperplane/Halfspace constraints read <a, xi> = b
// and <a, xi> <= b.

struct Hyperplane {
  Vec a;
  double b = 0.0;
};

struct Halfspace {
  Vec a;
  double b = 0.0;
};

struct Box {
  Vec lo;
  Vec hi;
};

struct EuclideanBall {
  Vec center;
  double radius = 1.0;
};

/// xi >= 0, sum xi = scale.
struct Simplex {
  double scale = 1.0;
};

struct AffineSubspace {
  Vec base;
  std::vector<Vec> basis;
  /// Orthonormalized copy of basis, filled by make()/from_json; kept out of
  /// serialization. euclidean_project recomputes it locally when absent.
  std::vector<Vec> onb;

  static AffineSubspace make(Vec base, std::vector<Vec> basis);
};

using ConvexSet =
    std::variant<Hyperplane, Halfspace, Box, EuclideanBall, Simplex, AffineSubspace>;

namespace detail {

/// Modified Gram-Schmidt with one re-orthogonalization pass; throws when the
/// input is rank deficient.
inline std::vector<Vec> orthonormalize(const std::vector<Vec>& basis) {
  std::vector<Vec> onb;
  onb.reserve(basis.size());
  for (const Vec& v : basis) {
    Vec u = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& e : onb) {
        const double c = dot(u, e);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] -= c * e[i];
      }
    const double nu = norm2(u);
    if (nu <= 1e-10 * std::max(1.0, norm2(v)))
      throw std::invalid_argument("AffineSubspace: basis vectors are linearly dependent");
    for (auto& c : u) c /= nu;
    onb.push_back(std::move(u));
  }
  return onb;
}

}  // namespace detail

inline AffineSubspace AffineSubspace::make(Vec base, std::vector<Vec> basis) {
  if (basis.empty())
    throw std::invalid_argument("AffineSubspace: basis must be nonempty");
  for (const Vec& v : basis)
    if (v.size() != base.size())
      throw std::invalid_argument("AffineSubspace: basis/base dimension mismatch");
  AffineSubspace s;
  s.onb = detail::orthonormalize(basis);
  s.base = std::move(base);
  s.basis = std::move(basis);
  return s;
}

inline const char* set_kind_name(const ConvexSet& set) {
  return std::visit(
      [](const auto& s) -> const char* {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hyperplane>) return "hyperplane";
        if constexpr (std::is_same_v<T, Halfspace>) return "halfspace";
        if constexpr (std::is_same_v<T, Box>) return "box";
        if constexpr (std::is_same_v<T, EuclideanBall>) return "ball";
        if constexpr (std::is_same_v<T, Simplex>) return "simplex";
        if constexpr (std::is_same_v<T, AffineSubspace>) return "affine";
        return "unknown";
      },
      set);
}

inline void validate_set(const ConvexSet& set, int n) {
  std::visit(
      [n](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        auto need = [n](const Vec& v, const char* what) {
          if (static_cast<int>(v.size()) != n)
            throw std::invalid_argument(std::string("ConvexSet: ") + what +
                                        " has wrong dimension");
          for (double c : v)
            if (!std::isfinite(c))
              throw std::invalid_argument(std::string("ConvexSet: ") + what +
                                          " has non-finite entries");
        };
        if constexpr (std::is_same_v<T, Hyperplane> || std::is_same_v<T, Halfspace>) {
          need(s.a, "normal");
          if (norm2(s.a) == 0.0)
            throw std::invalid_argument("ConvexSet: zero normal vector");
          if (!std::isfinite(s.b))
            throw std::invalid_argument("ConvexSet: non-finite offset");
        } else if constexpr (std::is_same_v<T, Box>) {
          need(s.lo, "lo");
          need(s.hi, "hi");
          for (int i = 0; i < n; ++i)
            if (s.lo[i] > s.hi[i])
              throw std::invalid_argument("ConvexSet: box has lo > hi");
        } else if constexpr (std::is_same_v<T, EuclideanBall>) {
          need(s.center, "center");
          if (!(s.radius > 0.0))
            throw std::invalid_argument("ConvexSet: ball radius must be positive");
        } else if constexpr (std::is_same_v<T, Simplex>) {
          if (!(s.scale > 0.0))
            throw std::invalid_argument("ConvexSet: simplex scale must be positive");
        } else if constexpr (std::is_same_v<T, AffineSubspace>) {
          need(s.base, "base");
          if (s.basis.empty())
            throw std::invalid_argument("ConvexSet: affine basis must be nonempty");
          for (const Vec& v : s.basis) need(v, "basis vector");
          detail::orthonormalize(s.basis);  // rank check
        }
      },
      set);
}

namespace detail {

inline const std::vector<Vec>* affine_onb(const AffineSubspace& s,
                                          std::vector<Vec>& scratch) {
  if (!s.onb.empty()) return &s.onb;
  scratch = orthonormalize(s.basis);
  return &scratch;
}

/// Euclidean projection onto {xi >= 0, sum xi = scale} (sort-based).
inline Vec project_simplex(const Vec& x, double scale) {
  Vec u = x;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  int support = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double cand = (cum - scale) / static_cast<double>(j + 1);
    if (u[j] - cand > 0.0) {
      theta = cand;
      support = static_cast<int>(j + 1);
    }
  }
  (void)support;
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = std::max(x[i] - theta, 0.0);
  return out;
}

}  // namespace detail

/// Exact Euclidean (l^2) projection; used as the inner oracle of the
/// projected-descent solver and as the feasibility surrogate.
inline Vec euclidean_project(const ConvexSet& set, const Vec& x) {
  return std::visit(
      [&x](const auto& s) -> Vec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hyperplane>) {
          const double t = (pairing(s.a, x) - s.b) / dot(s.a, s.a);
          return sub(x, scaled(s.a, t));
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          const double viol = pairing(s.a, x) - s.b;
          if (viol <= 0.0) return x;
          return sub(x, scaled(s.a, viol / dot(s.a, s.a)));
        } else if constexpr (std::is_same_v<T, Box>) {
          Vec out(x.size());
          for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = std::clamp(x[i], s.lo[i], s.hi[i]);
          return out;
        } else if constexpr (std::is_same_v<T, EuclideanBall>) {
          Vec d = sub(x, s.center);
          const double nd = norm2(d);
          if (nd <= s.radius) return x;
          return add(s.center, scaled(d, s.radius / nd));
        } else if constexpr (std::is_same_v<T, Simplex>) {
          return detail::project_simplex(x, s.scale);
        } else {
          std::vector<Vec> scratch;
          const auto* onb = detail::affine_onb(s, scratch);
          Vec out = s.base;
          const Vec d = sub(x, s.base);
          for (const Vec& e : *onb) {
            const double c = dot(e, d);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * e[i];
          }
          return out;
        }
      },
      set);
}

/// Membership within an absolute tolerance on the constraint residuals.
inline bool contains(const ConvexSet& set, const Vec& x, double tol) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hyperplane>) {
          const double r = pairing(s.a, x) - s.b;
          return std::fabs(r) <= tol * std::max({1.0, std::fabs(s.b), norm2(s.a) * norm2(x)});
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          const double r = pairing(s.a, x) - s.b;
          return r <= tol * std::max({1.0, std::fabs(s.b), norm2(s.a) * norm2(x)});
        } else if constexpr (std::is_same_v<T, Box>) {
          for (std::size_t i = 0; i < x.size(); ++i) {
            const double sc = std::max({1.0, std::fabs(s.lo[i]), std::fabs(s.hi[i])});
            if (x[i] < s.lo[i] - tol * sc || x[i] > s.hi[i] + tol * sc) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, EuclideanBall>) {
          return norm2(sub(x, s.center)) <= s.radius + tol * std::max(1.0, s.radius);
        } else if constexpr (std::is_same_v<T, Simplex>) {
          const double sc = std::max(1.0, s.scale);
          double sum = 0.0;
          for (double c : x) {
            if (c < -tol * sc) return false;
            sum += c;
          }
          return std::fabs(sum - s.scale) <= tol * sc;
        } else {
          const Vec pr = euclidean_project(ConvexSet{s}, x);
          return norm2(sub(x, pr)) <= tol * std::max(1.0, norm2(x));
        }
      },
      set);
}

/// Draws a feasible point; `anchor` and `sigma` steer the spread for the
/// unbounded kinds (tangent displacements around the anchor).
inline Vec sample_feasible(const ConvexSet& set, const Vec& anchor, double sigma,
                           Rng& rng) {
  return std::visit(
      [&](const auto& s) -> Vec {
        using T = std::decay_t<decltype(s)>;
        const std::size_t n = anchor.size();
        if constexpr (std::is_same_v<T, Box>) {
          Vec out(n);
          for (std::size_t i = 0; i < n; ++i)
            out[i] = rng.uniform(s.lo[i], s.hi[i]);
          return out;
        } else if constexpr (std::is_same_v<T, EuclideanBall>) {
          Vec dir(n);
          for (auto& c : dir) c = rng.normal();
          const double nd = norm2(dir);
          const double r = s.radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
          if (nd == 0.0) return s.center;
          return add(s.center, scaled(dir, r / nd));
        } else if constexpr (std::is_same_v<T, Simplex>) {
          Vec out(n);
          double sum = 0.0;
          for (auto& c : out) {
            c = -std::log(1.0 - rng.uniform());
            sum += c;
          }
          for (auto& c : out) c = s.scale * c / sum;
          return out;
        } else if constexpr (std::is_same_v<T, Hyperplane>) {
          Vec g(n);
          for (auto& c : g) c = rng.normal();
          const double along = dot(g, s.a) / dot(s.a, s.a);
          Vec tangent = sub(g, scaled(s.a, along));
          return add(anchor, scaled(tangent, sigma * rng.uniform()));
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          Vec g(n);
          for (auto& c : g) c = rng.normal();
          Vec cand = add(anchor, scaled(g, sigma * rng.uniform()));
          return euclidean_project(ConvexSet{s}, cand);
        } else {
          std::vector<Vec> scratch;
          const auto* onb = detail::affine_onb(s, scratch);
          Vec out = euclidean_project(ConvexSet{s}, anchor);
          for (const Vec& e : *onb) {
            const double c = sigma * rng.normal();
            for (std::size_t i = 0; i < n; ++i) out[i] += c * e[i];
          }
          return out;
        }
      },
      set);
}

/// Extreme points maximizing <w, xi> where enumerable: the relevant box
/// corner, the simplex vertex, the ball support point. Makes the variational
/// certificate exact for the bounded kinds.
inline std::vector<Vec> support_candidates(const ConvexSet& set, const Vec& w) {
  return std::visit(
      [&](const auto& s) -> std::vector<Vec> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          Vec c(w.size());
          for (std::size_t i = 0; i < w.size(); ++i)
            c[i] = w[i] > 0.0 ? s.hi[i] : s.lo[i];
          return {c};
        } else if constexpr (std::is_same_v<T, Simplex>) {
          std::size_t k = 0;
          for (std::size_t i = 1; i < w.size(); ++i)
            if (w[i] > w[k]) k = i;
          Vec c(w.size(), 0.0);
          c[k] = s.scale;
          return {c};
        } else if constexpr (std::is_same_v<T, EuclideanBall>) {
          const double nw = norm2(w);
          if (nw == 0.0) return {};
          return {add(s.center, scaled(w, s.radius / nw))};
        } else {
          return {};
        }
      },
      set);
}

// --- JSON serialization -------------------------------------------------
//
// Tagged objects, e.g. {"type":"halfspace","a":[1,0],"b":0.5}.

inline void to_json(nlohmann::json& j, const ConvexSet& set) {
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hyperplane>)
          j = {{"type", "hyperplane"}, {"a", s.a}, {"b", s.b}};
        else if constexpr (std::is_same_v<T, Halfspace>)
          j = {{"type", "halfspace"}, {"a", s.a}, {"b", s.b}};
        else if constexpr (std::is_same_v<T, Box>)
          j = {{"type", "box"}, {"lo", s.lo}, {"hi", s.hi}};
        else if constexpr (std::is_same_v<T, EuclideanBall>)
          j = {{"type", "ball"}, {"center", s.center}, {"radius", s.radius}};
        else if constexpr (std::is_same_v<T, Simplex>)
          j = {{"type", "simplex"}, {"scale", s.scale}};
        else
          j = {{"type", "affine"}, {"base", s.base}, {"basis", s.basis}};
      },
      set);
}

inline void from_json(const nlohmann::json& j, ConvexSet& set) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "hyperplane")
    set = Hyperplane{j.at("a").get<Vec>(), j.at("b").get<double>()};
  else if (type == "halfspace")
    set = Halfspace{j.at("a").get<Vec>(), j.at("b").get<double>()};
  else if (type == "box")
    set = Box{j.at("lo").get<Vec>(), j.at("hi").get<Vec>()};
  else if (type == "ball")
    set = EuclideanBall{j.at("center").get<Vec>(), j.at("radius").get<double>()};
  else if (type == "simplex")
    set = Simplex{j.at("scale").get<double>()};
  else if (type == "affine")
    set = AffineSubspace::make(j.at("base").get<Vec>(),
                               j.at("basis").get<std::vector<Vec>>());
  else
    throw std::invalid_argument("ConvexSet: unknown type tag '" + type + "'");
}

}  // namespace lpproj
