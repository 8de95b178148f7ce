#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpproj {

using Vec = std::vector<double>;

/// |t|^e * sign(t) via sign-split powers; never feeds a negative base to pow.
inline double signed_pow(double t, double e) {
  if (t > 0.0) return std::pow(t, e);
  if (t < 0.0) return -std::pow(-t, e);
  return 0.0;
}

/// Finite-dimensional l^p space: dimension n, exponent p, dual exponent
/// q = p/(p-1). Exponents outside [1.05, 50] are rejected: the float
/// verification downstream is meaningless once |t|^{p-1} gets that badly
/// conditioned near t = 0.
struct SpaceSpec {
  int n = 0;
  double p = 2.0;
  double q = 2.0;

  static SpaceSpec make(int n, double p) {
    if (n < 1) throw std::invalid_argument("SpaceSpec: dimension must be >= 1");
    if (!(p >= 1.05 && p <= 50.0))
      throw std::invalid_argument("SpaceSpec: exponent p must lie in [1.05, 50]");
    return SpaceSpec{n, p, p / (p - 1.0)};
  }
};

namespace detail {

inline void check_vector(const SpaceSpec& s, const Vec& v, const char* who) {
  if (static_cast<int>(v.size()) != s.n)
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  for (double c : v)
    if (!std::isfinite(c))
      throw std::invalid_argument(std::string(who) + ": non-finite coordinate");
}

inline double pnorm(const Vec& v, double p) {
  if (p == 2.0) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double c : v) s += std::pow(std::fabs(c), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace detail

inline double norm(const SpaceSpec& s, const Vec& v) {
  detail::check_vector(s, v, "norm");
  return detail::pnorm(v, s.p);
}

/// Norm of the dual space l^q.
inline double dual_norm(const SpaceSpec& s, const Vec& w) {
  detail::check_vector(s, w, "dual_norm");
  return detail::pnorm(w, s.q);
}

/// Dual product <w, v> = sum_i w_i v_i.
inline double pairing(const Vec& w, const Vec& v) {
  if (w.size() != v.size())
    throw std::invalid_argument("pairing: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * v[i];
  return s;
}

/// Normalized duality mapping J: (Jv)_i = ||v||^{2-p} |v_i|^{p-1} sign(v_i),
/// with J0 = 0. Satisfies <Jv, v> = ||v||^2 and ||Jv||_q = ||v||_p.
inline Vec duality_map(const SpaceSpec& s, const Vec& v) {
  detail::check_vector(s, v, "duality_map");
  if (s.p == 2.0) return v;
  const double nv = detail::pnorm(v, s.p);
  Vec out(v.size(), 0.0);
  if (nv == 0.0) return out;
  const double scale = std::pow(nv, 2.0 - s.p);
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = scale * signed_pow(v[i], s.p - 1.0);
  return out;
}

/// <Jx - Jy, x - y>; nonnegative up to round-off by monotonicity of J.
inline double duality_product(const SpaceSpec& s, const Vec& x, const Vec& y) {
  detail::check_vector(s, x, "duality_product");
  detail::check_vector(s, y, "duality_product");
  const Vec jx = duality_map(s, x);
  const Vec jy = duality_map(s, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    acc += (jx[i] - jy[i]) * (x[i] - y[i]);
  return acc;
}

// Small vector helpers shared across the library.
inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec scaled(const Vec& a, double t) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
  return r;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double max_abs_diff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace lpproj
