#pragma once

// Independent helpers for the test oracles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
inline double rel(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

/// Plain bisection on a sign change of f in [a, b].
inline double bisect(const std::function<double(double)>& f, double a, double b, int iters = 200) {
  double fa = f(a);
  for (int i = 0; i < iters; ++i) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

/// All sign changes of f on a geometric grid over [lo, hi], refined by bisection.
inline std::vector<double> sign_change_roots(const std::function<double(double)>& f, double lo,
                                             double hi, int n = 20000) {
  std::vector<double> roots;
  double xp = lo, fp = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo * std::pow(hi / lo, double(i) / n);
    const double fx = f(x);
    if (std::isfinite(fp) && std::isfinite(fx) && (fx < 0) != (fp < 0)) {
      roots.push_back(bisect(f, xp, x));
    }
    xp = x;
    fp = fx;
  }
  return roots;
}

/// Five-point central differences (value, first, second derivative).
template <class F>
auto derivatives(F f, double x, double h) {
  const auto fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
  const auto d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12 * h);
  const auto d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12 * h * h);
  struct D {
    decltype(f0) v, d1, d2;
  };
  return D{f0, d1, d2};
}

/// Roots of a monic complex polynomial (coefficients highest first, excluding
/// the leading 1) by Durand-Kerner iteration.
inline std::vector<std::complex<double>> durand_kerner(const std::vector<std::complex<double>>& c) {
  const std::size_t n = c.size();
  auto eval = [&](std::complex<double> z) {
    std::complex<double> v = 1.0;
    for (auto ci : c) v = v * z + ci;
    return v;
  };
  double radius = 1.0;
  for (auto ci : c) radius = std::max(radius, 1.0 + std::abs(ci));
  std::vector<std::complex<double>> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = radius * std::polar(1.0, 0.4 + 2 * M_PI * k / n);
  for (int it = 0; it < 2000; ++it) {
    double change = 0;
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) den *= z[k] - z[j];
      const auto dz = eval(z[k]) / den;
      z[k] -= dz;
      change = std::max(change, std::abs(dz) / (1 + std::abs(z[k])));
    }
    if (change < 1e-16) break;
  }
  return z;
}

/// Ferrari's method for x^4 + p x^2 + q x + r = 0.
inline std::vector<std::complex<double>> ferrari(double p, double q, double r) {
  using C = std::complex<double>;
  if (q == 0.0) {
    const C d = std::sqrt(C(p * p - 4 * r));
    const C u1 = (-p + d) / 2.0, u2 = (-p - d) / 2.0;
    return {std::sqrt(u1), -std::sqrt(u1), std::sqrt(u2), -std::sqrt(u2)};
  }
  // Resolvent cubic 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0.
  auto ms = durand_kerner({C(p), C((2 * p * p - 8 * r) / 8), C(-q * q / 8)});
  C m = *std::max_element(ms.begin(), ms.end(), [](C a, C b) { return std::abs(a) < std::abs(b); });
  const C s = std::sqrt(2.0 * m);
  std::vector<C> out;
  for (double sign : {1.0, -1.0}) {
    const C b = sign * s, c = p / 2.0 + m - sign * q / (2.0 * s);
    const C d = std::sqrt(b * b - 4.0 * c);
    out.push_back((-b + d) / 2.0);
    out.push_back((-b - d) / 2.0);
  }
  return out;
}

/// Largest distance between matched elements of two root multisets.
inline double multiset_distance(std::vector<std::complex<double>> a,
                                std::vector<std::complex<double>> b) {
  double worst = 0;
  for (auto x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](auto u, auto v) { return std::abs(u - x) < std::abs(v - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

}  // namespace oracle
