#pragma once

// General Heun equation with singular points 0, 1, -1, infinity:
//
//   H'' + (gamma/x + delta/(x-1) + eps/(x+1)) H' + (lambda beta x - q) / (x (x-1) (x+1)) H = 0
//
// and its relation to the Klein-Gordon radial equation through
//   dS  : f = x^A (1-x)^B (1+x)^C H(x),  x = r/rho
//   AdS : f = x^A (x-1)^B (x+1)^C H(x),  x = i r/rho

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include "dsatom/params.hpp"

namespace dsatom {

using cplx = std::complex<double>;

/// Signs chosen for B and C in the exponent peeling.
struct Branch {
  int sB = +1;
  int sC = +1;
  friend bool operator==(const Branch&, const Branch&) = default;
};

inline constexpr Branch kPlusPlus{+1, +1};
inline constexpr Branch kMinusMinus{-1, -1};
inline constexpr Branch kAllBranches[4] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};

/// "(+,-)" style label.
std::string branch_label(Branch b);

struct HeunParams {
  double a = -1.0;  // third finite singular point
  cplx q, lambda, beta, gamma, delta, eps;
  cplx A, B, C;
  Branch branch;
  Geometry geometry = Geometry::DeSitter;
  /// True when the Heun variable is i r/rho (AdS) rather than r/rho.
  bool imaginary_variable = false;
};

HeunParams map_heun_dS(const PhysicalParams& p, Branch branch);
HeunParams map_heun_AdS(const PhysicalParams& p, Branch branch);
/// Dispatches on p.geometry; Minkowski is rejected.
HeunParams map_heun(const PhysicalParams& p, Branch branch);

/// Coefficients c_0 = 1, c_1, ..., c_{n-1} of the local solution at x = 0
/// with exponent 0.
std::vector<cplx> heun_series_coefficients(const HeunParams& hp, std::size_t n);

struct HeunValue {
  cplx H, dH, d2H;
  std::size_t terms = 0;
  double trunc_error = 0.0;  // tail estimate, relative to |H|
};

inline constexpr std::size_t kHeunMaxTerms = 10000;

/// Sums the Frobenius series at |x| < 1 until two consecutive terms fall below
/// tol relative to the partial sum. Throws DomainError when gamma is a
/// non-positive integer and ConvergenceError when the cap is reached.
HeunValue heun_local_series(const HeunParams& hp, cplx x, double tol = 1e-15);

struct RadialValue {
  cplx f, df, d2f;  // derivatives with respect to the Heun variable x
};

/// f(x) from H(x) through the exponent peeling (principal branches).
RadialValue radial_from_heun(const HeunParams& hp, cplx x, double tol = 1e-15);

/// f and its derivatives with respect to the physical X = r/rho in (0, 1).
RadialValue radial_at(const HeunParams& hp, double X, double tol = 1e-15);

/// E_n = 2n + l + 3/2 + sqrt(9/4 + M^2), the alpha = 0 AdS spectrum.
double ads_free_spectrum(int n, int l, double M);

/// alpha = 0 AdS radial equation in y = x^2: f = y^{l/2} (1-y)^{-E/2} F(a, b; c; y).
struct HypergeometricReduction {
  double a = 0, b = 0, c = 0;
  double A = 0, B = 0;
};

HypergeometricReduction hypergeometric_reduction(const PhysicalParams& p);

/// Energies from the lambda = -n rule in dS, branches (+,+) and (-,-) only.
/// Requires M > 3/2.
cplx ds_complex_levels(int n, int l, const PhysicalParams& p, Branch branch);

/// Note attached to every complex-heun output: only lambda = -n is imposed.
inline constexpr std::string_view kHeunPolynomialNote =
    "lambda=-n imposed; accessory (q) polynomial condition not checked";

}  // namespace dsatom
