#pragma once

// Classical radial momentum of a charge in the Coulomb field on the static
// dS / AdS backgrounds, its turning points and their sign topology.
//
//   dS   : p_r^2 = (eps + e2/r)^2 / (1 - r^2/rho^2)^2 - (M^2 + L^2/r^2) / (1 - r^2/rho^2)
//   AdS  : the same with rho^2 -> -rho^2
//   flat : p_r^2 = (eps + e2/r)^2 - (M^2 + L^2/r^2)

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "dsatom/params.hpp"

namespace dsatom {

double momentum_squared(const ClassicalParams& cp, double r);

/// Radial velocity squared measured in proper time, (dr/dtau)^2.
double radial_velocity_squared(const ClassicalParams& cp, double r);

/// Coefficients of c4 r^4 + c3 r^3 + c2 r^2 + c1 r + c0, whose positive zeros
/// in the physical range are the zeros of p_r^2 (denominators cleared).
struct QuarticCoeffs {
  double c4 = 0, c3 = 0, c2 = 0, c1 = 0, c0 = 0;

  std::complex<double> operator()(std::complex<double> r) const {
    return (((c4 * r + c3) * r + c2) * r + c1) * r + c0;
  }
  std::complex<double> derivative(std::complex<double> r) const {
    return ((4.0 * c4 * r + 3.0 * c3) * r + 2.0 * c2) * r + c1;
  }
  /// Largest |c_k| r_s^k over the roots' natural scale; used to scale residuals.
  double scale() const;
};

/// Curved geometries only; Minkowski has a quadratic, see flat_turning_points.
QuarticCoeffs quartic_coefficients(const ClassicalParams& cp);

using QuarticRootSet = std::array<std::complex<double>, 4>;

/// All four roots, from the eigenvalues of the balanced companion matrix
/// followed by Newton polishing. Sorted by real part, then imaginary part.
QuarticRootSet solve_quartic(const QuarticCoeffs& q);

/// A root counts as real when |Im| <= kRealTolerance * (1 + |Re|).
inline constexpr double kRealTolerance = 1e-8;
bool is_real_root(std::complex<double> z, double tol = kRealTolerance);

enum class Topology {
  BarrierWell,     // dS (-,+,+,+): well, barrier, horizon region
  InnerForbidden,  // dS (-,-,-,+)
  PureWell,        // AdS (-,-,+,+)
  ComplexPair,     // at least one conjugate pair
  FreeParticle,    // e2 = 0 in dS / flat space
  Anomalous        // a pattern excluded by the Vieta analysis; never expected
};

std::string_view to_string(Topology t);

struct QuarticRoots {
  QuarticRootSet roots{};
  std::string sign_pattern;  // one of '-', '+', 'z' per root, in root order
  Topology topology = Topology::Anomalous;
};

struct WellDiagnostics {
  double r1 = 0, r2 = 0, r3 = 0;
  double well_lo() const { return r1; }
  double well_hi() const { return r2; }
  double barrier_lo() const { return r2; }
  double barrier_hi() const { return r3; }
};

struct TurningPointReport {
  QuarticRoots roots;
  std::optional<WellDiagnostics> well;  // set iff topology == BarrierWell
};

std::string sign_pattern(const QuarticRootSet& roots, double tol = kRealTolerance);

/// Requires L^2 > e2^2 and a curved geometry.
TurningPointReport classify_turning_points(const ClassicalParams& cp);

/// Tortoise coordinate r* = (rho/2) ln((1 + r/rho)/(1 - r/rho)) = rho artanh(r/rho).
double tortoise(double r, double rho);
double tortoise_inverse(double r_star, double rho);

/// p_{r*}^2 = (1 - r^2/rho^2)^2 p_r^2 (dS); tends to (eps + e2/rho)^2 at the horizon.
double tortoise_momentum_squared(const ClassicalParams& cp, double r);

struct HorizonVelocity {
  double speed = 0;  // |eps + e2/rho| / M in units of c
  bool subluminal = false;
};

HorizonVelocity horizon_velocity(const ClassicalParams& cp);

}  // namespace dsatom
