#pragma once

// Quasi-classical treatment of the dS / AdS Coulomb problem for rho much
// larger than the size of the classical well: turning points expanded in
// 1/rho^2, the quantization condition evaluated by residues, closed-form
// energies and the barrier penetration factor.

#include <complex>
#include <utility>

#include "dsatom/classical.hpp"
#include "dsatom/params.hpp"

namespace dsatom {

/// Zeros of the flat p_r^2 = (eps + e2/r)^2 - (M^2 + L^2/r^2):
///   r0 = [eps e2 -/+ sqrt(eps^2 e2^2 - (L^2 - e2^2)(M^2 - eps^2))] / (M^2 - eps^2).
/// Requires L^2 > e2^2 and eps < M; throws DomainError when there is no well.
std::pair<double, double> flat_turning_points(const ClassicalParams& cp);

struct TurningExpansion {
  Geometry geometry = Geometry::DeSitter;
  double r01 = 0, r02 = 0;      // flat roots, r01 < r02
  double Delta1 = 0, Delta2 = 0;
  double r1 = 0, r2 = 0;        // r0i + Delta_i/rho^2 (dS) or r0i - Delta_i/rho^2 (AdS)
  std::complex<double> r3, r4;  // dS: +/- rho b0 + b1; AdS: +/- i rho b0 + b1
};

/// Shift coefficient Delta_i = -r0^2 (L^2 + M^2 r0^2) / (2 e2 eps + 2 r0 (eps^2 - M^2)).
double turning_shift(const ClassicalParams& cp, double r0);

/// Throws RangeError("WKB expansion outside regime") when
/// r02 + |Delta2|/rho^2 >= r3/2 (dS) or >= rho b0 / 2 (AdS).
TurningExpansion ds_turning_expansion(const ClassicalParams& cp);
TurningExpansion ads_turning_expansion(const ClassicalParams& cp);
TurningExpansion turning_expansion(const ClassicalParams& cp);

/// A = 1 - 1 / (2 (1 - eps^2/M^2)).
double curvature_coefficient(const ClassicalParams& cp);

/// Default validity boundary of the small-r approximation, r < rho/10.
inline constexpr double kSmallRadiusFraction = 0.1;

/// Product form of the approximate momentum near the well,
///   M^2 (eps^2/M^2 - 1) (r - r1)(r - r2) / r^2 * (1 +/- A r^2/rho^2)^2,
/// with the expanded turning points. Throws RangeError for r >= fraction * rho.
double approx_momentum_squared(const ClassicalParams& cp, double r,
                               double fraction = kSmallRadiusFraction);
/// sqrt of the above; throws DomainError outside the well where it is negative.
double approx_momentum(const ClassicalParams& cp, double r,
                       double fraction = kSmallRadiusFraction);

/// Flat Langer-corrected level eps0 = M [1 + e2^2 / (n + 1/2 + sqrt((l+1/2)^2 - e2^2))^2]^{-1/2}.
double wkb_eps0(int n, int l, double e2, double M);

struct WkbLevel {
  Geometry geometry = Geometry::DeSitter;
  int n = 0, l = 0;
  double eps0 = 0;
  double Delta = 0;
  double eps = 0;  // eps0 + Delta/rho^2 (dS), eps0 - Delta/rho^2 (AdS)
};

/// cp_template supplies e2, M, rho; its epsilon and L are ignored (L = l + 1/2).
WkbLevel wkb_energy_dS(int n, int l, const ClassicalParams& cp_template);
WkbLevel wkb_energy_AdS(int n, int l, const ClassicalParams& cp_template);
WkbLevel wkb_energy(int n, int l, const ClassicalParams& cp_template);

/// Real form of the residue quantization condition at cp.epsilon,
///   sqrt(M^2 - eps^2) [(r1 + r2)/2 - sqrt(r1 r2) -/+ (A/rho^2) r1 r2 (r1 + r2)/2] - (n + 1/2),
/// with the upper sign for dS. Zero when the condition is met.
double quantization_residual(const ClassicalParams& cp, int n);

/// Numerical action int_{r1}^{r2} sqrt(p_r^2) dr over the well, between the
/// exact turning points (cross-check of the residue evaluation).
double well_action(const ClassicalParams& cp);

/// Energy at which well_action = pi (n + 1/2), found by Brent's method.
double action_quantized_energy(int n, int l, const ClassicalParams& cp_template);

struct TunnelingResult {
  double W = 1;         // exp(-2 integral)
  double integral = 0;  // int_{r2}^{r3} sqrt(-p_r^2) dr
  double log_W = 0;
  double rough_log_W = 0;  // -2 rho M, the estimate exp(-2 rho / lambda_C)
};

/// Barrier penetration factor for a dS BarrierWell configuration.
TunnelingResult tunneling_probability(const ClassicalParams& cp, const WellDiagnostics& well);
/// Classifies first; throws DomainError when the topology is not BarrierWell.
TunnelingResult tunneling_probability(const ClassicalParams& cp);

/// Level spacing d eps / d N of the flat spectrum, with N recovered from eps
/// through eps = M (1 + e2^2/N^2)^{-1/2}.
double level_spacing(const ClassicalParams& cp);

struct GamowWidth {
  double W = 1;
  double Gamma = 0;  // W * spacing / (2 pi), natural units
  bool barrier = false;
};

/// Width of a quasi-stationary dS level at cp.epsilon. Without a classical
/// barrier at that energy W = 1 and barrier = false.
GamowWidth gamow_width(const ClassicalParams& cp);

}  // namespace dsatom
