#pragma once

// Direct numerical treatment of the Klein-Gordon radial equation
//   f'' + P(x) f' + W(x) f = 0,  x = r/rho,
// used as the independent reference for the Heun and WKB results.

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "dsatom/params.hpp"

namespace dsatom {

/// Coefficients P, W of the radial equation at real x (dS needs 0 < x < 1).
struct RadialCoefficients {
  double P = 0, W = 0;
};
RadialCoefficients radial_ode_coefficients(const PhysicalParams& p, double x);

enum class Boundary { RegularOrigin, DecayAtInfinity, OutgoingAtHorizon };
std::string_view to_string(Boundary b);

struct RadialProblem {
  PhysicalParams params;
  double x_min = 1e-3;
  double x_max = 0.5;
  Boundary boundary = Boundary::RegularOrigin;
};

struct IntegrationOptions {
  double rel_tol = 1e-11;
  int samples = 200;           // geometric spacing between x_min and x_max
  std::vector<double> sample_x;  // explicit sample points; overrides `samples`
};

/// Regular solution normalized as f ~ x^A at the origin. Sampled values are
/// f * exp(-log_scale) to stay in floating-point range.
struct RadialSolution {
  std::vector<double> x, f, df;
  double log_scale = 0;
  std::string boundary;
  double terminal_f = 0, terminal_df = 0;
  int nodes = 0;  // sign changes of f over the samples
};

RadialSolution integrate_radial(const RadialProblem& problem, double E,
                                const IntegrationOptions& opts = {});

enum class Method { Exact, WKB, Shooting, ResonanceScan, ComplexHeun };
std::string_view to_string(Method m);

struct SpectrumEntry {
  int n = 0, l = 0;
  std::complex<double> energy;  // dimensionless E = eps rho
  Method method = Method::Exact;
  double residual = 0;
  int node_count = 0;
  std::string note;
};

struct SpectrumScan {
  std::vector<SpectrumEntry> entries;
  std::vector<std::string> warnings;
};

struct ShootingOptions {
  double rel_tol = 1e-12;  // integrator tolerance
  double e_tol = 1e-13;    // relative eigenvalue tolerance of the root polish
};

/// Bound states of the AdS equation (any alpha) with E in [E_lo, E_hi].
/// The template supplies alpha, M, rho; its E and l are ignored.
SpectrumScan ads_bound_states(const PhysicalParams& tmpl, int l, double E_lo, double E_hi,
                              const ShootingOptions& opts = {});

/// Number of AdS eigenvalues below E (zeros of the matching angle).
int ads_count_below(const PhysicalParams& tmpl, int l, double E, const ShootingOptions& opts = {});

struct ResonanceOptions {
  int grid = 60;                // energies sampled uniformly over the window
  double rel_tol = 1e-11;
  double horizon_tol = 1e-10;   // relative deviation of Q from its horizon limit at z_far
};

/// Quasi-stationary dS levels with E in [E_lo, E_hi], found as maxima of the
/// ratio of well amplitude to outgoing amplitude at the horizon (tortoise
/// region). Widths come from the Gamow factor; energies are E_peak - i Gamma/2.
SpectrumScan ds_resonance_scan(const PhysicalParams& tmpl, int l, double E_lo, double E_hi,
                               const ResonanceOptions& opts = {});

/// Well-to-horizon amplitude ratio at one energy; 0 when no barrier separates
/// a well from the horizon region.
double ds_amplitude_ratio(const PhysicalParams& tmpl, int l, double E,
                          const ResonanceOptions& opts = {});

/// Tag attached to every resonance output.
inline constexpr std::string_view kOutgoingNote =
    "horizon condition: purely outgoing wave (modelling choice)";

}  // namespace dsatom
