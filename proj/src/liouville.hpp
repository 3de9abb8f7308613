#pragma once

// Radial equation in Liouville normal form psi'' + Q(z) psi = 0 with
// psi = x f and
//   dS  : x = tanh z, Q = (E + alpha coth z)^2 - (M^2 - 2) sech^2 z - l(l+1) csch^2 z
//   AdS : x = tan z,  Q = (E + alpha cot z)^2  - (M^2 + 2) sec^2 z  - l(l+1) csc^2 z
// Solutions are propagated as Pruefer variables, k psi = R sin(theta),
// psi' = R cos(theta), so that neither overflow nor phase loss occurs.

#include <array>
#include <functional>

#include "dsatom/params.hpp"

namespace dsatom::detail {

struct Liouville {
  Geometry geometry;
  double E, alpha, M;
  double Lterm;  // l(l+1)
  double s;      // origin exponent A + 1
  double sigma;  // AdS boundary exponent 1/2 + sqrt(9/4 + M^2)

  explicit Liouville(const PhysicalParams& p);

  double Q(double z) const;
  double x_of_z(double z) const;
  double z_of_x(double x) const;
  double dz_dx(double x) const;
  /// pi/2 for AdS; +infinity for dS.
  double z_end() const;

  /// Laurent coefficients q_0..q_4 of z^2 Q about z = 0.
  std::array<double, 5> origin_laurent() const;
  /// Laurent coefficients of w^2 Q about w = pi/2 - z = 0 (AdS only).
  std::array<double, 5> boundary_laurent() const;
  /// Internal starting points where the truncated Frobenius series is accurate.
  double origin_start() const;
  double boundary_start() const;
};

struct Pruefer {
  double theta = 0;
  double lnR = 0;
};

/// Regular solution psi = z^s (1 + ...) at z = z0, as Pruefer variables.
Pruefer origin_seed(const Liouville& L, double z0, double k);
/// Decaying AdS solution psi = w^sigma (1 + ...) at z = pi/2 - w0.
Pruefer boundary_seed(const Liouville& L, double w0, double k);

using PrueferObserver = std::function<void(double z, const Pruefer&)>;

/// Integrates from za to zb (either direction) with scale k.
Pruefer propagate(const Liouville& L, double k, double za, double zb, Pruefer start,
                  double rel_tol, const PrueferObserver& obs = {});

/// Same, reporting the state exactly at each of the (monotone) points zs.
void propagate_to(const Liouville& L, double k, double za, const std::vector<double>& zs,
                  Pruefer start, double rel_tol, const PrueferObserver& obs);

}  // namespace dsatom::detail
