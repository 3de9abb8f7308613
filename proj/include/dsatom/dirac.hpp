#pragma once

// Radial Dirac systems for a charge in the Coulomb field on static dS / AdS
// backgrounds, written as first-order systems for (F, G) in the variable
//   dS  : y = tan(chi/2),  r = sin chi
//   AdS : y = tanh(chi/2), r = sinh chi
// (r in units of the curvature radius). The original radial pair (f, g) is
// recovered by the rotations in to_radial_pair().

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "dsatom/params.hpp"

namespace dsatom {

using cplx = std::complex<double>;

struct DiracParams {
  Geometry geometry = Geometry::DeSitter;
  double epsilon = 0;  // energy in units of 1/rho
  double e2 = 0;       // Coulomb coupling
  double M = 1;        // mass in units of 1/rho
  double nu = 1;       // j + 1/2
  int parity = +1;     // delta; -1 acts as M -> -M

  double signed_mass() const { return parity * M; }
};

/// Validates nu >= 1 (half-integer j), M > 0, e2 >= 0, parity = +-1 and a
/// curved geometry.
DiracParams make_dirac_params(Geometry g, double epsilon, double e2, double M, double nu,
                              int parity = +1);

/// Roots of the two coupling quadratics. For dS, `y` are the zeros of the
/// F-row coupling and `Y` of the G-row coupling; for AdS the barred pair.
struct DiracConstants {
  Geometry geometry = Geometry::DeSitter;
  cplx a, b;  // dS only: 2i(eps + e2), 2i(eps - e2)
  std::array<cplx, 2> y{}, Y{};
};

/// Throws DomainError for e2 = 0, where the roots are undefined.
DiracConstants dirac_constants(const DiracParams& dp);

/// Sentinel used for the point at infinity in singularity charts.
bool is_infinity(cplx z);

struct SingularityChart {
  std::vector<cplx> points;        // 0, 1, -1, i, -i, p1, p2, infinity
  std::vector<std::string> labels;
  std::vector<std::string> collisions;  // empty for generic parameters
  std::size_t distinct() const;
};

enum class Component { F, G };

class FirstOrderSystem {
 public:
  FirstOrderSystem(const DiracParams& dp, const DiracConstants& c);

  const DiracParams& params() const { return dp_; }
  const DiracConstants& constants() const { return c_; }

  /// Coefficient matrix K(y) of (F, G)' = K(y) (F, G). Throws RangeError at
  /// the singular points 0, +-1, +-i.
  std::array<std::array<cplx, 2>, 2> matrix(cplx y) const;

  /// Singular points of the second-order equation for F (or G).
  SingularityChart chart(Component which = Component::F) const;

  /// Exponents +-sqrt(nu^2 - e2^2) of the local solutions at y = 0.
  cplx indicial_exponent() const;
  /// (F, G) direction of the local solution y^{+s} at y = 0.
  std::array<cplx, 2> regular_direction() const;

  /// The radial pair (f, g) of the original system at y from (F, G).
  std::array<cplx, 2> to_radial_pair(cplx y, cplx F, cplx G) const;
  /// chi(y) and r(y) of the substitution.
  cplx chi_of(cplx y) const;
  cplx radius_of(cplx y) const;

 private:
  DiracParams dp_;
  DiracConstants c_;
};

FirstOrderSystem build_system_dS(const DiracParams& dp);
FirstOrderSystem build_system_AdS(const DiracParams& dp);
FirstOrderSystem build_system(const DiracParams& dp);

struct DiracSolution {
  std::vector<cplx> y, F, G;
};

struct DiracIntegrationOptions {
  double clearance = 1e-6;  // minimum distance of the path from 0, +-1, +-i
  double rel_tol = 1e-12;
};

/// Integrates along the polygonal path through `path` (at least two points),
/// starting from (F, G) at path.front(); one sample per path vertex.
DiracSolution integrate_dirac(const FirstOrderSystem& sys, const std::vector<cplx>& path,
                              std::array<cplx, 2> initial,
                              const DiracIntegrationOptions& opts = {});

}  // namespace dsatom
