#pragma once

// Dimensionless parameterization shared by all modules.
//
// Natural units hbar = c = 1 throughout. With x = r/rho the radial problem
// depends only on
//   E     = epsilon * rho          (energy)
//   alpha = e^2                    (Coulomb coupling, e^2 / (hbar c))
//   M     = mass * rho             (mass in units of 1/rho)
//   l                              (orbital quantum number)
// rho itself is carried only so that results can be mapped back to the
// classical (dimensional) variables used by the turning-point and WKB code.

#include <string>
#include <string_view>

namespace dsatom {

enum class Geometry { DeSitter, AntiDeSitter, Minkowski };

std::string_view to_string(Geometry g);
/// Accepts "ds", "ads", "flat" (and the long enum names, case-insensitive).
Geometry parse_geometry(std::string_view text);

struct PhysicalParams {
  Geometry geometry = Geometry::DeSitter;
  double E = 0.0;
  double alpha = 0.0;
  double M = 1.0;
  int l = 0;
  double rho = 1.0;
};

/// Validated constructor. Rejects alpha >= l + 1/2, where the origin
/// exponent sqrt((l+1/2)^2 - alpha^2) stops being real.
PhysicalParams make_params(Geometry geometry, double E, double alpha, double M,
                           int l, double rho = 1.0);

/// Regular exponent at the origin, A = -1/2 + sqrt((l+1/2)^2 - alpha^2).
double exponent_A(int l, double alpha);
inline double exponent_A(const PhysicalParams& p) { return exponent_A(p.l, p.alpha); }

/// Classical (Hamilton-Jacobi) inputs in natural units.
struct ClassicalParams {
  Geometry geometry = Geometry::DeSitter;
  double epsilon = 0.0;  // energy
  double L = 0.0;        // angular momentum
  double e2 = 0.0;       // coupling e^2
  double M = 1.0;        // mass
  double rho = 1.0;      // curvature radius (ignored for Minkowski)
};

ClassicalParams make_classical(Geometry geometry, double epsilon, double L,
                               double e2, double M, double rho = 1.0);

/// Throws DomainError unless L^2 > e2^2, the regime without fall to the centre.
void require_no_fall_to_center(const ClassicalParams& cp);

/// Dimensional quantities in natural units, as used by the classical side.
struct NaturalUnits {
  double epsilon;
  double mass;
  double e2;
  double rho;
};

PhysicalParams from_natural(Geometry geometry, const NaturalUnits& u, int l);
NaturalUnits to_natural(const PhysicalParams& p);

/// Classical counterpart of a quantum parameter set, using the Langer
/// identification L = l + 1/2.
ClassicalParams classical_from(const PhysicalParams& p);

}  // namespace dsatom
