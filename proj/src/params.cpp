#include "dsatom/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "dsatom/errors.hpp"

namespace dsatom {

std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::DeSitter:
      return "ds";
    case Geometry::AntiDeSitter:
      return "ads";
    case Geometry::Minkowski:
      return "flat";
  }
  return "?";
}

Geometry parse_geometry(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "ds" || s == "desitter") return Geometry::DeSitter;
  if (s == "ads" || s == "antidesitter") return Geometry::AntiDeSitter;
  if (s == "flat" || s == "minkowski") return Geometry::Minkowski;
  throw DomainError("unknown geometry '" + std::string(text) + "' (expected ds, ads or flat)");
}

double exponent_A(int l, double alpha) {
  const double half = l + 0.5;
  const double radicand = half * half - alpha * alpha;
  if (!(radicand > 0.0)) {
    std::ostringstream os;
    os << "alpha >= l+1/2: radicand (l+1/2)^2 - alpha^2 = " << radicand
       << " of the origin exponent sqrt((l+1/2)^2 - alpha^2) is not positive";
    throw DomainError(os.str());
  }
  return -0.5 + std::sqrt(radicand);
}

PhysicalParams make_params(Geometry geometry, double E, double alpha, double M, int l,
                           double rho) {
  if (!std::isfinite(E)) throw DomainError("E must be finite");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be >= 0");
  if (!(M > 0.0) || !std::isfinite(M)) throw DomainError("M must be > 0");
  if (l < 0) throw DomainError("l must be >= 0");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("rho must be > 0");
  (void)exponent_A(l, alpha);
  return PhysicalParams{geometry, E, alpha, M, l, rho};
}

ClassicalParams make_classical(Geometry geometry, double epsilon, double L, double e2,
                               double M, double rho) {
  if (!std::isfinite(epsilon)) throw DomainError("epsilon must be finite");
  if (!(L >= 0.0)) throw DomainError("L must be >= 0");
  if (!(e2 >= 0.0)) throw DomainError("e2 must be >= 0");
  if (!(M > 0.0)) throw DomainError("M must be > 0");
  if (!(rho > 0.0)) throw DomainError("rho must be > 0");
  return ClassicalParams{geometry, epsilon, L, e2, M, rho};
}

void require_no_fall_to_center(const ClassicalParams& cp) {
  if (!(cp.L * cp.L > cp.e2 * cp.e2)) {
    throw DomainError(
        "L^2 <= e^4: the -(L^2 - e^4)/r^2 behaviour at the origin is a fall to the "
        "centre, which is not modelled");
  }
}

PhysicalParams from_natural(Geometry geometry, const NaturalUnits& u, int l) {
  return make_params(geometry, u.epsilon * u.rho, u.e2, u.mass * u.rho, l, u.rho);
}

NaturalUnits to_natural(const PhysicalParams& p) {
  return NaturalUnits{p.E / p.rho, p.M / p.rho, p.alpha, p.rho};
}

ClassicalParams classical_from(const PhysicalParams& p) {
  const NaturalUnits u = to_natural(p);
  return make_classical(p.geometry, u.epsilon, p.l + 0.5, u.e2, u.mass, u.rho);
}

}  // namespace dsatom
