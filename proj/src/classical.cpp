#include "dsatom/classical.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsatom/errors.hpp"

namespace dsatom {
namespace {

// 1 - r^2/rho^2 (dS), 1 + r^2/rho^2 (AdS), 1 (flat).
double lapse(const ClassicalParams& cp, double r) {
  switch (cp.geometry) {
    case Geometry::DeSitter:
      return 1.0 - (r / cp.rho) * (r / cp.rho);
    case Geometry::AntiDeSitter:
      return 1.0 + (r / cp.rho) * (r / cp.rho);
    case Geometry::Minkowski:
      return 1.0;
  }
  return 1.0;
}

void check_radius(const ClassicalParams& cp, double r) {
  if (!(r > 0.0)) {
    std::ostringstream os;
    os << "p_r^2 has a pole at r = 0 (got r = " << r << ")";
    throw RangeError(os.str());
  }
  if (cp.geometry == Geometry::DeSitter && !(r < cp.rho)) {
    std::ostringstream os;
    os << "r = " << r << " is at or beyond the dS horizon rho = " << cp.rho;
    throw RangeError(os.str());
  }
}

void require_curved(const ClassicalParams& cp, const char* what) {
  if (cp.geometry == Geometry::Minkowski) {
    throw DomainError(std::string(what) + " needs a curved geometry (ds or ads)");
  }
}

}  // namespace

double momentum_squared(const ClassicalParams& cp, double r) {
  check_radius(cp, r);
  const double g = lapse(cp, r);
  const double kinetic = cp.epsilon + cp.e2 / r;
  return kinetic * kinetic / (g * g) - (cp.M * cp.M + cp.L * cp.L / (r * r)) / g;
}

double radial_velocity_squared(const ClassicalParams& cp, double r) {
  check_radius(cp, r);
  const double g = lapse(cp, r);
  const double kinetic = (cp.epsilon + cp.e2 / r) / cp.M;
  return kinetic * kinetic - (1.0 + cp.L * cp.L / (cp.M * cp.M * r * r)) * g;
}

double QuarticCoeffs::scale() const {
  const double lead = std::abs(c4);
  if (lead == 0.0) return std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  const std::array<double, 4> lower{c3, c2, c1, c0};
  double R = 1.0;
  for (int k = 0; k < 4; ++k) {
    R = std::max(R, std::pow(std::abs(lower[k]) / lead, 1.0 / (k + 1)));
  }
  double s = lead * std::pow(R, 4);
  double Rk = 1.0;
  for (int k = 3; k >= 0; --k) {
    s = std::max(s, std::abs(lower[k]) * Rk);
    Rk *= R;
  }
  return s;
}

QuarticCoeffs quartic_coefficients(const ClassicalParams& cp) {
  require_curved(cp, "quartic_coefficients");
  const double rho2 = cp.rho * cp.rho;
  const double M2 = cp.M * cp.M;
  const double L2 = cp.L * cp.L;
  const double e4 = cp.e2 * cp.e2;
  const double eps2 = cp.epsilon * cp.epsilon;
  QuarticCoeffs q;
  q.c4 = M2;
  q.c3 = 0.0;
  if (cp.geometry == Geometry::DeSitter) {
    q.c2 = L2 + rho2 * eps2 - M2 * rho2;
    q.c1 = 2.0 * rho2 * cp.epsilon * cp.e2;
    q.c0 = rho2 * (e4 - L2);
  } else {
    q.c2 = L2 - rho2 * eps2 + M2 * rho2;
    q.c1 = -2.0 * rho2 * cp.epsilon * cp.e2;
    q.c0 = rho2 * (L2 - e4);
  }
  return q;
}

bool is_real_root(std::complex<double> z, double tol) {
  return std::abs(z.imag()) <= tol * (1.0 + std::abs(z.real()));
}

QuarticRootSet solve_quartic(const QuarticCoeffs& q) {
  if (q.c4 == 0.0) throw DomainError("solve_quartic: leading coefficient is zero");

  // Substitute r = s t so that the monic polynomial in t has |a0| = 1; this
  // balances the companion matrix when the roots span many decades.
  double s = std::pow(std::abs(q.c0 / q.c4), 0.25);
  if (!(s > 0.0) || !std::isfinite(s)) s = 1.0;
  const double a3 = q.c3 / (q.c4 * s);
  const double a2 = q.c2 / (q.c4 * s * s);
  const double a1 = q.c1 / (q.c4 * s * s * s);
  const double a0 = q.c0 / (q.c4 * s * s * s * s);

  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  companion(0, 0) = -a3;
  companion(0, 1) = -a2;
  companion(0, 2) = -a1;
  companion(0, 3) = -a0;
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  companion(3, 2) = 1.0;

  Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("companion eigenvalue iteration failed", 0.0);
  }

  QuarticRootSet roots;
  for (int i = 0; i < 4; ++i) {
    std::complex<double> r = s * solver.eigenvalues()[i];
    // Newton polish; keep a step only while it reduces the residual.
    double res = std::abs(q(r));
    for (int it = 0; it < 3 && res > 0.0; ++it) {
      const std::complex<double> d = q.derivative(r);
      if (d == 0.0) break;
      const std::complex<double> next = r - q(r) / d;
      const double next_res = std::abs(q(next));
      if (!(next_res < res)) break;
      r = next;
      res = next_res;
    }
    roots[i] = r;
  }
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::BarrierWell:
      return "BarrierWell";
    case Topology::InnerForbidden:
      return "InnerForbidden";
    case Topology::PureWell:
      return "PureWell";
    case Topology::ComplexPair:
      return "ComplexPair";
    case Topology::FreeParticle:
      return "FreeParticle";
    case Topology::Anomalous:
      return "Anomalous";
  }
  return "?";
}

std::string sign_pattern(const QuarticRootSet& roots, double tol) {
  std::string out;
  for (const auto& z : roots) {
    if (!is_real_root(z, tol)) {
      out += 'z';
    } else {
      out += z.real() < 0.0 ? '-' : '+';
    }
  }
  return out;
}

TurningPointReport classify_turning_points(const ClassicalParams& cp) {
  require_curved(cp, "classify_turning_points");
  require_no_fall_to_center(cp);

  TurningPointReport report;
  QuarticRoots& qr = report.roots;
  qr.roots = solve_quartic(quartic_coefficients(cp));
  qr.sign_pattern = sign_pattern(qr.roots);

  const auto n_complex = std::count(qr.sign_pattern.begin(), qr.sign_pattern.end(), 'z');
  const auto n_pos = std::count(qr.sign_pattern.begin(), qr.sign_pattern.end(), '+');
  const auto n_neg = std::count(qr.sign_pattern.begin(), qr.sign_pattern.end(), '-');

  if (cp.geometry == Geometry::DeSitter) {
    if (cp.e2 == 0.0) {
      qr.topology = Topology::FreeParticle;
    } else if (n_complex > 0) {
      // Negative product of roots: the two remaining reals have opposite signs.
      qr.topology = (n_complex == 4 || (n_pos == 1 && n_neg == 1)) ? Topology::ComplexPair
                                                                    : Topology::Anomalous;
    } else if (n_pos == 3 && n_neg == 1) {
      qr.topology = Topology::BarrierWell;
    } else if (n_pos == 1 && n_neg == 3) {
      qr.topology = Topology::InnerForbidden;
    } else {
      qr.topology = Topology::Anomalous;
    }
  } else {
    if (n_complex == 0) {
      qr.topology = (n_pos == 2 && n_neg == 2) ? Topology::PureWell : Topology::Anomalous;
    } else if (n_complex == 4) {
      qr.topology = Topology::ComplexPair;
    } else {
      // (z, z*, +, +) with Re z < 0 is the only admissible complex variant.
      bool ok = n_pos == 2;
      for (const auto& z : qr.roots) {
        if (!is_real_root(z) && !(z.real() < 0.0)) ok = false;
      }
      qr.topology = ok ? Topology::ComplexPair : Topology::Anomalous;
    }
  }

  if (qr.topology == Topology::BarrierWell) {
    std::array<double, 3> pos{};
    int k = 0;
    for (const auto& z : qr.roots) {
      if (z.real() > 0.0) pos[k++] = z.real();
    }
    std::sort(pos.begin(), pos.end());
    report.well = WellDiagnostics{pos[0], pos[1], pos[2]};
  }
  return report;
}

double tortoise(double r, double rho) {
  if (!(rho > 0.0)) throw DomainError("tortoise: rho must be > 0");
  if (r < 0.0 || !(r < rho)) {
    std::ostringstream os;
    os << "tortoise coordinate defined for 0 <= r < rho; got r = " << r << ", rho = " << rho;
    throw RangeError(os.str());
  }
  return rho * std::atanh(r / rho);
}

double tortoise_inverse(double r_star, double rho) {
  if (!(rho > 0.0)) throw DomainError("tortoise_inverse: rho must be > 0");
  if (r_star < 0.0) throw RangeError("tortoise_inverse: r* must be >= 0");
  return rho * std::tanh(r_star / rho);
}

double tortoise_momentum_squared(const ClassicalParams& cp, double r) {
  if (cp.geometry != Geometry::DeSitter) {
    throw DomainError("tortoise_momentum_squared is defined for the dS geometry");
  }
  check_radius(cp, r);
  // (1 - r^2/rho^2)^2 p_r^2 written without the horizon pole.
  const double g = lapse(cp, r);
  const double kinetic = cp.epsilon + cp.e2 / r;
  return kinetic * kinetic - (cp.M * cp.M + cp.L * cp.L / (r * r)) * g;
}

HorizonVelocity horizon_velocity(const ClassicalParams& cp) {
  if (cp.geometry != Geometry::DeSitter) {
    throw DomainError("horizon_velocity is defined for the dS geometry");
  }
  HorizonVelocity v;
  v.speed = std::abs(cp.epsilon + cp.e2 / cp.rho) / cp.M;
  v.subluminal = v.speed < 1.0;
  return v;
}

}  // namespace dsatom
