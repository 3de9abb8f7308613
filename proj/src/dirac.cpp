#include "dsatom/dirac.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "dsatom/errors.hpp"

namespace dsatom {
namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kCollisionTol = 1e-9;

const std::array<std::pair<cplx, const char*>, 5> kFixedPoints{{
    {cplx(0.0, 0.0), "0"}, {cplx(1.0, 0.0), "1"}, {cplx(-1.0, 0.0), "-1"},
    {cplx(0.0, 1.0), "i"}, {cplx(0.0, -1.0), "-i"}}};

}  // namespace

DiracParams make_dirac_params(Geometry g, double epsilon, double e2, double M, double nu,
                              int parity) {
  if (g == Geometry::Minkowski) throw DomainError("Dirac systems need the ds or ads geometry");
  if (!std::isfinite(epsilon)) throw DomainError("epsilon must be finite");
  if (!(e2 >= 0.0)) throw DomainError("e2 must be >= 0");
  if (!(M > 0.0)) throw DomainError("M must be > 0 (use parity = -1 for M -> -M)");
  if (!(nu >= 1.0) || std::abs(nu - std::round(nu)) > 1e-12) {
    throw DomainError("nu = j + 1/2 must be an integer >= 1");
  }
  if (parity != 1 && parity != -1) throw DomainError("parity must be +1 or -1");
  return DiracParams{g, epsilon, e2, M, nu, parity};
}

DiracConstants dirac_constants(const DiracParams& dp) {
  if (!(dp.e2 > 0.0)) {
    throw DomainError(
        "e2 = 0: the coupling quadratics degenerate (free case), their roots are undefined");
  }
  DiracConstants c;
  c.geometry = dp.geometry;
  const double m = dp.signed_mass();
  const double e2 = dp.e2;
  if (dp.geometry == Geometry::DeSitter) {
    c.a = 2.0 * I * (dp.epsilon + e2);
    c.b = 2.0 * I * (dp.epsilon - e2);
    const cplx u = dp.epsilon + m - I * dp.nu - 0.5 * I;
    const cplx w = dp.epsilon - m - I * dp.nu + 0.5 * I;
    const cplx ru = std::sqrt(u * u - e2 * e2), rw = std::sqrt(w * w - e2 * e2);
    c.y = {-(u + ru) / e2, -(u - ru) / e2};
    c.Y = {-(w + rw) / e2, -(w - rw) / e2};
  } else if (dp.geometry == Geometry::AntiDeSitter) {
    const double u = dp.epsilon + m - dp.nu - 0.5;
    const double w = dp.epsilon - m - dp.nu + 0.5;
    const double ru = std::sqrt(u * u + e2 * e2), rw = std::sqrt(w * w + e2 * e2);
    c.y = {cplx((u + ru) / e2), cplx((u - ru) / e2)};
    c.Y = {cplx((w + rw) / e2), cplx((w - rw) / e2)};
  } else {
    throw DomainError("Dirac systems need the ds or ads geometry");
  }
  return c;
}

bool is_infinity(cplx z) { return std::isinf(z.real()) || std::isinf(z.imag()); }

std::size_t SingularityChart::distinct() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i && !seen; ++j) {
      if (is_infinity(points[i]) || is_infinity(points[j])) {
        seen = is_infinity(points[i]) && is_infinity(points[j]);
      } else {
        seen = std::abs(points[i] - points[j]) <= kCollisionTol * (1.0 + std::abs(points[j]));
      }
    }
    if (!seen) ++n;
  }
  return n;
}

FirstOrderSystem::FirstOrderSystem(const DiracParams& dp, const DiracConstants& c)
    : dp_(dp), c_(c) {}

std::array<std::array<cplx, 2>, 2> FirstOrderSystem::matrix(cplx y) const {
  for (const auto& [p, label] : kFixedPoints) {
    if (std::abs(y - p) < 1e-14) {
      throw RangeError(std::string("Dirac system evaluated at its singular point y = ") + label);
    }
  }
  const double nu = dp_.nu, e2 = dp_.e2;
  const auto& [y1, y2] = c_.y;
  const auto& [Y1, Y2] = c_.Y;
  const cplx up = e2 / y * (y - y1) * (y - y2);
  const cplx low = e2 / y * (y - Y1) * (y - Y2);
  if (dp_.geometry == Geometry::DeSitter) {
    const cplx D = nu * y - nu / y + c_.a / (1.0 - y) - c_.b / (1.0 + y) - 0.5 * (c_.a - c_.b);
    const cplx h = 1.0 + y * y;
    return {{{D / h, -up / h}, {low / h, -D / h}}};
  }
  const cplx D = nu * y + nu / y - 4.0 * (dp_.epsilon * y + e2) / (1.0 + y * y) + 2.0 * e2;
  const cplx h = 1.0 - y * y;
  return {{{-D / h, up / h}, {-low / h, D / h}}};
}

SingularityChart FirstOrderSystem::chart(Component which) const {
  SingularityChart ch;
  for (const auto& [p, label] : kFixedPoints) {
    ch.points.push_back(p);
    ch.labels.emplace_back(label);
  }
  const auto& pair = which == Component::F ? c_.y : c_.Y;
  const char* name = which == Component::F ? "y" : "Y";
  for (int k = 0; k < 2; ++k) {
    ch.points.push_back(pair[k]);
    ch.labels.push_back(std::string(name) + std::to_string(k + 1));
  }
  ch.points.push_back(cplx(std::numeric_limits<double>::infinity(), 0.0));
  ch.labels.emplace_back("inf");

  for (std::size_t i = 0; i + 1 < ch.points.size(); ++i) {
    for (std::size_t j = i + 1; j + 1 < ch.points.size(); ++j) {
      const double d = std::abs(ch.points[i] - ch.points[j]);
      if (d <= kCollisionTol * (1.0 + std::abs(ch.points[i]))) {
        ch.collisions.push_back("singular points " + ch.labels[i] + " and " + ch.labels[j] +
                                " coincide");
      }
    }
  }
  return ch;
}

cplx FirstOrderSystem::indicial_exponent() const {
  return std::sqrt(cplx(dp_.nu * dp_.nu - dp_.e2 * dp_.e2, 0.0));
}

std::array<cplx, 2> FirstOrderSystem::regular_direction() const {
  // Residue matrix at y = 0 is [[-nu, -e2], [e2, nu]] in both geometries.
  const cplx s = indicial_exponent();
  const cplx F = dp_.e2, G = -(dp_.nu + s);
  const double n = std::sqrt(std::norm(F) + std::norm(G));
  return {F / n, G / n};
}

cplx FirstOrderSystem::chi_of(cplx y) const {
  return dp_.geometry == Geometry::DeSitter ? 2.0 * std::atan(y) : 2.0 * std::atanh(y);
}

cplx FirstOrderSystem::radius_of(cplx y) const {
  const cplx chi = chi_of(y);
  return dp_.geometry == Geometry::DeSitter ? std::sin(chi) : std::sinh(chi);
}

std::array<cplx, 2> FirstOrderSystem::to_radial_pair(cplx y, cplx F, cplx G) const {
  const cplx half = 0.5 * chi_of(y);
  if (dp_.geometry == Geometry::DeSitter) {
    const cplx c = std::cos(half), s = std::sin(half);
    return {F * c - I * G * s, -I * F * s + G * c};
  }
  const cplx c = std::cosh(half), s = std::sinh(half);
  return {F * c - G * s, -F * s + G * c};
}

FirstOrderSystem build_system_dS(const DiracParams& dp) {
  if (dp.geometry != Geometry::DeSitter) throw DomainError("build_system_dS needs ds");
  return FirstOrderSystem(dp, dirac_constants(dp));
}

FirstOrderSystem build_system_AdS(const DiracParams& dp) {
  if (dp.geometry != Geometry::AntiDeSitter) throw DomainError("build_system_AdS needs ads");
  return FirstOrderSystem(dp, dirac_constants(dp));
}

FirstOrderSystem build_system(const DiracParams& dp) {
  return FirstOrderSystem(dp, dirac_constants(dp));
}

namespace {

double distance_to_segment(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  double t = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

}  // namespace

DiracSolution integrate_dirac(const FirstOrderSystem& sys, const std::vector<cplx>& path,
                              std::array<cplx, 2> initial, const DiracIntegrationOptions& opts) {
  namespace odeint = boost::numeric::odeint;
  if (path.size() < 2) throw DomainError("integrate_dirac needs a path of at least two points");
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    for (const auto& [p, label] : kFixedPoints) {
      const double d = distance_to_segment(p, path[i], path[i + 1]);
      if (d < opts.clearance) {
        std::ostringstream os;
        os << "path segment " << i << " passes within " << d << " of the singular point y = "
           << label << " (clearance " << opts.clearance << ")";
        throw RangeError(os.str());
      }
    }
  }

  using State = std::array<double, 4>;
  DiracSolution sol;
  sol.y.push_back(path.front());
  sol.F.push_back(initial[0]);
  sol.G.push_back(initial[1]);
  State st{initial[0].real(), initial[0].imag(), initial[1].real(), initial[1].imag()};
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const cplx a = path[i], d = path[i + 1] - path[i];
    auto rhs = [&](const State& s, State& ds, double t) {
      const auto K = sys.matrix(a + t * d);
      const cplx F{s[0], s[1]}, G{s[2], s[3]};
      const cplx dF = d * (K[0][0] * F + K[0][1] * G);
      const cplx dG = d * (K[1][0] * F + K[1][1] * G);
      ds = {dF.real(), dF.imag(), dG.real(), dG.imag()};
    };
    try {
      odeint::integrate_adaptive(
          odeint::make_controlled(opts.rel_tol, opts.rel_tol,
                                  odeint::runge_kutta_fehlberg78<State>()),
          rhs, st, 0.0, 1.0, 1e-3);
    } catch (const std::exception& e) {
      throw ConvergenceError(std::string("Dirac integration failed: ") + e.what(), 0.0);
    }
    sol.y.push_back(path[i + 1]);
    sol.F.emplace_back(st[0], st[1]);
    sol.G.emplace_back(st[2], st[3]);
  }
  return sol;
}

}  // namespace dsatom
