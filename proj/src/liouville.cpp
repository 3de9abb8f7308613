#include "liouville.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dsatom/errors.hpp"

namespace dsatom::detail {
namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

// Frobenius coefficients of psi = t^e sum phi_j t^j for psi'' + (sum q_m t^{m-2}) psi = 0.
std::array<double, 5> frobenius(const std::array<double, 5>& q, double e) {
  std::array<double, 5> phi{1.0, 0, 0, 0, 0};
  for (int j = 1; j < 5; ++j) {
    double acc = 0.0;
    for (int m = 1; m <= j; ++m) acc += q[m] * phi[j - m];
    phi[j] = -acc / (j * (2.0 * e + j - 1.0));
  }
  return phi;
}

// psi / t^e and t psi' / t^e at t.
std::pair<double, double> series_at(const std::array<double, 5>& phi, double e, double t) {
  double S = 0.0, dS = 0.0, tj = 1.0;
  for (int j = 0; j < 5; ++j) {
    S += phi[j] * tj;
    dS += (e + j) * phi[j] * tj;
    tj *= t;
  }
  return {S, dS};
}

}  // namespace

Liouville::Liouville(const PhysicalParams& p)
    : geometry(p.geometry), E(p.E), alpha(p.alpha), M(p.M), Lterm(double(p.l) * (p.l + 1)) {
  if (geometry == Geometry::Minkowski) throw DomainError("radial shooting needs ds or ads");
  s = exponent_A(p) + 1.0;
  sigma = 0.5 + std::sqrt(2.25 + M * M);
}

double Liouville::Q(double z) const {
  if (geometry == Geometry::AntiDeSitter) {
    const double sn = std::sin(z), cs = std::cos(z);
    const double kin = E + alpha * cs / sn;
    return kin * kin - (M * M + 2.0) / (cs * cs) - Lterm / (sn * sn);
  }
  const double sh = std::sinh(z), ch = std::cosh(z);
  const double kin = E + alpha * ch / sh;
  return kin * kin - (M * M - 2.0) / (ch * ch) - Lterm / (sh * sh);
}

double Liouville::x_of_z(double z) const {
  return geometry == Geometry::AntiDeSitter ? std::tan(z) : std::tanh(z);
}

double Liouville::z_of_x(double x) const {
  return geometry == Geometry::AntiDeSitter ? std::atan(x) : std::atanh(x);
}

double Liouville::dz_dx(double x) const {
  return geometry == Geometry::AntiDeSitter ? 1.0 / (1.0 + x * x) : 1.0 / (1.0 - x * x);
}

double Liouville::z_end() const {
  return geometry == Geometry::AntiDeSitter ? std::numbers::pi / 2
                                            : std::numeric_limits<double>::infinity();
}

std::array<double, 5> Liouville::origin_laurent() const {
  const double a2 = alpha * alpha;
  const double Ea = E * alpha;
  if (geometry == Geometry::AntiDeSitter) {
    return {a2 - Lterm, 2.0 * Ea, E * E - Lterm / 3.0 - M * M - 2.0 * a2 / 3.0 - 2.0,
            -2.0 * Ea / 3.0, -Lterm / 15.0 - M * M + a2 / 15.0 - 2.0};
  }
  return {a2 - Lterm, 2.0 * Ea, E * E + Lterm / 3.0 - M * M + 2.0 * a2 / 3.0 + 2.0,
          2.0 * Ea / 3.0, -Lterm / 15.0 + M * M + a2 / 15.0 - 2.0};
}

std::array<double, 5> Liouville::boundary_laurent() const {
  return {-(M * M + 2.0), 0.0, E * E - Lterm - (M * M + 2.0) / 3.0, 2.0 * E * alpha,
          -Lterm - (M * M + 2.0) / 15.0 + alpha * alpha};
}

double Liouville::origin_start() const {
  double scale = 1.0;
  const auto q = origin_laurent();
  for (int m = 1; m < 5; ++m) scale = std::max(scale, std::pow(std::abs(q[m]), 1.0 / m));
  return 1e-3 / scale;
}

double Liouville::boundary_start() const {
  double scale = 1.0;
  const auto q = boundary_laurent();
  for (int m = 2; m < 5; ++m) {
    scale = std::max(scale, std::pow(std::abs(q[m]) / (2.0 * sigma + m - 1.0), 1.0 / m));
  }
  return 1e-3 / scale;
}

Pruefer origin_seed(const Liouville& L, double z0, double k) {
  const auto phi = frobenius(L.origin_laurent(), L.s);
  const auto [S, zdS] = series_at(phi, L.s, z0);
  // psi = z^s S, psi' = z^{s-1} (z dS); common factor z^{s-1} goes to lnR.
  const double a = k * z0 * S, b = zdS;
  return {std::atan2(a, b), (L.s - 1.0) * std::log(z0) + 0.5 * std::log(a * a + b * b)};
}

Pruefer boundary_seed(const Liouville& L, double w0, double k) {
  const auto phi = frobenius(L.boundary_laurent(), L.sigma);
  const auto [S, wdS] = series_at(phi, L.sigma, w0);
  // d/dz = -d/dw.
  const double a = k * w0 * S, b = -wdS;
  return {std::atan2(a, b), (L.sigma - 1.0) * std::log(w0) + 0.5 * std::log(a * a + b * b)};
}

namespace {

struct Rhs {
  const Liouville& L;
  double k;
  void operator()(const State& y, State& dy, double z) const {
    const double q = L.Q(z);
    const double sn = std::sin(y[0]), cs = std::cos(y[0]);
    dy[0] = k * cs * cs + (q / k) * sn * sn;
    dy[1] = (k - q / k) * sn * cs;
  }
};

auto make_stepper(double rel_tol) {
  return odeint::make_controlled(rel_tol * 1e-2, rel_tol,
                                 odeint::runge_kutta_fehlberg78<State>());
}

[[noreturn]] void rethrow_integration(double za, double zb, const std::exception& e) {
  std::ostringstream os;
  os << "radial integration failed between z = " << za << " and z = " << zb << ": " << e.what();
  throw ConvergenceError(os.str(), 0.0);
}

}  // namespace

Pruefer propagate(const Liouville& L, double k, double za, double zb, Pruefer start,
                  double rel_tol, const PrueferObserver& obs) {
  State y{start.theta, start.lnR};
  if (za == zb) return start;
  const double dt0 = (zb - za) * 1e-4;
  try {
    odeint::integrate_adaptive(make_stepper(rel_tol), Rhs{L, k}, y, za, zb, dt0,
                               [&](const State& s, double z) {
                                 if (obs) obs(z, Pruefer{s[0], s[1]});
                               });
  } catch (const std::exception& e) {
    rethrow_integration(za, zb, e);
  }
  return {y[0], y[1]};
}

void propagate_to(const Liouville& L, double k, double za, const std::vector<double>& zs,
                  Pruefer start, double rel_tol, const PrueferObserver& obs) {
  if (zs.empty()) return;
  std::vector<double> times;
  times.reserve(zs.size() + 1);
  times.push_back(za);
  times.insert(times.end(), zs.begin(), zs.end());
  State y{start.theta, start.lnR};
  const double dt0 = (zs.front() - za) != 0.0 ? (zs.front() - za) * 1e-2 : 1e-6;
  std::size_t idx = 0;
  try {
    odeint::integrate_times(make_stepper(rel_tol), Rhs{L, k}, y, times.begin(), times.end(), dt0,
                            [&](const State& s, double z) {
                              if (idx++ == 0) return;
                              obs(z, Pruefer{s[0], s[1]});
                            });
  } catch (const std::exception& e) {
    rethrow_integration(za, zs.back(), e);
  }
}

}  // namespace dsatom::detail
