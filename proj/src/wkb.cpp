#include "dsatom/wkb.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <algorithm>
#include <cmath>
#include <tuple>
#include <numbers>
#include <sstream>
#include <vector>

#include "dsatom/errors.hpp"

namespace dsatom {
namespace {

double sign_of_curvature(Geometry g) {
  switch (g) {
    case Geometry::DeSitter:
      return +1.0;
    case Geometry::AntiDeSitter:
      return -1.0;
    case Geometry::Minkowski:
      break;
  }
  throw DomainError("WKB curvature corrections need the ds or ads geometry");
}

// Integral over [a, b] of g(r) with r = a + (b - a) sin^2(theta), which removes
// square-root behaviour at both ends.
template <class G>
double endpoint_regular_integral(double a, double b, G g) {
  if (!(b > a)) return 0.0;
  const double w = b - a;
  auto integrand = [&](double th) {
    const double s = std::sin(th), c = std::cos(th);
    return g(a + w * s * s) * 2.0 * w * s * c;
  };
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, std::numbers::pi / 2, 15, 1e-12, &err);
  if (!std::isfinite(v)) throw ConvergenceError("barrier/well quadrature failed", err);
  return v;
}

std::pair<double, double> well_roots(const ClassicalParams& cp) {
  const TurningPointReport rep = classify_turning_points(cp);
  if (rep.well) return {rep.well->r1, rep.well->r2};
  if (cp.geometry == Geometry::AntiDeSitter) {
    // Two positive real roots bound the well whether the others are (-,-) or a pair.
    std::vector<double> pos;
    for (const auto& z : rep.roots.roots) {
      if (is_real_root(z) && z.real() > 0.0) pos.push_back(z.real());
    }
    if (pos.size() == 2) return {pos[0], pos[1]};
  }
  throw DomainError("no classical well: topology " + std::string(to_string(rep.roots.topology)));
}

}  // namespace

std::pair<double, double> flat_turning_points(const ClassicalParams& cp) {
  require_no_fall_to_center(cp);
  const double D = cp.M * cp.M - cp.epsilon * cp.epsilon;
  if (!(D > 0.0) || !(cp.epsilon > 0.0)) {
    throw DomainError("no classical well: flat turning points need 0 < eps < M");
  }
  const double L2 = cp.L * cp.L;
  const double e4 = cp.e2 * cp.e2;
  const double rad = cp.epsilon * cp.epsilon * e4 - (L2 - e4) * D;
  if (!(rad > 0.0)) {
    std::ostringstream os;
    os << "no classical well: radicand eps^2 e2^2 - (L^2 - e2^2)(M^2 - eps^2) = " << rad;
    throw DomainError(os.str());
  }
  const double b = cp.epsilon * cp.e2;
  const double s = std::sqrt(rad);
  // Product form for the smaller root avoids cancellation.
  const double r_plus = (b + s) / D;
  const double r_minus = (L2 - e4) / (D * r_plus);
  return {r_minus, r_plus};
}

double turning_shift(const ClassicalParams& cp, double r0) {
  const double num = r0 * r0 * (cp.L * cp.L + cp.M * cp.M * r0 * r0);
  const double den = 2.0 * cp.e2 * cp.epsilon + 2.0 * r0 * (cp.epsilon * cp.epsilon - cp.M * cp.M);
  if (den == 0.0) throw DomainError("turning_shift: vanishing denominator (double flat root)");
  return -num / den;
}

TurningExpansion turning_expansion(const ClassicalParams& cp) {
  const double sgn = sign_of_curvature(cp.geometry);
  TurningExpansion t;
  t.geometry = cp.geometry;
  std::tie(t.r01, t.r02) = flat_turning_points(cp);
  t.Delta1 = turning_shift(cp, t.r01);
  t.Delta2 = turning_shift(cp, t.r02);
  const double rho2 = cp.rho * cp.rho;
  t.r1 = t.r01 + sgn * t.Delta1 / rho2;
  t.r2 = t.r02 + sgn * t.Delta2 / rho2;
  const double b0 = std::sqrt(1.0 - (cp.epsilon * cp.epsilon) / (cp.M * cp.M));
  const double b1 = -cp.epsilon * cp.e2 / (cp.M * cp.M - cp.epsilon * cp.epsilon);
  if (sgn > 0) {
    t.r3 = {cp.rho * b0 + b1, 0.0};
    t.r4 = {-cp.rho * b0 + b1, 0.0};
  } else {
    t.r3 = {b1, cp.rho * b0};
    t.r4 = {b1, -cp.rho * b0};
  }
  const double outer = sgn > 0 ? t.r3.real() : cp.rho * b0;
  if (!(t.r02 + std::abs(t.Delta2) / rho2 < 0.5 * outer)) {
    std::ostringstream os;
    os << "WKB expansion outside regime: r02 + |Delta2|/rho^2 = "
       << t.r02 + std::abs(t.Delta2) / rho2 << " is not below half the outer root " << outer;
    throw RangeError(os.str());
  }
  return t;
}

TurningExpansion ds_turning_expansion(const ClassicalParams& cp) {
  if (cp.geometry != Geometry::DeSitter) throw DomainError("ds_turning_expansion needs ds");
  return turning_expansion(cp);
}

TurningExpansion ads_turning_expansion(const ClassicalParams& cp) {
  if (cp.geometry != Geometry::AntiDeSitter) throw DomainError("ads_turning_expansion needs ads");
  return turning_expansion(cp);
}

double curvature_coefficient(const ClassicalParams& cp) {
  const double b0sq = 1.0 - (cp.epsilon * cp.epsilon) / (cp.M * cp.M);
  return 1.0 - 1.0 / (2.0 * b0sq);
}

double approx_momentum_squared(const ClassicalParams& cp, double r, double fraction) {
  const double sgn = sign_of_curvature(cp.geometry);
  if (!(r > 0.0) || !(r < fraction * cp.rho)) {
    std::ostringstream os;
    os << "approximate momentum needs 0 < r < " << fraction << " rho (r = " << r << ")";
    throw RangeError(os.str());
  }
  const TurningExpansion t = turning_expansion(cp);
  const double A = curvature_coefficient(cp);
  const double corr = 1.0 + sgn * A * r * r / (cp.rho * cp.rho);
  return (cp.epsilon * cp.epsilon - cp.M * cp.M) * (r - t.r1) * (r - t.r2) / (r * r) * corr * corr;
}

double approx_momentum(const ClassicalParams& cp, double r, double fraction) {
  const double p2 = approx_momentum_squared(cp, r, fraction);
  if (p2 < 0.0) throw DomainError("approximate momentum is imaginary outside the well");
  return std::sqrt(p2);
}

double wkb_eps0(int n, int l, double e2, double M) {
  const double half = l + 0.5;
  const double rad = half * half - e2 * e2;
  if (!(rad > 0.0)) throw DomainError("wkb_eps0: (l+1/2)^2 - e2^2 must be positive");
  const double N = n + 0.5 + std::sqrt(rad);
  return M / std::sqrt(1.0 + e2 * e2 / (N * N));
}

WkbLevel wkb_energy(int n, int l, const ClassicalParams& tmpl) {
  const double sgn = sign_of_curvature(tmpl.geometry);
  if (n < 0 || l < 0) throw DomainError("wkb_energy: n and l must be >= 0");
  if (!(tmpl.e2 > 0.0)) {
    throw DomainError("wkb_energy divides by e2; use the exact ads or flat limits for e2 = 0");
  }
  WkbLevel lv;
  lv.geometry = tmpl.geometry;
  lv.n = n;
  lv.l = l;
  lv.eps0 = wkb_eps0(n, l, tmpl.e2, tmpl.M);

  ClassicalParams cp = tmpl;
  cp.epsilon = lv.eps0;
  cp.L = l + 0.5;
  const auto [r01, r02] = flat_turning_points(cp);
  const double D1 = turning_shift(cp, r01);
  const double D2 = turning_shift(cp, r02);
  const double A = curvature_coefficient(cp);
  const double M2 = cp.M * cp.M;
  const double gap = M2 - lv.eps0 * lv.eps0;
  const double bracket = D1 + D2 + D1 * std::sqrt(r02 / r01) + D2 * std::sqrt(r01 / r02) -
                         sgn * A * r01 * r02 * (r01 + r02);
  lv.Delta = gap * gap / (4.0 * cp.e2 * M2) * bracket;
  lv.eps = lv.eps0 + sgn * lv.Delta / (cp.rho * cp.rho);
  return lv;
}

WkbLevel wkb_energy_dS(int n, int l, const ClassicalParams& tmpl) {
  if (tmpl.geometry != Geometry::DeSitter) throw DomainError("wkb_energy_dS needs ds");
  return wkb_energy(n, l, tmpl);
}

WkbLevel wkb_energy_AdS(int n, int l, const ClassicalParams& tmpl) {
  if (tmpl.geometry != Geometry::AntiDeSitter) throw DomainError("wkb_energy_AdS needs ads");
  return wkb_energy(n, l, tmpl);
}

double quantization_residual(const ClassicalParams& cp, int n) {
  const double sgn = sign_of_curvature(cp.geometry);
  const TurningExpansion t = turning_expansion(cp);
  const double A = curvature_coefficient(cp);
  const double k = std::sqrt(cp.M * cp.M - cp.epsilon * cp.epsilon);
  const double s = t.r1 + t.r2;
  const double p = t.r1 * t.r2;
  const double lhs = k * (0.5 * s - std::sqrt(p) - sgn * A / (cp.rho * cp.rho) * p * 0.5 * s);
  return lhs - (n + 0.5);
}

double well_action(const ClassicalParams& cp) {
  const auto [r1, r2] = well_roots(cp);
  return endpoint_regular_integral(r1, r2, [&](double r) {
    if (r <= r1 || r >= r2) return 0.0;
    const double p2 = momentum_squared(cp, r);
    return p2 > 0.0 ? std::sqrt(p2) : 0.0;
  });
}

double action_quantized_energy(int n, int l, const ClassicalParams& tmpl) {
  ClassicalParams cp = tmpl;
  cp.L = l + 0.5;
  const double target = std::numbers::pi * (n + 0.5);
  const double eps0 = wkb_eps0(n, l, cp.e2, cp.M);
  auto F = [&](double eps) {
    cp.epsilon = eps;
    return well_action(cp) - target;
  };
  // Scan the binding energy M - eps geometrically around the flat value.
  const double gap0 = cp.M - eps0;
  std::vector<std::pair<double, double>> pts;
  for (int j = -12; j <= 12; ++j) {
    const double eps = cp.M - gap0 * std::pow(2.0, 0.5 * j);
    if (!(eps > 0.0)) continue;
    try {
      pts.emplace_back(eps, F(eps));
    } catch (const Error&) {
    }
  }
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if ((pts[i].second < 0.0) != (pts[i + 1].second < 0.0)) {
      boost::uintmax_t iters = 200;
      auto tol = boost::math::tools::eps_tolerance<double>(50);
      const auto [lo, hi] = boost::math::tools::toms748_solve(
          F, pts[i].first, pts[i + 1].first, pts[i].second, pts[i + 1].second, tol, iters);
      return 0.5 * (lo + hi);
    }
  }
  throw ConvergenceError("action quantization: no bracketing energy found", 0.0);
}

TunnelingResult tunneling_probability(const ClassicalParams& cp, const WellDiagnostics& well) {
  if (cp.geometry != Geometry::DeSitter) throw DomainError("tunneling needs the ds geometry");
  TunnelingResult t;
  t.rough_log_W = -2.0 * cp.rho * cp.M;
  const double a = well.barrier_lo(), b = well.barrier_hi();
  t.integral = endpoint_regular_integral(a, b, [&](double r) {
    if (r <= a || r >= b) return 0.0;
    const double g = 1.0 - (r / cp.rho) * (r / cp.rho);
    const double P = tortoise_momentum_squared(cp, r);
    return P < 0.0 ? std::sqrt(-P) / g : 0.0;
  });
  t.log_W = -2.0 * t.integral;
  t.W = std::exp(t.log_W);
  return t;
}

TunnelingResult tunneling_probability(const ClassicalParams& cp) {
  const TurningPointReport rep = classify_turning_points(cp);
  if (!rep.well) {
    throw DomainError("tunneling needs a BarrierWell configuration, got " +
                      std::string(to_string(rep.roots.topology)));
  }
  return tunneling_probability(cp, *rep.well);
}

double level_spacing(const ClassicalParams& cp) {
  const double gap = cp.M * cp.M - cp.epsilon * cp.epsilon;
  if (!(gap > 0.0) || !(cp.e2 > 0.0)) throw DomainError("level_spacing needs 0 < eps < M, e2 > 0");
  const double N = cp.e2 * cp.epsilon / std::sqrt(gap);
  const double u = cp.e2 * cp.e2 / (N * N);
  return cp.M * u / N * std::pow(1.0 + u, -1.5);
}

GamowWidth gamow_width(const ClassicalParams& cp) {
  GamowWidth g;
  const TurningPointReport rep = classify_turning_points(cp);
  if (rep.well) {
    g.W = tunneling_probability(cp, *rep.well).W;
    g.barrier = true;
  }
  g.Gamma = g.W * level_spacing(cp) / (2.0 * std::numbers::pi);
  return g;
}

}  // namespace dsatom
