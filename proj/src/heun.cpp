#include "dsatom/heun.hpp"

#include <cmath>
#include <sstream>

#include "dsatom/errors.hpp"

namespace dsatom {
namespace {

constexpr cplx I{0.0, 1.0};

void finish(HeunParams& hp, cplx root) {
  const cplx s = 1.5 + hp.A + hp.B + hp.C;
  hp.lambda = s + root;
  hp.beta = s - root;
  hp.gamma = 2.0 + 2.0 * hp.A;
  hp.delta = 1.0 + 2.0 * hp.B;
  hp.eps = 1.0 + 2.0 * hp.C;
}

bool is_nonpositive_integer(cplx z) {
  if (std::abs(z.imag()) > 1e-12) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) < 1e-12;
}

// Equals (k-1+lambda)(k-1+beta) when the Fuchs relation holds.
cplx lower_factor(const HeunParams& hp, double k) {
  return (k - 1.0) * (k - 2.0) + (hp.gamma + hp.delta + hp.eps) * (k - 1.0) + hp.lambda * hp.beta;
}

}  // namespace

std::string branch_label(Branch b) {
  std::string s = "(";
  s += b.sB > 0 ? '+' : '-';
  s += ',';
  s += b.sC > 0 ? '+' : '-';
  s += ')';
  return s;
}

HeunParams map_heun_dS(const PhysicalParams& p, Branch branch) {
  if (p.geometry != Geometry::DeSitter) throw DomainError("map_heun_dS needs the ds geometry");
  HeunParams hp;
  hp.geometry = Geometry::DeSitter;
  hp.branch = branch;
  hp.A = exponent_A(p);
  hp.B = double(branch.sB) * 0.5 * I * (p.E + p.alpha);
  hp.C = double(branch.sC) * 0.5 * I * (p.E - p.alpha);
  finish(hp, std::sqrt(cplx(2.25 - p.M * p.M, 0.0)));
  hp.q = 2.0 * (p.E * p.alpha - (1.0 + hp.A) * (hp.B - hp.C));
  return hp;
}

HeunParams map_heun_AdS(const PhysicalParams& p, Branch branch) {
  if (p.geometry != Geometry::AntiDeSitter) {
    throw DomainError("map_heun_AdS needs the ads geometry");
  }
  HeunParams hp;
  hp.geometry = Geometry::AntiDeSitter;
  hp.imaginary_variable = true;
  hp.branch = branch;
  hp.A = exponent_A(p);
  hp.B = double(branch.sB) * 0.5 * (p.E + I * p.alpha);
  hp.C = double(branch.sC) * 0.5 * (p.E - I * p.alpha);
  finish(hp, cplx(std::sqrt(p.M * p.M + 2.25), 0.0));
  hp.q = -2.0 * (I * p.E * p.alpha + (1.0 + hp.A) * (hp.B - hp.C));
  return hp;
}

HeunParams map_heun(const PhysicalParams& p, Branch branch) {
  switch (p.geometry) {
    case Geometry::DeSitter:
      return map_heun_dS(p, branch);
    case Geometry::AntiDeSitter:
      return map_heun_AdS(p, branch);
    case Geometry::Minkowski:
      break;
  }
  throw DomainError("no Heun reduction for the flat geometry");
}

std::vector<cplx> heun_series_coefficients(const HeunParams& hp, std::size_t n) {
  if (is_nonpositive_integer(hp.gamma)) {
    throw DomainError("gamma is a non-positive integer: logarithmic local solution not implemented");
  }
  std::vector<cplx> c;
  c.reserve(n);
  if (n == 0) return c;
  c.push_back(1.0);
  if (n == 1) return c;
  c.push_back(-hp.q / hp.gamma);
  const cplx dmE = hp.delta - hp.eps;
  for (std::size_t k = 1; c.size() < n; ++k) {
    const double kd = static_cast<double>(k);
    const cplx num = (kd * dmE - hp.q) * c[k] + lower_factor(hp, kd) * c[k - 1];
    c.push_back(num / ((kd + 1.0) * (kd + hp.gamma)));
  }
  return c;
}

HeunValue heun_local_series(const HeunParams& hp, cplx x, double tol) {
  if (is_nonpositive_integer(hp.gamma)) {
    throw DomainError("gamma is a non-positive integer: logarithmic local solution not implemented");
  }
  const double ax = std::abs(x);
  if (!(ax < 1.0)) {
    std::ostringstream os;
    os << "Heun series at x = " << x << " is outside the unit disc";
    throw RangeError(os.str());
  }

  // Running recurrence with c_{k-1}, c_k; sums of H, H', H''.
  const cplx dmE = hp.delta - hp.eps;
  cplx c_prev = 1.0;
  cplx c_cur = -hp.q / hp.gamma;
  cplx H = 1.0, dH = 0.0, d2H = 0.0;
  cplx xk = x;            // x^k for k = 1
  cplx xkm1 = 1.0;        // x^{k-1}
  cplx xkm2 = 0.0;        // x^{k-2}
  double prev_weight = 0.0;  // weighted magnitude of the previous term
  std::size_t k = 1;
  for (; k < kHeunMaxTerms; ++k) {
    const double kd = static_cast<double>(k);
    H += c_cur * xk;
    dH += kd * c_cur * xkm1;
    if (k >= 2) d2H += kd * (kd - 1.0) * c_cur * xkm2;

    // Weighting by (k+1)^2 makes the stop rule cover H' and H'' as well.
    const double weight = (kd + 1.0) * (kd + 1.0) * std::abs(c_cur * xk);
    const double scale = std::abs(H) + ax * std::abs(dH) + ax * ax * std::abs(d2H);
    if (k >= 2 && weight + prev_weight < tol * scale) {
      HeunValue v{H, dH, d2H, k + 1, 0.0};
      const double term = std::abs(c_cur * xk);
      v.trunc_error = (ax > 0.0 ? term * ax / (1.0 - ax) : 0.0) / std::max(std::abs(H), 1e-300);
      return v;
    }
    prev_weight = weight;

    const cplx next =
        ((kd * dmE - hp.q) * c_cur + lower_factor(hp, kd) * c_prev) /
        ((kd + 1.0) * (kd + hp.gamma));
    c_prev = c_cur;
    c_cur = next;
    xkm2 = xkm1;
    xkm1 = xk;
    xk *= x;
    if (x == 0.0 && k >= 2) break;
  }
  if (x == 0.0) return HeunValue{H, dH, d2H, k, 0.0};
  std::ostringstream os;
  os << "Heun series did not converge at x = " << x << " within " << kHeunMaxTerms << " terms";
  throw ConvergenceError(os.str(), std::abs(c_cur * xk) / std::max(std::abs(H), 1e-300));
}

RadialValue radial_from_heun(const HeunParams& hp, cplx x, double tol) {
  if (x == 0.0) throw RangeError("radial_from_heun: x = 0 is the regular singular point");
  const HeunValue h = heun_local_series(hp, x, tol);
  const cplx one_side = hp.imaginary_variable ? std::log(x - 1.0) : std::log(1.0 - x);
  const cplx P = std::exp(hp.A * std::log(x) + hp.B * one_side + hp.C * std::log(1.0 + x));
  const cplx g = hp.A / x + hp.B / (x - 1.0) + hp.C / (x + 1.0);
  const cplx dg = -hp.A / (x * x) - hp.B / ((x - 1.0) * (x - 1.0)) - hp.C / ((x + 1.0) * (x + 1.0));
  RadialValue r;
  r.f = P * h.H;
  r.df = P * (g * h.H + h.dH);
  r.d2f = P * ((g * g + dg) * h.H + 2.0 * g * h.dH + h.d2H);
  return r;
}

RadialValue radial_at(const HeunParams& hp, double X, double tol) {
  if (!hp.imaginary_variable) return radial_from_heun(hp, cplx(X, 0.0), tol);
  // x = i X: d/dX = i d/dx.
  RadialValue r = radial_from_heun(hp, cplx(0.0, X), tol);
  r.df *= I;
  r.d2f *= -1.0;
  return r;
}

double ads_free_spectrum(int n, int l, double M) {
  if (n < 0 || l < 0) throw DomainError("ads_free_spectrum: n and l must be >= 0");
  if (!(M > 0.0)) throw DomainError("ads_free_spectrum: M must be > 0");
  return 2.0 * n + l + 1.5 + std::sqrt(2.25 + M * M);
}

HypergeometricReduction hypergeometric_reduction(const PhysicalParams& p) {
  if (p.geometry != Geometry::AntiDeSitter) {
    throw DomainError("hypergeometric_reduction needs the ads geometry");
  }
  if (p.alpha != 0.0) throw DomainError("hypergeometric_reduction requires alpha = 0");
  const double root = std::sqrt(2.25 + p.M * p.M);
  HypergeometricReduction h;
  h.A = 0.5 * p.l;
  h.B = -0.5 * p.E;
  h.a = 0.5 * (1.5 + p.l - p.E + root);
  h.b = 0.5 * (1.5 + p.l - p.E - root);
  h.c = p.l + 1.5;
  return h;
}

cplx ds_complex_levels(int n, int l, const PhysicalParams& p, Branch branch) {
  if (n < 0) throw DomainError("ds_complex_levels: n must be >= 0");
  if (!(p.M > 1.5)) {
    std::ostringstream os;
    os << "ds_complex_levels needs M > 3/2 so that sqrt(M^2 - 9/4) is real (M = " << p.M << ")";
    throw DomainError(os.str());
  }
  const double A = exponent_A(l, p.alpha);
  const double re = std::sqrt(p.M * p.M - 2.25);
  const double im = 1.5 + n + A;
  if (branch == kPlusPlus) return cplx(-re, im);
  if (branch == kMinusMinus) return cplx(re, -im);
  throw DomainError("ds_complex_levels is defined for the (+,+) and (-,-) branches only");
}

}  // namespace dsatom
