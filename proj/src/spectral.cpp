#include "dsatom/spectral.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "dsatom/errors.hpp"
#include "dsatom/wkb.hpp"
#include "liouville.hpp"

namespace dsatom {

using detail::Liouville;
using detail::Pruefer;

namespace {

constexpr double kPi = std::numbers::pi;

PhysicalParams with_energy(const PhysicalParams& tmpl, int l, double E) {
  PhysicalParams p = tmpl;
  p.l = l;
  p.E = E;
  return p;
}

// Indices of sign runs of Q on a z grid: returns the boundaries between runs.
struct Run {
  bool positive;
  double lo, hi;
  double extreme_z;  // argmax (positive) or argmin (negative) of Q within the run
  double extreme_q;
};

std::vector<Run> sign_runs(const Liouville& L, const std::vector<double>& zs) {
  std::vector<Run> runs;
  for (double z : zs) {
    const double q = L.Q(z);
    const bool pos = q > 0.0;
    if (runs.empty() || runs.back().positive != pos) {
      runs.push_back(Run{pos, z, z, z, q});
    } else {
      Run& r = runs.back();
      r.hi = z;
      if ((pos && q > r.extreme_q) || (!pos && q < r.extreme_q)) {
        r.extreme_q = q;
        r.extreme_z = z;
      }
    }
  }
  return runs;
}

std::vector<double> mixed_grid(double lo, double hi, int n_geo, int n_lin) {
  std::vector<double> zs;
  zs.reserve(n_geo + n_lin);
  const double first = std::max(lo, hi * 1e-7);
  for (int i = 0; i < n_geo; ++i) {
    zs.push_back(first * std::pow(hi / first, double(i) / (n_geo - 1)));
  }
  for (int i = 1; i < n_lin; ++i) zs.push_back(lo + (hi - lo) * i / n_lin);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::remove_if(zs.begin(), zs.end(), [&](double z) { return z <= lo || z >= hi; }),
           zs.end());
  return zs;
}

// ---------------------------------------------------------------- AdS shooting

struct Matcher {
  PhysicalParams tmpl;
  int l;
  double zm, k, z0, w0;
  ShootingOptions opts;

  double F(double E) const {
    const Liouville L(with_energy(tmpl, l, E));
    const Pruefer out = detail::propagate(L, k, z0, zm, detail::origin_seed(L, z0, k), opts.rel_tol);
    const double zb = kPi / 2 - w0;
    const Pruefer in =
        detail::propagate(L, k, zb, zm, detail::boundary_seed(L, w0, k), opts.rel_tol);
    return out.theta - in.theta;
  }
};

double matching_point(const Liouville& L) {
  const auto zs = mixed_grid(0.0, kPi / 2, 600, 1200);
  const auto runs = sign_runs(L, zs);
  const Run* best = nullptr;
  for (const Run& r : runs) {
    if (r.positive && (!best || r.hi - r.lo > best->hi - best->lo)) best = &r;
  }
  if (best) return 0.5 * (best->lo + best->hi);
  // Entirely forbidden: match where Q is largest.
  double zb = zs.front(), qb = L.Q(zb);
  for (double z : zs) {
    if (L.Q(z) > qb) qb = L.Q(z), zb = z;
  }
  return zb;
}

Matcher make_matcher(const PhysicalParams& tmpl, int l, double E_ref, double E_scale,
                     const ShootingOptions& opts) {
  if (tmpl.geometry != Geometry::AntiDeSitter) {
    throw DomainError("AdS bound-state search needs the ads geometry");
  }
  const Liouville Lref(with_energy(tmpl, l, E_ref));
  const Liouville Lscale(with_energy(tmpl, l, E_scale));
  Matcher m{tmpl, l, matching_point(Lref), 1.0, Lscale.origin_start(), Lscale.boundary_start(),
            opts};
  m.k = std::sqrt(std::max(1.0, std::abs(Lref.Q(m.zm))));
  return m;
}

int count_from(double F) { return F <= 0.0 ? 0 : static_cast<int>(std::ceil(F / kPi)); }

}  // namespace

RadialCoefficients radial_ode_coefficients(const PhysicalParams& p, double x) {
  if (p.geometry == Geometry::Minkowski) throw DomainError("radial equation needs ds or ads");
  if (!(x > 0.0)) throw RangeError("radial equation: x must be > 0");
  const double s = p.geometry == Geometry::DeSitter ? 1.0 : -1.0;
  const double g = 1.0 - s * x * x;
  if (!(g > 0.0)) throw RangeError("radial equation: x must be < 1 in dS");
  const double kin = p.E + p.alpha / x;
  const double L = double(p.l) * (p.l + 1);
  return {2.0 * (1.0 - 2.0 * s * x * x) / (x * g), kin * kin / (g * g) - (p.M * p.M + L / (x * x)) / g};
}

std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::RegularOrigin:
      return "regular-origin";
    case Boundary::DecayAtInfinity:
      return "decay-at-infinity";
    case Boundary::OutgoingAtHorizon:
      return "outgoing-at-horizon";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Exact:
      return "exact";
    case Method::WKB:
      return "wkb";
    case Method::Shooting:
      return "shooting";
    case Method::ResonanceScan:
      return "resonance";
    case Method::ComplexHeun:
      return "complex-heun";
  }
  return "?";
}

RadialSolution integrate_radial(const RadialProblem& problem, double E,
                                const IntegrationOptions& opts) {
  const PhysicalParams p = with_energy(problem.params, problem.params.l, E);
  if (!(problem.x_min > 0.0) || !(problem.x_max > problem.x_min)) {
    throw DomainError("integrate_radial needs 0 < x_min < x_max");
  }
  if (p.geometry == Geometry::DeSitter && !(problem.x_max < 1.0)) {
    std::ostringstream os;
    os << "integrate_radial: x_max = " << problem.x_max
       << " reaches the dS horizon x = 1 where the step size underflows";
    throw RangeError(os.str());
  }
  const Liouville L(p);

  std::vector<double> xs = opts.sample_x;
  if (xs.empty()) {
    const int n = std::max(2, opts.samples);
    for (int i = 0; i < n; ++i) {
      xs.push_back(problem.x_min * std::pow(problem.x_max / problem.x_min, double(i) / (n - 1)));
    }
  }
  std::sort(xs.begin(), xs.end());
  std::vector<double> zs;
  for (double x : xs) zs.push_back(L.z_of_x(x));

  const double z0 = std::min(L.origin_start(), 0.5 * zs.front());
  const double zmid = std::sqrt(zs.front() * zs.back());
  const double k = std::sqrt(std::max(1.0, std::abs(L.Q(zmid))));

  std::vector<Pruefer> states;
  detail::propagate_to(L, k, z0, zs, detail::origin_seed(L, z0, k), opts.rel_tol,
                       [&](double, const Pruefer& s) { states.push_back(s); });

  RadialSolution sol;
  sol.boundary = std::string(to_string(problem.boundary));
  sol.x = xs;
  for (const auto& s : states) sol.log_scale = std::max(sol.log_scale, s.lnR);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double R = std::exp(states[i].lnR - sol.log_scale);
    const double psi = R * std::sin(states[i].theta) / k;
    const double dpsi_dz = R * std::cos(states[i].theta);
    sol.f.push_back(psi / x);
    sol.df.push_back(dpsi_dz * L.dz_dx(x) / x - psi / (x * x));
  }
  for (std::size_t i = 1; i < sol.f.size(); ++i) {
    if ((sol.f[i - 1] < 0.0) != (sol.f[i] < 0.0)) ++sol.nodes;
  }
  sol.terminal_f = sol.f.back();
  sol.terminal_df = sol.df.back();
  return sol;
}

int ads_count_below(const PhysicalParams& tmpl, int l, double E, const ShootingOptions& opts) {
  const Matcher m = make_matcher(tmpl, l, E, E, opts);
  return count_from(m.F(E));
}

SpectrumScan ads_bound_states(const PhysicalParams& tmpl, int l, double E_lo, double E_hi,
                              const ShootingOptions& opts) {
  if (!(E_hi > E_lo) || !std::isfinite(E_lo) || !std::isfinite(E_hi)) {
    throw DomainError("ads_bound_states: need a finite window E_lo < E_hi");
  }
  (void)exponent_A(l, tmpl.alpha);
  const double E_scale = std::max(std::abs(E_lo), std::abs(E_hi));
  SpectrumScan scan;
  auto count = [&](double E) {
    const Matcher m = make_matcher(tmpl, l, E, E_scale, opts);
    return count_from(m.F(E));
  };
  const int c_lo = count(E_lo);
  const int c_hi = count(E_hi);

  for (int n = c_lo; n < c_hi; ++n) {
    double lo = E_lo, hi = E_hi;
    std::optional<double> root;
    Matcher m{};
    for (int iter = 0; iter < 200 && !root; ++iter) {
      const double mid = 0.5 * (lo + hi);
      m = make_matcher(tmpl, l, mid, E_scale, opts);
      const double flo = m.F(lo) - n * kPi, fhi = m.F(hi) - n * kPi;
      if (flo < 0.0 && fhi > 0.0 && count(lo) == n && count(hi) == n + 1) {
        boost::uintmax_t it = 300;
        const auto tol = [&](double a, double b) {
          return std::abs(b - a) <= opts.e_tol * std::max(1.0, std::abs(a));
        };
        const auto [a, b] = boost::math::tools::toms748_solve(
            [&](double E) { return m.F(E) - n * kPi; }, lo, hi, flo, fhi, tol, it);
        root = 0.5 * (a + b);
        break;
      }
      if (count(mid) > n) hi = mid; else lo = mid;
    }
    if (!root) {
      scan.warnings.push_back("eigenvalue n=" + std::to_string(n) + " could not be bracketed");
      continue;
    }
    SpectrumEntry e;
    e.n = n;
    e.l = l;
    e.energy = *root;
    e.method = Method::Shooting;
    e.residual = std::abs(m.F(*root) - n * kPi);
    e.node_count = n;
    scan.entries.push_back(e);
    const double edge = 1e-6 * std::max(1.0, std::abs(*root));
    if (*root - E_lo < edge || E_hi - *root < edge) {
      scan.warnings.push_back("eigenvalue n=" + std::to_string(n) + " lies at the window edge");
    }
  }
  return scan;
}

// ------------------------------------------------------------- dS resonances

namespace {

struct Barrier {
  double z_well_hi;  // start of the barrier (outer well turning point)
  double z_b;        // deepest point of the barrier
  double z_far;
};

std::optional<Barrier> find_barrier(const Liouville& L, const ResonanceOptions& opts) {
  const double k = std::abs(L.E + L.alpha);
  const double far_scale =
      4.0 * (std::abs(L.M * L.M - 2.0) + L.Lterm + 2.0 * std::abs(L.alpha * (L.E + L.alpha)));
  const double z_far = std::max(2.0, 0.5 * std::log(far_scale / (opts.horizon_tol * k * k)));
  const auto runs = sign_runs(L, mixed_grid(0.0, z_far, 800, 2400));
  // Skip a leading centrifugal forbidden run; then expect well (+), barrier (-), exterior (+).
  std::size_t i = 0;
  if (!runs.empty() && !runs[0].positive) i = 1;
  if (i + 2 >= runs.size()) return std::nullopt;
  if (!runs[i].positive || runs[i + 1].positive || !runs[i + 2].positive) return std::nullopt;
  return Barrier{runs[i + 1].lo, runs[i + 1].extreme_z, std::max(z_far, runs[i + 1].hi + 1.0)};
}

struct ResonanceProbe {
  bool barrier = false;
  double ratio = 0;     // well amplitude over horizon amplitude
  double theta_b = 0;   // Pruefer angle at the barrier point
  double theta_dec = 0; // angle of the solution decaying towards the horizon there
  int count = 0;        // quasi-bound levels below E
};

ResonanceProbe probe(const PhysicalParams& p, const ResonanceOptions& opts,
                     std::optional<double> fixed_zb = std::nullopt) {
  ResonanceProbe out;
  const Liouville L(p);
  const auto bar = find_barrier(L, opts);
  if (!bar) return out;
  out.barrier = true;
  const double zb = fixed_zb.value_or(bar->z_b);
  const double k = std::abs(L.E + L.alpha);
  const double z0 = L.origin_start();
  double max_lnR = -std::numeric_limits<double>::infinity();
  Pruefer s = detail::propagate(L, k, z0, std::min(bar->z_well_hi, zb),
                                detail::origin_seed(L, z0, k), opts.rel_tol,
                                [&](double, const Pruefer& st) { max_lnR = std::max(max_lnR, st.lnR); });
  s = detail::propagate(L, k, std::min(bar->z_well_hi, zb), zb, s, opts.rel_tol);
  out.theta_b = s.theta;
  const double kappa = std::sqrt(std::max(0.0, -L.Q(zb)));
  out.theta_dec = std::atan2(k, -kappa);
  out.count = static_cast<int>(std::floor((out.theta_b - out.theta_dec) / kPi)) + 1;
  s = detail::propagate(L, k, zb, bar->z_far, s, opts.rel_tol);
  out.ratio = std::exp(max_lnR - s.lnR);
  return out;
}

}  // namespace

double ds_amplitude_ratio(const PhysicalParams& tmpl, int l, double E,
                          const ResonanceOptions& opts) {
  if (tmpl.geometry != Geometry::DeSitter) throw DomainError("resonance scan needs ds");
  return probe(with_energy(tmpl, l, E), opts).ratio;
}

SpectrumScan ds_resonance_scan(const PhysicalParams& tmpl, int l, double E_lo, double E_hi,
                               const ResonanceOptions& opts) {
  if (tmpl.geometry != Geometry::DeSitter) throw DomainError("resonance scan needs ds");
  if (!(E_hi > E_lo)) throw DomainError("ds_resonance_scan: need E_lo < E_hi");
  (void)exponent_A(l, tmpl.alpha);
  SpectrumScan scan;
  const int n_grid = std::max(3, opts.grid);
  std::vector<double> Es(n_grid);
  std::vector<ResonanceProbe> probes(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    Es[i] = E_lo + (E_hi - E_lo) * i / (n_grid - 1);
    probes[i] = probe(with_energy(tmpl, l, Es[i]), opts);
  }
  if (std::none_of(probes.begin(), probes.end(), [](auto& p) { return p.barrier; })) {
    scan.warnings.push_back("no barrier separates a well from the horizon anywhere in the window");
    return scan;
  }

  auto refine = [&](double a, double b, int n) {
    // Quasi-bound energy: the solution matches the horizon-decaying branch in the barrier.
    const PhysicalParams pm = with_energy(tmpl, l, 0.5 * (a + b));
    const auto bar = find_barrier(Liouville(pm), opts);
    if (!bar) return;
    const double zb = bar->z_b;
    auto G = [&](double E) {
      const ResonanceProbe pr = probe(with_energy(tmpl, l, E), opts, zb);
      return pr.barrier ? pr.theta_b - pr.theta_dec - n * kPi : std::nan("");
    };
    const double ga = G(a), gb = G(b);
    double E_q = 0.5 * (a + b);
    if (std::isfinite(ga) && std::isfinite(gb) && ga < 0.0 && gb > 0.0) {
      boost::uintmax_t it = 200;
      const auto tol = [](double x, double y) { return std::abs(x - y) <= 1e-13 * std::abs(x); };
      const auto [u, v] = boost::math::tools::toms748_solve(G, a, b, ga, gb, tol, it);
      E_q = 0.5 * (u + v);
    }

    // Width from the Gamow factor at the quasi-bound energy.
    ClassicalParams cp = classical_from(with_energy(tmpl, l, E_q));
    GamowWidth gw;
    try {
      gw = gamow_width(cp);
    } catch (const Error& e) {
      scan.warnings.push_back(std::string("Gamow width unavailable: ") + e.what());
    }
    const double Gamma_E = gw.Gamma * tmpl.rho;

    // Peak of the amplitude ratio around the quasi-bound energy.
    const double h = std::min(0.5 * (b - a), std::max(10.0 * Gamma_E, 1e-9 * std::abs(E_q)));
    const double lo = std::max(a, E_q - h), hi = std::min(b, E_q + h);
    auto neg_log_ratio = [&](double E) {
      const double r = probe(with_energy(tmpl, l, E), opts).ratio;
      return r > 0.0 ? -std::log(r) : 1e300;
    };
    boost::uintmax_t it = 100;
    const auto [E_peak, val] = boost::math::tools::brent_find_minima(neg_log_ratio, lo, hi, 40, it);

    SpectrumEntry e;
    e.n = n;
    e.l = l;
    e.energy = {E_peak, -0.5 * Gamma_E};
    e.method = Method::ResonanceScan;
    e.residual = std::abs(E_peak - E_q) / std::abs(E_q);
    e.node_count = n;
    std::ostringstream note;
    note << kOutgoingNote << "; peak ratio=" << std::exp(-val) << "; W=" << gw.W
         << (gw.barrier ? "" : " (no classical barrier at this energy)");
    e.note = note.str();
    scan.entries.push_back(e);
  };

  std::function<void(double, double, int, int, int)> split = [&](double a, double b, int ca,
                                                                 int cb, int depth) {
    if (cb - ca == 1) {
      refine(a, b, ca);
      return;
    }
    if (depth > 60) return;
    const double m = 0.5 * (a + b);
    const ResonanceProbe pm = probe(with_energy(tmpl, l, m), opts);
    if (!pm.barrier) return;
    if (pm.count > ca) split(a, m, ca, pm.count, depth + 1);
    if (cb > pm.count) split(m, b, pm.count, cb, depth + 1);
  };

  for (int i = 0; i + 1 < n_grid; ++i) {
    if (!probes[i].barrier || !probes[i + 1].barrier) continue;
    if (probes[i + 1].count > probes[i].count) {
      split(Es[i], Es[i + 1], probes[i].count, probes[i + 1].count, 0);
    }
  }
  if (scan.entries.empty()) scan.warnings.push_back("no resonance peak found in the window");
  return scan;
}

}  // namespace dsatom
