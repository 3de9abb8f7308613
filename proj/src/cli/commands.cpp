#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <thread>

#include "dsatom/classical.hpp"
#include "dsatom/dirac.hpp"
#include "dsatom/errors.hpp"
#include "dsatom/heun.hpp"
#include "dsatom/spectral.hpp"
#include "dsatom/wkb.hpp"

namespace dsatom::cli {
namespace {

using Rows = std::vector<Row>;

// Runs task(i) for i in [0, n) on a worker pool and returns the results in
// input order.
std::vector<Rows> run_ordered(std::size_t n, int jobs, const std::function<Rows(std::size_t)>& task) {
  std::vector<Rows> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) out[i] = task(i);
  };
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  return out;
}

void collect(Table& t, std::vector<Rows>&& parts, std::size_t error_col) {
  for (auto& part : parts) {
    for (auto& row : part) {
      if (error_col < row.size() && std::holds_alternative<std::string>(row[error_col]) &&
          !std::get<std::string>(row[error_col]).empty()) {
        t.any_failed = true;
      }
      t.rows.push_back(std::move(row));
    }
  }
}

Geometry geometry_of(const CommonOptions& c) {
  try {
    return parse_geometry(c.geometry);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

std::string error_text(const std::exception& e) {
  std::string s = e.what();
  return s.empty() ? "error" : s;
}

}  // namespace

Table cmd_classify(const CommonOptions& common, const ClassifyOptions& opts) {
  const Geometry g = geometry_of(common);
  const Range eps = parse_range(opts.epsilon, "epsilon"), L = parse_range(opts.L, "L"),
              e2 = parse_range(opts.e2, "e2"), M = parse_range(opts.M, "M"),
              rho = parse_range(opts.rho, "rho");
  if (opts.random < 0) throw ConfigError("random must be >= 0");

  struct Point {
    double eps, L, e2, M, rho;
  };
  std::vector<Point> points;
  if (opts.random > 0) {
    for (int i = 0; i < opts.random; ++i) {
      std::mt19937_64 rng(row_seed(common.seed, static_cast<std::size_t>(i)));
      auto draw = [&](const Range& r) {
        return r.lo == r.hi ? r.lo : std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
      };
      const double a = draw(eps), b = draw(L), c = draw(e2), d = draw(M), e = draw(rho);
      points.push_back({a, b, c, d, e});
    }
  } else {
    for (double a : eps.values)
      for (double b : L.values)
        for (double c : e2.values)
          for (double d : M.values)
            for (double e : rho.values) points.push_back({a, b, c, d, e});
  }

  Table t;
  t.command = "classify";
  t.columns = {"geometry", "epsilon", "L", "e2", "M", "rho"};
  for (int k = 1; k <= 4; ++k) {
    t.columns.push_back("root" + std::to_string(k) + "_re");
    t.columns.push_back("root" + std::to_string(k) + "_im");
  }
  for (const char* c : {"sign_pattern", "topology", "error"}) t.columns.emplace_back(c);
  const std::size_t error_col = t.columns.size() - 1;

  auto parts = run_ordered(points.size(), common.jobs, [&](std::size_t i) {
    const Point& p = points[i];
    Row row{std::string(to_string(g)), p.eps, p.L, p.e2, p.M, p.rho};
    try {
      const auto rep = classify_turning_points(make_classical(g, p.eps, p.L, p.e2, p.M, p.rho));
      for (const auto& r : rep.roots.roots) {
        row.emplace_back(r.real());
        row.emplace_back(r.imag());
      }
      row.emplace_back(rep.roots.sign_pattern);
      row.emplace_back(std::string(to_string(rep.roots.topology)));
      row.emplace_back(std::string());
    } catch (const std::exception& e) {
      row.resize(error_col);
      row.emplace_back(error_text(e));
    }
    return Rows{row};
  });
  collect(t, std::move(parts), error_col);
  return t;
}

Table cmd_spectrum(const CommonOptions& common, const SpectrumOptions& opts) {
  const Geometry g = geometry_of(common);
  std::vector<Method> methods;
  {
    std::string s = opts.methods;
    std::size_t start = 0;
    for (;;) {
      const auto pos = s.find(',', start);
      const std::string name = s.substr(start, pos - start);
      bool found = false;
      for (Method m : {Method::Exact, Method::WKB, Method::Shooting, Method::ResonanceScan,
                       Method::ComplexHeun}) {
        if (to_string(m) == name) {
          methods.push_back(m);
          found = true;
        }
      }
      if (!found) throw ConfigError("unknown spectrum method '" + name + "'");
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  }
  const auto Ms = parse_range(opts.M, "M").values;
  const auto alphas = parse_range(opts.alpha, "alpha").values;
  const auto ls = parse_int_range(opts.l, "l");
  const auto ns = parse_int_range(opts.n, "n");
  if (!(opts.rho > 0)) throw ConfigError("rho must be > 0");
  std::optional<Range> window;
  if (!opts.window.empty()) window = parse_range(opts.window, "window");

  struct Task {
    Method method;
    double M, alpha;
    int l;
  };
  std::vector<Task> tasks;
  for (Method m : methods)
    for (double M : Ms)
      for (double a : alphas)
        for (int l : ls) tasks.push_back({m, M, a, l});

  Table t;
  t.command = "spectrum";
  t.columns = {"method", "M", "alpha", "n", "l", "energy_re", "energy_im", "residual", "note", "error"};
  const std::size_t error_col = t.columns.size() - 1;

  auto parts = run_ordered(tasks.size(), common.jobs, [&](std::size_t i) {
    const Task& task = tasks[i];
    const std::string mname(to_string(task.method));
    Rows rows;
    auto emit = [&](int n, cplx E, double residual, const std::string& note) {
      rows.push_back(Row{mname, task.M, task.alpha, std::int64_t(n), std::int64_t(task.l), E.real(),
                         E.imag(), residual, note, std::string()});
    };
    auto fail = [&](std::int64_t n, const std::string& msg) {
      rows.push_back(Row{mname, task.M, task.alpha, n, std::int64_t(task.l), std::monostate{},
                         std::monostate{}, std::monostate{}, std::string(), msg});
    };
    try {
      const PhysicalParams tmpl = make_params(g, 0.0, task.alpha, task.M, task.l, opts.rho);
      switch (task.method) {
        case Method::Exact:
          if (g != Geometry::AntiDeSitter || task.alpha != 0.0) {
            throw DomainError("exact spectrum is known only for ads with alpha = 0");
          }
          for (int n : ns) emit(n, ads_free_spectrum(n, task.l, task.M), 0.0, "");
          break;
        case Method::WKB:
          for (int n : ns) {
            try {
              const auto cp = make_classical(g, 0.0, task.l + 0.5, task.alpha, task.M / opts.rho, opts.rho);
              const auto lvl = wkb_energy(n, task.l, cp);
              auto at = cp;
              at.epsilon = lvl.eps;
              emit(n, lvl.eps * opts.rho, quantization_residual(at, n), "");
            } catch (const std::exception& e) {
              fail(n, error_text(e));
            }
          }
          break;
        case Method::ComplexHeun:
          for (int n : ns) {
            for (Branch b : {kPlusPlus, kMinusMinus}) {
              emit(n, ds_complex_levels(n, task.l, tmpl, b), 0.0, "branch " + branch_label(b));
            }
          }
          break;
        case Method::Shooting:
        case Method::ResonanceScan: {
          if (!window) throw DomainError("method needs --window E_lo:E_hi");
          if (window->hi <= window->lo) break;  // empty window
          SpectrumScan scan;
          if (task.method == Method::Shooting) {
            scan = ads_bound_states(tmpl, task.l, window->lo, window->hi);
          } else {
            ResonanceOptions ro;
            ro.grid = opts.grid;
            scan = ds_resonance_scan(tmpl, task.l, window->lo, window->hi, ro);
          }
          for (const auto& e : scan.entries) emit(e.n, e.energy, e.residual, e.note);
          break;
        }
      }
    } catch (const std::exception& e) {
      fail(-1, error_text(e));
    }
    return rows;
  });
  collect(t, std::move(parts), error_col);
  return t;
}

Table cmd_tunnel(const CommonOptions& common, const TunnelOptions& opts) {
  const Geometry g = geometry_of(common);
  if (g != Geometry::DeSitter) throw ConfigError("tunnel needs --geometry ds");
  const auto rhos = parse_range(opts.rho, "rho").values;
  if (opts.n < 0 || opts.l < 0) throw ConfigError("n and l must be >= 0");

  Table t;
  t.command = "tunnel";
  t.columns = {"rho", "epsilon", "W", "ln_W", "rough_estimate", "ratio", "Gamma", "error"};
  const std::size_t error_col = t.columns.size() - 1;
  auto parts = run_ordered(rhos.size(), common.jobs, [&](std::size_t i) {
    const double rho = rhos[i];
    Row row{rho};
    try {
      auto cp = make_classical(g, 0.0, opts.l + 0.5, opts.e2, opts.M, rho);
      cp.epsilon = wkb_energy_dS(opts.n, opts.l, cp).eps;
      const auto tr = tunneling_probability(cp);
      const auto gw = gamow_width(cp);
      row.insert(row.end(), {cp.epsilon, tr.W, tr.log_W, tr.rough_log_W, tr.log_W / tr.rough_log_W,
                             gw.Gamma, std::string()});
    } catch (const std::exception& e) {
      row.resize(error_col, std::monostate{});
      row.emplace_back(error_text(e));
    }
    return Rows{row};
  });
  collect(t, std::move(parts), error_col);
  return t;
}

Table cmd_heun_eval(const CommonOptions& common, const HeunEvalOptions& opts) {
  const Geometry g = geometry_of(common);
  if (opts.branch.size() != 2 || opts.branch.find_first_not_of("+-") != std::string::npos) {
    throw ConfigError("branch must be one of ++, +-, -+, --");
  }
  const Branch branch{opts.branch[0] == '+' ? 1 : -1, opts.branch[1] == '+' ? 1 : -1};
  const auto xs = parse_range(opts.x, "x").values;
  HeunParams hp, flipped;
  try {
    const auto p = make_params(g, opts.E, opts.alpha, opts.M, opts.l);
    hp = map_heun(p, branch);
    flipped = map_heun(p, Branch{-branch.sB, -branch.sC});
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  Table t;
  t.command = "heun-eval";
  t.columns = {"X", "H_re", "H_im", "f_re", "f_im", "residual", "conj_dev", "error"};
  const std::size_t error_col = t.columns.size() - 1;
  auto parts = run_ordered(xs.size(), common.jobs, [&](std::size_t i) {
    const double X = xs[i];
    Row row{X};
    try {
      const cplx x = hp.imaginary_variable ? cplx(0.0, X) : cplx(X, 0.0);
      const auto v = heun_local_series(hp, x);
      row.emplace_back(v.H.real());
      row.emplace_back(v.H.imag());
      if (X > 0.0) {
        const auto f = radial_at(hp, X);
        row.emplace_back(f.f.real());
        row.emplace_back(f.f.imag());
        const cplx a = hp.a;
        const cplx P = hp.gamma / x + hp.delta / (x - 1.0) + hp.eps / (x - a);
        const cplx Qc = (hp.lambda * hp.beta * x - hp.q) / (x * (x - 1.0) * (x - a));
        const double scale = std::abs(v.d2H) + std::abs(P * v.dH) + std::abs(Qc * v.H);
        row.emplace_back(std::abs(v.d2H + P * v.dH + Qc * v.H) / scale);
      } else {
        row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}});
      }
      if (g == Geometry::DeSitter) {
        row.emplace_back(std::abs(heun_local_series(flipped, x).H - std::conj(v.H)));
      } else {
        row.emplace_back(std::monostate{});
      }
      row.emplace_back(std::string());
    } catch (const std::exception& e) {
      row.resize(error_col, std::monostate{});
      row.emplace_back(error_text(e));
    }
    return Rows{row};
  });
  collect(t, std::move(parts), error_col);
  return t;
}

Table cmd_dirac_chart(const CommonOptions& common, const DiracChartOptions& opts) {
  const Geometry g = geometry_of(common);
  if (opts.component != "F" && opts.component != "G") throw ConfigError("component must be F or G");
  if (opts.integrate && opts.samples < 2) throw ConfigError("samples must be >= 2");
  std::optional<FirstOrderSystem> sys;
  try {
    sys.emplace(build_system(make_dirac_params(g, opts.epsilon, opts.e2, opts.M, opts.nu, opts.parity)));
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  const auto chart = sys->chart(opts.component == "F" ? Component::F : Component::G);

  Table t;
  t.command = "dirac-chart";
  t.columns = {"kind", "label", "y_re", "y_im", "F_re", "F_im", "G_re", "G_im", "error"};
  t.warnings = chart.collisions;
  for (std::size_t i = 0; i < chart.points.size(); ++i) {
    const cplx p = chart.points[i];
    Row row{std::string("singular_point"), chart.labels[i]};
    if (is_infinity(p)) {
      row.insert(row.end(), {std::monostate{}, std::monostate{}});
    } else {
      row.insert(row.end(), {p.real(), p.imag()});
    }
    row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                           std::string()});
    t.rows.push_back(std::move(row));
  }
  if (opts.integrate) {
    std::vector<cplx> path;
    for (int k = 0; k < opts.samples; ++k) {
      path.emplace_back(opts.y_start + (opts.y_end - opts.y_start) * k / (opts.samples - 1));
    }
    try {
      // Leading local behaviour y^s along the regular direction.
      const cplx s = sys->indicial_exponent();
      const auto dir = sys->regular_direction();
      const cplx w = std::pow(cplx(opts.y_start), s);
      const auto sol = integrate_dirac(*sys, path, {dir[0] * w, dir[1] * w});
      for (std::size_t k = 0; k < sol.y.size(); ++k) {
        t.rows.push_back(Row{std::string("sample"), std::string(), sol.y[k].real(), sol.y[k].imag(),
                             sol.F[k].real(), sol.F[k].imag(), sol.G[k].real(), sol.G[k].imag(),
                             std::string()});
      }
    } catch (const std::exception& e) {
      t.rows.push_back(Row{std::string("sample"), std::string(), std::monostate{}, std::monostate{},
                           std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                           error_text(e)});
      t.any_failed = true;
    }
  }
  return t;
}

}  // namespace dsatom::cli
