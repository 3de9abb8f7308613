#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsatom::cli {

/// Invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sweep axis written as "v", "v1,v2,...", "lo:hi" or "lo:hi:count".
struct Range {
  std::vector<double> values;  // grid values
  double lo = 0, hi = 0;       // bounds used for random draws
};

Range parse_range(const std::string& text, const std::string& name);
std::vector<int> parse_int_range(const std::string& text, const std::string& name);

struct CommonOptions {
  std::string geometry = "ds";
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct ClassifyOptions {
  std::string epsilon = "0.99";
  std::string L = "0.5";
  std::string e2 = "0.1";
  std::string M = "1";
  std::string rho = "100";
  int random = 0;  // > 0: draw this many points uniformly inside the ranges
};

struct SpectrumOptions {
  std::string methods = "exact";
  std::string M = "2";       // M rho
  std::string alpha = "0";
  double rho = 1.0;          // used by the wkb method
  std::string l = "0";
  std::string n = "0:3:4";
  std::string window;        // "E_lo:E_hi" for shooting / resonance
  int grid = 60;
};

struct TunnelOptions {
  std::string rho = "100,300,1000";
  double M = 1.0;
  double e2 = 0.1;
  int n = 0;
  int l = 0;
};

struct HeunEvalOptions {
  double E = 1.0;
  double alpha = 0.1;
  double M = 2.0;
  int l = 0;
  std::string branch = "++";
  std::string x = "0:0.6:7";
};

struct DiracChartOptions {
  double epsilon = 1.0;
  double e2 = 0.1;
  double M = 2.0;
  double nu = 1.0;
  int parity = 1;
  std::string component = "F";
  bool integrate = false;
  double y_start = 0.1;
  double y_end = 0.5;
  int samples = 5;
};

/// Deterministic per-row generator seed, independent of the job count.
std::uint64_t row_seed(std::uint64_t seed, std::size_t row);

}  // namespace dsatom::cli
