#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

namespace dsatom::cli {
namespace {

double parse_number(const std::string& s, const std::string& name) {
  double v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && *b == ' ') ++b;
  while (e > b && e[-1] == ' ') --e;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v)) {
    throw ConfigError("bad number '" + s + "' for " + name);
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

Range parse_range(const std::string& text, const std::string& name) {
  if (text.empty()) throw ConfigError("empty range for " + name);
  Range r;
  if (text.find(':') != std::string::npos) {
    auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) {
      throw ConfigError("range for " + name + " must be lo:hi or lo:hi:count");
    }
    r.lo = parse_number(parts[0], name);
    r.hi = parse_number(parts[1], name);
    if (r.hi < r.lo) throw ConfigError("range for " + name + " has hi < lo");
    int count = 2;
    if (parts.size() == 3) {
      const double c = parse_number(parts[2], name);
      if (c < 1 || c != std::floor(c)) throw ConfigError("range count for " + name + " must be >= 1");
      count = static_cast<int>(c);
    }
    if (count == 1 || r.hi == r.lo) {
      r.values = {r.lo};
    } else {
      for (int i = 0; i < count; ++i) {
        r.values.push_back(i + 1 == count ? r.hi : r.lo + (r.hi - r.lo) * i / (count - 1));
      }
    }
    return r;
  }
  for (const auto& p : split(text, ',')) r.values.push_back(parse_number(p, name));
  r.lo = r.hi = r.values.front();
  for (double v : r.values) {
    r.lo = std::min(r.lo, v);
    r.hi = std::max(r.hi, v);
  }
  return r;
}

std::vector<int> parse_int_range(const std::string& text, const std::string& name) {
  std::vector<int> out;
  for (double v : parse_range(text, name).values) {
    if (v != std::floor(v) || v < 0) throw ConfigError(name + " values must be integers >= 0");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::uint64_t row_seed(std::uint64_t seed, std::size_t row) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(row >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (std::uint64_t(words[0]) << 32) | words[1];
}

}  // namespace dsatom::cli
