#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace dsatom::cli {

using Cell = std::variant<std::monostate, std::string, double, std::int64_t>;
using Row = std::vector<Cell>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  std::vector<std::string> warnings;
  bool any_failed = false;
};

/// 17 significant digits, scientific, locale independent.
std::string format_double(double v);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

}  // namespace dsatom::cli
