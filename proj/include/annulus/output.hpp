#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace annulus {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr int kSchema = 1;

/// 17 significant digits, shortest exponent form, independent of the locale.
std::string format_double(double v);

/// Parses "a", "bi", "a+bi" or "a-bi" (optional leading sign, no spaces).
/// Throws DomainError on anything else.
std::complex<double> parse_complex(std::string_view text);

std::string format_complex(std::complex<double> z);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;  // CSV comment lines
};

enum class Format { csv, json };

/// Throws DomainError unless the name is "csv" or "json".
Format parse_format(std::string_view name);

/// "# annulus-metrics v<version> schema=<n>", "# key=value" lines, header, rows.
void write_csv(std::ostream& out, const Table& t);

/// Array of row objects keyed by column name; non-finite numbers become null.
void write_json(std::ostream& out, const Table& t);

void write_table(std::ostream& out, const Table& t, Format f);

}  // namespace annulus
