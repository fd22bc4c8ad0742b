#include "annulus/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "annulus/errors.hpp"

namespace annulus {

namespace {

bool parse_real(std::string_view s, std::size_t& pos, double& out) {
  const char* first = s.data() + pos;
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') {
    ++first;  // from_chars rejects a leading '+'
    if (first != last && *first == '-') return false;
  }
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr == first) return false;
  pos = static_cast<std::size_t>(res.ptr - s.data());
  return true;
}

void csv_field(std::ostream& out, std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char ch : s) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

void json_string(std::ostream& out, std::string_view s) {
  out << '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\t': out << "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out << buf;
        } else {
          out << ch;
        }
    }
  }
  out << '"';
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::complex<double> parse_complex(std::string_view text) {
  const auto fail = [&]() -> std::complex<double> {
    throw DomainError("cannot parse complex number '" + std::string(text) + "', expected a+bi");
  };
  std::size_t pos = 0;
  double a = 0.0;
  if (!parse_real(text, pos, a)) {
    // Bare "i", "+i" or "-i".
    if (text == "i" || text == "+i") return {0.0, 1.0};
    if (text == "-i") return {0.0, -1.0};
    return fail();
  }
  if (pos == text.size()) return {a, 0.0};
  if (text[pos] == 'i' && pos + 1 == text.size()) return {0.0, a};
  if (text[pos] != '+' && text[pos] != '-') return fail();
  double b = 0.0;
  const std::size_t sign_pos = pos;
  if (!parse_real(text, pos, b)) {
    if (text.substr(sign_pos) == "+i") return {a, 1.0};
    if (text.substr(sign_pos) == "-i") return {a, -1.0};
    return fail();
  }
  if (pos + 1 != text.size() || text[pos] != 'i') return fail();
  return {a, b};
}

std::string format_complex(std::complex<double> z) {
  std::string s = format_double(z.real());
  const double b = z.imag();
  s += (std::signbit(b) ? "-" : "+") + format_double(std::abs(b)) + "i";
  return s;
}

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw DomainError("output format must be csv or json");
}

void write_csv(std::ostream& out, const Table& t) {
  out << "# annulus-metrics v" << kVersion << " schema=" << kSchema << '\n';
  for (const auto& [k, v] : t.metadata) out << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out << ',';
    csv_field(out, t.columns[i]);
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& c) {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, double>) out << format_double(c);
            else if constexpr (std::is_same_v<C, long long>) out << c;
            else csv_field(out, c);
          },
          row[i]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& t) {
  out << "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << (r ? ",\n  {" : "\n  {");
    const auto& row = t.rows[r];
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
      if (i) out << ", ";
      json_string(out, t.columns[i]);
      out << ": ";
      std::visit(
          [&](const auto& c) {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, double>) {
              if (std::isfinite(c)) out << format_double(c);
              else out << "null";
            } else if constexpr (std::is_same_v<C, long long>) {
              out << c;
            } else {
              json_string(out, c);
            }
          },
          row[i]);
    }
    out << "}";
  }
  out << (t.rows.empty() ? "]\n" : "\n]\n");
}

void write_table(std::ostream& out, const Table& t, Format f) {
  if (f == Format::csv) write_csv(out, t);
  else write_json(out, t);
}

}  // namespace annulus
