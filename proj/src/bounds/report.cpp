#include "eigbound/bounds/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace eigbound::bounds {

namespace {

// Exact decimal expansion of |value|: glibc prints every digit of the binary
// value when asked for enough precision (a double needs at most 767).
void exact_digits(double magnitude, std::string& digits, int& exponent) {
  char buf[900];
  std::snprintf(buf, sizeof buf, "%.800e", magnitude);
  std::string text(buf);
  const auto e = text.find('e');
  exponent = std::atoi(text.c_str() + e + 1);
  digits.clear();
  for (std::size_t i = 0; i < e; ++i)
    if (text[i] != '.') digits.push_back(text[i]);
}

bool any_nonzero(const std::string& s, std::size_t from) {
  return s.find_first_not_of('0', from) != std::string::npos;
}

// Adds one unit in the last place of a decimal digit string.
void increment(std::string& digits, int& exponent) {
  int i = static_cast<int>(digits.size()) - 1;
  while (i >= 0 && digits[static_cast<std::size_t>(i)] == '9') digits[static_cast<std::size_t>(i--)] = '0';
  if (i >= 0) {
    ++digits[static_cast<std::size_t>(i)];
  } else {
    digits.insert(digits.begin(), '1');
    digits.pop_back();
    ++exponent;
  }
}

std::string render(bool negative, std::string digits, int exponent) {
  // Strip trailing zeros of the significand.
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = negative ? "-" : "";
  const int n = static_cast<int>(digits.size());
  if (exponent < -5 || exponent >= kSignificantDigits) {
    out += digits[0];
    if (n > 1) out += "." + digits.substr(1);
    char exp_buf[16];
    std::snprintf(exp_buf, sizeof exp_buf, "e%+03d", exponent);
    out += exp_buf;
  } else if (exponent < 0) {
    out += "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
  } else if (n <= exponent + 1) {
    out += digits + std::string(static_cast<std::size_t>(exponent + 1 - n), '0');
  } else {
    out += digits.substr(0, static_cast<std::size_t>(exponent + 1)) + "." +
           digits.substr(static_cast<std::size_t>(exponent + 1));
  }
  return out;
}

}  // namespace

std::string format_number(double value, Rounding rounding) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  const bool negative = std::signbit(value);
  std::string digits;
  int exponent = 0;
  exact_digits(std::abs(value), digits, exponent);
  const auto keep = static_cast<std::size_t>(kSignificantDigits);
  const bool inexact = any_nonzero(digits, keep);
  std::string head = digits.substr(0, keep);

  bool away_from_zero = false;
  switch (rounding) {
    case Rounding::Nearest: {
      const char next = digits[keep];
      const bool beyond = any_nonzero(digits, keep + 1);
      away_from_zero = next > '5' || (next == '5' && (beyond || (head.back() - '0') % 2 == 1));
      break;
    }
    case Rounding::Down: away_from_zero = negative && inexact; break;
    case Rounding::Up: away_from_zero = !negative && inexact; break;
  }
  if (away_from_zero) increment(head, exponent);
  return render(negative, head, exponent);
}

void write_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows, TableFormat format) {
  auto emit = [&](const std::vector<std::string>& cells) {
    if (format == TableFormat::Csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    } else {
      out << '|';
      for (const auto& c : cells) out << ' ' << c << " |";
    }
    out << '\n';
  };
  emit(header);
  if (format == TableFormat::Markdown) {
    out << '|';
    for (std::size_t i = 0; i < header.size(); ++i) out << "---|";
    out << '\n';
  }
  for (const auto& r : rows) emit(r);
}

void write_enclosures(std::ostream& out, const std::vector<EnclosureRow>& rows, TableFormat format) {
  const std::vector<std::string> header{"level", "h_max", "k",     "lambda_cr", "alpha",
                                        "lower", "upper", "exact", "width"};
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const auto& r : rows)
    cells.push_back({std::to_string(r.level), format_number(r.h_max), std::to_string(r.k),
                     format_number(r.lambda_nc), format_number(r.alpha, Rounding::Up),
                     format_number(r.lower, Rounding::Down), format_number(r.upper, Rounding::Up),
                     r.exact ? format_number(*r.exact) : std::string(),
                     format_number(r.width, Rounding::Up)});
  write_table(out, header, cells, format);
}

}  // namespace eigbound::bounds
