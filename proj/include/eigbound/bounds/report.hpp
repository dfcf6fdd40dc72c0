#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eigbound/bounds/enclosure.hpp"

namespace eigbound::bounds {

enum class Rounding { Nearest, Down, Up };
enum class TableFormat { Csv, Markdown };

inline constexpr int kSignificantDigits = 12;

/// Decimal text with 12 significant digits. Down/Up round the exact binary
/// value toward −∞/+∞ so the printed number stays a valid bound.
std::string format_number(double value, Rounding rounding = Rounding::Nearest);

/// Header `level,h_max,k,lambda_cr,alpha,lower,upper,exact,width`.
inline constexpr const char* kEnclosureCsvHeader = "level,h_max,k,lambda_cr,alpha,lower,upper,exact,width";

/// Plain table with a header row; markdown output mirrors the CSV cells.
void write_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows, TableFormat format);

void write_enclosures(std::ostream& out, const std::vector<EnclosureRow>& rows, TableFormat format);

}  // namespace eigbound::bounds
