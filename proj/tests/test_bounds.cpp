#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "eigbound/bounds.hpp"
#include "eigbound/error.hpp"
#include "eigbound/fem.hpp"
#include "eigbound/framework/hilbert_triple.hpp"
#include "eigbound/mesh.hpp"
#include "eigbound/random.hpp"

using namespace eigbound;
using namespace eigbound::bounds;
using mesh::structured_rectangle;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an eigbound::Error");
  return ErrorCode::InvalidArgument;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(' ');
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(' ') - a + 1);
}

}  // namespace

TEST_CASE("analytic eigenvalues") {
  const auto one = exact_square_eigenvalues(1);
  CHECK(one.size() == 1);
  CHECK(one[0] == doctest::Approx(19.73921).epsilon(1e-6));
  const auto four = exact_square_eigenvalues(4);
  CHECK(four == std::vector<double>{2 * kPi2, 5 * kPi2, 5 * kPi2, 8 * kPi2});
  const auto six = exact_square_eigenvalues(6);
  CHECK(six[4] == 10 * kPi2);
  CHECK(six[5] == 10 * kPi2);

  const auto rect = exact_rectangle_eigenvalues(2.0, 1.0, 3);
  CHECK(rect[0] == doctest::Approx(1.25 * kPi2));
  CHECK(rect[1] == doctest::Approx(2.0 * kPi2));
  CHECK(rect[2] == doctest::Approx(3.25 * kPi2));
  CHECK(code_of([] { exact_square_eigenvalues(0); }) == ErrorCode::InvalidArgument);

  CHECK(analytic_eigenvalues(structured_rectangle(3, 3, 1.0, 1.0), 2) == exact_square_eigenvalues(2));
  const auto r = analytic_eigenvalues(structured_rectangle(4, 2, 2.0, 1.0), 3);
  REQUIRE(r.has_value());
  CHECK((*r)[0] == doctest::Approx(1.25 * kPi2));

  // L-shape: the 2×2 square without its upper-right cell.
  const auto grid = structured_rectangle(2, 2, 1.0, 1.0);
  std::vector<mesh::Triangle> l_shape(grid.triangles().begin(), grid.triangles().begin() + 6);
  std::vector<mesh::Point> l_vertices(grid.vertices().begin(), grid.vertices().end() - 1);
  CHECK_FALSE(analytic_eigenvalues(mesh::TriangleMesh(l_vertices, l_shape), 1).has_value());
}

TEST_CASE("enclose the first three eigenvalues on the 16x16 square") {
  const auto m = structured_rectangle(16, 16, 1.0, 1.0);
  const auto rows = enclose(m, 3);
  REQUIRE(rows.size() == 3);
  const double exact[] = {2 * kPi2, 5 * kPi2, 5 * kPi2};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& r = rows[i];
    CHECK(r.k == static_cast<int>(i) + 1);
    REQUIRE(r.exact.has_value());
    CHECK(*r.exact == exact[i]);
    CHECK(r.contains_exact());
    CHECK(r.lower < r.lambda_nc);
    CHECK(r.lower <= r.upper);
    CHECK(r.width == r.upper - r.lower);
    CHECK(r.alpha == fem::alpha_for_mesh(m, fem::default_kappa()));
    CHECK(r.lower == framework::lower_bound_transform(r.lambda_nc, r.alpha));
  }
}

TEST_CASE("fixed alpha") {
  const auto m = structured_rectangle(4, 4, 1.0, 1.0);
  EncloseOptions half;
  half.alpha = AlphaMode::fixed_value(0.5);
  const auto rows = enclose(m, 1, half);
  CHECK(rows[0].alpha == 0.5);
  CHECK(rows[0].lower == rows[0].lambda_nc / (1.0 + 0.25 * rows[0].lambda_nc));

  EncloseOptions zero;
  zero.alpha = AlphaMode::fixed_value(0.0);
  CHECK(code_of([&] { enclose(m, 1, zero); }) == ErrorCode::AlphaNonpositive);
  EncloseOptions negative;
  negative.alpha = AlphaMode::fixed_value(-1.0);
  negative.allow_zero_alpha = true;
  CHECK(code_of([&] { enclose(m, 1, negative); }) == ErrorCode::AlphaNonpositive);

  // Both spaces conforming with α = 0: the transform is the identity.
  zero.allow_zero_alpha = true;
  zero.lower_space = fem::ElementKind::P1Conforming;
  const auto conforming = enclose(m, 2, zero);
  for (const auto& r : conforming) {
    CHECK(r.lower == r.lambda_nc);
    CHECK(r.lambda_nc == r.upper);
    CHECK(r.width == 0.0);
  }
}

TEST_CASE("enclose rejects counts beyond the coarse space") {
  const auto m = structured_rectangle(2, 2, 1.0, 1.0);
  CHECK(code_of([&] { enclose(m, 5); }) == ErrorCode::CountExceedsOrder);
  CHECK(code_of([&] { enclose(m, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("convergence study on the square") {
  const auto table = convergence_study(SquareDomain{4}, 3, 2);
  REQUIRE(table.rows.size() == 6);
  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    const auto& a = table.rows[i];
    const auto& b = table.rows[i + 1];
    CHECK((a.level < b.level || (a.level == b.level && a.k < b.k)));
  }
  for (int level = 0; level < 3; ++level)
    for (int k = 1; k <= 2; ++k) CHECK(table.row(level, k).contains_exact());
  CHECK(table.row(1, 1).width < table.row(0, 1).width);
  CHECK(table.row(2, 1).width < table.row(1, 1).width);
  CHECK(table.row(1, 1).width >= 3.0 * table.row(2, 1).width);
  CHECK(table.row(2, 1).h_max == 0.5 * table.row(1, 1).h_max);
  REQUIRE(table.observed_rates.size() == 2);
  REQUIRE(table.observed_rates[0].size() == 2);
  CHECK(table.observed_rates[0][1] == std::log2(table.row(1, 1).width / table.row(2, 1).width));
  CHECK(table.reoriented == 0);
  CHECK_THROWS_AS(table.row(3, 1), Error);
  CHECK(code_of([] { convergence_study(SquareDomain{4}, 0, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("convergence study from a mesh file") {
  // 2×1 rectangle, 4×2 cells; the last triangle is written clockwise.
  const auto path = std::filesystem::temp_directory_path() / "eigbound_rect.mesh";
  {
    std::ostringstream text;
    mesh::write_mesh(structured_rectangle(4, 2, 2.0, 1.0), text);
    std::string body = text.str();
    body.pop_back();
    const auto last = body.rfind('\n') + 1;
    auto idx = split(body.substr(last), ' ');
    std::ofstream out(path);
    out << body.substr(0, last) << idx[0] << ' ' << idx[2] << ' ' << idx[1] << '\n';
  }
  const auto table = convergence_study(MeshFileDomain{path}, 3, 1);
  std::filesystem::remove(path);
  CHECK(table.reoriented == 1);
  for (const auto& r : table.rows) {
    REQUIRE(r.exact.has_value());
    CHECK(*r.exact == doctest::Approx(1.25 * kPi2));
  }
  CHECK(table.row(2, 1).contains_exact());
  CHECK_THROWS_AS(convergence_study(MeshFileDomain{"no/such/file.mesh"}, 2, 1), ParseError);
}

TEST_CASE("directed decimal rounding") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(0.5, Rounding::Down) == "0.5");
  CHECK(format_number(0.5, Rounding::Up) == "0.5");
  CHECK(format_number(32.0) == "32");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(1.0 / 3.0, Rounding::Down) == "0.333333333333");
  CHECK(format_number(1.0 / 3.0, Rounding::Up) == "0.333333333334");
  CHECK(format_number(-1.0 / 3.0, Rounding::Down) == "-0.333333333334");
  CHECK(format_number(-1.0 / 3.0, Rounding::Up) == "-0.333333333333");
  CHECK(format_number(2.0 / 3.0) == "0.666666666667");
  CHECK(format_number(2 * kPi2) == "19.7392088022");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
  CHECK(format_number(999999999999.9) == "1e+12");

  SeededRng rng(4);
  for (int s = 0; s < 500; ++s) {
    const double v = std::ldexp(rng.gaussian(), static_cast<int>(rng.integer(-30, 30)));
    const double down = std::strtod(format_number(v, Rounding::Down).c_str(), nullptr);
    const double up = std::strtod(format_number(v, Rounding::Up).c_str(), nullptr);
    const double nearest = std::strtod(format_number(v).c_str(), nullptr);
    CHECK(down <= v);
    CHECK(up >= v);
    // Half a unit in the twelfth significant digit.
    CHECK(std::abs(nearest - v) <= 5e-12 * std::abs(v));
  }
}

TEST_CASE("enclosure tables") {
  const auto m = structured_rectangle(4, 4, 1.0, 1.0);
  auto rows = enclose(m, 2);
  std::ostringstream csv;
  write_enclosures(csv, rows, TableFormat::Csv);
  std::istringstream lines(csv.str());
  std::string header, line;
  std::getline(lines, header);
  CHECK(header == kEnclosureCsvHeader);
  std::vector<std::vector<std::string>> csv_cells;
  while (std::getline(lines, line)) csv_cells.push_back(split(line, ','));
  REQUIRE(csv_cells.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    REQUIRE(csv_cells[i].size() == 9);
    CHECK(std::strtod(csv_cells[i][5].c_str(), nullptr) <= rows[i].lower);
    CHECK(std::strtod(csv_cells[i][6].c_str(), nullptr) >= rows[i].upper);
    CHECK(std::strtod(csv_cells[i][4].c_str(), nullptr) >= rows[i].alpha);
    CHECK(std::strtod(csv_cells[i][8].c_str(), nullptr) >= rows[i].width);
  }

  std::ostringstream md;
  write_enclosures(md, rows, TableFormat::Markdown);
  std::istringstream md_lines(md.str());
  std::getline(md_lines, line);
  std::getline(md_lines, line);
  CHECK(line == "|---|---|---|---|---|---|---|---|---|");
  for (std::size_t i = 0; i < 2; ++i) {
    std::getline(md_lines, line);
    auto cells = split(line, '|');
    cells.erase(cells.begin());
    REQUIRE(cells.size() == 9);
    for (std::size_t c = 0; c < 9; ++c) CHECK(trim(cells[c]) == csv_cells[i][c]);
  }

  rows[0].exact.reset();
  std::ostringstream unknown;
  write_enclosures(unknown, {rows[0]}, TableFormat::Csv);
  const auto cells = split(unknown.str().substr(unknown.str().find('\n') + 1), ',');
  CHECK(cells[7].empty());
}
