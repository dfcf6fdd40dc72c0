#include "eigbound/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eigbound/bounds.hpp"
#include "eigbound/error.hpp"
#include "eigbound/fem.hpp"
#include "eigbound/framework.hpp"
#include "eigbound/mesh.hpp"
#include "eigbound/random.hpp"

namespace eigbound::cli {

namespace {

using bounds::format_number;
using bounds::Rounding;
using bounds::TableFormat;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SharedFlags {
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out_path;

  TableFormat table_format() const { return format == "md" ? TableFormat::Markdown : TableFormat::Csv; }
};

void add_shared_flags(CLI::App* cmd, SharedFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Seed for randomized components (default 0)");
  cmd->add_option("--format", flags.format, "Output format: csv or md (default csv)")
      ->check(CLI::IsMember({"csv", "md"}));
  cmd->add_option("--out", flags.out_path, "Write the table to this file instead of stdout");
}

struct MeshSource {
  int square = 0;
  std::string mesh_path;
  CLI::Option* square_opt = nullptr;
  CLI::Option* mesh_opt = nullptr;

  void add(CLI::App* cmd) {
    square_opt = cmd->add_option("--square", square, "Unit square, structured N x N cells");
    mesh_opt = cmd->add_option("--mesh", mesh_path, "Mesh file in eigmesh format");
    square_opt->excludes(mesh_opt);
  }

  void validate() const {
    if (square_opt->count() == 0 && mesh_opt->count() == 0)
      throw UsageError("one of --square or --mesh is required");
    if (square_opt->count() > 0 && square < 1) throw UsageError("--square must be >= 1");
  }

  bounds::Domain domain() const {
    if (square_opt->count() > 0) return bounds::SquareDomain{square};
    return bounds::MeshFileDomain{mesh_path};
  }
};

void emit(const SharedFlags& flags, const std::string& text, std::ostream& out) {
  if (flags.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(flags.out_path);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + flags.out_path + "'");
  file << text;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  SharedFlags shared;
  int trials = 200;
  int dim_max = 30;
};

struct TrialDims {
  Eigen::Index n, p, q;
};

TrialDims trial_dims(std::uint64_t instance_seed, int dim_max) {
  SeededRng rng(splitmix64(instance_seed));
  const auto n = static_cast<Eigen::Index>(rng.integer(2, dim_max));
  const auto p = static_cast<Eigen::Index>(rng.integer(1, n));
  const auto q = static_cast<Eigen::Index>(rng.integer(1, n));
  return {n, p, q};
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  if (args.trials < 1) throw UsageError("--trials must be >= 1");
  if (args.dim_max < 2) throw UsageError("--dim-max must be >= 2");

  constexpr Eigen::Index kChainDepth = 3;
  std::vector<std::vector<std::string>> cells;
  double worst_theorem = std::numeric_limits<double>::infinity();
  double worst_chain = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> failing;
  for (int trial = 0; trial < args.trials; ++trial) {
    const std::uint64_t instance_seed = splitmix64(args.shared.seed + static_cast<std::uint64_t>(trial));
    const TrialDims dims = trial_dims(instance_seed, args.dim_max);
    const auto triple = framework::random_instance(instance_seed, dims.n, dims.p, dims.q);
    const Eigen::Index k_max = std::min(framework::effective_dimension(triple, framework::Subspace::W),
                                        framework::effective_dimension(triple, framework::Subspace::V));
    const auto report = framework::verify_theorem(triple, k_max);
    bool chain_ok = true;
    double chain_margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 1; k <= std::min(kChainDepth, k_max); ++k) {
      const auto chain = framework::verify_maxmin_chain(triple, k, instance_seed);
      chain_ok = chain_ok && chain.holds();
      chain_margin = std::min(chain_margin, chain.worst_margin);
    }
    const bool ok = report.all_hold && chain_ok;
    if (!ok) failing.push_back(instance_seed);
    worst_theorem = std::min(worst_theorem, report.worst_margin);
    worst_chain = std::min(worst_chain, chain_margin);
    cells.push_back({std::to_string(trial), std::to_string(instance_seed), std::to_string(dims.n),
                     std::to_string(dims.p), std::to_string(dims.q), std::to_string(k_max),
                     format_number(report.alpha), format_number(report.worst_margin),
                     format_number(chain_margin), ok ? "hold" : "VIOLATED"});
  }

  std::ostringstream text;
  bounds::write_table(text,
                      {"trial", "seed", "n", "p", "q", "k_max", "alpha", "theorem_margin", "chain_margin",
                       "status"},
                      cells, args.shared.table_format());
  text << "# trials " << args.trials << ", violations " << failing.size() << '\n';
  text << "# worst theorem margin " << format_number(worst_theorem) << '\n';
  text << "# worst chain margin " << format_number(worst_chain) << '\n';
  for (auto s : failing) text << "# failing seed " << s << '\n';
  emit(args.shared, text.str(), out);
  if (!failing.empty()) {
    err << "verify: " << failing.size() << " instance(s) violate the bound; first failing seed "
        << failing.front() << '\n';
    return kFailure;
  }
  return kSuccess;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  SharedFlags shared;
  MeshSource source;
  std::string element = "cr";
  int count = 5;
};

mesh::TriangleMesh load_source(const MeshSource& source, std::ostream& err) {
  if (source.square_opt->count() > 0) return mesh::structured_rectangle(source.square, source.square, 1.0, 1.0);
  auto loaded = mesh::load_mesh(source.mesh_path);
  if (loaded.reoriented > 0)
    err << "warning: reoriented " << loaded.reoriented << " clockwise triangle(s)\n";
  return std::move(loaded.mesh);
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  args.source.validate();
  if (args.count < 1) throw UsageError("-k/--num-eigs must be >= 1");
  const auto kind = args.element == "p1" ? fem::ElementKind::P1Conforming : fem::ElementKind::CRNonconforming;
  const auto m = load_source(args.source, err);
  linalg::SolveOptions options;
  options.seed = args.shared.seed;
  const auto result = fem::solve_discrete_eigen(m, kind, args.count, options);
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i = 0; i < result.size(); ++i)
    cells.push_back({std::to_string(i + 1), format_number(result.values[i]), format_number(result.residuals[i])});
  std::ostringstream text;
  bounds::write_table(text, {"k", "eigenvalue", "residual"}, cells, args.shared.table_format());
  emit(args.shared, text.str(), out);
  return kSuccess;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  SharedFlags shared;
  MeshSource source;
  int levels = 3;
  int count = 5;
  std::string alpha = "auto";
  bool allow_zero_alpha = false;
  int kappa_depth = fem::kDefaultKappaDepth;
};

std::optional<double> parse_alpha(const BoundsArgs& args) {
  if (args.alpha == "auto") return std::nullopt;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(args.alpha, &used);
  } catch (const std::exception&) {
    throw UsageError("--alpha must be 'auto' or a real number");
  }
  if (used != args.alpha.size() || !std::isfinite(value))
    throw UsageError("--alpha must be 'auto' or a real number");
  if (value < 0.0) throw UsageError("--alpha must be >= 0");
  if (value == 0.0 && !args.allow_zero_alpha)
    throw UsageError("--alpha 0 asserts V inside W; add --allow-zero-alpha to force it");
  return value;
}

int cmd_bounds(const BoundsArgs& args, std::ostream& out, std::ostream& err) {
  args.source.validate();
  if (args.levels < 1) throw UsageError("--levels must be >= 1");
  if (args.count < 1) throw UsageError("-k/--num-eigs must be >= 1");
  if (args.kappa_depth < 2) throw UsageError("--kappa-depth must be >= 2");

  bounds::EncloseOptions options;
  options.alpha.fixed = parse_alpha(args);
  options.allow_zero_alpha = args.allow_zero_alpha;
  options.solve.seed = args.shared.seed;
  if (!options.alpha.fixed && args.kappa_depth != fem::kDefaultKappaDepth)
    options.kappa = fem::cr_interpolation_constant(args.kappa_depth, options.solve);

  const auto table = bounds::convergence_study(args.source.domain(), args.levels, args.count, options);
  if (table.reoriented > 0) err << "warning: reoriented " << table.reoriented << " clockwise triangle(s)\n";
  std::ostringstream text;
  bounds::write_enclosures(text, table.rows, args.shared.table_format());
  emit(args.shared, text.str(), out);

  int violations = 0;
  for (const auto& r : table.rows)
    if (!r.contains_exact()) {
      ++violations;
      err << "certification failure: level " << r.level << " k " << r.k << " exact "
          << format_number(*r.exact) << " outside [" << format_number(r.lower, Rounding::Down) << ", "
          << format_number(r.upper, Rounding::Up) << "]\n";
    }
  return violations == 0 ? kSuccess : kFailure;
}

// ---------------------------------------------------------------- kappa

struct KappaArgs {
  SharedFlags shared;
  int depth = fem::kDefaultKappaDepth;
};

int cmd_kappa(const KappaArgs& args, std::ostream& out, std::ostream&) {
  if (args.depth < 2) throw UsageError("--refine-depth must be >= 2");
  linalg::SolveOptions options;
  options.seed = args.shared.seed;
  const auto estimate = fem::cr_interpolation_constant(args.depth, options);
  const std::array<mesh::Point, 3> reference{mesh::Point{0, 0}, mesh::Point{1, 0}, mesh::Point{0, 1}};
  const double previous = 1.0 / std::sqrt(fem::edge_mean_constrained_minimum(reference, args.depth - 1, true, options));
  const double indicator = std::abs(estimate.kappa_ref - previous) / estimate.kappa_ref;
  std::ostringstream text;
  bounds::write_table(text,
                      {"refine_depth", "mu_min", "kappa_ref", "kappa_ref_previous", "convergence_indicator",
                       "inflated"},
                      {{std::to_string(args.depth), format_number(estimate.mu_min), format_number(estimate.kappa_ref),
                        format_number(previous), format_number(indicator),
                        format_number(estimate.certified(), Rounding::Up)}},
                      args.shared.table_format());
  emit(args.shared, text.str(), out);
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Guaranteed lower and upper bounds for Laplace eigenvalues", "eigbound"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check the lower-bound theorem on random finite-dimensional instances");
  verify_cmd->add_option("--trials", verify.trials, "Number of random instances (default 200)");
  verify_cmd->add_option("--dim-max", verify.dim_max, "Largest dimension of X (default 30)");
  add_shared_flags(verify_cmd, verify.shared);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Discrete Dirichlet eigenvalues on a mesh");
  solve.source.add(solve_cmd);
  solve_cmd->add_option("--element", solve.element, "cr or p1 (default cr)")->check(CLI::IsMember({"cr", "p1"}));
  solve_cmd->add_option("-k,--num-eigs", solve.count, "Number of eigenvalues (default 5)");
  add_shared_flags(solve_cmd, solve.shared);

  BoundsArgs bnds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Certified enclosures over a red-refinement chain");
  bnds.source.add(bounds_cmd);
  bounds_cmd->add_option("--levels", bnds.levels, "Number of refinement levels (default 3)");
  bounds_cmd->add_option("-k,--num-eigs", bnds.count, "Number of eigenvalues (default 5)");
  bounds_cmd->add_option("--alpha", bnds.alpha, "auto or a fixed projection constant (default auto)");
  bounds_cmd->add_flag("--allow-zero-alpha", bnds.allow_zero_alpha, "Permit --alpha 0 (claims V inside W)");
  bounds_cmd->add_option("--kappa-depth", bnds.kappa_depth, "Refinement depth of the CR constant (default 6)");
  add_shared_flags(bounds_cmd, bnds.shared);

  KappaArgs kappa;
  auto* kappa_cmd = app.add_subcommand("kappa", "Compute the CR interpolation constant");
  kappa_cmd->add_option("--refine-depth", kappa.depth, "Red refinements of the reference triangle (default 6)");
  add_shared_flags(kappa_cmd, kappa.shared);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*solve_cmd) return cmd_solve(solve, out, err);
    if (*bounds_cmd) return cmd_bounds(bnds, out, err);
    return cmd_kappa(kappa, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace eigbound::cli
