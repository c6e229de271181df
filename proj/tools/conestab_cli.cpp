#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "conestab/errors.hpp"
#include "conestab/report.hpp"
#include "conestab/serialize.hpp"
#include "conestab/simons.hpp"
#include "conestab/stability.hpp"

using namespace conestab;

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::usage, "cannot open " + path + " for writing");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

ConeSolution load_or_solve(const std::string& cone_file, int k, int h, double tol) {
  if (!cone_file.empty()) {
    std::ifstream in(cone_file);
    if (!in) throw Error(ErrorKind::usage, "cannot read " + cone_file);
    Json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::usage, std::string("malformed cone JSON: ") + e.what());
    }
    return cone_from_json(j);
  }
  if (k < 1 || h < 1) throw Error(ErrorKind::usage, "--k and --h must be positive (or pass --cone)");
  ConeSolveOptions opt;
  opt.tol = tol;
  return solve_cross_section(k, h, opt);
}

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("CONESTAB_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::usage, "CONESTAB_SEED must be an unsigned integer");
    }
  }
  return flag;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability of Lawson cones in the one-phase free boundary problem"};
  app.set_version_flag("--version", kVersion);
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  int k = 0, h = 0, n = 0, grid = 4096, quad = 64, degree = 3, polys = 10, points = 100;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  double tol_solve = 1e-10, tol = kMarginalTol, radius_max = 1048576.0;
  std::string out_path, weight_text = "frobenius", cone_file, format = "csv";
  std::uint64_t seed = 1;

  auto* solve = app.add_subcommand("solve", "Solve the cross-section ODE and write .cone.json");
  solve->add_option("--k", k, "dimension of the y factor")->required();
  solve->add_option("--h", h, "dimension of the z factor")->required();
  solve->add_option("--tol", tol_solve, "integration tolerance")->capture_default_str();
  solve->add_option("--grid", grid, "profile samples")->capture_default_str();
  solve->add_option("--out", out_path, "output file");

  auto* stab = app.add_subcommand("stability", "Stability report for C(k,h)");
  stab->add_option("--k", k);
  stab->add_option("--h", h);
  stab->add_option("--cone", cone_file, "read a .cone.json instead of solving");
  stab->add_option("--weight", weight_text, "frobenius | signed:<a> | max")->capture_default_str();
  stab->add_option("--tol", tol, "marginal band")->capture_default_str();
  stab->add_option("--grid", grid, "finite-difference cells")->capture_default_str();
  stab->add_option("--out", out_path);

  auto* cert = app.add_subcommand("certify", "Instability certificate for C(k,h)");
  cert->add_option("--k", k);
  cert->add_option("--h", h);
  cert->add_option("--cone", cone_file);
  cert->add_option("--quad", quad, "Gauss-Legendre panels")->capture_default_str();
  cert->add_option("--tol", tol)->capture_default_str();
  cert->add_option("--out", out_path);

  auto* lstar = app.add_subcommand("lstar", "Supremum of the boundary functional over the slice");
  lstar->add_option("--n", n)->required();
  lstar->add_option("--radius-max", radius_max)->capture_default_str();
  lstar->add_option("--out", out_path);

  auto* simons = app.add_subcommand("verify-simons", "Randomized check of wΔw ≥ (2/n)|∇w|²");
  simons->add_option("--n", n)->required();
  simons->add_option("--degree", degree)->capture_default_str();
  simons->add_option("--polys", polys)->capture_default_str();
  simons->add_option("--points", points)->capture_default_str();
  simons->add_option("--seed", seed, "overridden by CONESTAB_SEED")->capture_default_str();
  simons->add_option("--weight", weight_text)->capture_default_str();
  simons->add_option("--out", out_path, "write the aggregated report as JSON");

  auto* scan_cmd = app.add_subcommand("scan", "Stability table over all C(k,h) with k+h = n");
  scan_cmd->add_option("--n", n)->required();
  scan_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  scan_cmd->add_option("--jobs", jobs)->capture_default_str();
  scan_cmd->add_option("--weight", weight_text)->capture_default_str();
  scan_cmd->add_option("--tol", tol)->capture_default_str();
  scan_cmd->add_option("--grid", grid)->capture_default_str();
  scan_cmd->add_option("--out", out_path);

  auto* interior = app.add_subcommand("interior", "Improved interior inequality along the cross-section");
  interior->add_option("--k", k);
  interior->add_option("--h", h);
  interior->add_option("--cone", cone_file);
  interior->add_option("--weight", weight_text)->capture_default_str();
  interior->add_option("--grid", grid, "finite-difference points")->capture_default_str();
  interior->add_option("--out", out_path);

  auto* ident = app.add_subcommand("case-identity", "Exact check of the n = 4 boundary algebra");
  ident->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve) {
      ConeSolveOptions opt;
      opt.tol = tol_solve;
      opt.samples = grid;
      const auto cone = solve_cross_section(k, h, opt);
      const auto bd = boundary_data(cone);
      if (out_path.empty()) {
        emit(to_json(cone).dump() + "\n", "");
      } else {
        emit(to_json(cone).dump() + "\n", out_path);
        std::cout.precision(17);
        std::cout << "theta_star " << cone.theta_star << "\nH " << bd.H << "\n";
      }
    } else if (*stab) {
      const auto cone = load_or_solve(cone_file, k, h, tol_solve);
      StabilityOptions opt;
      opt.tol = tol;
      opt.gridN = grid;
      opt.weight = parse_weight(weight_text);
      emit(dump(to_json(stability_verdict(cone, opt))), out_path);
    } else if (*cert) {
      const auto cone = load_or_solve(cone_file, k, h, tol_solve);
      emit(dump(to_json(instability_certificate(cone, quad, tol))), out_path);
    } else if (*lstar) {
      emit(dump(to_json(lstar_optimize(n, radius_max))), out_path);
    } else if (*simons) {
      if (polys < 1 || points < 1) throw Error(ErrorKind::usage, "--polys and --points must be positive");
      const auto spec = parse_weight(weight_text);
      const auto s = effective_seed(seed);
      ViolationReport agg;
      agg.seed = s;
      agg.worst_margin = std::numeric_limits<double>::infinity();
      agg.min_pairing = std::numeric_limits<double>::infinity();
      for (int p = 0; p < polys; ++p) {
        const auto sub = SeededStream::mix(s + static_cast<std::uint64_t>(p));
        const auto poly = random_harmonic_poly(n, degree, sub);
        const auto r = verify_general_inequality(poly, spec, points, sub);
        agg.samples_tested += r.samples_tested;
        agg.samples_guarded += r.samples_guarded;
        agg.hard_violations += r.hard_violations;
        agg.fd_disagreements += r.fd_disagreements;
        agg.tol_fd = std::max(agg.tol_fd, r.tol_fd);
        agg.max_gradient_rel_error = std::max(agg.max_gradient_rel_error, r.max_gradient_rel_error);
        agg.max_laplacian_rel_error = std::max(agg.max_laplacian_rel_error, r.max_laplacian_rel_error);
        agg.max_pairing_residual = std::max(agg.max_pairing_residual, r.max_pairing_residual);
        agg.min_pairing = std::min(agg.min_pairing, r.min_pairing);
        if (r.worst_margin < agg.worst_margin) {
          agg.worst_margin = r.worst_margin;
          agg.worst_point = r.worst_point;
        }
      }
      if (!out_path.empty()) emit(dump(to_json(agg)), out_path);
      std::ostringstream line;
      line.precision(6);
      line << (agg.passed() ? "PASS" : "FAIL") << " verify-simons n=" << n << " degree=" << degree
           << " weight=" << to_string(spec) << " tested=" << agg.samples_tested
           << " guarded=" << agg.samples_guarded << " worst_margin=" << agg.worst_margin
           << " tol_fd=" << agg.tol_fd << " violations=" << agg.hard_violations
           << " fd_disagreements=" << agg.fd_disagreements << " seed=" << s;
      std::cout << line.str() << "\n";
      return agg.passed() ? 0 : exit_code(ErrorKind::consistency_violation);
    } else if (*scan_cmd) {
      ScanOptions opt;
      opt.n = n;
      opt.jobs = jobs;
      opt.stability.tol = tol;
      opt.stability.gridN = grid;
      opt.stability.weight = parse_weight(weight_text);
      const auto table = scan(opt);
      emit(format == "csv" ? to_csv(table) : dump(to_json(table)), out_path);
    } else if (*interior) {
      const auto cone = load_or_solve(cone_file, k, h, tol_solve);
      const int cells = interior->count("--grid") ? grid : 2048;
      const auto r = homogeneous_improved_check(cone, parse_weight(weight_text), cells);
      emit(dump(to_json(r)), out_path);
      if (!r.passed()) return exit_code(ErrorKind::consistency_violation);
    } else if (*ident) {
      emit(dump(to_json(case_identity_check())), out_path);
    }
  } catch (const Error& e) {
    std::cerr << "conestab: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "conestab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
