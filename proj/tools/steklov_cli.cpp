// Command-line front end: solve spectra, print disk oracles, extract nodal
// geometry, run verification suites, aggregate reports.
//
// Exit codes: 0 success / all checks pass, 1 check failure, 2 usage error.

#include "steklov/steklov.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

namespace sk = steklov;
using nlohmann::json;

namespace {

int validate_n(int n) {
  if (n < 32 || n % 2 != 0) throw CLI::ValidationError("--n", "N must be even and >= 32");
  if (n > 512) throw CLI::ValidationError("--n", "N must be <= 512");
  return n;
}

json with_meta(json j) {
  j["meta"]["generated_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  return j;
}

int cmd_solve(const std::string& problem, const std::string& domain, int n, int modes,
              const std::string& out) {
  validate_n(n);
  sk::ProblemKind kind = sk::problem_from_name(problem);
  sk::BoundaryCurve curve = sk::BoundaryCurve::from_spec(domain);
  sk::QuadratureGrid grid = sk::build_quadrature(curve, n);
  sk::BoundaryOps ops = sk::assemble_boundary_ops(curve, grid);
  sk::SteklovAssembly asmb = sk::assemble_operator(kind, ops);
  auto pairs = sk::spectrum(asmb, modes);
  json j = with_meta(sk::spectrum_to_json(kind, domain, n, asmb, pairs));
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    sk::write_file(out, j.dump(2) + "\n");
  return 0;
}

int cmd_oracle(const std::string& problem, int k) {
  sk::ProblemKind kind = sk::problem_from_name(problem);
  sk::oracle::EigenvalueOracle e = sk::oracle::eigenvalue(kind, k);
  std::cout << "problem = " << sk::problem_name(kind) << ", k = " << k << "\n";
  std::cout << "mu = " << sk::num17(e.mu) << "\n";
  std::cout << "lambda = " << sk::num17(e.lambda) << "\n";
  std::cout << "multipliers: S1 = "
            << sk::num17(sk::oracle::layer_multiplier(sk::oracle::LayerOp::S1, k))
            << ", S2 = "
            << sk::num17(sk::oracle::layer_multiplier(sk::oracle::LayerOp::S2, k))
            << ", S3 = "
            << sk::num17(sk::oracle::layer_multiplier(sk::oracle::LayerOp::S3, k))
            << ", N = "
            << sk::num17(sk::oracle::layer_multiplier(sk::oracle::LayerOp::N, k))
            << ", Lambda = "
            << sk::num17(sk::oracle::layer_multiplier(sk::oracle::LayerOp::Lambda, k))
            << "\n";
  return 0;
}

int cmd_nodal(const std::string& problem, const std::string& domain, int n, int mode_index,
              double alpha, int grid_res, double collar, const std::string& field,
              const std::string& out, const std::string& svg) {
  validate_n(n);
  if (grid_res < 8 || grid_res > 501)
    throw CLI::ValidationError("--grid", "grid resolution must be in [8, 501]");
  sk::ProblemKind kind = sk::problem_from_name(problem);
  sk::BoundaryCurve curve = sk::BoundaryCurve::from_spec(domain);
  sk::QuadratureGrid grid = sk::build_quadrature(curve, n);
  sk::BoundaryOps ops = sk::assemble_boundary_ops(curve, grid);
  sk::SteklovAssembly asmb = sk::assemble_operator(kind, ops);
  auto pairs = sk::spectrum(asmb, mode_index + 1);
  const sk::EigenPair& pair = pairs.at(mode_index);
  sk::CauchyData cd = sk::cauchy_data(kind, pair, asmb, ops);
  sk::FieldEvaluator ev(curve, grid, cd);
  double delta = collar > 0 ? collar : 0.02 * curve.diameter();
  sk::InteriorGrid igrid = sk::build_interior_grid(curve, grid_res, delta);
  sk::FieldComponent comp =
      field == "lap" ? sk::FieldComponent::LapE : sk::FieldComponent::E;
  sk::ScalarField f = sk::field_on_grid(ev, igrid, comp);
  sk::NodalGeometry geom = sk::level_set_extract(f, alpha);
  const sk::VectorXd& trace = comp == sk::FieldComponent::LapE
                                  ? cd.lap_u
                                  : (kind == sk::ProblemKind::Theta ? cd.u : cd.dnu_u);
  sk::BoundaryZeros bz = sk::boundary_zeros(trace, alpha);
  geom.boundary_zero_count = bz.count;
  geom.boundary_zero_params = bz.params;
  geom.length = geom.raw_length + bz.count * delta;
  json j = with_meta(sk::nodal_to_json(geom));
  j["problem"] = problem;
  j["domain"] = domain;
  j["mode_index"] = mode_index;
  j["field"] = field;
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    sk::write_file(out, j.dump(2) + "\n");
  if (!svg.empty()) sk::write_file(svg, sk::nodal_to_svg(curve, geom));
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& domain, int n,
               const std::string& out) {
  sk::VerifyConfig cfg;
  cfg.domain = domain;
  cfg.n = validate_n(n);
  sk::SuiteReport rep = sk::run_suite(suite, cfg);
  json j = sk::suite_to_json(rep);
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    sk::write_file(out, j.dump(2) + "\n");
  for (const auto& c : rep.checks)
    std::cerr << (c.pass ? "pass " : "FAIL ") << c.id << " measured=" << c.measured
              << " expected=" << c.expected << " tol=" << c.tolerance << "\n";
  return rep.pass() ? 0 : 1;
}

int cmd_report(const std::string& dir, const std::string& out) {
  std::string csv = "suite,id,measured,expected,tolerance,pass\n";
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    std::ifstream in(p);
    json j;
    in >> j;
    if (!j.contains("checks")) continue;
    for (const auto& c : j["checks"])
      csv += j.value("suite", "?") + "," + c["id"].get<std::string>() + "," +
             sk::num17(c["measured"].get<double>()) + "," +
             sk::num17(c["expected"].get<double>()) + "," +
             sk::num17(c["tolerance"].get<double>()) + "," +
             (c["pass"].get<bool>() ? "1" : "0") + "\n";
  }
  sk::write_file(out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary-integral spectral laboratory for biharmonic Steklov operators"};
  app.require_subcommand(1);

  std::string problem = "theta", domain = "disk", out, svg, field = "e", suite = "all", dir;
  int n = 256, modes = 16, mode_index = 0, grid_res = 301, k = 1;
  double alpha = 0.0, collar = -1.0;

  auto* solve = app.add_subcommand("solve", "Solve a Steklov spectrum");
  solve->add_option("--problem", problem, "theta|xi|pi")->default_str("theta");
  solve->add_option("--domain", domain, "disk|ellipse:a,b|kite|star:eps,m")->default_str("disk");
  solve->add_option("--n", n, "boundary nodes (even, in [32, 512])")->default_str("256");
  solve->add_option("--modes", modes, "eigenpair count (<= N/4)")->default_str("16");
  solve->add_option("--out", out, "output JSON path (default: stdout)");

  auto* oraclec = app.add_subcommand("oracle", "Print closed-form disk values");
  oraclec->add_option("--problem", problem, "theta|xi|pi")->default_str("theta");
  oraclec->add_option("--k", k, "angular frequency")->default_str("1");

  auto* nodal = app.add_subcommand("nodal", "Extract nodal / level-set geometry");
  nodal->add_option("--problem", problem, "theta|xi|pi")->default_str("theta");
  nodal->add_option("--domain", domain, "disk|ellipse:a,b|kite|star:eps,m")->default_str("disk");
  nodal->add_option("--n", n, "boundary nodes (even, in [32, 512])")->default_str("256");
  nodal->add_option("--mode-index", mode_index, "eigenpair index")->default_str("0");
  nodal->add_option("--alpha", alpha, "level value")->default_str("0");
  nodal->add_option("--grid", grid_res, "interior grid resolution (<= 501)")->default_str("301");
  nodal->add_option("--collar", collar, "collar width (default 0.02 x diameter)");
  nodal->add_option("--field", field, "e|lap")->default_str("e");
  nodal->add_option("--out", out, "output JSON path (default: stdout)");
  nodal->add_option("--svg", svg, "optional SVG plot path");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "symbols|layers|disk|identities|scaling|all")
      ->default_str("all");
  verify->add_option("--domain", domain, "domain for domain-dependent checks")
      ->default_str("disk");
  verify->add_option("--n", n, "boundary nodes (even, in [32, 512])")->default_str("256");
  verify->add_option("--out", out, "output JSON path (default: stdout)");

  auto* report = app.add_subcommand("report", "Aggregate suite JSON reports to CSV");
  report->add_option("--in", dir, "directory of suite JSON files")->required();
  report->add_option("--out", out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return cmd_solve(problem, domain, n, modes, out);
    if (oraclec->parsed()) return cmd_oracle(problem, k);
    if (nodal->parsed())
      return cmd_nodal(problem, domain, n, mode_index, alpha, grid_res, collar, field, out, svg);
    if (verify->parsed()) return cmd_verify(suite, domain, n, out);
    if (report->parsed()) return cmd_report(dir, out);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
