#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "dickecool/basis.hpp"
#include "dickecool/checks.hpp"
#include "dickecool/runner.hpp"
#include "dickecool/types.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective cavity cooling simulator on the symmetric SU(4) subspace"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Execute a JSON experiment config");
  std::string config_path;
  int jobs = 1;
  bool gnuplot_stub = false;
  run_cmd->add_option("--config", config_path, "Path to the config file")->required();
  run_cmd->add_option("--jobs", jobs, "Parallel sweep workers")->default_val(1);
  run_cmd->add_flag("--gnuplot", gnuplot_stub, "Also write a gnuplot script stub");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run the algebra/oracle check suites");
  std::string level = "fast";
  bool as_json = false;
  verify_cmd->add_option("--level", level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}))
      ->default_val("fast");
  verify_cmd->add_flag("--json", as_json, "Emit a machine-readable report");

  // analytic
  auto* analytic_cmd = app.add_subcommand("analytic", "Closed-form relaxation curve CSV");
  int n_qubits = 10;
  double gamma_cc = 1.0, nbar = 0.0, t_max = 10.0, jz0 = 0.0;
  int samples = 200;
  std::string out_path;
  analytic_cmd->add_option("--n", n_qubits, "Number of qubits")->required();
  analytic_cmd->add_option("--gamma", gamma_cc, "Collective cooling rate")->default_val(1.0);
  analytic_cmd->add_option("--nbar", nbar, "Thermal photon number")->default_val(0.0);
  analytic_cmd->add_option("--tmax", t_max, "Final time")->default_val(10.0);
  analytic_cmd->add_option("--jz0", jz0, "Initial <Jz>")->default_val(0.0);
  analytic_cmd->add_option("--samples", samples, "Sample count")->default_val(200);
  analytic_cmd->add_option("--output,-o", out_path, "Output file (default: stdout)");

  // basis
  auto* basis_cmd = app.add_subcommand("basis", "Print the symmetric-subspace dimension");
  int basis_n = 0;
  basis_cmd->add_option("--n", basis_n, "Number of qubits")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) {
      const auto config = dickecool::RunConfig::from_json_file(config_path);
      const auto result = dickecool::run(config, jobs, gnuplot_stub);
      for (const auto& file : result.csv_files) std::cout << file.string() << '\n';
      if (!result.gnuplot_file.empty()) std::cout << result.gnuplot_file.string() << '\n';
      std::cout << result.metadata_file.string() << '\n';
      if (result.any_warnings) std::cerr << "warnings recorded in metadata\n";
      return kExitOk;
    }
    if (*verify_cmd) {
      const auto report = dickecool::checks::run_verification(
          level == "full" ? dickecool::checks::Level::Full : dickecool::checks::Level::Fast);
      if (as_json) {
        std::cout << dickecool::checks::report_to_json(report) << '\n';
      } else {
        dickecool::checks::print_report(report, std::cout);
      }
      return report.all_pass() ? kExitOk : kExitVerification;
    }
    if (*analytic_cmd) {
      const std::string csv =
          dickecool::analytic_curve_csv(n_qubits, gamma_cc, nbar, jz0, t_max, samples);
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::FILE* file = std::fopen(out_path.c_str(), "wb");
        if (!file) throw dickecool::ParameterError("cannot open " + out_path);
        std::fwrite(csv.data(), 1, csv.size(), file);
        std::fclose(file);
      }
      return kExitOk;
    }
    if (*basis_cmd) {
      const auto basis = dickecool::OccupationBasis::build(basis_n);
      std::cout << basis.size() << '\n';
      return kExitOk;
    }
  } catch (const dickecool::ParameterError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const dickecool::NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
