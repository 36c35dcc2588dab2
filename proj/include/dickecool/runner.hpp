#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dickecool/lindblad.hpp"
#include "dickecool/propagate.hpp"
#include "dickecool/types.hpp"

namespace dickecool {

enum class Scenario { SpinMaster, SpinCavity, AverageDissipator, Analytic };
enum class InitialState { MaximallyMixed, Ground, AllUp };
enum class GridKind { Log, Linear };

/// One experiment description, parsed from a versioned JSON config.
struct RunConfig {
  static constexpr int kSchemaVersion = 1;

  Scenario scenario = Scenario::SpinMaster;
  ModelParams model;
  std::optional<CavityParams> cavity;
  InitialState initial_state = InitialState::MaximallyMixed;
  double t_max = 10.0;
  int n_samples = 200;
  GridKind grid = GridKind::Log;
  std::vector<double> sweep;  // lambda values; empty = single run at model.gamma_t2
  std::string output;         // path prefix for emitted files
  Method method = Method::Auto;
  double rel_tol = 1e-9;
  int krylov_dim = 30;
  long seed = 0;  // reserved; no stochastic use today

  static RunConfig from_json_file(const std::filesystem::path& path);
  static RunConfig from_json_text(const std::string& text);
  void validate() const;
};

struct RunResult {
  std::vector<std::filesystem::path> csv_files;
  std::filesystem::path metadata_file;
  std::filesystem::path gnuplot_file;  // empty unless requested
  bool any_warnings = false;
};

/// Executes the config: one CSV per sweep point, an analytic overlay CSV and
/// a JSON metadata file; optionally a gnuplot script stub plotting them.
/// Sweep points run in parallel up to `jobs` threads.
RunResult run(const RunConfig& config, int jobs = 1, bool gnuplot_stub = false);

/// Closed-form relaxation curve as CSV text (columns t, jz).
std::string analytic_curve_csv(int n_qubits, double gamma_cc, double nbar, double jz0,
                               double t_max, int n_samples);

}  // namespace dickecool
