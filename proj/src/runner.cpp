#include "dickecool/runner.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dickecool/analytic.hpp"
#include "dickecool/basis.hpp"
#include "dickecool/magnus.hpp"
#include "dickecool/su4.hpp"

namespace dickecool {

namespace {

using nlohmann::json;

std::string format_float(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string format_compact(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

Scenario scenario_from_string(const std::string& s) {
  if (s == "spin-master") return Scenario::SpinMaster;
  if (s == "spin-cavity") return Scenario::SpinCavity;
  if (s == "average-dissipator") return Scenario::AverageDissipator;
  if (s == "analytic") return Scenario::Analytic;
  throw ParameterError("unknown scenario: " + s);
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::SpinMaster: return "spin-master";
    case Scenario::SpinCavity: return "spin-cavity";
    case Scenario::AverageDissipator: return "average-dissipator";
    case Scenario::Analytic: return "analytic";
  }
  return "?";
}

InitialState initial_from_string(const std::string& s) {
  if (s == "maximally-mixed") return InitialState::MaximallyMixed;
  if (s == "ground") return InitialState::Ground;
  if (s == "all-up") return InitialState::AllUp;
  throw ParameterError("unknown initial_state: " + s);
}

std::string to_string(InitialState s) {
  switch (s) {
    case InitialState::MaximallyMixed: return "maximally-mixed";
    case InitialState::Ground: return "ground";
    case InitialState::AllUp: return "all-up";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "auto") return Method::Auto;
  if (s == "dense-expm") return Method::DenseExpm;
  if (s == "krylov-expm-action") return Method::KrylovExpmAction;
  if (s == "adaptive-rk") return Method::AdaptiveRK;
  throw ParameterError("unknown method: " + s);
}

SymState make_initial(const OccupationBasis& basis, InitialState kind) {
  switch (kind) {
    case InitialState::MaximallyMixed: return state_maximally_mixed(basis);
    case InitialState::Ground: return state_ground(basis);
    case InitialState::AllUp: return state_all_up(basis);
  }
  throw ParameterError("bad initial state");
}

double initial_jz(int n_qubits, InitialState kind) {
  switch (kind) {
    case InitialState::MaximallyMixed: return 0.0;
    case InitialState::Ground: return -0.5 * n_qubits;
    case InitialState::AllUp: return +0.5 * n_qubits;
  }
  throw ParameterError("bad initial state");
}

void write_csv(const std::filesystem::path& path, const TimeSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open output file " + path.string());
  out << "t,jz,trace,purity\n";
  for (size_t i = 0; i < series.times.size(); ++i) {
    out << format_float(series.times[i]) << ',' << format_float(series.jz[i]) << ','
        << format_float(series.trace[i]) << ',' << format_float(series.purity[i]) << '\n';
  }
}

struct SweepOutcome {
  double lambda = 0.0;
  double gamma_t2 = 0.0;
  TimeSeries series;
  std::filesystem::path csv;
};

}  // namespace

RunConfig RunConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParameterError(std::string("config is not valid JSON: ") + err.what());
  }

  RunConfig config;
  try {
    if (doc.at("schema_version").get<int>() != kSchemaVersion) {
      throw ParameterError("unsupported schema_version");
    }
    config.scenario = scenario_from_string(doc.at("scenario").get<std::string>());

    const json& model = doc.at("model");
    config.model.n_qubits = model.at("n_qubits").get<int>();
    config.model.gamma_cc = model.value("gamma_cc", 1.0);
    config.model.nbar = model.value("nbar", 0.0);
    if (model.contains("lambda")) {
      config.model = ModelParams::with_lambda(config.model.n_qubits, config.model.gamma_cc,
                                              model["lambda"].get<double>(),
                                              config.model.nbar);
    } else {
      config.model.gamma_t2 = model.value("gamma_t2", 0.0);
    }

    if (doc.contains("cavity")) {
      const json& cav = doc["cavity"];
      CavityParams cavity;
      cavity.g = cav.at("g").get<double>();
      cavity.kappa = cav.at("kappa").get<double>();
      cavity.n_levels = cav.value("n_levels", 4);
      cavity.nbar = cav.value("nbar", 0.0);
      config.cavity = cavity;
    }

    config.initial_state =
        initial_from_string(doc.value("initial_state", std::string("maximally-mixed")));
    config.t_max = doc.value("t_max", 10.0);
    config.n_samples = doc.value("n_samples", 200);
    config.grid = doc.value("grid", std::string("log")) == "linear" ? GridKind::Linear
                                                                    : GridKind::Log;
    if (doc.contains("sweep")) config.sweep = doc["sweep"].get<std::vector<double>>();
    config.output = doc.at("output").get<std::string>();
    config.method = method_from_string(doc.value("method", std::string("auto")));
    config.rel_tol = doc.value("rel_tol", 1e-9);
    config.krylov_dim = doc.value("krylov_dim", 30);
    config.seed = doc.value("seed", 0L);
  } catch (const json::exception& err) {
    throw ParameterError(std::string("config field error: ") + err.what());
  }
  config.validate();
  return config;
}

void RunConfig::validate() const {
  model.validate();
  if (cavity) cavity->validate();
  if (scenario == Scenario::SpinCavity && !cavity) {
    throw ParameterError("spin-cavity scenario requires a cavity block");
  }
  if (!sweep.empty() &&
      !(scenario == Scenario::SpinMaster || scenario == Scenario::SpinCavity)) {
    throw ParameterError("lambda sweeps apply only to spin-master or spin-cavity runs");
  }
  for (double lambda : sweep) {
    if (lambda < 0.0) throw ParameterError("sweep lambda values must be non-negative");
  }
  if (t_max <= 0.0) throw ParameterError("t_max must be positive");
  if (n_samples < 2) throw ParameterError("n_samples must be at least 2");
  if (rel_tol <= 0.0) throw ParameterError("rel_tol must be positive");
  if (output.empty()) throw ParameterError("output prefix is required");
}

RunResult run(const RunConfig& config, int jobs, bool gnuplot_stub) {
  config.validate();
  if (jobs < 1) jobs = 1;

  const auto t0 = std::chrono::steady_clock::now();
  RunResult result;
  const std::filesystem::path prefix(config.output);
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());

  json meta;
  meta["schema_version"] = RunConfig::kSchemaVersion;
  meta["scenario"] = to_string(config.scenario);
  meta["initial_state"] = to_string(config.initial_state);
  meta["t_max"] = config.t_max;
  meta["n_samples"] = config.n_samples;
  meta["grid"] = config.grid == GridKind::Log ? "log" : "linear";
  meta["method"] = to_string(config.method);
  meta["rel_tol"] = config.rel_tol;
  meta["seed"] = config.seed;
  meta["model"] = {{"n_qubits", config.model.n_qubits},
                   {"gamma_cc", config.model.gamma_cc},
                   {"gamma_t2", config.model.gamma_t2},
                   {"nbar", config.model.nbar}};

  // The effective collective cooling rate: given directly for spin scenarios,
  // derived as 4 g^2 / kappa for the spin-cavity model.
  double gamma_cc = config.model.gamma_cc;
  if (config.scenario == Scenario::SpinCavity) {
    gamma_cc = config.cavity->cooling_rate();
    meta["cavity"] = {{"g", config.cavity->g},
                      {"kappa", config.cavity->kappa},
                      {"n_levels", config.cavity->n_levels},
                      {"nbar", config.cavity->nbar},
                      {"markovian", config.cavity->markovian(config.model.n_qubits)}};
    meta["derived"]["gamma_cc_effective"] = gamma_cc;
  }
  meta["derived"]["t1"] = analytic::t1(gamma_cc, config.model.nbar);
  meta["derived"]["equilibrium_jz"] =
      analytic::equilibrium_jz(config.model.n_qubits, config.model.nbar);

  if (config.scenario == Scenario::Analytic) {
    const std::filesystem::path csv_path = prefix.string() + ".csv";
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw ParameterError("cannot open output file " + csv_path.string());
    out << analytic_curve_csv(config.model.n_qubits, gamma_cc, config.model.nbar,
                              initial_jz(config.model.n_qubits, config.initial_state),
                              config.t_max, config.n_samples);
    out.close();
    result.csv_files.push_back(csv_path);
    meta["runs"] = json::array();
    meta["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.metadata_file = prefix.string() + "_meta.json";
    std::ofstream meta_out(result.metadata_file, std::ios::binary);
    meta_out << meta.dump(2) << '\n';
    return result;
  }

  // Shared immutable structures for all sweep points.
  const OccupationBasis basis = OccupationBasis::build(config.model.n_qubits);
  const GeneratorCatalog catalog = GeneratorCatalog::build(basis);
  const SymState initial_spin = make_initial(basis, config.initial_state);

  PropagationSpec spec;
  spec.method = config.method;
  spec.rel_tol = config.rel_tol;
  spec.krylov_dim = config.krylov_dim;
  spec.t_grid = config.grid == GridKind::Log
                    ? PropagationSpec::log_grid(config.t_max, config.n_samples)
                    : PropagationSpec::linear_grid(config.t_max, config.n_samples);

  std::vector<double> lambdas = config.sweep;
  const bool swept = !lambdas.empty();
  if (!swept) {
    const double lambda =
        config.model.lambda
            ? *config.model.lambda
            : (gamma_cc > 0.0
                   ? config.model.gamma_t2 / (config.model.n_qubits * gamma_cc)
                   : 0.0);
    lambdas.push_back(lambda);
  }

  std::vector<SweepOutcome> outcomes(lambdas.size());
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      const size_t index = next.fetch_add(1);
      if (index >= lambdas.size()) return;
      try {
        SweepOutcome& outcome = outcomes[index];
        outcome.lambda = lambdas[index];
        outcome.gamma_t2 = outcome.lambda * config.model.n_qubits * gamma_cc;
        if (!swept && !config.model.lambda) outcome.gamma_t2 = config.model.gamma_t2;

        if (config.scenario == Scenario::SpinCavity) {
          const SpinCavitySystem system =
              generator_spin_cavity(catalog, *config.cavity, outcome.gamma_t2);
          Observables obs{system.trace, system.jz, {}};
          obs.monitors.push_back({"cavity top-level population", system.top_level, 1e-6});
          const CVector x0 =
              compose_spin_cavity_state(initial_spin, config.cavity->n_levels, 0);
          outcome.series = evolve(system.generator, x0, spec, obs, &system.pairing);
        } else {
          ModelParams params = config.model;
          if (swept || config.model.lambda) {
            params.lambda = outcome.lambda;
            params.gamma_t2 = outcome.gamma_t2;
          }  // else: explicit gamma_t2 config, keep it verbatim
          const SparseSuperoperator generator =
              config.scenario == Scenario::AverageDissipator
                  ? average_dissipator_first_order(catalog, params)
                  : generator_spin_master_equation(catalog, params);
          const Observables obs{trace_covector(basis), observable_covector_jz(basis), {}};
          const HermitianPairing pairing = hermitian_partner_indices(basis);
          outcome.series = evolve(generator, initial_spin.coeffs, spec, obs, &pairing);
        }

        outcome.csv = swept ? std::filesystem::path(prefix.string() + "_lambda" +
                                                    format_compact(outcome.lambda) + ".csv")
                            : std::filesystem::path(prefix.string() + ".csv");
        write_csv(outcome.csv, outcome.series);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (jobs == 1 || lambdas.size() == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(jobs, static_cast<int>(lambdas.size()));
    pool.reserve(static_cast<size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  meta["runs"] = json::array();
  for (const SweepOutcome& outcome : outcomes) {
    json entry;
    entry["lambda"] = outcome.lambda;
    entry["gamma_t2"] = outcome.gamma_t2;
    entry["csv"] = outcome.csv.filename().string();
    entry["method"] = outcome.series.method_used;
    entry["wall_seconds"] = outcome.series.wall_seconds;
    entry["warnings"] = outcome.series.warnings;
    if (outcome.gamma_t2 > 0.0) {
      const double c =
          analytic::cooperativity(gamma_cc, config.model.n_qubits, outcome.gamma_t2);
      entry["cooperativity"] = c;
      entry["outside_first_order_validity"] = c >= 1.0;
    }
    if (!outcome.series.jz.empty()) {
      entry["final_jz"] = outcome.series.jz.back();
      if (outcome.series.times.size() >= 5) {
        const auto fit =
            analytic::fit_two_exponential(outcome.series.times, outcome.series.jz);
        entry["two_exponential_fit"] = {{"a1", fit.a1}, {"r1", fit.r1}, {"a2", fit.a2},
                                        {"r2", fit.r2}, {"c", fit.c},   {"rmse", fit.rmse}};
      }
    }
    result.any_warnings = result.any_warnings || !outcome.series.warnings.empty();
    meta["runs"].push_back(entry);
    result.csv_files.push_back(outcome.csv);
  }

  // Closed-form overlay curve (the dotted reference line of the figures).
  {
    const std::filesystem::path overlay_path = prefix.string() + "_analytic.csv";
    std::ofstream overlay(overlay_path, std::ios::binary);
    if (!overlay) throw ParameterError("cannot open " + overlay_path.string());
    overlay << analytic_curve_csv(config.model.n_qubits, gamma_cc, config.model.nbar,
                                  initial_jz(config.model.n_qubits, config.initial_state),
                                  config.t_max, config.n_samples);
    overlay.close();
    result.csv_files.push_back(overlay_path);
    meta["analytic_overlay"] = overlay_path.filename().string();
  }

  if (gnuplot_stub) {
    result.gnuplot_file = prefix.string() + ".gnuplot";
    std::ofstream plot(result.gnuplot_file, std::ios::binary);
    if (!plot) throw ParameterError("cannot open " + result.gnuplot_file.string());
    plot << "set datafile separator \",\"\n"
         << "set xlabel \"t\"\n"
         << "set ylabel \"<Jz>\"\n";
    if (config.grid == GridKind::Log) plot << "set logscale x\n";
    plot << "plot \\\n";
    for (const SweepOutcome& outcome : outcomes) {
      plot << "  \"" << outcome.csv.filename().string() << "\" using 1:2 with lines"
           << " title \"lambda=" << format_compact(outcome.lambda) << "\", \\\n";
    }
    plot << "  \"" << prefix.filename().string()
         << "_analytic.csv\" using 1:2 with lines dashtype 2 lc \"black\""
         << " title \"first-order law\"\n"
         << "pause -1\n";
  }

  meta["wall_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.metadata_file = prefix.string() + "_meta.json";
  std::ofstream meta_out(result.metadata_file, std::ios::binary);
  if (!meta_out) throw ParameterError("cannot open " + result.metadata_file.string());
  meta_out << meta.dump(2) << '\n';
  return result;
}

std::string analytic_curve_csv(int n_qubits, double gamma_cc, double nbar, double jz0,
                               double t_max, int n_samples) {
  const analytic::AnalyticParams params{n_qubits, gamma_cc, nbar, jz0};
  std::string out = "t,jz\n";
  for (int i = 0; i < n_samples; ++i) {
    const double t = t_max * i / (n_samples - 1);
    out += format_float(t);
    out += ',';
    out += format_float(analytic::jz_of_t(params, t));
    out += '\n';
  }
  return out;
}

}  // namespace dickecool
