#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dickecool/krylov.hpp"
#include "dickecool/types.hpp"

namespace dickecool {

enum class Method { Auto, DenseExpm, KrylovExpmAction, AdaptiveRK };

std::string to_string(Method method);

struct PropagationSpec {
  std::vector<double> t_grid;  // strictly increasing, t_grid[0] >= 0
  Method method = Method::Auto;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int krylov_dim = 30;

  void validate() const;

  static std::vector<double> linear_grid(double t_max, int n_samples);
  /// t = 0 followed by n-1 log-spaced samples over `decades` below t_max.
  static std::vector<double> log_grid(double t_max, int n_samples, double decades = 4.0);
};

/// Extra covector watched during propagation; exceeding the threshold
/// records a warning (used for the cavity truncation monitor).
struct Monitor {
  std::string name;
  CVector covector;
  double threshold = 0.0;
};

struct Observables {
  CVector trace;
  CVector jz;
  std::vector<Monitor> monitors;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> jz;
  std::vector<double> trace;
  std::vector<double> purity;
  std::vector<std::string> warnings;
  std::string method_used;
  double wall_seconds = 0.0;
};

/// Samples observables of x(t) = exp(t L) x0 on the grid. Method Auto picks
/// dense exponentials for small problems whose grids reuse segment
/// propagators, Krylov action otherwise. When a pairing is supplied and the
/// problem is Hermiticity-structured, the Krylov/RK paths run in the real
/// representation (transparent fallback otherwise).
TimeSeries evolve(const SparseSuperoperator& liouvillian, const CVector& x0,
                  const PropagationSpec& spec, const Observables& observables,
                  const HermitianPairing* pairing = nullptr);

/// Trace-normalized kernel element of L. For a degenerate kernel (or
/// dimensions beyond the dense path) falls back to long-time propagation of
/// `initial`, which must then be supplied.
CVector stationary_state(const SparseSuperoperator& liouvillian, const CVector& trace_cov,
                         const std::optional<CVector>& initial = std::nullopt,
                         double tol = 1e-10);

}  // namespace dickecool
