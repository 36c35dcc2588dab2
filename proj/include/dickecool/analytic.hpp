#pragma once

#include <span>

#include "dickecool/types.hpp"

namespace dickecool::analytic {

// Closed-form relaxation law under the first-order average dissipator.
// Rates and times are in mutually inverse units (the simulations use
// rescaled units with Gamma = 1).

struct AnalyticParams {
  int n_qubits = 0;
  double gamma_cc = 0.0;
  double nbar = 0.0;
  double jz0 = 0.0;  // initial <Jz>
};

/// <Jz(t)> = e^{-t/T1} <Jz(0)> - N (1 - e^{-t/T1}) / (2 + 4 nbar).
double jz_of_t(const AnalyticParams& params, double t);

/// T1 = 1 / (Gamma (1 + 2 nbar)).
double t1(double gamma_cc, double nbar);

/// <Jz>_eq = -N / (2 + 4 nbar).
double equilibrium_jz(int n_qubits, double nbar);

/// C = Gamma N / gamma.
double cooperativity(double gamma_cc, int n_qubits, double gamma_t2);

/// Lorentzian cavity cooling rate Gamma = 4 g^2 kappa / (kappa^2 + 4 Delta^2).
double lorentzian_rate(double g, double kappa, double delta);

/// Generic diagnostic fit y(t) ~ a1 e^{r1 t} + a2 e^{r2 t} + c.
struct TwoExpFit {
  double a1 = 0.0, r1 = 0.0;
  double a2 = 0.0, r2 = 0.0;
  double c = 0.0;
  double rmse = 0.0;
};

TwoExpFit fit_two_exponential(std::span<const double> times,
                              std::span<const double> values);

}  // namespace dickecool::analytic
