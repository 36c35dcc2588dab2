#include "dickecool/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace dickecool::analytic {

double jz_of_t(const AnalyticParams& params, double t) {
  if (t < 0.0) throw ParameterError("jz_of_t: t must be non-negative");
  const double decay = std::exp(-t / t1(params.gamma_cc, params.nbar));
  return decay * params.jz0 + (1.0 - decay) * equilibrium_jz(params.n_qubits, params.nbar);
}

double t1(double gamma_cc, double nbar) {
  if (gamma_cc <= 0.0) throw ParameterError("t1: Gamma must be positive");
  return 1.0 / (gamma_cc * (1.0 + 2.0 * nbar));
}

double equilibrium_jz(int n_qubits, double nbar) {
  return -double(n_qubits) / (2.0 + 4.0 * nbar);
}

double cooperativity(double gamma_cc, int n_qubits, double gamma_t2) {
  if (gamma_t2 == 0.0) throw ParameterError("cooperativity: gamma = 0");
  return gamma_cc * n_qubits / gamma_t2;
}

double lorentzian_rate(double g, double kappa, double delta) {
  if (kappa <= 0.0) throw ParameterError("lorentzian_rate: kappa must be positive");
  return 4.0 * g * g * kappa / (kappa * kappa + 4.0 * delta * delta);
}

namespace {

// Least-squares amplitudes for fixed rates, by normal equations on the
// columns (e^{r1 t}, e^{r2 t}, 1).
double solve_amplitudes(std::span<const double> times, std::span<const double> values,
                        double r1, double r2, TwoExpFit& fit) {
  const auto n = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = std::exp(r1 * times[size_t(i)]);
    design(i, 1) = std::exp(r2 * times[size_t(i)]);
    design(i, 2) = 1.0;
    rhs(i) = values[size_t(i)];
  }
  const Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(rhs);
  const double rmse = std::sqrt((design * coeffs - rhs).squaredNorm() / double(n));
  fit = {coeffs(0), r1, coeffs(1), r2, coeffs(2), rmse};
  return rmse;
}

}  // namespace

namespace {

// Residual vector of the variable-projection objective at log-rates (p1, p2).
Eigen::VectorXd vp_residual(std::span<const double> times, std::span<const double> values,
                            double p1, double p2, TwoExpFit& fit) {
  const auto n = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  const double r1 = -std::exp(p1);
  const double r2 = -std::exp(p2);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = std::exp(r1 * times[size_t(i)]);
    design(i, 1) = std::exp(r2 * times[size_t(i)]);
    design(i, 2) = 1.0;
    rhs(i) = values[size_t(i)];
  }
  const Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd residual = design * coeffs - rhs;
  fit = {coeffs(0), r1, coeffs(1), r2, coeffs(2),
         std::sqrt(residual.squaredNorm() / double(n))};
  return residual;
}

// Levenberg-Marquardt on the projected 2-parameter problem.
TwoExpFit lm_refine(std::span<const double> times, std::span<const double> values,
                    double p1, double p2) {
  TwoExpFit fit;
  Eigen::VectorXd residual = vp_residual(times, values, p1, p2, fit);
  double cost = residual.squaredNorm();
  double damping = 1e-3;
  const double h = 1e-6;
  for (int iter = 0; iter < 80; ++iter) {
    TwoExpFit probe;
    Eigen::MatrixXd jacobian(residual.size(), 2);
    jacobian.col(0) = (vp_residual(times, values, p1 + h, p2, probe) -
                       vp_residual(times, values, p1 - h, p2, probe)) /
                      (2.0 * h);
    jacobian.col(1) = (vp_residual(times, values, p1, p2 + h, probe) -
                       vp_residual(times, values, p1, p2 - h, probe)) /
                      (2.0 * h);
    const Eigen::Matrix2d normal = jacobian.transpose() * jacobian;
    const Eigen::Vector2d gradient = jacobian.transpose() * residual;
    bool stepped = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      const Eigen::Vector2d delta =
          (normal + damping * Eigen::Matrix2d(normal.diagonal().asDiagonal()) +
           1e-14 * Eigen::Matrix2d::Identity())
              .ldlt()
              .solve(-gradient);
      TwoExpFit trial_fit;
      const Eigen::VectorXd trial =
          vp_residual(times, values, p1 + delta(0), p2 + delta(1), trial_fit);
      if (trial.squaredNorm() < cost) {
        p1 += delta(0);
        p2 += delta(1);
        residual = trial;
        cost = trial.squaredNorm();
        fit = trial_fit;
        damping = std::max(damping * 0.3, 1e-12);
        stepped = true;
        break;
      }
      damping *= 10.0;
    }
    if (!stepped || gradient.norm() < 1e-14) break;
  }
  return fit;
}

}  // namespace

TwoExpFit fit_two_exponential(std::span<const double> times,
                              std::span<const double> values) {
  if (times.size() != values.size() || times.size() < 5) {
    throw ParameterError("fit_two_exponential: need >= 5 matched samples");
  }
  const double t_span = *std::max_element(times.begin(), times.end());
  if (t_span <= 0.0) throw ParameterError("fit_two_exponential: degenerate time span");

  // Coarse log-grid over decay-rate pairs, then Levenberg-Marquardt from the
  // leading starts (the projected objective has long curved valleys).
  struct Start {
    double rmse, r1, r2;
  };
  std::vector<Start> starts;
  const int grid = 24;
  auto rate_at = [&](int i) { return -std::pow(10.0, -2.0 + 5.0 * i / (grid - 1)) / t_span; };
  for (int i = 0; i < grid; ++i) {
    for (int j = i; j < grid; ++j) {
      TwoExpFit fit;
      const double rmse = solve_amplitudes(times, values, rate_at(i), rate_at(j), fit);
      starts.push_back({rmse, rate_at(i), rate_at(j)});
    }
  }
  std::sort(starts.begin(), starts.end(),
            [](const Start& a, const Start& b) { return a.rmse < b.rmse; });

  TwoExpFit best;
  best.rmse = std::numeric_limits<double>::infinity();
  const size_t n_starts = std::min<size_t>(starts.size(), 12);
  for (size_t k = 0; k < n_starts; ++k) {
    const TwoExpFit fit = lm_refine(times, values, std::log(-starts[k].r1),
                                    std::log(-starts[k].r2));
    if (fit.rmse < best.rmse) best = fit;
  }
  return best;
}

}  // namespace dickecool::analytic
