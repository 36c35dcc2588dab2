#include "dickecool/propagate.hpp"

#include <chrono>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace dickecool {

namespace {

constexpr std::int64_t kDenseLimit = 2000;

template <typename Scalar>
Scalar contract(const DenseVector<Scalar>& covector, const DenseVector<Scalar>& x) {
  return covector.cwiseProduct(x).sum();
}

// Dormand-Prince 5(4) pair; steps land exactly on the segment end.
template <typename Scalar>
class DormandPrince {
 public:
  DormandPrince(const RowSparse<Scalar>& a, double rel_tol, double abs_tol)
      : a_(a), rel_tol_(rel_tol), abs_tol_(abs_tol) {}

  void advance(DenseVector<Scalar>& x, double t_span) {
    if (t_span <= 0.0) return;
    const Eigen::Index n = x.size();
    std::array<DenseVector<Scalar>, 7> k;
    for (auto& v : k) v.resize(n);
    DenseVector<Scalar> x_try(n), x_hat(n);

    sparse_matvec(a_, x, k[0]);
    double h = initial_step(x, k[0], t_span);
    double t = 0.0;
    int rejected_in_a_row = 0;
    while (t < t_span) {
      h = std::min(h, t_span - t);
      for (int stage = 1; stage < 7; ++stage) {
        x_try = x;
        for (int j = 0; j < stage; ++j) {
          if (kA[stage][j] != 0.0) x_try += (h * kA[stage][j]) * k[j];
        }
        sparse_matvec(a_, x_try, k[stage]);
      }
      x_hat = x;
      for (int j = 0; j < 7; ++j) {
        if (kB5[j] != 0.0) x_hat += (h * kB5[j]) * k[j];
      }
      double err = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        Scalar e{};
        for (int j = 0; j < 7; ++j) e += (kB5[j] - kB4[j]) * k[j](i);
        const double scale = abs_tol_ + rel_tol_ * std::max(std::abs(x(i)), std::abs(x_hat(i)));
        const double r = std::abs(h * e) / scale;
        err += r * r;
      }
      err = std::sqrt(err / double(n));
      if (err <= 1.0) {
        t += h;
        x.swap(x_hat);
        k[0].swap(k[6]);  // FSAL
        rejected_in_a_row = 0;
      } else if (++rejected_in_a_row > 30) {
        throw NumericalError("adaptive-rk: persistent step rejection");
      }
      const double factor =
          std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
      h *= factor;
      if (!(h > 0.0) || !std::isfinite(h)) {
        throw NumericalError("adaptive-rk: step size underflow");
      }
    }
  }

 private:
  double initial_step(const DenseVector<Scalar>& x, const DenseVector<Scalar>& dx,
                      double t_span) const {
    const double d0 = x.norm();
    const double d1 = dx.norm();
    double h = (d1 > 1e-300) ? 0.01 * d0 / d1 : t_span * 1e-6;
    if (!(h > 0.0)) h = t_span * 1e-6;
    return std::min(h, t_span);
  }

  static constexpr double kA[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
  };
  static constexpr double kB5[7] = {35.0 / 384,     0.0,       500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784, 11.0 / 84, 0.0};
  static constexpr double kB4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695,
                                    393.0 / 640,       -92097.0 / 339200,
                                    187.0 / 2100,      1.0 / 40};

  const RowSparse<Scalar>& a_;
  double rel_tol_;
  double abs_tol_;
};

template <typename Scalar>
struct TypedObservables {
  DenseVector<Scalar> trace;
  DenseVector<Scalar> jz;
  std::vector<DenseVector<Scalar>> monitors;
};

// Shared sampling loop for the iterative (Krylov / RK) engines.
template <typename Scalar>
void run_iterative(const RowSparse<Scalar>& a, DenseVector<Scalar> x,
                   const PropagationSpec& spec, Method method,
                   const TypedObservables<Scalar>& obs, TimeSeries& series,
                   std::vector<double>& monitor_peaks) {
  KrylovOptions krylov_options;
  krylov_options.subspace_dim = spec.krylov_dim;
  krylov_options.tol = spec.rel_tol;

  for (size_t i = 0; i < spec.t_grid.size(); ++i) {
    const double dt = (i == 0) ? spec.t_grid[0] : spec.t_grid[i] - spec.t_grid[i - 1];
    if (dt > 0.0) {
      if (method == Method::KrylovExpmAction) {
        x = krylov_expv<Scalar>(a, x, dt, krylov_options);
      } else {
        DormandPrince<Scalar> stepper(a, spec.rel_tol, spec.abs_tol);
        stepper.advance(x, dt);
      }
    }
    series.jz[i] = std::real(contract<Scalar>(obs.jz, x));
    series.trace[i] = std::real(contract<Scalar>(obs.trace, x));
    series.purity[i] = x.squaredNorm();
    for (size_t mon = 0; mon < obs.monitors.size(); ++mon) {
      monitor_peaks[mon] =
          std::max(monitor_peaks[mon], std::real(contract<Scalar>(obs.monitors[mon], x)));
    }
  }
}

// Hermitian-adapted real coordinates: for a conjugation pairing p (an
// involution), states with x[p(i)] = conj(x[i]) map to real vectors via
//   y_i = (x_i + x_p)/sqrt(2),  y_p = -i (x_i - x_p)/sqrt(2)   (i < p)
// and a Hermiticity-preserving generator becomes a real matrix.
struct RealizedProblem {
  RowSparse<double> generator;
  bool ok = false;
};

constexpr double kRealTol = 1e-11;

bool vector_to_real(const CVector& x, const HermitianPairing& pairing, RVector& out,
                    bool transpose_rule) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Eigen::Index n = x.size();
  out.resize(n);
  const double scale = x.cwiseAbs().maxCoeff() + 1e-300;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto p = pairing[static_cast<size_t>(i)];
    Complex value;
    if (p == i) {
      value = x(i);
    } else if (i < p) {
      value = (x(i) + x(p)) * inv_sqrt2;
    } else {
      // covectors transform with B^T, states with B^dagger
      value = transpose_rule ? Complex(0, 1) * (x(p) - x(i)) * inv_sqrt2
                             : Complex(0, -1) * (x(p) - x(i)) * inv_sqrt2;
    }
    if (std::abs(std::imag(value)) > kRealTol * scale) return false;
    out(i) = std::real(value);
  }
  return true;
}

RealizedProblem realify_generator(const SparseSuperoperator& liouvillian,
                                  const HermitianPairing& pairing) {
  RealizedProblem result;
  const Eigen::Index n = liouvillian.rows();
  if (static_cast<Eigen::Index>(pairing.size()) != n) return result;

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  SparseSuperoperator b(n, n);
  {
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<size_t>(2 * n));
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto p = pairing[static_cast<size_t>(i)];
      if (p == i) {
        triplets.emplace_back(i, i, Complex(1.0, 0.0));
      } else if (i < p) {
        triplets.emplace_back(i, i, Complex(inv_sqrt2, 0.0));
        triplets.emplace_back(p, i, Complex(inv_sqrt2, 0.0));
      } else {
        triplets.emplace_back(p, i, Complex(0.0, inv_sqrt2));
        triplets.emplace_back(i, i, Complex(0.0, -inv_sqrt2));
      }
    }
    b.setFromTriplets(triplets.begin(), triplets.end());
  }

  const SparseSuperoperator transformed = b.adjoint() * (liouvillian * b).eval();
  double worst_abs = 0.0, worst_imag = 0.0;
  for (int k = 0; k < transformed.outerSize(); ++k) {
    for (SparseSuperoperator::InnerIterator it(transformed, k); it; ++it) {
      worst_abs = std::max(worst_abs, std::abs(it.value()));
      worst_imag = std::max(worst_imag, std::abs(std::imag(it.value())));
    }
  }
  if (worst_imag > kRealTol * (worst_abs + 1e-300)) return result;

  std::vector<Eigen::Triplet<double>> real_triplets;
  real_triplets.reserve(static_cast<size_t>(transformed.nonZeros()));
  for (int k = 0; k < transformed.outerSize(); ++k) {
    for (SparseSuperoperator::InnerIterator it(transformed, k); it; ++it) {
      if (std::real(it.value()) != 0.0) {
        real_triplets.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                                   std::real(it.value()));
      }
    }
  }
  result.generator.resize(n, n);
  result.generator.setFromTriplets(real_triplets.begin(), real_triplets.end());
  result.generator.makeCompressed();
  result.ok = true;
  return result;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::Auto: return "auto";
    case Method::DenseExpm: return "dense-expm";
    case Method::KrylovExpmAction: return "krylov-expm-action";
    case Method::AdaptiveRK: return "adaptive-rk";
  }
  return "?";
}

void PropagationSpec::validate() const {
  if (t_grid.empty()) throw ParameterError("PropagationSpec: empty time grid");
  if (t_grid.front() < 0.0) throw ParameterError("PropagationSpec: t_grid[0] < 0");
  for (size_t i = 1; i < t_grid.size(); ++i) {
    if (t_grid[i] <= t_grid[i - 1]) {
      throw ParameterError("PropagationSpec: t_grid must be strictly increasing");
    }
  }
  if (rel_tol <= 0.0 || abs_tol <= 0.0) {
    throw ParameterError("PropagationSpec: tolerances must be positive");
  }
  if (krylov_dim < 2) throw ParameterError("PropagationSpec: krylov_dim < 2");
}

std::vector<double> PropagationSpec::linear_grid(double t_max, int n_samples) {
  if (t_max <= 0.0 || n_samples < 2) throw ParameterError("linear_grid: bad arguments");
  std::vector<double> grid(static_cast<size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) grid[size_t(i)] = t_max * i / (n_samples - 1);
  return grid;
}

std::vector<double> PropagationSpec::log_grid(double t_max, int n_samples, double decades) {
  if (t_max <= 0.0 || n_samples < 2 || decades <= 0.0) {
    throw ParameterError("log_grid: bad arguments");
  }
  std::vector<double> grid(static_cast<size_t>(n_samples));
  grid[0] = 0.0;
  const double log_max = std::log10(t_max);
  for (int i = 1; i < n_samples; ++i) {
    grid[size_t(i)] = std::pow(10.0, log_max - decades * (n_samples - 1 - i) / (n_samples - 1));
  }
  return grid;
}

TimeSeries evolve(const SparseSuperoperator& liouvillian, const CVector& x0,
                  const PropagationSpec& spec, const Observables& observables,
                  const HermitianPairing* pairing) {
  spec.validate();
  const Eigen::Index dim = x0.size();
  if (liouvillian.rows() != dim || liouvillian.cols() != dim) {
    throw ParameterError("evolve: generator/state dimension mismatch");
  }
  if (observables.trace.size() != dim || observables.jz.size() != dim) {
    throw ParameterError("evolve: observable dimension mismatch");
  }

  Method method = spec.method;
  if (method == Method::Auto) {
    // Dense exponentials pay off when segment propagators are reused; a log
    // grid has all-distinct steps and is better served by Krylov action.
    size_t distinct_steps = 0;
    double prev_t = 0.0, prev_dt = -1.0;
    for (const double t : spec.t_grid) {
      const double dt = t - prev_t;
      if (dt > 0.0 && dt != prev_dt) ++distinct_steps;
      prev_dt = dt;
      prev_t = t;
    }
    const bool dense_pays = dim <= 64 || distinct_steps <= 8;
    method = (dim < kDenseLimit && dense_pays) ? Method::DenseExpm
                                               : Method::KrylovExpmAction;
  }

  const auto t_start = std::chrono::steady_clock::now();
  TimeSeries series;
  series.method_used = to_string(method);
  series.times = spec.t_grid;
  const size_t n_samples = spec.t_grid.size();
  series.jz.resize(n_samples);
  series.trace.resize(n_samples);
  series.purity.resize(n_samples);
  std::vector<double> monitor_peaks(observables.monitors.size(), 0.0);

  if (method == Method::DenseExpm) {
    const CMatrix dense(liouvillian);
    CMatrix segment_propagator;
    double cached_dt = -1.0;
    CVector x = x0;
    for (size_t i = 0; i < n_samples; ++i) {
      const double dt = (i == 0) ? spec.t_grid[0] : spec.t_grid[i] - spec.t_grid[i - 1];
      if (dt > 0.0) {
        if (dt != cached_dt) {
          segment_propagator = (dt * dense).exp();
          cached_dt = dt;
        }
        x = segment_propagator * x;
      }
      series.jz[i] = std::real(contract<Complex>(observables.jz, x));
      series.trace[i] = std::real(contract<Complex>(observables.trace, x));
      series.purity[i] = x.squaredNorm();
      for (size_t mon = 0; mon < observables.monitors.size(); ++mon) {
        monitor_peaks[mon] =
            std::max(monitor_peaks[mon],
                     std::real(contract<Complex>(observables.monitors[mon].covector, x)));
      }
    }
  } else {
    // Try the Hermitian-adapted real representation first.
    bool realized = false;
    if (pairing != nullptr) {
      RealizedProblem real_problem = realify_generator(liouvillian, *pairing);
      if (real_problem.ok) {
        TypedObservables<double> obs;
        RVector x_real;
        bool convertible = vector_to_real(x0, *pairing, x_real, false) &&
                           vector_to_real(observables.trace, *pairing, obs.trace, true) &&
                           vector_to_real(observables.jz, *pairing, obs.jz, true);
        for (const Monitor& monitor : observables.monitors) {
          RVector cov;
          if (!convertible) break;
          convertible = vector_to_real(monitor.covector, *pairing, cov, true);
          if (convertible) obs.monitors.push_back(std::move(cov));
        }
        if (convertible) {
          run_iterative<double>(real_problem.generator, std::move(x_real), spec, method,
                                obs, series, monitor_peaks);
          series.method_used += " (real)";
          realized = true;
        }
      }
    }
    if (!realized) {
      RowSparse<Complex> row_major(liouvillian);
      row_major.makeCompressed();
      TypedObservables<Complex> obs;
      obs.trace = observables.trace;
      obs.jz = observables.jz;
      for (const Monitor& monitor : observables.monitors) {
        obs.monitors.push_back(monitor.covector);
      }
      run_iterative<Complex>(row_major, x0, spec, method, obs, series, monitor_peaks);
    }
  }

  const double trace0 = std::real(contract<Complex>(observables.trace, x0));
  double worst_drift = 0.0;
  for (const double tr : series.trace) worst_drift = std::max(worst_drift, std::abs(tr - trace0));
  if (worst_drift > 1e-6) {
    series.warnings.push_back("trace drift " + std::to_string(worst_drift) +
                              " exceeds 1e-6");
  }
  for (size_t mon = 0; mon < observables.monitors.size(); ++mon) {
    const Monitor& monitor = observables.monitors[mon];
    if (monitor_peaks[mon] > monitor.threshold) {
      series.warnings.push_back(monitor.name + " reached " +
                                std::to_string(monitor_peaks[mon]) + " (threshold " +
                                std::to_string(monitor.threshold) + ")");
    }
  }

  series.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return series;
}

CVector stationary_state(const SparseSuperoperator& liouvillian, const CVector& trace_cov,
                         const std::optional<CVector>& initial, double tol) {
  const Eigen::Index dim = liouvillian.rows();
  if (liouvillian.cols() != dim || trace_cov.size() != dim) {
    throw ParameterError("stationary_state: dimension mismatch");
  }

  if (dim < kDenseLimit) {
    const CMatrix dense(liouvillian);
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(dense);
    cod.setThreshold(1e-10);
    const Eigen::Index kernel_dim = dim - cod.rank();
    if (kernel_dim == 1) {
      const CMatrix kernel = cod.matrixZ().adjoint().rightCols(1);
      CVector x = kernel.col(0);
      const Complex tr = trace_cov.cwiseProduct(x).sum();
      if (std::abs(tr) < 1e-12) {
        throw NumericalError("stationary_state: kernel vector carries no trace");
      }
      return CVector(x / tr);
    }
    if (kernel_dim == 0) {
      throw NumericalError("stationary_state: no kernel found");
    }
    // Degenerate kernel: project the supplied state by long-time evolution.
  }
  if (!initial) {
    throw ParameterError(
        "stationary_state: degenerate or large problem needs an initial state");
  }

  RowSparse<Complex> row_major(liouvillian);
  row_major.makeCompressed();
  double norm_scale = 0.0;
  for (Eigen::Index r = 0; r < row_major.rows(); ++r) {
    for (RowSparse<Complex>::InnerIterator it(row_major, r); it; ++it) {
      norm_scale = std::max(norm_scale, std::abs(it.value()));
    }
  }
  if (norm_scale == 0.0) return *initial;  // L = 0: everything is stationary

  CVector x = *initial;
  CVector residual(dim);
  double horizon = 1.0 / norm_scale;
  KrylovOptions options;
  options.tol = std::min(tol, 1e-10);
  for (int iter = 0; iter < 80; ++iter) {
    x = krylov_expv<Complex>(row_major, x, horizon, options);
    sparse_matvec(row_major, x, residual);
    if (residual.norm() <= tol * norm_scale * x.norm()) {
      const Complex tr = trace_cov.cwiseProduct(x).sum();
      if (std::abs(tr) < 1e-12) {
        throw NumericalError("stationary_state: propagated state lost its trace");
      }
      return CVector(x / tr);
    }
    horizon *= 2.0;
  }
  throw NumericalError("stationary_state: long-time propagation did not settle");
}

}  // namespace dickecool
