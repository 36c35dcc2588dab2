#include "dickecool/krylov.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <unsupported/Eigen/MatrixFunctions>

namespace dickecool {

namespace {

template <typename Scalar>
void matvec_impl(const RowSparse<Scalar>& a, const DenseVector<Scalar>& x,
                 DenseVector<Scalar>& y) {
  const Scalar* values = a.valuePtr();
  const int* inner = a.innerIndexPtr();
  const int* outer = a.outerIndexPtr();
  const Eigen::Index rows = a.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < rows; ++r) {
    Scalar acc{};
    for (int k = outer[r]; k < outer[r + 1]; ++k) acc += values[k] * x(inner[k]);
    y(r) = acc;
  }
}

int thread_count() {
#ifdef _OPENMP
  return std::max(1, omp_get_max_threads());
#else
  return 1;
#endif
}

// h = V(:,0:k)^H w, parallel over row blocks with a final reduction.
template <typename Scalar>
void project_block(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& v, int k,
                   const DenseVector<Scalar>& w, DenseVector<Scalar>& h) {
  const Eigen::Index n = w.size();
  const int threads = thread_count();
  if (threads == 1 || n < 4096) {
    h.head(k).noalias() = v.leftCols(k).middleRows(0, n).adjoint() * w;
    return;
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> partial(k, threads);
#pragma omp parallel num_threads(threads)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    const Eigen::Index chunk = (n + threads - 1) / threads;
    const Eigen::Index row0 = std::min<Eigen::Index>(tid * chunk, n);
    const Eigen::Index len = std::min<Eigen::Index>(chunk, n - row0);
    if (len > 0) {
      partial.col(tid).noalias() =
          v.block(row0, 0, len, k).adjoint() * w.segment(row0, len);
    } else {
      partial.col(tid).setZero();
    }
  }
  h.head(k) = partial.rowwise().sum();
}

// w -= V(:,0:k) h, parallel over row blocks.
template <typename Scalar>
void subtract_block(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& v, int k,
                    const DenseVector<Scalar>& h, DenseVector<Scalar>& w) {
  const Eigen::Index n = w.size();
  const int threads = thread_count();
  if (threads == 1 || n < 4096) {
    w.noalias() -= v.leftCols(k) * h.head(k);
    return;
  }
#pragma omp parallel num_threads(threads)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    const Eigen::Index chunk = (n + threads - 1) / threads;
    const Eigen::Index row0 = std::min<Eigen::Index>(tid * chunk, n);
    const Eigen::Index len = std::min<Eigen::Index>(chunk, n - row0);
    if (len > 0) {
      w.segment(row0, len).noalias() -= v.block(row0, 0, len, k) * h.head(k);
    }
  }
}

double infinity_norm(const RowSparse<Complex>& a) {
  const Complex* values = a.valuePtr();
  const int* outer = a.outerIndexPtr();
  double norm = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    double row = 0.0;
    for (int k = outer[r]; k < outer[r + 1]; ++k) row += std::abs(values[k]);
    norm = std::max(norm, row);
  }
  return norm;
}

double infinity_norm(const RowSparse<double>& a) {
  const double* values = a.valuePtr();
  const int* outer = a.outerIndexPtr();
  double norm = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    double row = 0.0;
    for (int k = outer[r]; k < outer[r + 1]; ++k) row += std::abs(values[k]);
    norm = std::max(norm, row);
  }
  return norm;
}

// Round to two leading digits, as in the classic step-size bookkeeping.
double round_step(double t) {
  if (t <= 0.0) return t;
  const double scale = std::pow(10.0, std::floor(std::log10(t)) - 1.0);
  return std::floor(t / scale + 0.55) * scale;
}

}  // namespace

void sparse_matvec(const RowSparse<Complex>& a, const CVector& x, CVector& y) {
  matvec_impl(a, x, y);
}

void sparse_matvec(const RowSparse<double>& a, const RVector& x, RVector& y) {
  matvec_impl(a, x, y);
}

template <typename Scalar>
DenseVector<Scalar> krylov_expv(const RowSparse<Scalar>& a, const DenseVector<Scalar>& v,
                                double t, const KrylovOptions& options,
                                KrylovStats* stats) {
  using Vector = DenseVector<Scalar>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  if (a.rows() != a.cols() || a.rows() != v.size()) {
    throw ParameterError("krylov_expv: dimension mismatch");
  }
  const Eigen::Index n = a.rows();
  Vector w = v;
  if (t == 0.0) return w;

  double beta = w.norm();
  if (beta == 0.0) return w;

  const int m = static_cast<int>(std::min<Eigen::Index>(options.subspace_dim, n - 1));
  if (m < 1) {
    Vector out = v;
    out(0) *= std::exp(t * a.coeff(0, 0));
    return out;
  }
  const double anorm = std::max(infinity_norm(a), 1e-300);
  const double tol = std::max(options.tol, 1e-15);

  Matrix basis(n, m + 2);
  Matrix hess = Matrix::Zero(m + 2, m + 2);
  Vector work(n), candidate(n), coeffs(m + 2), extra(m + 2);

  double t_now = 0.0;
  double accumulated_error = 0.0;

  // First step size from the series truncation heuristic.
  const double xm0 = 1.0 / m;
  const double fact =
      std::pow((m + 1) / std::exp(1.0), m + 1) * std::sqrt(2.0 * M_PI * (m + 1));
  double t_next = round_step((1.0 / anorm) * std::pow(fact * tol / (4.0 * beta * anorm), xm0));

  long steps_taken = 0;
  while (t_now < t) {
    if (++steps_taken > options.max_steps) {
      throw NumericalError("krylov_expv: exceeded " + std::to_string(options.max_steps) +
                           " steps at t=" + std::to_string(t_now) + " of " +
                           std::to_string(t) + "; tolerance appears unreachable");
    }
    if (stats) ++stats->steps;
    double t_step = std::min(t - t_now, t_next);

    basis.col(0) = w / beta;
    hess.setZero();

    int mb = m;
    int k1 = 2;
    double avnorm = 0.0;
    bool happy = false;
    for (int j = 0; j < m; ++j) {
      candidate = basis.col(j);
      sparse_matvec(a, candidate, work);
      if (stats) ++stats->matvecs;
      const double norm_in = work.norm();
      project_block(basis, j + 1, work, coeffs);
      subtract_block(basis, j + 1, coeffs, work);
      // One DGKS re-orthogonalization pass when cancellation was severe.
      if (work.norm() < 0.70710678 * norm_in) {
        project_block(basis, j + 1, work, extra);
        subtract_block(basis, j + 1, extra, work);
        coeffs.head(j + 1) += extra.head(j + 1);
      }
      hess.col(j).head(j + 1) = coeffs.head(j + 1);
      const double s = work.norm();
      if (s < options.breakdown_tol) {
        k1 = 0;
        mb = j + 1;
        t_step = t - t_now;
        happy = true;
        break;
      }
      hess(j + 1, j) = Scalar(s);
      basis.col(j + 1) = work / s;
    }
    if (!happy) {
      candidate = basis.col(m);
      sparse_matvec(a, candidate, work);
      if (stats) ++stats->matvecs;
      avnorm = work.norm();
      hess(m + 1, m) = Scalar(1.0);
    }

    // Accept or shrink the step until the local error estimate passes.
    int rejections = 0;
    double err_loc = options.breakdown_tol;
    Matrix exp_hess;
    for (;;) {
      const int mx = mb + k1;
      exp_hess = Matrix(t_step * hess.topLeftCorner(mx, mx)).exp();
      if (k1 == 0) break;

      const double phi1 = std::abs(beta * exp_hess(m, 0));
      const double phi2 = std::abs(beta * exp_hess(m + 1, 0)) * avnorm;
      double xm;
      if (phi1 > 10.0 * phi2) {
        err_loc = phi2;
        xm = 1.0 / m;
      } else if (phi1 > phi2) {
        err_loc = phi1 * phi2 / (phi1 - phi2);
        xm = 1.0 / m;
      } else {
        err_loc = phi1;
        xm = 1.0 / (m - 1);
      }
      // Error budget proportional to elapsed time and the vector scale.
      if (err_loc <= options.step_slack * t_step * tol * beta) {
        t_next = options.safety * t_step * std::pow(t_step * tol * beta / err_loc, xm);
        t_next = round_step(t_next);
        break;
      }
      if (++rejections > options.max_rejections) {
        throw NumericalError(
            "krylov_expv: step rejected " + std::to_string(rejections) +
            " times (t_now=" + std::to_string(t_now) + ", t_step=" + std::to_string(t_step) +
            ", err=" + std::to_string(err_loc) + "); tolerance unreachable");
      }
      if (stats) ++stats->rejections;
      t_step = options.safety * t_step * std::pow(t_step * tol * beta / err_loc, xm);
      t_step = round_step(t_step);
      if (!(t_step > 0.0) || !std::isfinite(t_step)) {
        throw NumericalError("krylov_expv: step size underflow");
      }
    }

    const int mx = mb + std::max(0, k1 - 1);
    w.noalias() = basis.leftCols(mx) * (beta * exp_hess.topLeftCorner(mx, 1));
    beta = w.norm();
    if (!std::isfinite(beta)) {
      throw NumericalError("krylov_expv: propagated vector overflow");
    }
    accumulated_error += err_loc;
    t_now += t_step;
  }

  if (stats) stats->error_estimate = accumulated_error;
  return w;
}

template CVector krylov_expv<Complex>(const RowSparse<Complex>&, const CVector&, double,
                                      const KrylovOptions&, KrylovStats*);
template RVector krylov_expv<double>(const RowSparse<double>&, const RVector&, double,
                                     const KrylovOptions&, KrylovStats*);

}  // namespace dickecool
