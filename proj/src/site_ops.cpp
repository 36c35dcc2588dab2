#include "dickecool/site_ops.hpp"

namespace dickecool {

CMatrix sandwich_super(const CMatrix& a, const CMatrix& b) {
  const auto d = a.rows();
  if (a.cols() != d || b.rows() != d || b.cols() != d) {
    throw ParameterError("sandwich_super: operators must be square and equal-sized");
  }
  CMatrix s(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index ip = 0; ip < d; ++ip)
        for (Eigen::Index jp = 0; jp < d; ++jp)
          s(i * d + j, ip * d + jp) = a(i, ip) * std::conj(b(j, jp));
  return s;
}

CMatrix left_mult_super(const CMatrix& a) {
  return sandwich_super(a, CMatrix::Identity(a.rows(), a.cols()));
}

CMatrix right_mult_super(const CMatrix& b) {
  // rho -> rho B is the sandwich with B^dagger on the right slot.
  return sandwich_super(CMatrix::Identity(b.rows(), b.cols()), b.adjoint());
}

CMatrix dissipator_super(const CMatrix& l) {
  const CMatrix ldl = l.adjoint() * l;
  return sandwich_super(l, l) - 0.5 * (left_mult_super(ldl) + right_mult_super(ldl));
}

CMatrix commutator_super(const CMatrix& h) {
  const Complex mi(0.0, -1.0);
  return mi * (left_mult_super(h) - right_mult_super(h));
}

CVector vectorize_density(const CMatrix& rho) {
  const auto d = rho.rows();
  CVector v(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
  return v;
}

CMatrix unvectorize_density(const CVector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
  if (d * d != v.size()) throw ParameterError("unvectorize_density: length is not a square");
  CMatrix rho(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) rho(i, j) = v(i * d + j);
  return rho;
}

CVector observable_covector_dense(const CMatrix& o) {
  const auto d = o.rows();
  CVector cov(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) cov(i * d + j) = o(j, i);
  return cov;
}

CVector trace_covector_dense(int dim) {
  CVector cov = CVector::Zero(static_cast<Eigen::Index>(dim) * dim);
  for (int i = 0; i < dim; ++i) cov(static_cast<Eigen::Index>(i) * dim + i) = 1.0;
  return cov;
}

CMatrix fock_lowering(int n_levels) {
  if (n_levels < 2) throw ParameterError("fock_lowering: need at least 2 levels");
  CMatrix a = CMatrix::Zero(n_levels, n_levels);
  for (int n = 1; n < n_levels; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

}  // namespace dickecool
