#include "dickecool/magnus.hpp"

#include <cmath>

namespace dickecool {

namespace {

Component plus_or_minus(int sign) {
  if (sign == +1) return Component::Plus;
  if (sign == -1) return Component::Minus;
  throw ParameterError("sign must be +1 or -1");
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

ABPair build_AB(const GeneratorCatalog& catalog, int sign) {
  const Component s = plus_or_minus(sign);
  const Component o = plus_or_minus(-sign);

  const auto& m_s = catalog.op(Family::M, s);
  const auto& n_s = catalog.op(Family::N, s);
  const auto& u_s = catalog.op(Family::U, s);
  const auto& v_s = catalog.op(Family::V, s);
  const auto& m_o = catalog.op(Family::M, o);
  const auto& n_o = catalog.op(Family::N, o);
  const auto& u_o = catalog.op(Family::U, o);
  const auto& v_o = catalog.op(Family::V, o);

  ABPair pair;
  pair.a = SparseSuperoperator(0.5 * (SparseSuperoperator(m_s * u_s) + u_s * m_s -
                                      v_o * u_s - n_o * m_s));
  pair.b = SparseSuperoperator(0.5 * (SparseSuperoperator(n_s * v_s) + v_s * n_s -
                                      u_o * v_s - m_o * n_s));
  pair.a.prune(Complex(0.0), 0.0);
  pair.b.prune(Complex(0.0), 0.0);
  return pair;
}

FrameGenerator::FrameGenerator(const GeneratorCatalog& catalog, const ModelParams& params) {
  params.validate();
  if (params.gamma_t2 <= 0.0) {
    throw ParameterError("FrameGenerator: gamma = 0 leaves the frame undefined");
  }
  gamma_cc_ = params.gamma_cc;
  nbar_ = params.nbar;
  gamma_ = params.gamma_t2;
  djm_ = collective_jump_dissipator(catalog, -1);
  djp_ = collective_jump_dissipator(catalog, +1);
  ab_minus_ = build_AB(catalog, -1);
  ab_plus_ = build_AB(catalog, +1);
}

SparseSuperoperator FrameGenerator::evaluate(double tau) const {
  const Complex up = std::polar(1.0, gamma_ * tau) - 1.0;    // e^{+i gamma tau} - 1
  const Complex down = std::polar(1.0, -gamma_ * tau) - 1.0;  // e^{-i gamma tau} - 1

  // G-(tau) carries (e^{-i gamma tau}-1) A- and (e^{+i gamma tau}-1) B-.
  SparseSuperoperator g = gamma_cc_ * (1.0 + nbar_) *
                          SparseSuperoperator(djm_ + down * ab_minus_.a + up * ab_minus_.b);
  if (nbar_ > 0.0) {
    g += SparseSuperoperator(gamma_cc_ * nbar_ *
                             SparseSuperoperator(djp_ + up * ab_plus_.a + down * ab_plus_.b));
  }
  return g;
}

SparseSuperoperator FrameGenerator::average_by_quadrature(int nodes) const {
  if (nodes < 2) throw ParameterError("average_by_quadrature: need at least 2 nodes");
  const double t = period();
  SparseSuperoperator sum = evaluate(0.0);  // trapezoid endpoints coincide by periodicity
  for (int k = 1; k < nodes; ++k) {
    sum += evaluate(t * k / nodes);
  }
  return SparseSuperoperator(sum / double(nodes));
}

SparseSuperoperator FrameGenerator::second_order_by_quadrature(int nodes) const {
  if (nodes < 2) throw ParameterError("second_order_by_quadrature: need at least 2 nodes");
  const double t = period();
  const double h = t / nodes;
  // D2 = (i / 2T) int_0^T ds1 int_0^s1 ds2 [G(s1), G(s2)], midpoint rule on
  // the triangle.
  const std::int64_t dim = djm_.rows();
  SparseSuperoperator acc(dim, dim);
  std::vector<SparseSuperoperator> samples;
  samples.reserve(static_cast<size_t>(nodes));
  for (int k = 0; k < nodes; ++k) samples.push_back(evaluate(h * (k + 0.5)));
  for (int i = 1; i < nodes; ++i) {
    for (int j = 0; j < i; ++j) {
      acc += SparseSuperoperator(samples[size_t(i)] * samples[size_t(j)] -
                                 samples[size_t(j)] * samples[size_t(i)]);
    }
  }
  const Complex prefactor = Complex(0.0, 1.0) / (2.0 * t) * h * h;
  return SparseSuperoperator(prefactor * acc);
}

SparseSuperoperator average_dissipator_first_order(const GeneratorCatalog& catalog,
                                                   const ModelParams& params) {
  params.validate();
  const ABPair minus = build_AB(catalog, -1);
  SparseSuperoperator d =
      params.gamma_cc * (1.0 + params.nbar) *
      SparseSuperoperator(collective_jump_dissipator(catalog, -1) - minus.a - minus.b);
  if (params.nbar > 0.0) {
    const ABPair plus = build_AB(catalog, +1);
    d += SparseSuperoperator(
        params.gamma_cc * params.nbar *
        SparseSuperoperator(collective_jump_dissipator(catalog, +1) - plus.a - plus.b));
  }
  d.prune(Complex(0.0), 0.0);
  return d;
}

SparseSuperoperator secular_dissipator_explicit(const GeneratorCatalog& catalog, int sign) {
  const Component s = plus_or_minus(sign);
  const Component o = plus_or_minus(-sign);

  const auto& m_s = catalog.op(Family::M, s);
  const auto& n_s = catalog.op(Family::N, s);
  const auto& u_s = catalog.op(Family::U, s);
  const auto& v_s = catalog.op(Family::V, s);
  const auto& m_o = catalog.op(Family::M, o);
  const auto& n_o = catalog.op(Family::N, o);
  const auto& u_o = catalog.op(Family::U, o);
  const auto& v_o = catalog.op(Family::V, o);

  SparseSuperoperator g = SparseSuperoperator(u_s * n_s) + n_s * u_s +
                          SparseSuperoperator(m_s * v_s) + v_s * m_s;
  g -= SparseSuperoperator(SparseSuperoperator(u_o * u_s) + v_o * v_s +
                           SparseSuperoperator(m_o * m_s) + n_o * n_s);
  return SparseSuperoperator(0.5 * g);
}

std::vector<SparseSuperoperator> bch_nested_commutators(const GeneratorCatalog& catalog,
                                                        int sign, double gamma_t2,
                                                        int depth) {
  if (depth < 0 || depth > 8) throw ParameterError("bch_nested_commutators: depth in [0,8]");
  const SparseSuperoperator dephasing = dissipator_local_dephasing(catalog, gamma_t2);
  std::vector<SparseSuperoperator> terms;
  terms.reserve(static_cast<size_t>(depth) + 1);
  terms.push_back(collective_jump_dissipator(catalog, sign));
  for (int k = 1; k <= depth; ++k) {
    const SparseSuperoperator& prev = terms.back();
    terms.push_back(SparseSuperoperator(dephasing * prev - prev * dephasing));
  }
  return terms;
}

TcSuppressionReport check_tc_suppression(double gamma_t2, double g, int n_levels,
                                         double tolerance) {
  if (gamma_t2 <= 0.0) throw ParameterError("check_tc_suppression: gamma must be positive");
  TcSuppressionReport report;
  auto record = [&](std::string name, double deviation) {
    const bool pass = deviation <= tolerance;
    report.entries.push_back({std::move(name), deviation, pass});
    report.all_pass = report.all_pass && pass;
  };

  // Single-site doubled space. The dephasing superoperator and the
  // eigencomponents of the commutator superoperators S+- of -i[sigma_+-, .].
  const CMatrix dephasing = gamma_t2 * CMatrix(dissipator_super(0.5 * CMatrix(sigma_z())));
  const Complex mi(0.0, -1.0);

  struct Part {
    const char* name;
    CMatrix op;
    double frequency;  // [D_T2, op] = frequency * op
  };
  const CMatrix sp(sigma_plus()), sm(sigma_minus()), ep(projector_e()), em(projector_g());
  const std::vector<Part> parts = {
      // left-mult sigma+ = M+ + N+ seeds; right-mult sigma+ = U- + V- seeds.
      {"M+ component of left sigma+", sandwich_super(sp, ep), +0.5 * gamma_t2},
      {"N+ component of left sigma+", sandwich_super(sp, em), -0.5 * gamma_t2},
      {"U- component of right sigma+", sandwich_super(ep, sm), -0.5 * gamma_t2},
      {"V- component of right sigma+", sandwich_super(em, sm), +0.5 * gamma_t2},
      {"M- component of left sigma-", sandwich_super(sm, ep), -0.5 * gamma_t2},
      {"N- component of left sigma-", sandwich_super(sm, em), +0.5 * gamma_t2},
      {"U+ component of right sigma-", sandwich_super(ep, sp), +0.5 * gamma_t2},
      {"V+ component of right sigma-", sandwich_super(em, sp), -0.5 * gamma_t2},
  };
  for (const Part& part : parts) {
    const CMatrix commutator = dephasing * part.op - part.op * dephasing;
    record(std::string(part.name) + " eigenvalue " +
               (part.frequency > 0 ? "+gamma/2" : "-gamma/2"),
           max_abs(commutator - part.frequency * part.op));
  }

  // Composite N=1 spin + truncated cavity: period average of the
  // frame-transformed TC superoperator. In imaginary time the parts above
  // rotate as e^{+-i gamma tau / 2}; averaging over the doubled period
  // 4 pi / gamma must kill every term.
  const CMatrix a = fock_lowering(n_levels);
  const CMatrix ad = a.adjoint();
  const Eigen::Index cav_dim = a.rows() * a.rows();
  const Eigen::Index dim = 4 * cav_dim;

  auto kron_super = [&](const CMatrix& spin, const CMatrix& cav) {
    CMatrix out(dim, dim);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 4; ++j)
        out.block(i * cav_dim, j * cav_dim, cav_dim, cav_dim) = spin(i, j) * cav;
    return out;
  };

  struct FrameTerm {
    CMatrix op;
    double frequency;
  };
  std::vector<FrameTerm> frame_terms;
  const CMatrix left_a = left_mult_super(a), left_ad = left_mult_super(ad);
  const CMatrix right_a = right_mult_super(a), right_ad = right_mult_super(ad);
  // -i g (J+ a + J- adag) commutator split into the eight eigencomponents.
  frame_terms.push_back({mi * g * kron_super(sandwich_super(sp, ep), left_a), +0.5 * gamma_t2});
  frame_terms.push_back({mi * g * kron_super(sandwich_super(sp, em), left_a), -0.5 * gamma_t2});
  frame_terms.push_back({mi * g * kron_super(sandwich_super(sm, ep), left_ad), -0.5 * gamma_t2});
  frame_terms.push_back({mi * g * kron_super(sandwich_super(sm, em), left_ad), +0.5 * gamma_t2});
  frame_terms.push_back({-mi * g * kron_super(sandwich_super(ep, sm), right_a), -0.5 * gamma_t2});
  frame_terms.push_back({-mi * g * kron_super(sandwich_super(em, sm), right_a), +0.5 * gamma_t2});
  frame_terms.push_back({-mi * g * kron_super(sandwich_super(ep, sp), right_ad), +0.5 * gamma_t2});
  frame_terms.push_back({-mi * g * kron_super(sandwich_super(em, sp), right_ad), -0.5 * gamma_t2});

  // The decomposition must reassemble the static TC commutator at tau = 0.
  {
    const CMatrix h_tc = g * (kron_super(left_mult_super(sp), left_a) +
                              kron_super(left_mult_super(sm), left_ad) -
                              kron_super(right_mult_super(sp), right_a) -
                              kron_super(right_mult_super(sm), right_ad));
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (const auto& term : frame_terms) sum += term.op;
    record("eigencomponents reassemble S_TC", max_abs(sum - mi * h_tc));
  }

  const double period = 4.0 * M_PI / gamma_t2;
  const int nodes = 64;
  CMatrix average = CMatrix::Zero(dim, dim);
  for (int k = 0; k < nodes; ++k) {
    const double tau = period * k / nodes;
    CMatrix sample = CMatrix::Zero(dim, dim);
    for (const auto& term : frame_terms) {
      sample += std::polar(1.0, term.frequency * tau) * term.op;
    }
    average += sample;
  }
  average /= double(nodes);
  report.average_norm = max_abs(average);
  record("period average of frame S_TC vanishes", report.average_norm);

  return report;
}

}  // namespace dickecool
