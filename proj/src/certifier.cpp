#include "steercert/certifier.hpp"

#include <cmath>

#include "steercert/states.hpp"

namespace steercert {

double graph_commutation_residual(const CMatrix& b0, const CMatrix& b1,
                                  int gamma, int d) {
  if (!is_unitary(b0, 1e-8) || !is_unitary(b1, 1e-8))
    throw std::invalid_argument("graph_commutation_residual: non-unitary input");
  const CMatrix p = mat_power(b0, gamma);
  return max_abs(p * b1 - omega_pow(d, gamma) * (b1 * p));
}

double anticommutation_residual(const CMatrix& b0, const CMatrix& b1) {
  if (!is_unitary(b0, 1e-8) || !is_unitary(b1, 1e-8))
    throw std::invalid_argument("anticommutation_residual: non-unitary input");
  const CMatrix id = CMatrix::Identity(b0.rows(), b0.cols());
  if (max_abs(b0 * b0 - id) > 1e-8 || max_abs(b1 * b1 - id) > 1e-8)
    throw std::invalid_argument("anticommutation_residual: input is not an involution");
  return max_abs(b0 * b1 + b1 * b0);
}

namespace {

// (op ⊗ I_anc) |psi> without materializing the enlarged matrix.
CVector apply_with_ancilla(const CVector& psi, const CMatrix& op, int anc) {
  if (anc == 1) return op * psi;
  return apply_local(psi, {static_cast<int>(op.rows()), anc}, 0, op);
}

}  // namespace

std::vector<double> stabilization_residuals(const SteeringFunctional& f,
                                            const CVector& psi) {
  const long long dim = f.scenario.total_dim();
  if (psi.size() % dim != 0)
    throw std::invalid_argument("stabilization_residuals: dimension mismatch");
  const int anc = static_cast<int>(psi.size() / dim);
  std::vector<double> out;
  out.reserve(f.conditions.size());
  for (const auto& group : f.conditions) {
    const CMatrix c = realize_terms(group, f.scenario);
    out.push_back((apply_with_ancilla(psi, c, anc) - psi).norm());
  }
  return out;
}

CanonicalForm canonical_form(const CMatrix& b0, const CMatrix& b1, int d,
                             double tol) {
  const Eigen::Index dim = b0.rows();
  if (b1.rows() != dim || dim % d != 0)
    throw std::invalid_argument("canonical_form: dimension not divisible by d");
  if (graph_commutation_residual(b0, b1, 1, d) > tol)
    throw std::runtime_error("canonical_form: commutation relation violated");
  const Eigen::Index m = dim / d;

  // spectral projector of b0 onto the ω^0 eigenspace; the relation forces
  // every eigenspace to carry the same dimension m
  CMatrix pi0 = CMatrix::Zero(dim, dim);
  CMatrix pw = CMatrix::Identity(dim, dim);
  for (int k = 0; k < d; ++k) {
    pi0 += pw;
    pw = pw * b0;
  }
  pi0 /= static_cast<double>(d);
  if (std::abs(pi0.trace().real() - static_cast<double>(m)) > 0.5)
    throw std::runtime_error(
        "canonical_form: eigenspace dimensions are unequal, pair not certifiable");

  Eigen::ColPivHouseholderQR<CMatrix> qr(pi0);
  CMatrix w0 = qr.householderQ() * CMatrix::Identity(dim, m);

  CMatrix w(dim, dim);
  CMatrix block = w0;
  for (int j = 0; j < d; ++j) {
    w.block(0, static_cast<Eigen::Index>(j) * m, dim, m) = block;
    block = b1 * block;
  }
  if (!is_unitary(w, std::max(100.0 * tol, 1e-8)))
    throw std::runtime_error("canonical_form: orbit basis failed to close");

  // re-unitarize while preserving column phases (R has positive diagonal
  // only up to sign)
  Eigen::HouseholderQR<CMatrix> wqr(w);
  CMatrix q = wqr.householderQ();
  CMatrix r = q.adjoint() * w;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex rd = r(i, i);
    q.col(i) *= rd / std::abs(rd);
  }

  CanonicalForm out;
  out.u = q.adjoint();
  out.junk_dim = static_cast<int>(m);

  const CMatrix idm = CMatrix::Identity(m, m);
  const double r0 = max_abs(out.u * b0 * out.u.adjoint() - kron2(gen_pauli_z(d), idm));
  const double r1 = max_abs(out.u * b1 * out.u.adjoint() - kron2(gen_pauli_x(d), idm));
  if (r0 > 10.0 * tol || r1 > 10.0 * tol)
    throw std::runtime_error("canonical_form: conjugation residual above tolerance");
  return out;
}

std::vector<double> w_amplitude_recovery(const CMatrix& rho_kept,
                                         int n_parties, double tol) {
  const long long dim = 1LL << n_parties;
  if (rho_kept.rows() != dim)
    throw std::invalid_argument("w_amplitude_recovery: dimension is not 2^N");
  std::vector<double> alpha(n_parties, 0.0);
  double sector = 0.0;
  for (int l = 0; l < n_parties; ++l) {
    const long long idx = 1LL << (n_parties - 1 - l);
    const double p = std::max(0.0, rho_kept(idx, idx).real());
    alpha[l] = std::sqrt(p);
    sector += p;
  }
  if (std::abs(rho_kept.trace().real() - sector) > tol)
    throw std::runtime_error(
        "w_amplitude_recovery: support outside the single-excitation sector");
  const double norm = std::sqrt(sector);
  for (double& a : alpha) a /= norm;
  return alpha;
}

CertificationReport extract_and_compare(const CVector& psi, const Scenario& s,
                                        const FamilyParams& params,
                                        double tol, int ancilla_dim) {
  s.validate();
  check_state(psi);
  if (psi.size() != s.total_dim() * ancilla_dim)
    throw std::invalid_argument("extract_and_compare: state dimension mismatch");

  const SteeringFunctional f = build_functional(params, s);
  CertificationReport rep;
  rep.family = f.family;
  rep.beta_q = f.quantum_bound;

  const Complex val = psi.dot(apply_with_ancilla(psi, f.realized, ancilla_dim));
  rep.violation = val.real();
  rep.deficit = rep.beta_q - rep.violation;
  rep.condition_residuals = stabilization_residuals(f, psi);

  auto fail = [&](const std::string& what) {
    rep.certified = false;
    if (rep.failure.empty()) rep.failure = what;
  };

  if (rep.deficit > tol) fail("violation deficit above tolerance");
  for (double r : rep.condition_residuals)
    if (r > tol) fail("stabilization residual above tolerance");

  const int nb = s.n_parties - 1;
  std::vector<CanonicalForm> forms;
  for (int j = 0; j < nb; ++j) {
    const CMatrix& b0 = s.bobs[j][0];
    const CMatrix& b1 = s.bobs[j][1];
    double rel = 0.0;
    try {
      if (f.family == Family::w) {
        rel = anticommutation_residual(b0, b1);
        if (rel > tol) throw std::runtime_error("anticommutation violated");
        forms.push_back(canonical_form(b0, b1, 2, tol));
      } else if (f.family == Family::schmidt) {
        const CMatrix b0adj = b0.adjoint();
        rel = graph_commutation_residual(b0adj, b1, 1, s.d);
        forms.push_back(canonical_form(b0adj, b1, s.d, tol));
      } else {
        rel = graph_commutation_residual(b0, b1, 1, s.d);
        forms.push_back(canonical_form(b0, b1, s.d, tol));
      }
    } catch (const std::exception&) {
      rep.relation_residuals.push_back(rel);
      fail("observable relations of Bob " + std::to_string(j + 1) + " violated");
      return rep;
    }
    rep.relation_residuals.push_back(rel);
    if (rel > tol) fail("commutation residual above tolerance");
  }

  std::vector<int> dims{s.d};
  for (int j = 0; j < nb; ++j) dims.push_back(s.bob_dims[j]);
  if (ancilla_dim > 1) dims.push_back(ancilla_dim);

  CVector phi = psi;
  for (int j = 0; j < nb; ++j) {
    phi = apply_local(phi, dims, j + 1, forms[j].u);
    rep.extraction_unitaries.push_back(forms[j].u);
    rep.junk_dims.push_back(forms[j].junk_dim);
  }

  // split each Bob slot into its recovered d factor and its junk factor
  std::vector<int> split_dims{s.d};
  std::vector<int> keep{0}, junk;
  for (int j = 0; j < nb; ++j) {
    keep.push_back(static_cast<int>(split_dims.size()));
    split_dims.push_back(s.d);
    junk.push_back(static_cast<int>(split_dims.size()));
    split_dims.push_back(forms[j].junk_dim);
  }
  if (ancilla_dim > 1) {
    junk.push_back(static_cast<int>(split_dims.size()));
    split_dims.push_back(ancilla_dim);
  }

  const CMatrix rho_kept = partial_trace(phi, split_dims, keep);
  long long junk_total = 1;
  for (int j : junk) junk_total *= split_dims[j];
  rep.junk_state = junk_total > 1 ? partial_trace(phi, split_dims, junk)
                                  : CMatrix::Ones(1, 1);

  const CVector ref = reference_state(params);
  rep.fidelity_to_reference = fidelity(rho_kept, ref);
  if (rep.fidelity_to_reference < 1.0 - tol) fail("fidelity below threshold");

  if (f.family == Family::w) {
    try {
      rep.recovered_alpha = w_amplitude_recovery(rho_kept, s.n_parties, tol);
    } catch (const std::exception&) {
      fail("single-excitation support check failed");
    }
  }

  rep.certified = rep.failure.empty();
  return rep;
}

std::pair<CVector, int> purify(const CMatrix& rho, double cutoff) {
  check_density(rho);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  std::vector<int> support;
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    if (es.eigenvalues()(i) > cutoff) support.push_back(static_cast<int>(i));
  const int rank = static_cast<int>(support.size());
  if (rank == 0) throw std::invalid_argument("purify: zero matrix");
  CVector psi = CVector::Zero(rho.rows() * rank);
  for (int a = 0; a < rank; ++a) {
    const double lam = es.eigenvalues()(support[a]);
    const CVector v = es.eigenvectors().col(support[a]);
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
      psi(i * rank + a) = std::sqrt(lam) * v(i);
  }
  psi /= psi.norm();
  return {psi, rank};
}

CertificationReport extract_and_compare(const CMatrix& rho, const Scenario& s,
                                        const FamilyParams& params, double tol) {
  auto [psi, rank] = purify(rho);
  return extract_and_compare(psi, s, params, tol, rank);
}

}  // namespace steercert
