#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace steercert {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Default max-norm tolerance for structural checks (unitarity, Hermiticity).
inline constexpr double kDefaultTol = 1e-9;

inline Complex omega(int d) {
  return std::polar(1.0, 2.0 * M_PI / static_cast<double>(d));
}

/// ω^k for integer k (k may be negative).
inline Complex omega_pow(int d, long long k) {
  long long r = k % d;
  if (r < 0) r += d;
  return std::polar(1.0, 2.0 * M_PI * static_cast<double>(r) / d);
}

inline double max_abs(const CMatrix& m) {
  return m.cwiseAbs().maxCoeff();
}

inline bool is_unitary(const CMatrix& u, double tol = 1e-10) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())) <= tol;
}

inline bool is_hermitian(const CMatrix& h, double tol = 1e-10) {
  if (h.rows() != h.cols()) return false;
  return max_abs(h - h.adjoint()) <= tol;
}

/// Generalized Pauli clock matrix Z = diag(1, ω, ..., ω^{d-1}).
CMatrix gen_pauli_z(int d);

/// Generalized Pauli shift matrix X|i> = |i+1 mod d>.
/// Together they obey the Weyl relation Z X = ω X Z.
CMatrix gen_pauli_x(int d);

/// Kronecker product of two matrices, first factor most significant.
CMatrix kron2(const CMatrix& a, const CMatrix& b);

/// Kronecker product in party order (slot 0 first). Throws on empty input.
CMatrix kron(const std::vector<CMatrix>& factors);

/// U^k for unitary U; negative k means powers of the adjoint.
CMatrix mat_power(const CMatrix& u, long long k);

/// O + O† for a square matrix.
CMatrix hermitize(const CMatrix& o);

/// Largest eigenvalue of a Hermitian matrix.
double max_eigenvalue(const CMatrix& h, double tol = 1e-8);

/// Reduced density matrix over the subsystems listed in `keep`
/// (indices into `dims`, ascending order preserved).
CMatrix partial_trace(const CMatrix& rho, const std::vector<int>& dims,
                      const std::vector<int>& keep);

/// Reduced density matrix of a pure state; avoids forming |psi><psi|.
CMatrix partial_trace(const CVector& psi, const std::vector<int>& dims,
                      const std::vector<int>& keep);

/// <psi| rho |psi>.
double fidelity(const CMatrix& rho, const CVector& psi);

/// Applies a local operator on one tensor slot of a state vector without
/// materializing the full Kronecker matrix. `dims` lists per-slot dimensions.
CVector apply_local(const CVector& psi, const std::vector<int>& dims,
                    int slot, const CMatrix& op);

/// Spectral projector of a unitary U with U^d = 1 onto the ω^b eigenspace:
/// (1/d) Σ_k ω^{-bk} U^k.  Exact for exact inputs; robust to degeneracy.
CMatrix outcome_projector(const CMatrix& u, int d, int b);

/// Rescales a vector so its first entry of magnitude > cutoff is real positive.
CVector phase_normalize(const CVector& v, double cutoff = 1e-12);

void check_state(const CVector& psi, double tol = 1e-8);
void check_density(const CMatrix& rho, double tol = 1e-8);

}  // namespace steercert
