#pragma once

#include <string>

#include "steercert/bounds.hpp"

namespace steercert {

/// Residual of the twisted commutation relation B0^γ B1 = ω^γ B1 B0^γ
/// in max norm. Zero for (Z, X) at any γ.
double graph_commutation_residual(const CMatrix& b0, const CMatrix& b1,
                                  int gamma, int d);

/// ‖B0 B1 + B1 B0‖_max for a pair of unitary involutions.
double anticommutation_residual(const CMatrix& b0, const CMatrix& b1);

/// For each condition group C of the functional: ‖C ψ − ψ‖₂. All vanish at
/// exact maximal violation.
std::vector<double> stabilization_residuals(const SteeringFunctional& f,
                                            const CVector& psi);

struct CanonicalForm {
  CMatrix u;         // unitary with U B0 U† = Z⊗I, U B1 U† = X⊗I
  int junk_dim = 1;  // dim(B0) / d
};

/// Brings a pair of unitaries obeying B0 B1 = ω B1 B0 (and U^d = 1) to the
/// clock/shift product form. The ω^j eigenspaces of B0 are forced to share
/// one dimension m; the basis of the ω^0 eigenspace is fixed by QR, partners
/// come from the B1 orbit. Throws when the relation fails beyond tol or the
/// conjugation residuals exceed 10·tol.
CanonicalForm canonical_form(const CMatrix& b0, const CMatrix& b1, int d,
                             double tol = 1e-7);

struct CertificationReport {
  Family family = Family::graph;
  double violation = 0.0;
  double beta_q = 0.0;
  double deficit = 0.0;
  std::vector<double> condition_residuals;
  std::vector<double> relation_residuals;  // one per Bob
  std::vector<CMatrix> extraction_unitaries;
  std::vector<int> junk_dims;              // one per Bob, ancilla excluded
  double fidelity_to_reference = 0.0;
  CMatrix junk_state;                      // density on the traced factors
  std::vector<double> recovered_alpha;     // W family only
  bool certified = false;
  std::string failure;                     // first failing check, empty if none
};

/// Full certification pass: violation and deficit, stabilization and
/// per-Bob relation residuals, canonical-form extraction, junk factoring,
/// fidelity with the family reference state. `ancilla_dim` > 1 marks a
/// trailing purification factor treated as additional junk.
CertificationReport extract_and_compare(const CVector& psi, const Scenario& s,
                                        const FamilyParams& params,
                                        double tol = 1e-6, int ancilla_dim = 1);

/// Density-matrix entry point; purifies with a minimal ancilla first.
CertificationReport extract_and_compare(const CMatrix& rho, const Scenario& s,
                                        const FamilyParams& params,
                                        double tol = 1e-6);

/// Minimal purification: |Ψ⟩ = Σ √λ_i |v_i⟩|i⟩, ancilla dimension = rank.
std::pair<CVector, int> purify(const CMatrix& rho, double cutoff = 1e-12);

/// Amplitudes of a single-excitation qubit state read off the diagonal of
/// the extracted reduced density matrix. Throws when support leaks outside
/// the single-excitation sector beyond tol.
std::vector<double> w_amplitude_recovery(const CMatrix& rho_kept,
                                         int n_parties, double tol = 1e-6);

}  // namespace steercert
