#pragma once

#include <array>
#include <iosfwd>

#include "steercert/bounds.hpp"

namespace steercert {

/// Full joint distribution p(a, b⃗ | x, y⃗), two settings per party,
/// d outcomes per party. Party 0 (Alice) is the most significant digit in
/// both the settings index and the outcomes index.
struct CorrelationTable {
  int n_parties = 0;
  int d = 0;
  std::vector<double> p;  // size 2^N * d^N

  long long settings_count() const { return 1LL << n_parties; }
  long long outcomes_count() const;
  long long settings_index(const std::vector<int>& settings) const;
  long long outcomes_index(const std::vector<int>& outcomes) const;
  double& at(const std::vector<int>& settings, const std::vector<int>& outcomes);
  double at(const std::vector<int>& settings, const std::vector<int>& outcomes) const;

  /// Normalization, positivity, and no-signaling checks; throws on failure.
  void validate(double tol = 1e-8) const;
};

/// Default cap on party count for dense table generation.
inline constexpr int kMaxTableParties = 8;

/// Born-rule table: projective measurements obtained from the spectral
/// decomposition of each unitary observable (eigenvalue ω^b ↔ outcome b).
CorrelationTable born_table(const CMatrix& rho, const Scenario& s,
                            int max_parties = kMaxTableParties);

/// One hidden-variable branch of an LHS model.
struct LhsBranch {
  double weight = 0.0;
  CMatrix alice_state;                                  // d × d density matrix
  std::vector<std::array<std::vector<double>, 2>> bob_responses;  // p(b|y) rows
};

struct LHSModel {
  std::vector<LhsBranch> branches;
  void validate(int n_bobs, int d) const;
};

/// Deterministic single-branch model from an enumeration maximizer.
LHSModel strategy_model(const LhsStrategy& strat, int d);

CorrelationTable lhs_table(const LHSModel& m, const Scenario& s);

/// Generalized expectation values <A_{k|x} B_{l⃗|y⃗}>: the discrete Fourier
/// transform of the outcome distribution at each settings combination.
struct ExpectationTensor {
  int n_parties = 0;
  int d = 0;
  std::vector<Complex> e;  // [settings][powers], same packing as the table
  Complex at(const std::vector<int>& settings, const std::vector<int>& powers) const;
};

ExpectationTensor generalized_expectations(const CorrelationTable& t);

/// Inverse transform; exact round trip with generalized_expectations.
CorrelationTable expectations_to_table(const ExpectationTensor& e);

/// Evaluates the functional from correlation data alone.
double functional_value_from_table(const SteeringFunctional& f,
                                   const CorrelationTable& t);

/// v |ψ><ψ| + (1-v) I/dim.
CMatrix depolarize(const CVector& psi, double v);

/// Multinomial finite-statistics emulation, one draw batch per settings row.
CorrelationTable sample_table(const CorrelationTable& t, long long shots,
                              std::uint64_t seed);

void write_table_csv(const CorrelationTable& t, std::ostream& os);
CorrelationTable read_table_csv(std::istream& is);

}  // namespace steercert
