#pragma once

#include <optional>

#include "steercert/operators.hpp"

namespace steercert {

struct OptimizerConfig {
  int restarts = 64;
  int iterations = 200;
  std::uint64_t seed = 12345;
};

struct BoundReport {
  Family family = Family::graph;
  double beta_q = 0.0;
  std::optional<double> lhs_upper;  // Fact-style optimization; absent for W
  std::optional<double> lhs_exact;  // deterministic-strategy enumeration
  double gap = 0.0;                 // beta_q - best available LHS candidate
  int restarts = 0;
  long long strategy_count = 0;
};

/// <psi| realized(F) |psi>.
double quantum_value(const SteeringFunctional& f, const CVector& psi);

/// Tr[rho realized(F)].
double quantum_value(const SteeringFunctional& f, const CMatrix& rho);

/// Upper bound on the graph-family LHS value:
/// max over Alice states of 2|<X>| + 2 Σ_{j∈n(0)} |<Z^{γ_{j,0}}>|, plus
/// 2(N - deg(0) - 1). The state maximization is folded into a phase
/// optimization over λ_max(Σ_t e^{iφ_t} O_t + h.c.).
double lhs_upper_graph(const Multigraph& g, const OptimizerConfig& cfg = {});

/// Upper bound on the Schmidt-family LHS value via the |η|-optimization
/// over the nonnegative unit sphere.
double lhs_upper_schmidt(const SchmidtParams& p, const OptimizerConfig& cfg = {});

struct LhsStrategy {
  double value = 0.0;
  std::vector<std::array<int, 2>> bob_outcomes;  // per Bob, outcome per setting
  CVector alice_state;                            // maximizing Alice eigenvector
  long long strategy_count = 0;
};

/// Exact LHS value by enumerating deterministic Bob responses; each strategy
/// collapses the functional to a d×d Hermitian Alice operator whose largest
/// eigenvalue is taken. Refuses when d^{2(N-1)} exceeds `cap`.
LhsStrategy lhs_exact_enumeration(const SteeringFunctional& f,
                                  long long cap = 1000000);

BoundReport bound_report(const FamilyParams& params,
                         const OptimizerConfig& cfg = {},
                         long long enum_cap = 1000000);

}  // namespace steercert
