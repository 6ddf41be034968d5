#pragma once

#include <array>
#include <optional>
#include <string>

#include "steercert/states.hpp"

namespace steercert {

enum class Family { graph, schmidt, w };

std::string family_name(Family f);

/// Measurement assignment: trusted Alice plus N-1 untrusted Bobs, two
/// settings each. Bob observables may act on a larger local dimension than d.
struct Scenario {
  int n_parties = 0;
  int d = 0;
  std::array<CMatrix, 2> alice;
  std::vector<std::array<CMatrix, 2>> bobs;
  std::vector<int> bob_dims;

  void validate(double tol = kDefaultTol) const;
  long long total_dim() const;
};

/// Reference assignment attaining the quantum bound for the given family.
/// Graph and W use (Z, X) on every Bob; the Schmidt family uses (Z†, X),
/// which is what the maximal-violation conditions single out.
Scenario ideal_scenario(const FamilyParams& params);

/// One local factor: observable at `setting` raised to `power` (0 = identity).
struct PartyOp {
  int setting = 0;
  int power = 0;
};

struct Term {
  Complex coeff;
  PartyOp alice;
  std::vector<PartyOp> bobs;
};

/// Weighted sum of tensor-product terms; realized densely at construction.
/// `conditions` groups terms into operators that must fix a maximally
/// violating state (the algebraic consequences used by the certifier).
struct SteeringFunctional {
  Family family = Family::graph;
  int d = 0;
  int n_parties = 0;
  Scenario scenario;
  std::vector<Term> terms;
  bool include_hc = false;
  double quantum_bound = 0.0;
  int term_count = 0;
  std::vector<std::vector<Term>> conditions;
  CMatrix realized;
};

/// Dense matrix of a term list under the scenario's observables (no h.c.).
CMatrix realize_terms(const std::vector<Term>& terms, const Scenario& s);

SteeringFunctional graph_steering_functional(const Multigraph& g, const Scenario& s);

struct SchmidtCoefficients {
  double gamma = 0.0;
  std::vector<Complex> delta;  // delta[0] == -1
};
SchmidtCoefficients schmidt_coefficients(const SchmidtParams& p);

SteeringFunctional schmidt_steering_functional(const SchmidtParams& p, const Scenario& s);

struct WCoefficients {
  std::vector<double> gamma;  // length N-1
  std::vector<double> delta;  // gamma_l^2 + delta_l^2 == 1
};
WCoefficients w_coefficients(const WParams& p);

/// P_l = (1/2^{N-2}) Π_{k≠l} (I + B_{k,0}), identity on Alice and Bob l.
/// Qubit family only (the B_{k,0} must be involutions).
CMatrix projector_Pl(const Scenario& s, int l);

SteeringFunctional w_steering_functional(const WParams& p, const Scenario& s);

SteeringFunctional build_functional(const FamilyParams& params, const Scenario& s);

}  // namespace steercert
