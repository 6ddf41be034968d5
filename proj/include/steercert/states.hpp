#pragma once

#include <variant>
#include <vector>

#include "steercert/linalg.hpp"

namespace steercert {

/// Undirected multigraph with edge multiplicities in Z_d.
struct Multigraph {
  int n_vertices = 0;
  int d = 2;
  std::vector<std::vector<int>> gamma;  // symmetric, zero diagonal

  Multigraph() = default;
  Multigraph(int n, int d, bool allow_disconnected = false);

  void add_edge(int i, int j, int multiplicity = 1);
  void validate() const;  // symmetry, range, connectivity (unless bypassed)
  bool connected() const;

  std::vector<int> neighbors(int i) const;
  int degree(int i) const { return static_cast<int>(neighbors(i).size()); }

  /// Exploratory-use escape hatch; graphs built with it are not certifiable.
  bool allow_disconnected = false;
};

struct SchmidtParams {
  int d = 2;
  int n_parties = 2;
  std::vector<double> alpha;  // length d, all positive, sum of squares 1
  void validate() const;
};

struct WParams {
  int n_parties = 2;
  std::vector<double> alpha;  // length N, all positive, sum of squares 1
  void validate() const;
};

using FamilyParams = std::variant<Multigraph, SchmidtParams, WParams>;

/// |G> = Π CZ^γ |+>^N; dimension d^N, Alice = vertex 0 (most significant slot).
CVector graph_state(const Multigraph& g);

/// Stabilizer of vertex i: X at slot i, Z^γ at neighbors, identity elsewhere.
CMatrix stabilizer(const Multigraph& g, int i);

/// stabilizer(g, i) applied to psi without building the d^N × d^N matrix.
CVector stabilizer_apply(const Multigraph& g, int i, const CVector& psi);

struct StabilizerCheck {
  bool ok = false;
  std::vector<double> residuals;  // ||S_i psi - psi||_2 per operator
};

StabilizerCheck verify_stabilized(const CVector& psi, const std::vector<CMatrix>& ops,
                                  double tol = kDefaultTol);
StabilizerCheck verify_stabilized(const CVector& psi, const Multigraph& g,
                                  double tol = kDefaultTol);

/// Σ_i α_i |i>^{⊗N}.
CVector schmidt_state(const SchmidtParams& p);

/// Σ_l α_{l+1} |0...1_l...0>, excitation on slot l (slot 0 = Alice).
CVector w_state(const WParams& p);

CVector reference_state(const FamilyParams& params);

}  // namespace steercert
