#include "steercert/operators.hpp"

#include <cmath>

namespace steercert {

std::string family_name(Family f) {
  switch (f) {
    case Family::graph: return "graph";
    case Family::schmidt: return "schmidt";
    case Family::w: return "w";
  }
  return "?";
}

void Scenario::validate(double tol) const {
  if (n_parties < 2 || d < 2) throw std::invalid_argument("Scenario: bad sizes");
  if (static_cast<int>(bobs.size()) != n_parties - 1 ||
      static_cast<int>(bob_dims.size()) != n_parties - 1)
    throw std::invalid_argument("Scenario: wrong number of Bobs");
  auto check_obs = [&](const CMatrix& u, int dim, const char* who) {
    if (u.rows() != dim || u.cols() != dim)
      throw std::invalid_argument(std::string("Scenario: ") + who + " has wrong dimension");
    if (!is_unitary(u, tol))
      throw std::invalid_argument(std::string("Scenario: ") + who + " is not unitary");
    if (max_abs(mat_power(u, d) - CMatrix::Identity(dim, dim)) > tol)
      throw std::invalid_argument(std::string("Scenario: ") + who + " does not satisfy U^d = 1");
  };
  check_obs(alice[0], d, "A_0");
  check_obs(alice[1], d, "A_1");
  for (int j = 0; j < n_parties - 1; ++j) {
    check_obs(bobs[j][0], bob_dims[j], "B_j0");
    check_obs(bobs[j][1], bob_dims[j], "B_j1");
  }
}

long long Scenario::total_dim() const {
  long long p = d;
  for (int m : bob_dims) p *= m;
  return p;
}

Scenario ideal_scenario(const FamilyParams& params) {
  Scenario s;
  bool schmidt = std::holds_alternative<SchmidtParams>(params);
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Multigraph>) {
          s.n_parties = p.n_vertices;
          s.d = p.d;
        } else if constexpr (std::is_same_v<T, SchmidtParams>) {
          s.n_parties = p.n_parties;
          s.d = p.d;
        } else {
          s.n_parties = p.n_parties;
          s.d = 2;
        }
      },
      params);
  const CMatrix z = gen_pauli_z(s.d), x = gen_pauli_x(s.d);
  s.alice = {z, x};
  const CMatrix b0 = schmidt ? CMatrix(z.adjoint()) : z;
  for (int j = 0; j < s.n_parties - 1; ++j) {
    s.bobs.push_back({b0, x});
    s.bob_dims.push_back(s.d);
  }
  return s;
}

CMatrix realize_terms(const std::vector<Term>& terms, const Scenario& s) {
  const long long dim = s.total_dim();
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const Term& t : terms) {
    if (static_cast<int>(t.bobs.size()) != s.n_parties - 1)
      throw std::invalid_argument("realize_terms: term party count mismatch");
    std::vector<CMatrix> factors;
    factors.reserve(s.n_parties);
    factors.push_back(t.alice.power == 0
                          ? CMatrix(CMatrix::Identity(s.d, s.d))
                          : mat_power(s.alice[t.alice.setting], t.alice.power));
    for (int j = 0; j < s.n_parties - 1; ++j) {
      const PartyOp& op = t.bobs[j];
      factors.push_back(op.power == 0
                            ? CMatrix(CMatrix::Identity(s.bob_dims[j], s.bob_dims[j]))
                            : mat_power(s.bobs[j][op.setting], op.power));
    }
    out += t.coeff * kron(factors);
  }
  return out;
}

namespace {

void finalize(SteeringFunctional& f) {
  CMatrix m = realize_terms(f.terms, f.scenario);
  f.realized = f.include_hc ? CMatrix(m + m.adjoint()) : m;
  if (!is_hermitian(f.realized, 1e-9))
    throw std::runtime_error("steering functional realization is not Hermitian");
}

}  // namespace

SteeringFunctional graph_steering_functional(const Multigraph& g, const Scenario& s) {
  g.validate();
  s.validate();
  if (s.n_parties != g.n_vertices || s.d != g.d)
    throw std::invalid_argument("graph_steering_functional: scenario/graph mismatch");
  const int n = g.n_vertices;
  SteeringFunctional f;
  f.family = Family::graph;
  f.d = g.d;
  f.n_parties = n;
  f.scenario = s;
  f.include_hc = true;
  f.quantum_bound = 2.0 * n;
  f.term_count = 2 * n;

  auto bob_slot = [](int vertex) { return vertex - 1; };

  // vertex 0: X_A ⊗ Π_{j∈n(0)} B_{j,0}^{γ_{0,j}}
  Term t0{1.0, {1, 1}, std::vector<PartyOp>(n - 1)};
  for (int j : g.neighbors(0)) t0.bobs[bob_slot(j)] = {0, g.gamma[0][j]};
  f.terms.push_back(t0);

  for (int j = 1; j < n; ++j) {
    Term t{1.0, {0, 0}, std::vector<PartyOp>(n - 1)};
    if (g.gamma[j][0] != 0) t.alice = {0, g.gamma[j][0]};  // Z_A^{γ_{j,0}}
    t.bobs[bob_slot(j)] = {1, 1};
    for (int jp : g.neighbors(j))
      if (jp != 0) t.bobs[bob_slot(jp)] = {0, g.gamma[j][jp]};
    f.terms.push_back(t);
  }

  for (const Term& t : f.terms) f.conditions.push_back({t});
  finalize(f);
  return f;
}

SchmidtCoefficients schmidt_coefficients(const SchmidtParams& p) {
  p.validate();
  const int d = p.d;
  double ratio_sum = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) ratio_sum += p.alpha[i] / p.alpha[j];
  SchmidtCoefficients c;
  c.gamma = d / ratio_sum;
  c.delta.assign(d, Complex(0.0));
  for (int k = 0; k < d; ++k) {
    Complex acc = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j)
          acc += (p.alpha[i] / p.alpha[j]) *
                 omega_pow(d, static_cast<long long>(k) * (d - j));
    c.delta[k] = -(c.gamma / d) * acc;
  }
  return c;
}

SteeringFunctional schmidt_steering_functional(const SchmidtParams& p, const Scenario& s) {
  p.validate();
  s.validate();
  if (s.d != p.d || s.n_parties != p.n_parties)
    throw std::invalid_argument("schmidt_steering_functional: scenario/params mismatch");
  const int d = p.d, n = p.n_parties;
  const SchmidtCoefficients c = schmidt_coefficients(p);

  SteeringFunctional f;
  f.family = Family::schmidt;
  f.d = d;
  f.n_parties = n;
  f.scenario = s;
  f.include_hc = false;  // the k-sum closes under conjugation
  f.quantum_bound = static_cast<double>((d - 1) * (n - 1) + 1);
  f.term_count = (d - 1) * (n + 1);

  std::vector<Term> t_group;  // the combined γ/δ operator fixes the state as a whole
  for (int k = 1; k < d; ++k) {
    for (int j = 0; j < n - 1; ++j) {
      Term t{1.0, {0, k}, std::vector<PartyOp>(n - 1)};
      t.bobs[j] = {0, k};
      f.terms.push_back(t);
      f.conditions.push_back({t});  // A_0^k ⊗ B_{j,0}^k fixes the state
    }
    Term tg{c.gamma, {1, k}, std::vector<PartyOp>(n - 1)};
    for (int j = 0; j < n - 1; ++j) tg.bobs[j] = {1, k};
    f.terms.push_back(tg);
    t_group.push_back(tg);

    Term td{c.delta[k], {0, k}, std::vector<PartyOp>(n - 1)};
    f.terms.push_back(td);
    t_group.push_back(td);
  }
  f.conditions.push_back(t_group);
  finalize(f);
  return f;
}

WCoefficients w_coefficients(const WParams& p) {
  p.validate();
  WCoefficients c;
  for (int l = 1; l < p.n_parties; ++l) {
    const double a1 = p.alpha[0], al = p.alpha[l];
    const double den = al * al + a1 * a1;
    c.gamma.push_back(2.0 * al * a1 / den);
    c.delta.push_back((al * al - a1 * a1) / den);
  }
  return c;
}

CMatrix projector_Pl(const Scenario& s, int l) {
  if (s.d != 2)
    throw std::invalid_argument("projector_Pl: only the qubit family is supported");
  if (l < 1 || l > s.n_parties - 1)
    throw std::invalid_argument("projector_Pl: Bob index out of range");
  std::vector<CMatrix> factors;
  factors.push_back(CMatrix::Identity(s.d, s.d));
  for (int k = 1; k < s.n_parties; ++k) {
    const int m = s.bob_dims[k - 1];
    if (k == l) factors.push_back(CMatrix::Identity(m, m));
    else factors.push_back(0.5 * (CMatrix::Identity(m, m) + s.bobs[k - 1][0]));
  }
  return kron(factors);
}

namespace {

// Expands Π_{k∈K}(I + B_{k,0})/2 into elementary terms: one per subset of K,
// scaled by `coeff`, merged with the fixed factors in `base`.
void append_pl_expansion(std::vector<Term>& out, const Term& base,
                         const std::vector<int>& bobs_k, Complex coeff) {
  const std::size_t m = bobs_k.size();
  const double scale = std::pow(0.5, static_cast<double>(m));
  for (std::size_t mask = 0; mask < (1ULL << m); ++mask) {
    Term t = base;
    t.coeff = coeff * scale;
    for (std::size_t b = 0; b < m; ++b)
      if (mask & (1ULL << b)) t.bobs[bobs_k[b]] = {0, 1};
    if (std::abs(t.coeff) > 0.0) out.push_back(t);
  }
}

}  // namespace

SteeringFunctional w_steering_functional(const WParams& p, const Scenario& s) {
  p.validate();
  s.validate();
  if (s.d != 2 || s.n_parties != p.n_parties)
    throw std::invalid_argument("w_steering_functional: scenario/params mismatch");
  const int n = p.n_parties;
  const WCoefficients c = w_coefficients(p);

  SteeringFunctional f;
  f.family = Family::w;
  f.d = 2;
  f.n_parties = n;
  f.scenario = s;
  f.include_hc = false;
  f.quantum_bound = 2.0 * n;

  auto identity_term = [&](Complex coeff) {
    return Term{coeff, {0, 0}, std::vector<PartyOp>(n - 1)};
  };

  // -2 Z_A ⊗ Π_k B_{k,0}
  Term t0 = identity_term(-2.0);
  t0.alice = {0, 1};
  for (int k = 0; k < n - 1; ++k) t0.bobs[k] = {0, 1};
  f.terms.push_back(t0);
  {
    Term cond = t0;
    cond.coeff = -1.0;  // the term itself fixes the state with eigenvalue +1
    f.conditions.push_back({cond});
  }

  for (int l = 1; l < n; ++l) {
    std::vector<int> others;  // Bob slots != l carrying the P_l product
    for (int k = 1; k < n; ++k)
      if (k != l) others.push_back(k - 1);

    // Z_A ⊗ I_l ⊗ (I - P_l) + (γ_l X_A ⊗ B_{l,1} + δ_l Z_A ⊗ I_l) ⊗ P_l
    std::vector<Term> steering_l;
    Term za = identity_term(1.0);
    za.alice = {0, 1};
    steering_l.push_back(za);                                // Z_A ⊗ I
    append_pl_expansion(steering_l, za, others, -1.0);       // - Z_A ⊗ P_l
    Term xb = identity_term(1.0);
    xb.alice = {1, 1};
    xb.bobs[l - 1] = {1, 1};
    append_pl_expansion(steering_l, xb, others, c.gamma[l - 1]);  // γ_l X_A B_{l,1} P_l
    append_pl_expansion(steering_l, za, others, c.delta[l - 1]);  // δ_l Z_A P_l
    f.terms.insert(f.terms.end(), steering_l.begin(), steering_l.end());
    f.conditions.push_back(steering_l);

    // I_A ⊗ B_{l,0} ⊗ (I - P_l) + I_A ⊗ I_l ⊗ P_l
    std::vector<Term> marginal_l;
    Term b0 = identity_term(1.0);
    b0.bobs[l - 1] = {0, 1};
    marginal_l.push_back(b0);
    append_pl_expansion(marginal_l, b0, others, -1.0);
    append_pl_expansion(marginal_l, identity_term(1.0), others, 1.0);
    f.terms.insert(f.terms.end(), marginal_l.begin(), marginal_l.end());
    f.conditions.push_back(marginal_l);
  }

  f.term_count = static_cast<int>(f.terms.size());
  finalize(f);
  return f;
}

SteeringFunctional build_functional(const FamilyParams& params, const Scenario& s) {
  return std::visit(
      [&](const auto& p) -> SteeringFunctional {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Multigraph>) return graph_steering_functional(p, s);
        else if constexpr (std::is_same_v<T, SchmidtParams>) return schmidt_steering_functional(p, s);
        else return w_steering_functional(p, s);
      },
      params);
}

}  // namespace steercert
