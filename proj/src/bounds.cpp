#include "steercert/bounds.hpp"

#include <cmath>
#include <random>

namespace steercert {

double quantum_value(const SteeringFunctional& f, const CVector& psi) {
  if (psi.size() != f.realized.rows())
    throw std::invalid_argument("quantum_value: dimension mismatch");
  const Complex v = psi.dot(f.realized * psi);
  if (std::abs(v.imag()) > 1e-9)
    throw std::runtime_error("quantum_value: non-real expectation");
  return v.real();
}

double quantum_value(const SteeringFunctional& f, const CMatrix& rho) {
  if (rho.rows() != f.realized.rows())
    throw std::invalid_argument("quantum_value: dimension mismatch");
  return (rho * f.realized).trace().real();
}

namespace {

// Derivative-free maximization: cyclic pattern search with shrinking steps.
template <typename F>
double pattern_search(std::vector<double>& x, F&& objective, double step0) {
  double best = objective(x);
  for (double step = step0; step > 1e-10; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (double sgn : {1.0, -1.0}) {
          x[i] += sgn * step;
          double v = objective(x);
          if (v > best + 1e-15) {
            best = v;
            improved = true;
          } else {
            x[i] -= sgn * step;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

double lhs_upper_graph(const Multigraph& g, const OptimizerConfig& cfg) {
  g.validate();
  const int d = g.d;
  const CMatrix z = gen_pauli_z(d), x = gen_pauli_x(d);
  std::vector<CMatrix> ops{x};
  for (int j : g.neighbors(0)) ops.push_back(mat_power(z, g.gamma[j][0]));
  const int m = static_cast<int>(ops.size());

  auto objective = [&](const std::vector<double>& phi) {
    CMatrix h = CMatrix::Zero(d, d);
    for (int t = 0; t < m; ++t) h += std::polar(1.0, phi[t]) * ops[t];
    return max_eigenvalue(CMatrix(h + h.adjoint()), 1e-6);
  };

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  double best = 0.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> phi(m);
    if (r > 0)
      for (double& p : phi) p = u(rng);
    best = std::max(best, pattern_search(phi, objective, M_PI / 2.0));
  }
  return best + 2.0 * (g.n_vertices - g.degree(0) - 1);
}

double lhs_upper_schmidt(const SchmidtParams& p, const OptimizerConfig& cfg) {
  p.validate();
  const int d = p.d, n = p.n_parties;
  const double gamma = schmidt_coefficients(p).gamma;
  double alpha_sum = 0.0;
  for (double a : p.alpha) alpha_sum += a;

  auto objective = [&](const std::vector<double>& xraw) {
    double norm2 = 0.0;
    for (double v : xraw) norm2 += v * v;
    if (norm2 < 1e-18) return -1e100;
    double max_sq = 0.0, lin = 0.0, weighted = 0.0;
    for (int i = 0; i < d; ++i) {
      const double eta2 = xraw[i] * xraw[i] / norm2;
      max_sq = std::max(max_sq, eta2);
      lin += std::sqrt(eta2);
      weighted += eta2 / p.alpha[i];
    }
    return d * (n - 1) * max_sq + gamma * (lin * lin - alpha_sum * weighted) -
           (n - 2);
  };

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double best = -1e100;
  // concentrated boundary candidates, uniform, then random restarts
  std::vector<std::vector<double>> starts;
  for (int i = 0; i < d; ++i) {
    std::vector<double> e(d, 0.05);
    e[i] = 1.0;
    starts.push_back(e);
  }
  starts.push_back(std::vector<double>(d, 1.0));
  while (static_cast<int>(starts.size()) < cfg.restarts + d + 1) {
    std::vector<double> s(d);
    for (double& v : s) v = std::abs(gauss(rng));
    starts.push_back(s);
  }
  for (auto& s : starts) best = std::max(best, pattern_search(s, objective, 0.5));
  return best;
}

LhsStrategy lhs_exact_enumeration(const SteeringFunctional& f, long long cap) {
  const int d = f.d, nb = f.n_parties - 1;
  double log_count = 2.0 * nb * std::log(static_cast<double>(d));
  if (log_count > std::log(static_cast<double>(cap)) + 1e-12) {
    throw std::runtime_error(
        "lhs_exact_enumeration: strategy space d^(2(N-1)) = " +
        std::to_string(std::pow(static_cast<double>(d), 2 * nb)) +
        " exceeds cap " + std::to_string(cap));
  }
  long long count = 1;
  for (int i = 0; i < 2 * nb; ++i) count *= d;

  // Alice operator powers for both settings
  std::vector<std::vector<CMatrix>> apow(2);
  for (int s = 0; s < 2; ++s) {
    apow[s].push_back(CMatrix::Identity(d, d));
    for (int k = 1; k < d; ++k) apow[s].push_back(CMatrix(apow[s][k - 1] * f.scenario.alice[s]));
  }

  LhsStrategy best;
  best.value = -1e100;
  best.strategy_count = count;
  std::vector<std::array<int, 2>> outcomes(nb, {0, 0});

  for (long long code = 0; code < count; ++code) {
    long long r = code;
    for (int j = 0; j < nb; ++j)
      for (int y = 0; y < 2; ++y) {
        outcomes[j][y] = static_cast<int>(r % d);
        r /= d;
      }

    CMatrix m = CMatrix::Zero(d, d);
    for (const Term& t : f.terms) {
      long long phase = 0;
      for (int j = 0; j < nb; ++j)
        phase += static_cast<long long>(outcomes[j][t.bobs[j].setting]) * t.bobs[j].power;
      m += t.coeff * omega_pow(d, phase) * apow[t.alice.setting][t.alice.power];
    }
    CMatrix h = f.include_hc ? CMatrix(m + m.adjoint()) : CMatrix(0.5 * (m + m.adjoint()));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const double v = es.eigenvalues().maxCoeff();
    if (v > best.value) {
      best.value = v;
      best.bob_outcomes = outcomes;
      Eigen::Index which;
      es.eigenvalues().maxCoeff(&which);
      best.alice_state = phase_normalize(es.eigenvectors().col(which));
    }
  }
  return best;
}

BoundReport bound_report(const FamilyParams& params, const OptimizerConfig& cfg,
                         long long enum_cap) {
  const Scenario s = ideal_scenario(params);
  const SteeringFunctional f = build_functional(params, s);

  BoundReport r;
  r.family = f.family;
  r.beta_q = f.quantum_bound;
  r.restarts = cfg.restarts;
  if (const auto* g = std::get_if<Multigraph>(&params))
    r.lhs_upper = lhs_upper_graph(*g, cfg);
  else if (const auto* sp = std::get_if<SchmidtParams>(&params))
    r.lhs_upper = lhs_upper_schmidt(*sp, cfg);
  // no analytical LHS bound is available for the W family

  try {
    LhsStrategy strat = lhs_exact_enumeration(f, enum_cap);
    r.lhs_exact = strat.value;
    r.strategy_count = strat.strategy_count;
  } catch (const std::runtime_error&) {
    // enumeration over cap; report the optimization bound only
  }

  double best_candidate = -1e100;
  if (r.lhs_upper) best_candidate = std::max(best_candidate, *r.lhs_upper);
  if (r.lhs_exact) best_candidate = std::max(best_candidate, *r.lhs_exact);
  r.gap = r.beta_q - best_candidate;
  return r;
}

}  // namespace steercert
