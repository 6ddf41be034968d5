#pragma once

#include <random>

#include "steercert/certifier.hpp"
#include "steercert/correlations.hpp"
#include "steercert/states.hpp"

namespace steercert::testing {

using Rng = std::mt19937_64;

inline CMatrix random_gaussian(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline CMatrix random_unitary(Rng& rng, int n) {
  Eigen::HouseholderQR<CMatrix> qr(random_gaussian(rng, n, n));
  return qr.householderQ();
}

inline CVector random_state(Rng& rng, long long dim) {
  CVector v = random_gaussian(rng, static_cast<int>(dim), 1).col(0);
  return v / v.norm();
}

inline CMatrix random_density(Rng& rng, int dim, int rank) {
  CMatrix a = random_gaussian(rng, dim, rank);
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

/// Unitary observable with U^d = 1: random eigenbasis, eigenvalues ω^{c_b}
/// covering every root at least once when dim >= d.
inline CMatrix random_root_observable(Rng& rng, int dim, int d) {
  const CMatrix v = random_unitary(rng, dim);
  std::uniform_int_distribution<int> pick(0, d - 1);
  CMatrix diag = CMatrix::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    const int c = b < d ? b : pick(rng);
    diag(b, b) = omega_pow(d, c);
  }
  return v * diag * v.adjoint();
}

inline std::vector<double> random_alpha(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(0.3, 1.0);
  std::vector<double> a(n);
  double s = 0.0;
  for (double& x : a) {
    x = u(rng);
    s += x * x;
  }
  for (double& x : a) x /= std::sqrt(s);
  return a;
}

inline Multigraph random_connected_multigraph(Rng& rng, int n, int d) {
  Multigraph g(n, d);
  std::uniform_int_distribution<int> mult(1, d - 1);
  std::uniform_int_distribution<int> coin(0, 3);
  // spanning tree first, then sprinkle extra edges
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    g.add_edge(parent(rng), v, mult(rng));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.gamma[i][j] == 0 && coin(rng) == 0) g.add_edge(i, j, mult(rng));
  return g;
}

/// Round-trip fixture: reference state tensored with per-Bob junk, everything
/// scrambled by random local unitaries on the Bob sides. The certifier must
/// undo the scrambling exactly.
struct RoundTrip {
  Scenario scenario;
  CVector psi;
  std::vector<int> junk_dims;
};

inline RoundTrip scrambled_fixture(const FamilyParams& params, Rng& rng,
                                   int max_junk = 3) {
  const Scenario ideal = ideal_scenario(params);
  const CVector ref = reference_state(params);
  const int n = ideal.n_parties, d = ideal.d;
  const int nb = n - 1;

  RoundTrip rt;
  std::uniform_int_distribution<int> jd(1, max_junk);
  std::vector<CVector> junk;
  std::vector<CMatrix> scramble;
  for (int j = 0; j < nb; ++j) {
    const int m = jd(rng);
    rt.junk_dims.push_back(m);
    junk.push_back(random_state(rng, m));
    scramble.push_back(random_unitary(rng, d * m));
  }

  // amplitudes in the interleaved layout [A, (B1, j1), (B2, j2), ...]
  long long ref_dim = ref.size(), junk_dim = 1;
  for (int j = 0; j < nb; ++j) junk_dim *= rt.junk_dims[j];
  CVector psi = CVector::Zero(ref_dim * junk_dim);
  std::vector<int> q(n), k(nb);
  for (long long r = 0; r < ref_dim; ++r) {
    long long rr = r;
    for (int i = n - 1; i >= 0; --i) {
      q[i] = static_cast<int>(rr % d);
      rr /= d;
    }
    for (long long t = 0; t < junk_dim; ++t) {
      long long rt2 = t;
      Complex amp = ref(r);
      for (int j = nb - 1; j >= 0; --j) {
        k[j] = static_cast<int>(rt2 % rt.junk_dims[j]);
        rt2 /= rt.junk_dims[j];
        amp *= junk[j](k[j]);
      }
      long long idx = q[0];
      for (int j = 0; j < nb; ++j)
        idx = (idx * d + q[j + 1]) * rt.junk_dims[j] + k[j];
      psi(idx) = amp;
    }
  }

  rt.scenario = ideal;
  std::vector<int> dims{d};
  for (int j = 0; j < nb; ++j) {
    const int m = rt.junk_dims[j];
    dims.push_back(d * m);
    const CMatrix lift0 = kron2(ideal.bobs[j][0], CMatrix::Identity(m, m));
    const CMatrix lift1 = kron2(ideal.bobs[j][1], CMatrix::Identity(m, m));
    rt.scenario.bobs[j] = {scramble[j] * lift0 * scramble[j].adjoint(),
                           scramble[j] * lift1 * scramble[j].adjoint()};
    rt.scenario.bob_dims[j] = d * m;
  }
  for (int j = 0; j < nb; ++j) psi = apply_local(psi, dims, j + 1, scramble[j]);
  rt.psi = psi;
  return rt;
}

}  // namespace steercert::testing
