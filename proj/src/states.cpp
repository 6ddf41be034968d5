#include "steercert/states.hpp"

#include <cmath>
#include <queue>

namespace steercert {

Multigraph::Multigraph(int n, int d_, bool allow_disc)
    : n_vertices(n), d(d_), gamma(n, std::vector<int>(n, 0)),
      allow_disconnected(allow_disc) {
  if (n < 2) throw std::invalid_argument("Multigraph: need at least 2 vertices");
  if (d < 2) throw std::invalid_argument("Multigraph: local dimension must be >= 2");
}

void Multigraph::add_edge(int i, int j, int multiplicity) {
  if (i < 0 || j < 0 || i >= n_vertices || j >= n_vertices || i == j)
    throw std::invalid_argument("Multigraph::add_edge: bad vertex pair");
  int m = multiplicity % d;
  if (m < 0) m += d;
  gamma[i][j] = m;
  gamma[j][i] = m;
}

bool Multigraph::connected() const {
  std::vector<bool> seen(n_vertices, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int u = 0; u < n_vertices; ++u)
      if (gamma[v][u] != 0 && !seen[u]) {
        seen[u] = true;
        ++count;
        q.push(u);
      }
  }
  return count == n_vertices;
}

void Multigraph::validate() const {
  if (n_vertices < 2 || d < 2) throw std::invalid_argument("Multigraph: bad sizes");
  if (static_cast<int>(gamma.size()) != n_vertices)
    throw std::invalid_argument("Multigraph: gamma shape mismatch");
  for (int i = 0; i < n_vertices; ++i) {
    if (static_cast<int>(gamma[i].size()) != n_vertices)
      throw std::invalid_argument("Multigraph: gamma shape mismatch");
    if (gamma[i][i] != 0) throw std::invalid_argument("Multigraph: nonzero diagonal");
    for (int j = 0; j < n_vertices; ++j) {
      if (gamma[i][j] != gamma[j][i])
        throw std::invalid_argument("Multigraph: gamma not symmetric");
      if (gamma[i][j] < 0 || gamma[i][j] >= d)
        throw std::invalid_argument("Multigraph: multiplicity out of range");
    }
  }
  if (!allow_disconnected && !connected())
    throw std::invalid_argument("Multigraph: graph is not connected");
}

std::vector<int> Multigraph::neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < n_vertices; ++j)
    if (gamma[i][j] != 0) out.push_back(j);
  return out;
}

void SchmidtParams::validate() const {
  if (d < 2 || n_parties < 2) throw std::invalid_argument("SchmidtParams: bad sizes");
  if (static_cast<int>(alpha.size()) != d)
    throw std::invalid_argument("SchmidtParams: alpha must have length d");
  double s = 0.0;
  for (double a : alpha) {
    if (a <= 0.0) throw std::invalid_argument("SchmidtParams: alpha entries must be positive");
    s += a * a;
  }
  if (std::abs(s - 1.0) > 1e-10)
    throw std::invalid_argument("SchmidtParams: alpha not normalized");
}

void WParams::validate() const {
  if (n_parties < 2) throw std::invalid_argument("WParams: need at least 2 parties");
  if (static_cast<int>(alpha.size()) != n_parties)
    throw std::invalid_argument("WParams: alpha must have length N");
  double s = 0.0;
  for (double a : alpha) {
    if (a <= 0.0) throw std::invalid_argument("WParams: alpha entries must be positive");
    s += a * a;
  }
  if (std::abs(s - 1.0) > 1e-10)
    throw std::invalid_argument("WParams: alpha not normalized");
}

CVector graph_state(const Multigraph& g) {
  g.validate();
  if (!g.connected())
    throw std::invalid_argument("graph_state: graph is not connected");
  const int n = g.n_vertices, d = g.d;
  long long dim = 1;
  for (int i = 0; i < n; ++i) dim *= d;

  // CZ^γ powers are all diagonal, so |G> has flat magnitude with a phase
  // ω^{Σ_{i<j} γ_ij q_i q_j} per computational basis state.
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  CVector psi(dim);
  std::vector<int> q(n);
  for (long long idx = 0; idx < dim; ++idx) {
    long long r = idx;
    for (int i = n - 1; i >= 0; --i) {
      q[i] = static_cast<int>(r % d);
      r /= d;
    }
    long long phase = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) phase += static_cast<long long>(g.gamma[i][j]) * q[i] * q[j];
    psi(idx) = amp * omega_pow(d, phase);
  }
  return psi;
}

CMatrix stabilizer(const Multigraph& g, int i) {
  if (i < 0 || i >= g.n_vertices)
    throw std::invalid_argument("stabilizer: vertex index out of range");
  const int d = g.d;
  const CMatrix z = gen_pauli_z(d), x = gen_pauli_x(d);
  std::vector<CMatrix> factors;
  factors.reserve(g.n_vertices);
  for (int j = 0; j < g.n_vertices; ++j) {
    if (j == i) factors.push_back(x);
    else if (g.gamma[i][j] != 0) factors.push_back(mat_power(z, g.gamma[i][j]));
    else factors.push_back(CMatrix::Identity(d, d));
  }
  return kron(factors);
}

CVector stabilizer_apply(const Multigraph& g, int i, const CVector& psi) {
  if (i < 0 || i >= g.n_vertices)
    throw std::invalid_argument("stabilizer_apply: vertex index out of range");
  const int d = g.d;
  std::vector<int> dims(g.n_vertices, d);
  CVector out = apply_local(psi, dims, i, gen_pauli_x(d));
  const CMatrix z = gen_pauli_z(d);
  for (int j = 0; j < g.n_vertices; ++j)
    if (j != i && g.gamma[i][j] != 0)
      out = apply_local(out, dims, j, mat_power(z, g.gamma[i][j]));
  return out;
}

StabilizerCheck verify_stabilized(const CVector& psi, const std::vector<CMatrix>& ops,
                                  double tol) {
  StabilizerCheck out;
  out.ok = true;
  for (const CMatrix& s : ops) {
    if (s.rows() != psi.size())
      throw std::invalid_argument("verify_stabilized: dimension mismatch");
    double r = (s * psi - psi).norm();
    out.residuals.push_back(r);
    if (r > tol) out.ok = false;
  }
  return out;
}

StabilizerCheck verify_stabilized(const CVector& psi, const Multigraph& g, double tol) {
  StabilizerCheck out;
  out.ok = true;
  for (int i = 0; i < g.n_vertices; ++i) {
    double r = (stabilizer_apply(g, i, psi) - psi).norm();
    out.residuals.push_back(r);
    if (r > tol) out.ok = false;
  }
  return out;
}

CVector schmidt_state(const SchmidtParams& p) {
  p.validate();
  long long dim = 1;
  for (int i = 0; i < p.n_parties; ++i) dim *= p.d;
  CVector psi = CVector::Zero(dim);
  for (int i = 0; i < p.d; ++i) {
    long long idx = 0;
    for (int s = 0; s < p.n_parties; ++s) idx = idx * p.d + i;
    psi(idx) = p.alpha[i];
  }
  return psi;
}

CVector w_state(const WParams& p) {
  p.validate();
  const int n = p.n_parties;
  const long long dim = 1LL << n;
  CVector psi = CVector::Zero(dim);
  for (int l = 0; l < n; ++l)
    psi(1LL << (n - 1 - l)) = p.alpha[l];  // excitation on slot l
  return psi;
}

CVector reference_state(const FamilyParams& params) {
  return std::visit(
      [](const auto& p) -> CVector {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Multigraph>) return graph_state(p);
        else if constexpr (std::is_same_v<T, SchmidtParams>) return schmidt_state(p);
        else return w_state(p);
      },
      params);
}

}  // namespace steercert
