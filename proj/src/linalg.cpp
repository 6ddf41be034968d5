#include "steercert/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace steercert {

CMatrix gen_pauli_z(int d) {
  if (d < 2) throw std::invalid_argument("gen_pauli_z: dimension must be >= 2");
  CMatrix z = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) z(i, i) = omega_pow(d, i);
  return z;
}

CMatrix gen_pauli_x(int d) {
  if (d < 2) throw std::invalid_argument("gen_pauli_x: dimension must be >= 2");
  CMatrix x = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) x((i + 1) % d, i) = 1.0;
  return x;
}

CMatrix kron2(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix kron(const std::vector<CMatrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("kron: empty factor list");
  CMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron2(out, factors[i]);
  return out;
}

CMatrix mat_power(const CMatrix& u, long long k) {
  if (!is_unitary(u)) throw std::invalid_argument("mat_power: input is not unitary");
  const Eigen::Index n = u.rows();
  CMatrix base = k >= 0 ? u : CMatrix(u.adjoint());
  long long e = k >= 0 ? k : -k;
  CMatrix out = CMatrix::Identity(n, n);
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

CMatrix hermitize(const CMatrix& o) {
  if (o.rows() != o.cols()) throw std::invalid_argument("hermitize: matrix not square");
  return o + o.adjoint();
}

double max_eigenvalue(const CMatrix& h, double tol) {
  if (!is_hermitian(h, tol)) throw std::invalid_argument("max_eigenvalue: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

namespace {

long long dim_product(const std::vector<int>& dims) {
  long long p = 1;
  for (int d : dims) p *= d;
  return p;
}

}  // namespace

CMatrix partial_trace(const CMatrix& rho, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  if (dim_product(dims) != rho.rows() || rho.rows() != rho.cols())
    throw std::invalid_argument("partial_trace: dims do not match matrix size");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: keep index out of range");
    kept[k] = true;
  }

  std::vector<int> keep_dims, trace_slots;
  for (int i = 0; i < n; ++i)
    if (kept[i]) keep_dims.push_back(dims[i]); else trace_slots.push_back(i);
  const long long dk = dim_product(keep_dims);
  long long dt = 1;
  for (int s : trace_slots) dt *= dims[s];

  // strides of each slot in the full index (slot 0 most significant)
  std::vector<long long> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  auto full_index = [&](long long ik, long long it) {
    long long idx = 0;
    long long rk = ik, rt = it;
    for (int i = n - 1; i >= 0; --i) {
      long long digit;
      if (kept[i]) { digit = rk % dims[i]; rk /= dims[i]; }
      else { digit = rt % dims[i]; rt /= dims[i]; }
      idx += digit * stride[i];
    }
    return idx;
  };

  CMatrix out = CMatrix::Zero(dk, dk);
  for (long long r = 0; r < dk; ++r)
    for (long long c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (long long t = 0; t < dt; ++t)
        acc += rho(full_index(r, t), full_index(c, t));
      out(r, c) = acc;
    }
  return out;
}

CMatrix partial_trace(const CVector& psi, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  if (dim_product(dims) != psi.size())
    throw std::invalid_argument("partial_trace: dims do not match vector size");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: keep index out of range");
    kept[k] = true;
  }

  long long dk = 1, dt = 1;
  for (int i = 0; i < n; ++i) (kept[i] ? dk : dt) *= dims[i];

  std::vector<long long> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  auto full_index = [&](long long ik, long long it) {
    long long idx = 0, rk = ik, rt = it;
    for (int i = n - 1; i >= 0; --i) {
      long long digit;
      if (kept[i]) { digit = rk % dims[i]; rk /= dims[i]; }
      else { digit = rt % dims[i]; rt /= dims[i]; }
      idx += digit * stride[i];
    }
    return idx;
  };

  // amplitudes regrouped as a dk × dt matrix; reduced state is M M†
  CMatrix m(dk, dt);
  for (long long r = 0; r < dk; ++r)
    for (long long t = 0; t < dt; ++t) m(r, t) = psi(full_index(r, t));
  return m * m.adjoint();
}

double fidelity(const CMatrix& rho, const CVector& psi) {
  if (rho.rows() != psi.size())
    throw std::invalid_argument("fidelity: dimension mismatch");
  return std::real(psi.dot(rho * psi));
}

CVector apply_local(const CVector& psi, const std::vector<int>& dims,
                    int slot, const CMatrix& op) {
  const int n = static_cast<int>(dims.size());
  if (slot < 0 || slot >= n) throw std::invalid_argument("apply_local: slot out of range");
  if (dim_product(dims) != psi.size() || op.rows() != dims[slot] || op.cols() != dims[slot])
    throw std::invalid_argument("apply_local: dimension mismatch");

  long long right = 1;
  for (int i = slot + 1; i < n; ++i) right *= dims[i];
  const int m = dims[slot];
  const long long left = psi.size() / (right * m);

  CVector out = CVector::Zero(psi.size());
  for (long long l = 0; l < left; ++l)
    for (long long r = 0; r < right; ++r) {
      const long long base = l * m * right + r;
      for (int a = 0; a < m; ++a) {
        Complex acc = 0.0;
        for (int b = 0; b < m; ++b) acc += op(a, b) * psi(base + b * right);
        out(base + a * right) = acc;
      }
    }
  return out;
}

CMatrix outcome_projector(const CMatrix& u, int d, int b) {
  const Eigen::Index n = u.rows();
  CMatrix acc = CMatrix::Zero(n, n);
  CMatrix pw = CMatrix::Identity(n, n);
  for (int k = 0; k < d; ++k) {
    acc += omega_pow(d, -static_cast<long long>(b) * k) * pw;
    pw = pw * u;
  }
  if (max_abs(pw - CMatrix::Identity(n, n)) > 1e-8)
    throw std::invalid_argument("outcome_projector: U^d != identity");
  return acc / static_cast<double>(d);
}

CVector phase_normalize(const CVector& v, double cutoff) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > cutoff) {
      return v * (std::conj(v(i)) / std::abs(v(i)));
    }
  }
  return v;
}

void check_state(const CVector& psi, double tol) {
  if (std::abs(psi.norm() - 1.0) > tol)
    throw std::invalid_argument("state vector is not normalized");
}

void check_density(const CMatrix& rho, double tol) {
  if (!is_hermitian(rho, tol))
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol)
    throw std::invalid_argument("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

}  // namespace steercert
