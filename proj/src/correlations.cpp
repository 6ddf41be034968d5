#include "steercert/correlations.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace steercert {

long long CorrelationTable::outcomes_count() const {
  long long c = 1;
  for (int i = 0; i < n_parties; ++i) c *= d;
  return c;
}

long long CorrelationTable::settings_index(const std::vector<int>& settings) const {
  long long s = 0;
  for (int v : settings) s = s * 2 + v;
  return s;
}

long long CorrelationTable::outcomes_index(const std::vector<int>& outcomes) const {
  long long o = 0;
  for (int v : outcomes) o = o * d + v;
  return o;
}

double& CorrelationTable::at(const std::vector<int>& settings,
                             const std::vector<int>& outcomes) {
  return p[settings_index(settings) * outcomes_count() + outcomes_index(outcomes)];
}

double CorrelationTable::at(const std::vector<int>& settings,
                            const std::vector<int>& outcomes) const {
  return p[settings_index(settings) * outcomes_count() + outcomes_index(outcomes)];
}

void CorrelationTable::validate(double tol) const {
  const long long no = outcomes_count(), ns = settings_count();
  if (static_cast<long long>(p.size()) != ns * no)
    throw std::invalid_argument("CorrelationTable: storage size mismatch");
  for (long long s = 0; s < ns; ++s) {
    double sum = 0.0;
    for (long long o = 0; o < no; ++o) {
      const double v = p[s * no + o];
      if (v < -1e-12) throw std::invalid_argument("CorrelationTable: negative probability");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("CorrelationTable: distribution not normalized");
  }

  // no-signaling: the marginal with party i dropped must not depend on i's setting
  for (int i = 0; i < n_parties; ++i) {
    for (long long s = 0; s < ns; ++s) {
      const int bit = n_parties - 1 - i;
      if ((s >> bit) & 1) continue;
      const long long s1 = s | (1LL << bit);
      long long outer = 1, inner = 1;
      for (int q = 0; q < i; ++q) outer *= d;
      for (int q = i + 1; q < n_parties; ++q) inner *= d;
      for (long long lo = 0; lo < outer; ++lo)
        for (long long hi = 0; hi < inner; ++hi) {
          double m0 = 0.0, m1 = 0.0;
          for (int a = 0; a < d; ++a) {
            const long long o = (lo * d + a) * inner + hi;
            m0 += p[s * no + o];
            m1 += p[s1 * no + o];
          }
          if (std::abs(m0 - m1) > tol)
            throw std::invalid_argument("CorrelationTable: no-signaling violated");
        }
    }
  }
}

CorrelationTable born_table(const CMatrix& rho, const Scenario& s, int max_parties) {
  s.validate();
  if (s.n_parties > max_parties)
    throw std::invalid_argument(
        "born_table: party count exceeds the dense-table cap; evaluate the "
        "functional directly from the state instead");
  if (rho.rows() != s.total_dim())
    throw std::invalid_argument("born_table: state dimension mismatch");
  const int n = s.n_parties, d = s.d;

  // outcome projectors per party and setting
  std::vector<std::array<std::vector<CMatrix>, 2>> proj(n);
  for (int x = 0; x < 2; ++x) {
    proj[0][x].reserve(d);
    for (int a = 0; a < d; ++a) proj[0][x].push_back(outcome_projector(s.alice[x], d, a));
    for (int j = 1; j < n; ++j) {
      proj[j][x].reserve(d);
      for (int b = 0; b < d; ++b)
        proj[j][x].push_back(outcome_projector(s.bobs[j - 1][x], d, b));
    }
  }

  CorrelationTable t;
  t.n_parties = n;
  t.d = d;
  t.p.assign(t.settings_count() * t.outcomes_count(), 0.0);

  std::vector<int> settings(n), outcomes(n);
  for (long long sc = 0; sc < t.settings_count(); ++sc) {
    for (int i = 0; i < n; ++i) settings[i] = static_cast<int>((sc >> (n - 1 - i)) & 1);
    for (long long oc = 0; oc < t.outcomes_count(); ++oc) {
      long long r = oc;
      for (int i = n - 1; i >= 0; --i) {
        outcomes[i] = static_cast<int>(r % d);
        r /= d;
      }
      std::vector<CMatrix> factors;
      factors.reserve(n);
      for (int i = 0; i < n; ++i) factors.push_back(proj[i][settings[i]][outcomes[i]]);
      t.p[sc * t.outcomes_count() + oc] = std::max(0.0, (rho * kron(factors)).trace().real());
    }
  }
  return t;
}

void LHSModel::validate(int n_bobs, int d) const {
  double wsum = 0.0;
  for (const LhsBranch& b : branches) {
    if (b.weight < 0.0) throw std::invalid_argument("LHSModel: negative weight");
    wsum += b.weight;
    check_density(b.alice_state);
    if (static_cast<int>(b.bob_responses.size()) != n_bobs)
      throw std::invalid_argument("LHSModel: wrong Bob count");
    for (const auto& resp : b.bob_responses)
      for (const auto& row : resp) {
        if (static_cast<int>(row.size()) != d)
          throw std::invalid_argument("LHSModel: response row length != d");
        double rs = 0.0;
        for (double v : row) {
          if (v < 0.0) throw std::invalid_argument("LHSModel: negative response probability");
          rs += v;
        }
        if (std::abs(rs - 1.0) > 1e-9)
          throw std::invalid_argument("LHSModel: response row not normalized");
      }
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw std::invalid_argument("LHSModel: weights do not sum to 1");
}

LHSModel strategy_model(const LhsStrategy& strat, int d) {
  LhsBranch b;
  b.weight = 1.0;
  b.alice_state = strat.alice_state * strat.alice_state.adjoint();
  for (const auto& per_setting : strat.bob_outcomes) {
    std::array<std::vector<double>, 2> resp;
    for (int y = 0; y < 2; ++y) {
      resp[y].assign(d, 0.0);
      resp[y][per_setting[y]] = 1.0;
    }
    b.bob_responses.push_back(resp);
  }
  LHSModel m;
  m.branches.push_back(std::move(b));
  return m;
}

CorrelationTable lhs_table(const LHSModel& m, const Scenario& s) {
  s.validate();
  m.validate(s.n_parties - 1, s.d);
  const int n = s.n_parties, d = s.d;

  std::array<std::vector<CMatrix>, 2> alice_proj;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < d; ++a) alice_proj[x].push_back(outcome_projector(s.alice[x], d, a));

  CorrelationTable t;
  t.n_parties = n;
  t.d = d;
  t.p.assign(t.settings_count() * t.outcomes_count(), 0.0);

  std::vector<int> settings(n), outcomes(n);
  for (long long sc = 0; sc < t.settings_count(); ++sc) {
    for (int i = 0; i < n; ++i) settings[i] = static_cast<int>((sc >> (n - 1 - i)) & 1);
    for (long long oc = 0; oc < t.outcomes_count(); ++oc) {
      long long r = oc;
      for (int i = n - 1; i >= 0; --i) {
        outcomes[i] = static_cast<int>(r % d);
        r /= d;
      }
      double acc = 0.0;
      for (const LhsBranch& br : m.branches) {
        double v = br.weight *
                   (br.alice_state * alice_proj[settings[0]][outcomes[0]]).trace().real();
        for (int j = 1; j < n; ++j) v *= br.bob_responses[j - 1][settings[j]][outcomes[j]];
        acc += v;
      }
      t.p[sc * t.outcomes_count() + oc] = acc;
    }
  }
  return t;
}

Complex ExpectationTensor::at(const std::vector<int>& settings,
                              const std::vector<int>& powers) const {
  long long s = 0, k = 0;
  for (int v : settings) s = s * 2 + v;
  for (int v : powers) k = k * d + v;
  long long dn = 1;
  for (int i = 0; i < n_parties; ++i) dn *= d;
  return e[s * dn + k];
}

ExpectationTensor generalized_expectations(const CorrelationTable& t) {
  const int n = t.n_parties, d = t.d;
  const long long no = t.outcomes_count(), ns = t.settings_count();
  ExpectationTensor out;
  out.n_parties = n;
  out.d = d;
  out.e.assign(ns * no, Complex(0.0));

  std::vector<int> digits(n);
  for (long long s = 0; s < ns; ++s)
    for (long long k = 0; k < no; ++k) {
      Complex acc = 0.0;
      for (long long o = 0; o < no; ++o) {
        long long rk = k, ro = o, phase = 0;
        for (int i = n - 1; i >= 0; --i) {
          phase += (rk % d) * (ro % d);
          rk /= d;
          ro /= d;
        }
        acc += omega_pow(d, phase) * t.p[s * no + o];
      }
      out.e[s * no + k] = acc;
    }
  return out;
}

CorrelationTable expectations_to_table(const ExpectationTensor& et) {
  const int n = et.n_parties, d = et.d;
  CorrelationTable t;
  t.n_parties = n;
  t.d = d;
  const long long no = t.outcomes_count(), ns = t.settings_count();
  t.p.assign(ns * no, 0.0);
  for (long long s = 0; s < ns; ++s)
    for (long long o = 0; o < no; ++o) {
      Complex acc = 0.0;
      for (long long k = 0; k < no; ++k) {
        long long rk = k, ro = o, phase = 0;
        for (int i = n - 1; i >= 0; --i) {
          phase += (rk % d) * (ro % d);
          rk /= d;
          ro /= d;
        }
        acc += omega_pow(d, -phase) * et.e[s * no + k];
      }
      t.p[s * no + o] = acc.real() / static_cast<double>(no);
    }
  return t;
}

double functional_value_from_table(const SteeringFunctional& f,
                                   const CorrelationTable& t) {
  if (t.n_parties != f.n_parties || t.d != f.d)
    throw std::invalid_argument("functional_value_from_table: table/functional mismatch");
  const int n = t.n_parties, d = t.d;
  const long long no = t.outcomes_count();

  Complex total = 0.0;
  std::vector<int> settings(n), powers(n);
  for (const Term& term : f.terms) {
    settings[0] = term.alice.setting;
    powers[0] = term.alice.power;
    for (int j = 1; j < n; ++j) {
      settings[j] = term.bobs[j - 1].setting;
      powers[j] = term.bobs[j - 1].power;
    }
    const long long s = t.settings_index(settings);
    Complex acc = 0.0;
    for (long long o = 0; o < no; ++o) {
      long long ro = o, phase = 0;
      for (int i = n - 1; i >= 0; --i) {
        phase += static_cast<long long>(powers[i]) * (ro % d);
        ro /= d;
      }
      acc += omega_pow(d, phase) * t.p[s * no + o];
    }
    total += term.coeff * acc;
    if (f.include_hc) total += std::conj(term.coeff * acc);
  }
  if (std::abs(total.imag()) > 1e-8)
    throw std::runtime_error("functional_value_from_table: non-real value");
  return total.real();
}

CMatrix depolarize(const CVector& psi, double v) {
  if (v < 0.0 || v > 1.0) throw std::invalid_argument("depolarize: visibility out of [0,1]");
  const long long dim = psi.size();
  return v * (psi * psi.adjoint()) +
         ((1.0 - v) / static_cast<double>(dim)) * CMatrix::Identity(dim, dim);
}

CorrelationTable sample_table(const CorrelationTable& t, long long shots,
                              std::uint64_t seed) {
  if (shots <= 0) throw std::invalid_argument("sample_table: shots must be positive");
  std::mt19937_64 rng(seed);
  CorrelationTable out = t;
  const long long no = t.outcomes_count(), ns = t.settings_count();
  for (long long s = 0; s < ns; ++s) {
    std::discrete_distribution<long long> dist(t.p.begin() + s * no,
                                               t.p.begin() + (s + 1) * no);
    std::vector<long long> counts(no, 0);
    for (long long k = 0; k < shots; ++k) ++counts[dist(rng)];
    for (long long o = 0; o < no; ++o)
      out.p[s * no + o] = static_cast<double>(counts[o]) / static_cast<double>(shots);
  }
  return out;
}

void write_table_csv(const CorrelationTable& t, std::ostream& os) {
  const int n = t.n_parties;
  os << "x";
  for (int j = 1; j < n; ++j) os << ",y" << j;
  os << ",a";
  for (int j = 1; j < n; ++j) os << ",b" << j;
  os << ",p\n";
  const long long no = t.outcomes_count();
  for (long long s = 0; s < t.settings_count(); ++s)
    for (long long o = 0; o < no; ++o) {
      for (int i = 0; i < n; ++i) os << ((s >> (n - 1 - i)) & 1) << ",";
      long long ro = o;
      std::vector<int> digits(n);
      for (int i = n - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(ro % t.d);
        ro /= t.d;
      }
      for (int i = 0; i < n; ++i) os << digits[i] << ",";
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", t.p[s * no + o]);
      os << buf << "\n";
    }
}

CorrelationTable read_table_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("read_table_csv: empty input");
  int n = 0;
  {
    std::stringstream hs(line);
    std::string col;
    int cols = 0;
    while (std::getline(hs, col, ',')) ++cols;
    if (cols < 3 || cols % 2 != 1)
      throw std::invalid_argument("read_table_csv: malformed header");
    n = (cols - 1) / 2;
  }

  struct Row {
    std::vector<int> settings, outcomes;
    double p;
  };
  std::vector<Row> rows;
  int d = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    Row r;
    for (int i = 0; i < n; ++i) {
      if (!std::getline(ls, cell, ',')) throw std::invalid_argument("read_table_csv: short row");
      r.settings.push_back(std::stoi(cell));
    }
    for (int i = 0; i < n; ++i) {
      if (!std::getline(ls, cell, ',')) throw std::invalid_argument("read_table_csv: short row");
      r.outcomes.push_back(std::stoi(cell));
      d = std::max(d, r.outcomes.back() + 1);
    }
    if (!std::getline(ls, cell, ',')) throw std::invalid_argument("read_table_csv: missing p");
    r.p = std::stod(cell);
    rows.push_back(std::move(r));
  }
  if (d < 2) d = 2;

  CorrelationTable t;
  t.n_parties = n;
  t.d = d;
  t.p.assign(t.settings_count() * t.outcomes_count(), 0.0);
  for (const Row& r : rows) t.at(r.settings, r.outcomes) = r.p;
  t.validate();
  return t;
}

}  // namespace steercert
