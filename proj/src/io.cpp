#include "steercert/io.hpp"

namespace steercert {

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix: expected a non-empty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument("matrix: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row.at(c);
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix: entries must be [re, im] pairs");
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

Multigraph multigraph_from_json(const json& j) {
  const int d = j.value("d", 2);
  const int n = j.at("vertices").get<int>();
  Multigraph g(n, d);
  for (const json& e : j.at("edges")) {
    const int a = e.at(0).get<int>();
    const int b = e.at(1).get<int>();
    const int gamma = e.size() > 2 ? e.at(2).get<int>() : 1;
    g.add_edge(a, b, gamma);
  }
  g.validate();
  return g;
}

json multigraph_to_json(const Multigraph& g) {
  json edges = json::array();
  for (int i = 0; i < g.n_vertices; ++i)
    for (int j = i + 1; j < g.n_vertices; ++j)
      if (g.gamma[i][j] != 0) edges.push_back(json::array({i, j, g.gamma[i][j]}));
  return json{{"d", g.d}, {"vertices", g.n_vertices}, {"edges", edges}};
}

ScenarioSpec scenario_from_json(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  ScenarioSpec spec;
  if (family == "graph") {
    spec.params = multigraph_from_json(j.at("graph"));
  } else if (family == "schmidt") {
    SchmidtParams p;
    p.d = j.at("d").get<int>();
    p.n_parties = j.at("N").get<int>();
    p.alpha = j.at("alpha").get<std::vector<double>>();
    p.validate();
    spec.params = p;
  } else if (family == "w") {
    WParams p;
    p.n_parties = j.at("N").get<int>();
    p.alpha = j.at("alpha").get<std::vector<double>>();
    p.validate();
    spec.params = p;
  } else {
    throw std::invalid_argument("scenario: unknown family '" + family + "'");
  }

  const json obs = j.value("bob_observables", json("ideal"));
  if (obs.is_string() && obs.get<std::string>() == "ideal") {
    spec.scenario = ideal_scenario(spec.params);
  } else if (obs.is_array()) {
    spec.scenario = ideal_scenario(spec.params);
    if (obs.size() != spec.scenario.bobs.size())
      throw std::invalid_argument("scenario: wrong number of Bob observable pairs");
    for (std::size_t b = 0; b < obs.size(); ++b) {
      const json& pair = obs.at(b);
      if (!pair.is_array() || pair.size() != 2)
        throw std::invalid_argument("scenario: each Bob needs two observables");
      spec.scenario.bobs[b] = {matrix_from_json(pair.at(0)),
                              matrix_from_json(pair.at(1))};
      spec.scenario.bob_dims[b] = static_cast<int>(spec.scenario.bobs[b][0].rows());
    }
  } else {
    throw std::invalid_argument("scenario: bob_observables must be \"ideal\" or a list");
  }
  spec.scenario.validate();
  return spec;
}

std::string scenario_hash(const json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json bound_report_to_json(const BoundReport& r) {
  json out{{"family", family_name(r.family)},
           {"beta_q", r.beta_q},
           {"gap", r.gap},
           {"restarts", r.restarts},
           {"strategy_count", r.strategy_count}};
  if (r.lhs_upper) out["lhs_upper"] = *r.lhs_upper;
  else out["lhs_upper_note"] = "analytical bound unavailable";
  if (r.lhs_exact) out["lhs_exact"] = *r.lhs_exact;
  return out;
}

json certification_report_to_json(const CertificationReport& r,
                                  bool embed_matrices) {
  json out{{"family", family_name(r.family)},
           {"violation", r.violation},
           {"beta_q", r.beta_q},
           {"deficit", r.deficit},
           {"condition_residuals", r.condition_residuals},
           {"relation_residuals", r.relation_residuals},
           {"junk_dims", r.junk_dims},
           {"fidelity_to_reference", r.fidelity_to_reference},
           {"certified", r.certified}};
  if (!r.failure.empty()) out["failure"] = r.failure;
  if (!r.recovered_alpha.empty()) out["recovered_alpha"] = r.recovered_alpha;
  if (embed_matrices) {
    json us = json::array();
    for (const CMatrix& u : r.extraction_unitaries) us.push_back(matrix_to_json(u));
    out["extraction_unitaries"] = us;
    out["junk_state"] = matrix_to_json(r.junk_state);
  }
  return out;
}

}  // namespace steercert
