#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "steercert/io.hpp"

namespace {

using namespace steercert;

struct CommonOptions {
  std::string scenario_path;
  std::string out_path;
  double tol = 1e-6;
  std::uint64_t seed = 12345;
  int restarts = 64;
  long long enum_cap = 1000000;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("scenario", o.scenario_path, "Scenario JSON file")->required();
  cmd->add_option("--out", o.out_path, "Output path (stdout when omitted)");
  cmd->add_option("--tol", o.tol, "Certification tolerance");
  cmd->add_option("--seed", o.seed, "RNG seed for optimizer restarts");
  cmd->add_option("--restarts", o.restarts, "Optimizer restart count");
  cmd->add_option("--enum-cap", o.enum_cap, "Deterministic-strategy enumeration cap");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return json::parse(in);
}

void write_atomic(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp);
    out << body;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move output into place: " + path);
}

json run_meta(const CommonOptions& o, const json& scenario) {
  return json{{"seed", o.seed},
              {"tol", o.tol},
              {"restarts", o.restarts},
              {"enum_cap", o.enum_cap},
              {"version", kVersion},
              {"scenario_hash", scenario_hash(scenario)}};
}

int scenario_parties(const ScenarioSpec& spec) { return spec.scenario.n_parties; }

int cmd_build(const CommonOptions& o) {
  const json sj = load_json(o.scenario_path);
  const ScenarioSpec spec = scenario_from_json(sj);
  const SteeringFunctional f = build_functional(spec.params, spec.scenario);
  const CVector ref = reference_state(spec.params);
  json out{{"family", family_name(f.family)},
           {"d", f.d},
           {"N", f.n_parties},
           {"total_dim", spec.scenario.total_dim()},
           {"term_count", f.term_count},
           {"beta_q", f.quantum_bound},
           {"reference_dim", ref.size()},
           {"meta", run_meta(o, sj)}};
  write_atomic(o.out_path, out.dump(2) + "\n");
  return 0;
}

int cmd_bound(const CommonOptions& o) {
  const json sj = load_json(o.scenario_path);
  const ScenarioSpec spec = scenario_from_json(sj);
  OptimizerConfig cfg;
  cfg.restarts = o.restarts;
  cfg.seed = o.seed;
  const BoundReport r = bound_report(spec.params, cfg, o.enum_cap);
  json out = bound_report_to_json(r);
  out["meta"] = run_meta(o, sj);
  write_atomic(o.out_path, out.dump(2) + "\n");
  return 0;
}

int cmd_certify(const CommonOptions& o, const std::string& state_path,
                double visibility, bool embed) {
  const json sj = load_json(o.scenario_path);
  const ScenarioSpec spec = scenario_from_json(sj);

  CertificationReport rep;
  if (!state_path.empty()) {
    const json stj = load_json(state_path);
    if (!stj.is_array()) throw std::invalid_argument("state file: expected an array");
    CVector psi(stj.size());
    for (std::size_t i = 0; i < stj.size(); ++i) {
      const json& e = stj.at(i);
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("state file: entries must be [re, im] pairs");
      psi(static_cast<Eigen::Index>(i)) =
          Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
    rep = extract_and_compare(psi, spec.scenario, spec.params, o.tol);
  } else {
    const CVector ref = reference_state(spec.params);
    if (ref.size() != spec.scenario.total_dim())
      throw std::invalid_argument(
          "certify: scenario has enlarged Bob dimensions, pass --state");
    if (visibility < 1.0) {
      rep = extract_and_compare(depolarize(ref, visibility), spec.scenario,
                                spec.params, o.tol);
    } else {
      rep = extract_and_compare(ref, spec.scenario, spec.params, o.tol);
    }
  }

  json out = certification_report_to_json(rep, embed);
  out["meta"] = run_meta(o, sj);
  write_atomic(o.out_path, out.dump(2) + "\n");
  return rep.certified ? 0 : 1;
}

int cmd_scan(const CommonOptions& o, double vmin, double vmax, int steps) {
  if (steps < 2 || vmin < 0.0 || vmax > 1.0 || vmin > vmax)
    throw std::invalid_argument("scan: invalid noise grid");
  const json sj = load_json(o.scenario_path);
  const ScenarioSpec spec = scenario_from_json(sj);
  const CVector ref = reference_state(spec.params);
  if (ref.size() != spec.scenario.total_dim())
    throw std::invalid_argument("scan: only ideal-dimension scenarios are supported");
  const SteeringFunctional f = build_functional(spec.params, spec.scenario);
  const LhsStrategy strat = lhs_exact_enumeration(f, o.enum_cap);

  std::ostringstream os;
  const json meta = run_meta(o, sj);
  os << "# seed=" << o.seed << " tol=" << o.tol << " version=" << kVersion
     << " scenario_hash=" << meta["scenario_hash"].get<std::string>() << "\n";
  os << "v,value,lhs_exact,beta_q,certified\n";
  for (int i = 0; i < steps; ++i) {
    const double v = vmin + (vmax - vmin) * i / (steps - 1);
    const CMatrix rho = depolarize(ref, v);
    const double value = quantum_value(f, rho);
    bool certified = false;
    try {
      certified = extract_and_compare(rho, spec.scenario, spec.params, o.tol).certified;
    } catch (const std::exception&) {
      certified = false;
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%.12g,%d\n", v, value,
                  strat.value, f.quantum_bound, certified ? 1 : 0);
    os << line;
  }
  write_atomic(o.out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("STEERCERT_THREADS")) {
    const int n = std::atoi(threads);
    if (n > 0) Eigen::setNbThreads(n);
  }

  CLI::App app{"Steering-functional toolkit: states, bounds, certification"};
  app.require_subcommand(1);

  CommonOptions build_o, bound_o, certify_o, scan_o;
  add_common(app.add_subcommand("build", "Realize a scenario and report metadata"), build_o);
  add_common(app.add_subcommand("bound", "Quantum and LHS bounds for a scenario"), bound_o);

  CLI::App* certify = app.add_subcommand("certify", "Run the certification pass");
  add_common(certify, certify_o);
  std::string state_path;
  double visibility = 1.0;
  bool embed = false;
  certify->add_option("--state", state_path, "State vector JSON ([re, im] array)");
  certify->add_option("--visibility", visibility, "Depolarizing visibility of the reference state")
      ->check(CLI::Range(0.0, 1.0));
  certify->add_flag("--embed-matrices", embed, "Embed extraction unitaries in the report");

  CLI::App* scan = app.add_subcommand("scan", "Noise scan over depolarizing visibility");
  add_common(scan, scan_o);
  double vmin = 0.0, vmax = 1.0;
  int steps = 11;
  scan->add_option("--vmin", vmin, "Grid start");
  scan->add_option("--vmax", vmax, "Grid end");
  scan->add_option("--steps", steps, "Grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("build")) return cmd_build(build_o);
    if (app.got_subcommand("bound")) return cmd_bound(bound_o);
    if (app.got_subcommand("certify"))
      return cmd_certify(certify_o, state_path, visibility, embed);
    return cmd_scan(scan_o, vmin, vmax, steps);
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "compute error: " << e.what() << "\n";
    return 1;
  }
}
