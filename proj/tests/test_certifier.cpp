#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "test_support.hpp"

using namespace steercert;
using namespace steercert::testing;

namespace {

Multigraph single_edge(int d) {
  Multigraph g(2, d);
  g.add_edge(0, 1);
  return g;
}

}  // namespace

TEST_CASE("commutation residual oracles") {
  for (int d = 2; d <= 6; ++d)
    CHECK(graph_commutation_residual(gen_pauli_z(d), gen_pauli_x(d), 1, d) < 1e-12);
  CHECK(graph_commutation_residual(gen_pauli_z(2), gen_pauli_z(2), 1, 2) ==
        doctest::Approx(2.0).epsilon(1e-12));

  Rng rng(501);
  for (int d : {2, 3, 5}) {
    const CMatrix v = random_unitary(rng, d);
    const CMatrix b0 = v * gen_pauli_z(d) * v.adjoint();
    const CMatrix b1 = v * gen_pauli_x(d) * v.adjoint();
    for (int gamma = 1; gamma < d; ++gamma)
      CHECK(graph_commutation_residual(b0, b1, gamma, d) < 1e-12);
  }
  CHECK_THROWS_AS(
      graph_commutation_residual(CMatrix::Zero(2, 2), gen_pauli_x(2), 1, 2),
      std::invalid_argument);
}

TEST_CASE("anticommutation residual oracles") {
  const CMatrix z = gen_pauli_z(2), x = gen_pauli_x(2);
  CHECK(anticommutation_residual(z, x) < 1e-12);
  CHECK(anticommutation_residual(z, z) == doctest::Approx(2.0).epsilon(1e-12));

  Rng rng(503);
  const CMatrix v = random_unitary(rng, 4);
  const CMatrix b0 = v * kron2(z, CMatrix::Identity(2, 2)) * v.adjoint();
  const CMatrix b1 = v * kron2(x, CMatrix::Identity(2, 2)) * v.adjoint();
  CHECK(anticommutation_residual(b0, b1) < 1e-12);

  CHECK_THROWS_AS(anticommutation_residual(gen_pauli_z(3), gen_pauli_x(3)),
                  std::invalid_argument);
}

TEST_CASE("canonical form is the identity for the clock/shift pair") {
  for (int d : {2, 3, 4}) {
    const CanonicalForm cf = canonical_form(gen_pauli_z(d), gen_pauli_x(d), d);
    CHECK(cf.junk_dim == 1);
    CHECK(is_unitary(cf.u, 1e-10));
    CHECK(max_abs(cf.u * gen_pauli_z(d) * cf.u.adjoint() - gen_pauli_z(d)) < 1e-10);
  }
}

TEST_CASE("canonical form recovers scrambled product observables") {
  Rng rng(507);
  for (auto [d, m] : {std::pair{3, 2}, {2, 3}, {4, 2}}) {
    const CMatrix v = random_unitary(rng, d * m);
    const CMatrix idm = CMatrix::Identity(m, m);
    const CMatrix b0 = v * kron2(gen_pauli_z(d), idm) * v.adjoint();
    const CMatrix b1 = v * kron2(gen_pauli_x(d), idm) * v.adjoint();
    const CanonicalForm cf = canonical_form(b0, b1, d);
    CHECK(cf.junk_dim == m);
    CHECK(is_unitary(cf.u, 1e-10));
    CHECK(max_abs(cf.u * b0 * cf.u.adjoint() - kron2(gen_pauli_z(d), idm)) < 1e-8);
    CHECK(max_abs(cf.u * b1 * cf.u.adjoint() - kron2(gen_pauli_x(d), idm)) < 1e-8);
  }
}

TEST_CASE("canonical form rejects pairs violating the relation") {
  CHECK_THROWS_AS(canonical_form(gen_pauli_z(2), gen_pauli_z(2), 2),
                  std::runtime_error);
}

TEST_CASE("stabilization residuals vanish only at maximal violation") {
  const Multigraph g = single_edge(2);
  const Scenario s = ideal_scenario(FamilyParams(g));
  const SteeringFunctional f = build_functional(FamilyParams(g), s);
  const CVector psi = graph_state(g);
  for (double r : stabilization_residuals(f, psi)) CHECK(r < 1e-10);

  Rng rng(509);
  const CVector other = random_state(rng, 4);
  bool positive = false;
  for (double r : stabilization_residuals(f, other)) positive |= r > 1e-3;
  CHECK(positive);
}

TEST_CASE("ideal assignments certify with unit fidelity") {
  Rng rng(511);
  const Multigraph g = random_connected_multigraph(rng, 3, 3);
  const FamilyParams gp(g);
  const CertificationReport gr = extract_and_compare(
      graph_state(g), ideal_scenario(gp), gp, 1e-6);
  CHECK(gr.certified);
  CHECK(gr.fidelity_to_reference == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(gr.deficit < 1e-9);
  CHECK(gr.failure.empty());

  SchmidtParams sp;
  sp.d = 3;
  sp.n_parties = 2;
  sp.alpha = random_alpha(rng, 3);
  const FamilyParams spp(sp);
  const CertificationReport sr = extract_and_compare(
      schmidt_state(sp), ideal_scenario(spp), spp, 1e-6);
  CHECK(sr.certified);
  CHECK(sr.fidelity_to_reference == doctest::Approx(1.0).epsilon(1e-9));

  WParams wp;
  wp.n_parties = 3;
  wp.alpha = {0.6, 0.48, 0.64};
  const FamilyParams wpp(wp);
  const CertificationReport wr = extract_and_compare(
      w_state(wp), ideal_scenario(wpp), wpp, 1e-6);
  CHECK(wr.certified);
  REQUIRE(wr.recovered_alpha.size() == 3);
  CHECK(wr.recovered_alpha[1] / wr.recovered_alpha[0] ==
        doctest::Approx(0.8).epsilon(1e-10));
  CHECK(wr.recovered_alpha[2] / wr.recovered_alpha[0] ==
        doctest::Approx(16.0 / 15.0).epsilon(1e-10));
}

TEST_CASE("scrambled fixtures certify after extraction") {
  Rng rng(513);

  const Multigraph g = random_connected_multigraph(rng, 3, 2);
  const RoundTrip grt = scrambled_fixture(FamilyParams(g), rng);
  const CertificationReport gr =
      extract_and_compare(grt.psi, grt.scenario, FamilyParams(g), 1e-6);
  CHECK(gr.certified);
  CHECK(gr.fidelity_to_reference >= 1.0 - 1e-9);
  CHECK(gr.junk_dims == grt.junk_dims);

  SchmidtParams sp;
  sp.d = 2;
  sp.n_parties = 3;
  sp.alpha = random_alpha(rng, 2);
  const RoundTrip srt = scrambled_fixture(FamilyParams(sp), rng);
  const CertificationReport sr =
      extract_and_compare(srt.psi, srt.scenario, FamilyParams(sp), 1e-6);
  CHECK(sr.certified);
  CHECK(sr.fidelity_to_reference >= 1.0 - 1e-9);

  WParams wp;
  wp.n_parties = 3;
  wp.alpha = random_alpha(rng, 3);
  const RoundTrip wrt = scrambled_fixture(FamilyParams(wp), rng);
  const CertificationReport wr =
      extract_and_compare(wrt.psi, wrt.scenario, FamilyParams(wp), 1e-6);
  CHECK(wr.certified);
  CHECK(wr.fidelity_to_reference >= 1.0 - 1e-9);
}

TEST_CASE("depolarized states fail certification with a positive deficit") {
  const Multigraph g = single_edge(2);
  const FamilyParams gp(g);
  const Scenario s = ideal_scenario(gp);
  const CMatrix rho = depolarize(graph_state(g), 0.95);
  const CertificationReport r = extract_and_compare(rho, s, gp, 1e-6);
  CHECK_FALSE(r.certified);
  CHECK(r.deficit > 0.1);
  CHECK_FALSE(r.failure.empty());
}

TEST_CASE("wrong observables are reported as relation failures") {
  const Multigraph g = single_edge(2);
  const FamilyParams gp(g);
  Scenario s = ideal_scenario(gp);
  s.bobs[0][1] = gen_pauli_z(2);  // breaks the commutation relation
  const CertificationReport r = extract_and_compare(graph_state(g), s, gp, 1e-6);
  CHECK_FALSE(r.certified);
  CHECK_FALSE(r.failure.empty());
  REQUIRE(r.relation_residuals.size() == 1);
  CHECK(r.relation_residuals[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("purification preserves the reduced state") {
  Rng rng(517);
  const CMatrix rho = random_density(rng, 4, 3);
  const auto [psi, rank] = purify(rho);
  CHECK(rank == 3);
  CHECK(max_abs(partial_trace(psi, {4, rank}, {0}) - rho) < 1e-10);
}

TEST_CASE("amplitude recovery requires single-excitation support") {
  WParams wp;
  wp.n_parties = 3;
  wp.alpha = {1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
  const CVector w = w_state(wp);
  const std::vector<double> a =
      w_amplitude_recovery(CMatrix(w * w.adjoint()), 3);
  CHECK(a[1] / a[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a[2] / a[0] == doctest::Approx(1.0).epsilon(1e-12));

  CVector ghz = CVector::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(w_amplitude_recovery(CMatrix(ghz * ghz.adjoint()), 3),
                  std::runtime_error);
}
