#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "pdmwell/pdmwell.hpp"

using namespace pdmwell;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Sturm bisection on the discrete Laplacian", "[oracle]") {
  const int n = 200;
  SymTridiagonal t;
  t.diag.assign(n, 2.0);
  t.off.assign(n - 1, -1.0);
  const auto ev = lowest_eigenvalues(t, 10);
  REQUIRE(ev.size() == 10);
  for (int k = 1; k <= 10; ++k)
    CHECK_THAT(ev[k - 1], WithinAbs(2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1)), 1e-14));
  const auto [lo, hi] = gershgorin_bounds(t);
  CHECK(lo <= 0.0);
  CHECK(hi >= 4.0);
}

TEST_CASE("Sturm bisection with clustered eigenvalues", "[oracle]") {
  // Two decoupled copies of the same block give exact doublets.
  SymTridiagonal t;
  t.diag = {1.0, 3.0, 2.0, 1.0, 3.0, 2.0};
  t.off = {0.5, 0.25, 0.0, 0.5, 0.25};
  const auto ev = lowest_eigenvalues(t, 6);
  for (int i = 0; i < 6; i += 2) CHECK_THAT(ev[i], WithinAbs(ev[i + 1], 1e-14));
  CHECK(ev[0] < ev[2]);
}

TEST_CASE("oracle configuration", "[oracle]") {
  OracleConfig cfg;
  CHECK(cfg.domain_half_width_x == 20.0);
  CHECK(cfg.n_points == 4000);
  cfg.n_points = 99;
  CHECK_THROWS_AS(cfg.validate(), InvalidParams);
  CHECK_THROWS_AS(oracle_spectrum(make_problem(Member{0, 0}, 0.0), 0), InvalidParams);
}

TEST_CASE("z-space oracle on (0,0)", "[oracle]") {
  const auto prob = make_problem(Member{0, 0}, 0.0);
  const auto r = oracle_spectrum_richardson(prob, 5);
  const double expected[] = {2, 6, 12, 20, 30};
  for (int i = 0; i < 5; ++i) {
    CHECK_THAT(r[i].energy, WithinRel(expected[i], 1e-4));
    CHECK(r[i].parity == (i % 2 == 0 ? Parity::even : Parity::odd));
    CHECK(r[i].provenance == Provenance::oracle);
  }
  SECTION("error decreases under refinement") {
    OracleConfig coarse;
    coarse.n_points = 500;
    OracleConfig fine;
    fine.n_points = 2000;
    const auto a = oracle_spectrum(prob, 3, coarse);
    const auto b = oracle_spectrum(prob, 3, fine);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(b[i].energy - expected[i]) < std::abs(a[i].energy - expected[i]));
  }
}

TEST_CASE("x-space oracle on (0,0) with physical units", "[oracle]") {
  // hbar = 1.3, m0 = 0.8, d = 1.7: dimensionless levels are unchanged.
  const auto prob = make_problem(PotentialSpec({0, 0}, 0.0, 1.7, 0.8, 1.3));
  OracleConfig cfg;
  cfg.scheme = OracleScheme::x_space_pdm;
  const auto r = oracle_spectrum_richardson(prob, 4, cfg);
  const double expected[] = {2, 6, 12, 20};
  for (int i = 0; i < 4; ++i) CHECK_THAT(r[i].energy, WithinRel(expected[i], 1e-4));
}

TEST_CASE("(-2,0) oracle", "[oracle]") {
  const auto prob = make_problem(Member{-2, 0}, 1.0 / 32.0);
  CHECK_THAT(oracle_error_order(prob), WithinAbs(2 * std::sqrt(0.25 - 1.0 / 32.0), 1e-15));
  CHECK(oracle_error_order(make_problem(Member{-2, 0}, -32.0)) == 2.0);
  const auto z = oracle_spectrum_richardson(prob, 2);
  CHECK_THAT(z[0].energy, WithinAbs(5.8708, 1e-3 * 5.8708));
  CHECK_THAT(z[1].energy, WithinAbs(19.7417, 1e-3 * 19.7417));
  OracleConfig x;
  x.scheme = OracleScheme::x_space_pdm;
  const auto xs = oracle_spectrum_richardson(prob, 2, x);
  CHECK_THAT(xs[0].energy, WithinAbs(5.8708, 1e-3 * 5.8708));
  CHECK_THAT(xs[1].energy, WithinAbs(19.7417, 1e-3 * 19.7417));
  CHECK(z[0].parity == Parity::even);
  CHECK(z[1].parity == Parity::even);
}

TEST_CASE("cross-scheme agreement on (0,2) at 1/32", "[oracle]") {
  const auto prob = make_problem(Member{0, 2}, 1.0 / 32.0);
  const auto z = oracle_spectrum_richardson(prob, 4);
  OracleConfig cfg;
  cfg.scheme = OracleScheme::x_space_pdm;
  const auto x = oracle_spectrum_richardson(prob, 4, cfg);
  for (int i = 0; i < 4; ++i) CHECK_THAT(x[i].energy, WithinRel(z[i].energy, 1e-4));
}

TEST_CASE("(1,1) oracle levels carry no parity", "[oracle]") {
  const auto r = oracle_spectrum(make_problem(Member{1, 1}, 1.0), 3);
  for (const auto& e : r) CHECK(e.parity == Parity::none);
  CHECK(r[0].energy < r[1].energy);
}
