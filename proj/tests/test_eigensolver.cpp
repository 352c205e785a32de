#include <catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <vector>

#include "pdmwell/pdmwell.hpp"

using namespace pdmwell;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double inner(const WavefunctionSamples& a, const WavefunctionSamples& b) {
  std::vector<double> f(a.psi.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = a.psi[i] * b.psi[i];
  return detail::trapezoid(a.grid_x, f);
}

}  // namespace

TEST_CASE("shooting configuration", "[eigensolver]") {
  ShootingConfig cfg;
  CHECK(cfg.delta == 1e-6);
  CHECK(cfg.grid_n == 20000);
  CHECK(cfg.tol == 1e-10);
  cfg.delta = 0.05;
  CHECK_THROWS_AS(cfg.validate(), InvalidParams);
  cfg = {};
  cfg.e_min = 3.0;
  cfg.e_max = 1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidParams);
  cfg = {};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidParams);
}

TEST_CASE("shoot_parity endpoint", "[eigensolver]") {
  const auto flat = make_problem(Member{0, 0}, 0.0);
  SECTION("(0,0) at a level and between levels") {
    CHECK(std::abs(shoot_parity(flat, 2.0, Parity::even)) < 1e-6);
    CHECK(std::abs(shoot_parity(flat, 6.0, Parity::odd)) < 1e-6);
    CHECK(std::abs(shoot_parity(flat, 3.0, Parity::even)) > 1e-3);
  }
  SECTION("endpoint shrinks as the wall moves out") {
    double prev = 1.0;
    for (double d : {1e-3, 1e-4, 1e-5, 1e-6}) {
      ShootingConfig cfg;
      cfg.delta = d;
      const double v = std::abs(shoot_parity(flat, 2.0, Parity::even, cfg));
      CHECK(v < prev);
      prev = v;
    }
  }
  SECTION("(0,2) at the published ground state") {
    const auto p = make_problem(Member{0, 2}, 1.0 / 32.0);
    const double lo = shoot_parity(p, 1.9749958440 - 1e-6, Parity::even);
    const double hi = shoot_parity(p, 1.9749958440 + 1e-6, Parity::even);
    CHECK(lo * hi < 0.0);
  }
  SECTION("errors") {
    CHECK_THROWS_AS(shoot_parity(make_problem(Member{1, 1}, 1.0), 2.0, Parity::even), InvalidParams);
    CHECK_THROWS_AS(shoot_parity(make_problem(Member{-2, 0}, -1.0), 9.0, Parity::odd), SingularOrigin);
    CHECK_THROWS_AS(shoot_parity(make_problem(Member{-2, 0}, 1.0), 9.0, Parity::even), ComplexSpectrum);
  }
}

TEST_CASE("shooting is continuous inside each bracket", "[eigensolver]") {
  // Between consecutive levels of a channel the endpoint keeps one sign: probing
  // three interior points of every bracket must never flip it.
  const auto p = make_problem(Member{0, 2}, -50.0);
  const auto levels = find_spectrum(p, 6);
  for (auto par : {Parity::even, Parity::odd}) {
    std::vector<double> e;
    for (const auto& l : levels)
      if (l.parity == par) e.push_back(l.energy);
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
      const double a = e[i] + 1e-6, b = e[i + 1] - 1e-6;
      const double s0 = shoot_parity(p, a, par);
      for (double f : {0.25, 0.5, 0.75}) CHECK(shoot_parity(p, a + f * (b - a), par) * s0 > 0.0);
      CHECK(shoot_parity(p, b, par) * s0 > 0.0);
    }
  }
}

TEST_CASE("find_spectrum reproduces analytic members", "[eigensolver]") {
  const auto check = [](const DimensionlessProblem& prob, int n) {
    const auto num = find_spectrum(prob, n);
    const auto ana = *analytic::analytic_spectrum(prob, n);
    for (int i = 0; i < n; ++i) {
      INFO(prob.member().to_string() << " Vcal0=" << prob.vcal0() << " n=" << i);
      CHECK_THAT(num[i].energy, WithinAbs(ana[i].energy, std::max(1e-8, num[i].err)));
      CHECK(num[i].parity == ana[i].parity);
      CHECK(num[i].n == i);
      CHECK(num[i].provenance == Provenance::shooting);
      CHECK(num[i].err <= 1e-10);
    }
  };
  check(make_problem(Member{0, 0}, 0.0), 7);
  check(make_problem(Member{0, 0}, 2.5), 4);
  check(make_problem(Member{2, 0}, 0.75), 7);
  for (double v : {1.0 / 32.0, -1.0, -32.0}) check(make_problem(Member{-2, 0}, v), 7);
}

TEST_CASE("(0,2) levels fall as the depth grows", "[eigensolver]") {
  std::vector<std::vector<Eigenpair>> runs;
  for (double v : {-50.0, -0.75, 0.0, 1.0 / 32.0, 10.0}) runs.push_back(find_spectrum(make_problem(Member{0, 2}, v), 5));
  for (std::size_t r = 1; r < runs.size(); ++r)
    for (int i = 0; i < 5; ++i) CHECK(runs[r][i].energy < runs[r - 1][i].energy);
}

TEST_CASE("tunnelling doublets and window handling", "[eigensolver]") {
  const auto p = make_problem(Member{0, 2}, -50.0);
  SECTION("a coarse scan still resolves the doublet") {
    ShootingConfig cfg;
    cfg.scan_step = 5.0;
    const auto l = find_spectrum(p, 4, cfg);
    CHECK_THAT(l[1].energy - l[0].energy, WithinAbs(2.13e-2, 1e-4));
    CHECK(l[0].parity == Parity::even);
    CHECK(l[1].parity == Parity::odd);
  }
  SECTION("explicit window") {
    ShootingConfig cfg;
    cfg.e_min = 20.0;
    cfg.e_max = 46.0;
    CHECK(find_spectrum(p, 3, cfg).size() == 3);
    try {
      find_spectrum(p, 4, cfg);
      FAIL("expected IncompleteSpectrum");
    } catch (const IncompleteSpectrum& e) {
      CHECK(e.partial().size() == 3);
    }
  }
  SECTION("window starting above the ground state keeps global indices") {
    ShootingConfig cfg;
    cfg.e_min = 40.0;
    cfg.e_max = 50.0;
    const auto l = find_spectrum(p, 2, cfg);
    CHECK(l[0].n == 2);
    CHECK(l[1].n == 3);
  }
}

TEST_CASE("(1,1) two-sided quantization", "[eigensolver]") {
  const auto p = make_problem(Member{1, 1}, 1.0);
  const auto l = find_spectrum(p, 4);
  for (const auto& e : l) {
    CHECK(e.parity == Parity::none);
    const auto s = shoot_two_sided(p, e.energy);
    CHECK(std::abs(s.wronskian) < 1e-8);
    CHECK_THAT(s.theta / std::numbers::pi, WithinAbs(e.n + 1.0, 1e-6));
  }
  const auto o = oracle_spectrum_richardson(p, 4);
  for (int i = 0; i < 4; ++i) CHECK_THAT(l[i].energy, WithinRel(o[i].energy, 1e-6));
  // Reversing the tilt mirrors the potential and leaves the spectrum unchanged.
  const auto mirrored = find_spectrum(make_problem(Member{1, 1}, -1.0), 4);
  for (int i = 0; i < 4; ++i) CHECK_THAT(mirrored[i].energy, WithinAbs(l[i].energy, 1e-9));
}

TEST_CASE("wall condition choice", "[eigensolver]") {
  // For (2,0) at depth 3/4 the regular wall solution is t^1 and a plain Dirichlet
  // cut is only first order in delta; the automatic choice removes that error.
  const auto p = make_problem(Member{2, 0}, 0.75);
  ShootingConfig dir;
  dir.wall = WallCondition::dirichlet;
  const double e_dir = find_spectrum(p, 1, dir)[0].energy;
  const double e_auto = find_spectrum(p, 1)[0].energy;
  CHECK(std::abs(e_dir - 1.5) > 1e-7);
  CHECK_THAT(e_auto, WithinAbs(1.5, 1e-8));

  SECTION("delta convergence for a wall with lambda = 3/2") {
    const auto q = make_problem(Member{0, 2}, -50.0);
    // The Dirichlet cut costs O(delta^2) here: a tenfold smaller delta shrinks
    // the change by about a hundred.
    ShootingConfig a, b, c;
    a.delta = 1e-5;
    b.delta = 1e-6;
    c.delta = 1e-7;
    const auto la = find_spectrum(q, 4, a);
    const auto lb = find_spectrum(q, 4, b);
    const auto lc = find_spectrum(q, 4, c);
    for (int i = 0; i < 4; ++i) {
      const double d1 = std::abs(la[i].energy - lb[i].energy);
      const double d2 = std::abs(lb[i].energy - lc[i].energy);
      CHECK(d1 < 1e-7);
      CHECK(d2 < 2e-9);
      CHECK(d2 < d1 / 30.0);
    }
  }
}

TEST_CASE("eigenfunctions", "[eigensolver]") {
  SECTION("(0,2) double well: doublet densities nearly coincide") {
    const auto p = make_problem(Member{0, 2}, -50.0);
    const auto l = find_spectrum(p, 4);
    std::vector<WavefunctionSamples> s;
    for (const auto& e : l) s.push_back(eigenfunction_numeric(p, e));
    for (int i = 0; i < 4; ++i) {
      CHECK(s[i].nodes == i);
      CHECK_THAT(inner(s[i], s[i]), WithinAbs(1.0, 1e-12));
      for (int j = 0; j < i; ++j) CHECK(std::abs(inner(s[i], s[j])) < 1e-6);
    }
    double diff = 0.0;
    for (std::size_t k = 0; k < s[0].psi.size(); ++k)
      diff = std::max(diff, std::abs(s[0].psi[k] * s[0].psi[k] - s[1].psi[k] * s[1].psi[k]));
    double peak = 0.0;
    for (double v : s[0].psi) peak = std::max(peak, v * v);
    CHECK(diff < 0.05 * peak);
  }
  SECTION("psi = sech^{1/2} phi on the grid") {
    const auto p = make_problem(Member{2, 4}, 50.0);
    const auto l = find_spectrum(p, 2);
    const auto s = eigenfunction_numeric(p, l[1]);
    for (std::size_t k = 0; k < s.psi.size(); k += 97)
      CHECK_THAT(s.psi[k], WithinAbs(std::sqrt(sech(s.grid_x[k])) * s.phi[k], 1e-10));
    for (std::size_t k = 0; k < s.grid_z.size(); ++k) CHECK(std::abs(s.grid_z[k]) < half_pi);
  }
  SECTION("mislabelled level is detected") {
    const auto p = make_problem(Member{0, 0}, 0.0);
    Eigenpair wrong{1, Parity::even, 2.0, Provenance::shooting, 0.0};
    CHECK_THROWS_AS(eigenfunction_numeric(p, wrong), QuantizationMisindex);
  }
  SECTION("(0,0) matches the closed form") {
    const auto p = make_problem(Member{0, 0}, 0.0);
    const auto l = find_spectrum(p, 3);
    for (int n = 0; n < 3; ++n) {
      const auto s = eigenfunction_numeric(p, l[n]);
      std::vector<double> ref(s.grid_x.size());
      for (std::size_t k = 0; k < ref.size(); ++k) ref[k] = analytic::eigenfunction_00(n + 1, s.grid_x[k]);
      std::vector<double> sq(ref.size());
      for (std::size_t k = 0; k < ref.size(); ++k) sq[k] = ref[k] * ref[k];
      const double nr = std::sqrt(detail::trapezoid(s.grid_x, sq));
      double dot = 0.0;
      for (std::size_t k = 0; k < ref.size(); ++k) sq[k] = ref[k] * s.psi[k];
      dot = detail::trapezoid(s.grid_x, sq) / nr;
      CHECK_THAT(std::abs(dot), WithinAbs(1.0, 1e-9));
    }
  }
}
