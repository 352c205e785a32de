#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "pdmwell/pdmwell.hpp"

using namespace pdmwell;
using namespace pdmwell::analytic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = lo + (hi - lo) * i / (n - 1.0);
  return x;
}

template <class F>
std::vector<double> sample(const std::vector<double>& x, F&& f) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = f(x[i]);
  return v;
}

double inner(const std::vector<double>& x, const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> ab(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[i] * b[i];
  return detail::trapezoid(x, ab);
}

void normalize(const std::vector<double>& x, std::vector<double>& v) {
  const double n = std::sqrt(inner(x, v, v));
  for (auto& e : v) e /= n;
}

}  // namespace

TEST_CASE("(0,0) spectrum", "[analytic]") {
  const auto s = spectrum_00(6);
  REQUIRE(s.size() == 6);
  CHECK(s[0].energy == 2.0);
  CHECK(s[0].parity == Parity::even);
  CHECK(s[1].energy == 6.0);
  CHECK(s[1].parity == Parity::odd);
  const double expected[] = {2, 6, 12, 20, 30, 42};
  for (int i = 0; i < 6; ++i) {
    CHECK(s[i].energy == expected[i]);
    CHECK(s[i].n == i);
    CHECK(s[i].err == 0.0);
    CHECK(s[i].provenance == Provenance::analytic);
  }
  CHECK_THROWS_AS(spectrum_00(0), InvalidParams);
}

TEST_CASE("(0,0) eigenfunctions", "[analytic]") {
  CHECK(eigenfunction_00(1, 0.0) == 1.0);
  CHECK(eigenfunction_00(2, 0.0) == 0.0);
  for (double x : {-1.5, 0.3, 2.0}) {
    const double t = std::tanh(x);
    CHECK_THAT(eigenfunction_00(1, x), WithinAbs(1.0 - t * t, 1e-15));
    CHECK_THAT(eigenfunction_00(2, -x), WithinAbs(-eigenfunction_00(2, x), 1e-15));
  }
  SECTION("orthonormal on [-20, 20]") {
    const auto x = grid(-20.0, 20.0, 10000);
    std::vector<std::vector<double>> f;
    for (int n = 1; n <= 5; ++n) {
      f.push_back(sample(x, [n](double xx) { return eigenfunction_00(n, xx); }));
      normalize(x, f.back());
    }
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < i; ++j) CHECK(std::abs(inner(x, f[i], f[j])) < 1e-6);
  }
  SECTION("nodes") {
    const auto x = grid(-20.0, 20.0, 4001);
    for (int n = 1; n <= 6; ++n) {
      const auto v = sample(x, [n](double xx) { return eigenfunction_00(n, xx); });
      double peak = 0;
      for (double e : v) peak = std::max(peak, std::abs(e));
      CHECK(detail::count_sign_changes(v, 0, 1e-9 * peak) == n - 1);
    }
  }
}

TEST_CASE("(-2,0) spectrum and branch", "[analytic]") {
  const auto a = spectrum_m20(1.0 / 32.0, 1);
  CHECK_THAT(a[0].energy, WithinAbs(5.8708, 5e-5));
  CHECK_THAT(a[1].energy, WithinAbs(19.7417, 5e-5));
  const auto b = spectrum_m20(-32.0, 1);
  CHECK_THAT(b[0].energy, WithinAbs(26.7156, 5e-5));
  CHECK_THAT(b[1].energy, WithinAbs(61.4313, 5e-5));
  const auto c = spectrum_m20(0.25, 3);
  for (int n = 0; n <= 3; ++n) CHECK(c[n].energy == 4.0 * (n + 1) * (n + 1));
  CHECK_THROWS_AS(spectrum_m20(0.3, 2), ComplexSpectrum);
  CHECK_THROWS_AS(m20_branch(0.3, 1.0), InvalidParams);

  SECTION("series cut at the levels") {
    for (double v : {1.0 / 32.0, -1.0, -32.0}) {
      const auto levels = spectrum_m20(v, 4);
      for (const auto& l : levels) {
        const auto br = m20_branch(v, l.energy);
        CHECK_THAT(br.a, WithinAbs(-double(l.n), 1e-12));
        CHECK_THAT(br.c, WithinAbs(br.mu + 0.5, 1e-15));
        CHECK(br.nu == 1.5);
        // Term n+1 of the 2F1 series carries the factor (a + n) = 0.
        CHECK_THAT(br.a + l.n, WithinAbs(0.0, 1e-12));
      }
    }
  }
  SECTION("eigenfunction shape") {
    const auto lv = spectrum_m20(-32.0, 2);
    const auto br0 = m20_branch(-32.0, lv[0].energy);
    CHECK(eigenfunction_m20(br0, 0, 0.0) == 0.0);
    CHECK(std::abs(eigenfunction_m20(br0, 0, 25.0)) < 1e-20);
    CHECK(eigenfunction_m20(br0, 0, -0.7) == eigenfunction_m20(br0, 0, 0.7));
    CHECK_THROWS_AS(eigenfunction_m20(br0, 1, 0.5), InvalidParams);
    const auto x = grid(-20.0, 20.0, 10001);
    std::vector<std::vector<double>> f;
    for (int n = 0; n < 3; ++n) {
      const auto br = m20_branch(-32.0, lv[n].energy);
      f.push_back(sample(x, [&](double xx) { return eigenfunction_m20(br, n, xx); }));
      normalize(x, f.back());
      // Zeros at the origin do not count: nodes are counted on the half line.
      double peak = 0;
      for (double e : f.back()) peak = std::max(peak, std::abs(e));
      CHECK(detail::count_sign_changes(f.back(), 5001, 1e-9 * peak) == n);
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < i; ++j) CHECK(std::abs(inner(x, f[i], f[j])) < 1e-6);
  }
}

TEST_CASE("(2,0) at the special depth", "[analytic]") {
  const auto s = spectrum_20_special(4);
  for (int m = 1; m <= 4; ++m) CHECK(s[m - 1].energy == m * m + 0.5);
  CHECK(s[0].parity == Parity::even);
  CHECK(s[1].parity == Parity::odd);
  for (double z : {0.0, 0.4, 1.2}) {
    CHECK_THAT(phi_20_special(1, z), WithinAbs(std::cos(z), 1e-15));
    CHECK_THAT(phi_20_special(2, z), WithinAbs(std::sin(2 * z), 1e-15));
  }
  // cos(arccos u) = u: the ground state is sech^{1/2} x sech x.
  for (double x : {0.0, 0.8, -2.0}) CHECK_THAT(eigenfunction_20_special(1, x), WithinRel(std::pow(sech(x), 1.5), 1e-14));
  SECTION("-phi'' = m^2 phi and Dirichlet walls") {
    for (int m = 1; m <= 4; ++m) {
      const double h = 1e-4, z = 0.37;
      const double d2 = (phi_20_special(m, z + h) - 2 * phi_20_special(m, z) + phi_20_special(m, z - h)) / (h * h);
      CHECK_THAT(-d2, WithinRel(m * m * phi_20_special(m, z), 1e-6));
      CHECK_THAT(phi_20_special(m, half_pi), WithinAbs(0.0, 1e-15));
    }
  }
}

TEST_CASE("analytic_spectrum dispatch", "[analytic]") {
  CHECK(analytic_spectrum(make_problem(Member{0, 2}, 1.0), 3) == std::nullopt);
  CHECK(analytic_spectrum(make_problem(Member{2, 0}, 0.5), 3) == std::nullopt);
  const auto shifted = analytic_spectrum(make_problem(Member{0, 0}, 1.5), 2);
  REQUIRE(shifted);
  CHECK((*shifted)[0].energy == 0.5);
  CHECK((*shifted)[1].energy == 4.5);
  CHECK(analytic_spectrum(make_problem(Member{-2, 0}, -1.0), 3)->size() == 3);
  CHECK(analytic_spectrum(make_problem(Member{2, 0}, 0.75), 3)->size() == 3);
}

TEST_CASE("Heun forms solve the x-space equation", "[analytic]") {
  // At any energy each form solves psi'' + 2 tanh x psi' + sech^2 x (E - 2V) psi = 0.
  const auto residual = [](auto psi, double v, double e, Member m, double x) {
    const double h = 1e-3;
    const double f0 = psi(x), fp = psi(x + h), fm = psi(x - h), fpp = psi(x + 2 * h), fmm = psi(x - 2 * h);
    const double d1 = (-fpp + 8 * fp - 8 * fm + fmm) / (12 * h);
    const double d2 = (-fpp + 16 * fp - 30 * f0 + 16 * fm - fmm) / (12 * h * h);
    const double two_v = -v * std::pow(std::sinh(x), m.p) / std::pow(std::cosh(x), m.q);
    const double s = sech(x);
    return std::abs(d2 + 2 * std::tanh(x) * d1 + s * s * (e - two_v) * f0) / (1.0 + std::abs(d2));
  };
  for (double x : {-1.2, 0.3, 0.9}) {
    for (auto par : {Parity::even, Parity::odd}) {
      CHECK(residual([&](double xx) { return heun_form_02(-3.0, 4.2, par, xx); }, -3.0, 4.2, {0, 2}, x) < 1e-7);
      CHECK(residual([&](double xx) { return heun_form_24(-20.0, 5.0, par, xx); }, -20.0, 5.0, {2, 4}, x) < 1e-7);
      CHECK(residual([&](double xx) { return heun_form_24(20.0, 5.0, par, xx); }, 20.0, 5.0, {2, 4}, x) < 1e-7);
    }
    CHECK(residual([&](double xx) { return eigenfunction_11(1.0, 2.0, xx); }, 1.0, 2.0, {1, 1}, x) < 1e-7);
  }
  SECTION("the (2,4) form is real for positive depth") {
    for (double x : {0.2, 1.0, 2.0}) {
      const auto c = heun_form_24_complex(50.0, -5.210246244135, Parity::even, x);
      CHECK(std::abs(c.imag()) < 1e-9 * std::max(1.0, std::abs(c.real())));
    }
  }
  SECTION("(1,1) boundary values") {
    CHECK(std::abs(eigenfunction_11(1.0, 1.95, -30.0)) < 1e-20);
    const ConfluentHeunParams<double> p(0.0, 1.0, -1.0, -2.0, 0.5 + 1.0 - 1.95);
    CHECK_THAT(eigenfunction_11(1.0, 1.95, 0.0), WithinRel(0.5 * heun_c_continue(p, 0.5).value, 1e-13));
  }
}
