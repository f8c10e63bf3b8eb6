#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gdicke/bogoliubov.hpp"
#include "gdicke/dicke.hpp"
#include "gdicke/errors.hpp"
#include "test_support.hpp"

using namespace gdicke;
using gdicke::testing::max_abs;

namespace {

const double kLambdaC = std::sqrt(0.5);

CMatrix mat3(std::initializer_list<std::initializer_list<double>> rows) {
  CMatrix m(3, 3);
  int i = 0;
  for (auto r : rows) {
    int j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

std::vector<double> sorted_real(const BogoliubovSpectrum& s) {
  std::vector<double> out;
  for (auto w : s.frequencies) out.push_back(w.real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("ModelParams validation") {
  CHECK_THROWS_AS((ModelParams{0.0, 1.0, 0.5, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((ModelParams{1.0, -1.0, 0.5, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((ModelParams{1.0, 1.0, -0.1, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((ModelParams{1.0, 1.0, 0.1, 0.0}.validate()), InvalidArgument);
  CHECK_NOTHROW((ModelParams{1.0, 1.0, 0.0, 1.0}.validate()));
}

TEST_CASE("branch names round-trip") {
  for (auto b : kAllBranches) CHECK(parse_branch(to_string(b)) == b);
  CHECK_FALSE(parse_branch("sr5").has_value());
}

TEST_CASE("normal_form matrices") {
  const auto f = normal_form({1.0, 1.0, 0.5, 1e6});
  CHECK(max_abs(f.a - mat3({{1, .5, 0}, {.5, 1, 0}, {0, 0, 1}})) == 0.0);
  CHECK(max_abs(f.b - mat3({{0, 0, .5}, {0, 0, 0}, {.5, 0, 0}})) == 0.0);
  CHECK(f.c0 == 0.0);

  const auto g = normal_form({2.0, 1.0, 0.0, 10.0});
  CHECK(max_abs(g.a - mat3({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 0.0);
  CHECK(max_abs(g.b) == 0.0);
}

TEST_CASE("branch_coefficients: Sr1 at resonance, lambda = 1") {
  // Hand evaluation: X+ = 3N/4, X- = N/4, alpha = 2 sqrt(3/16) sqrt(N),
  // omega_- = 1 + 4 (1/4) = 2, B_- = 1/2, A_- = (3/4 - 1/8)/sqrt(3/4),
  // C_- = -(1/4) / (2 sqrt(3/4)).
  for (double n : {1.0, 100.0, 1e6}) {
    const auto c = branch_coefficients({1.0, 1.0, 1.0, n}, Branch::Sr1);
    const double rn = std::sqrt(n);
    CHECK(c.x_plus == doctest::Approx(0.75 * n).epsilon(1e-14));
    CHECK(c.x_minus == doctest::Approx(0.25 * n).epsilon(1e-14));
    CHECK(c.alpha / rn == doctest::Approx(0.8660254037844386).epsilon(1e-12));
    CHECK(c.beta / rn == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c.gamma / rn == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c.omega_minus == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c.b_minus == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c.a_minus == doctest::Approx(0.625 / std::sqrt(0.75)).epsilon(1e-12));
    CHECK(c.a_minus == doctest::Approx(0.721688).epsilon(1e-6));
    CHECK(c.c_minus == doctest::Approx(-0.125 / std::sqrt(0.75)).epsilon(1e-12));
    CHECK(c.c_minus == doctest::Approx(-0.144338).epsilon(1e-5));
    CHECK(std::abs(c.x_plus + c.x_minus - n) <= 1e-9 * n);
    CHECK(c.k_e == doctest::Approx(n - c.beta * c.beta));
    CHECK(c.k_f == doctest::Approx(n - c.gamma * c.gamma));
    CHECK(c.k_e > 0.0);
  }
}

TEST_CASE("branch_coefficients: threshold and below") {
  const auto c = branch_coefficients({1.0, 1.0, kLambdaC, 1e6}, Branch::Sr1);
  CHECK(c.x_minus <= 1e-9 * 1e6);
  CHECK(c.alpha <= 1e-3);
  CHECK(c.beta <= 1e-3);
  CHECK(c.gamma <= 1e-3);
  for (auto b : kSuperradiantBranches) {
    CHECK_THROWS_AS(branch_coefficients({1.0, 1.0, 0.5, 1e6}, b), DisplacementUndefined);
  }
  CHECK_THROWS_AS(branch_coefficients({1.0, 1.0, 1.0, 1e6}, Branch::Normal), InvalidArgument);
}

TEST_CASE("branch_coefficients: exact threshold gives X- = 0") {
  // 2 lambda^2 == omega omega0 exactly in binary: omega = 2, omega0 = 1, lambda = 1.
  const auto c = branch_coefficients({2.0, 1.0, 1.0, 1e6}, Branch::Sr1);
  CHECK(c.x_minus == 0.0);
  CHECK(c.alpha == 0.0);
  CHECK(c.beta == 0.0);
  CHECK(std::isfinite(c.a_minus));
  CHECK(std::isfinite(c.c_minus));
  CHECK_NOTHROW(superradiant_form({2.0, 1.0, 1.0, 1e6}, Branch::Sr1));
  CHECK_THROWS_AS(superradiant_form({2.0, 1.0, 1.0, 1e6}, Branch::Sr3), DisplacementUndefined);
}

TEST_CASE("superradiant_form: Sr1 assembly at lambda = 1") {
  const auto c = branch_coefficients({1.0, 1.0, 1.0, 1e6}, Branch::Sr1);
  const auto f = superradiant_form({1.0, 1.0, 1.0, 1e6}, Branch::Sr1);
  const double am = c.a_minus, cm = c.c_minus, wm = c.omega_minus, bm = c.b_minus;
  CHECK(max_abs(f.a - mat3({{1, am, cm}, {am, wm, 0}, {cm, 0, wm}})) == 0.0);
  CHECK(max_abs(f.b - mat3({{0, cm, am}, {cm, bm, 0}, {am, 0, bm}})) == 0.0);
  CHECK(f.c0 == c.c0);
}

TEST_CASE("superradiant_form: mixed branches use the crossed coefficients") {
  const ModelParams p{1.0, 1.0, 1.2, 1e6};
  const auto c = branch_coefficients(p, Branch::Sr2);
  const auto f2 = superradiant_form(p, Branch::Sr2);
  CHECK(max_abs(f2.a - mat3({{1, c.a_plus, c.c_minus}, {c.a_plus, c.omega_plus, 0}, {c.c_minus, 0, c.omega_minus}})) == 0.0);
  CHECK(max_abs(f2.b - mat3({{0, c.c_plus, c.a_minus}, {c.c_plus, c.b_plus, 0}, {c.a_minus, 0, c.b_minus}})) == 0.0);
  const auto f4 = superradiant_form(p, Branch::Sr4);
  CHECK(max_abs(f4.a - mat3({{1, c.a_minus, c.c_plus}, {c.a_minus, c.omega_minus, 0}, {c.c_plus, 0, c.omega_plus}})) == 0.0);
  CHECK(max_abs(f4.b - mat3({{0, c.c_minus, c.a_plus}, {c.c_minus, c.b_minus, 0}, {c.a_plus, 0, c.b_plus}})) == 0.0);
  const auto f3 = superradiant_form(p, Branch::Sr3);
  CHECK(max_abs(f3.a - mat3({{1, c.a_plus, c.c_plus}, {c.a_plus, c.omega_plus, 0}, {c.c_plus, 0, c.omega_plus}})) == 0.0);
}

TEST_CASE("Sr2 and Sr4 share the displacement energy but not the spectrum") {
  // The printed Sr2/Sr4 matrices are not related by an e <-> f relabeling: e
  // couples through a^+ e while f couples through a^+ f^+. Their offsets agree
  // and so do their thresholds (see criticality tests); the spectra differ.
  const ModelParams p{1.0, 1.0, 1.0, 1e6};
  const auto f2 = superradiant_form(p, Branch::Sr2);
  const auto f4 = superradiant_form(p, Branch::Sr4);
  CHECK(f2.c0 == doctest::Approx(f4.c0).epsilon(1e-12));
  const auto w2 = sorted_real(bogoliubov_spectrum(f2));
  const auto w4 = sorted_real(bogoliubov_spectrum(f4));
  CHECK(std::abs(w2[2] - w4[2]) > 0.1);
}

TEST_CASE("reduction at criticality: Sr1 equals the normal form") {
  for (double w : {0.5, 1.0, 2.0}) {
    const ModelParams p{w, 1.0, critical_coupling(w, 1.0), 1e6};
    const auto sr = superradiant_form(p, Branch::Sr1);
    const auto nf = normal_form(p);
    CHECK(max_abs(sr.a - nf.a) <= 1e-9);
    CHECK(max_abs(sr.b - nf.b) <= 1e-9);
  }
}

TEST_CASE("extensivity: matrices are N-independent, c0 scales with N") {
  for (auto b : kSuperradiantBranches) {
    const auto small = superradiant_form({1.0, 1.0, 1.1, 10.0}, b);
    const auto large = superradiant_form({1.0, 1.0, 1.1, 1e7}, b);
    CHECK(max_abs(small.a - large.a) <= 1e-12);
    CHECK(max_abs(small.b - large.b) <= 1e-12);
    CHECK(std::abs(large.c0 / 1e7 - small.c0 / 10.0) <= 1e-9 * std::abs(small.c0 / 10.0));
  }
}

TEST_CASE("classical_energy: origin, domain and consistency with c0") {
  const ModelParams p{1.0, 1.0, 1.0, 400.0};
  CHECK(classical_energy(p, 0, 0, 0) == 0.0);
  CHECK_THROWS_AS(classical_energy(p, 0, 21, 0), DomainError);
  CHECK_THROWS_AS(classical_energy(p, 0, 0, -21), DomainError);
  for (double lambda : {0.75, 1.0, 1.6}) {
    ModelParams q = p;
    q.lambda = lambda;
    for (auto b : kSuperradiantBranches) {
      const auto c = branch_coefficients(q, b);
      CHECK(std::abs(classical_energy(q, c.alpha, c.beta, c.gamma) - c.c0) <= 1e-9 * q.n_atoms);
    }
  }
}

TEST_CASE("classical_energy: stationarity at the displacements") {
  // Central finite differences with step 1e-5 sqrt(N). Sr1 is a true stationary
  // point. The other branches take sqrt(X+) in at least one atomic mode, which
  // solves only the squared stationarity condition; the alpha derivative and the
  // sqrt(X-) components still vanish there.
  const double n = 1e4;
  for (double lambda : {0.72, 0.8, 1.0, 1.5, 2.5}) {
    const ModelParams p{1.0, 1.0, lambda, n};
    for (auto b : kSuperradiantBranches) {
      const auto c = branch_coefficients(p, b);
      const double h = 1e-5 * std::sqrt(n);
      const std::array<double, 3> x{c.alpha, c.beta, c.gamma};
      std::array<double, 3> grad{};
      for (int i = 0; i < 3; ++i) {
        auto up = x, dn = x;
        up[i] += h;
        dn[i] -= h;
        grad[i] = (classical_energy(p, up[0], up[1], up[2]) -
                   classical_energy(p, dn[0], dn[1], dn[2])) / (2 * h);
      }
      CAPTURE(lambda);
      CAPTURE(to_string(b));
      CHECK(std::abs(grad[0]) <= 1e-6 * n);
      const bool beta_minus = b == Branch::Sr1 || b == Branch::Sr4;
      const bool gamma_minus = b == Branch::Sr1 || b == Branch::Sr2;
      if (beta_minus) CHECK(std::abs(grad[1]) <= 1e-6 * n);
      else CHECK(std::abs(grad[1]) > 1e-3 * std::sqrt(n));
      if (gamma_minus) CHECK(std::abs(grad[2]) <= 1e-6 * n);
      else CHECK(std::abs(grad[2]) > 1e-3 * std::sqrt(n));
    }
  }
}

TEST_CASE("order_parameter") {
  CHECK(order_parameter({1.0, 1.0, 1.0, 1e6}) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(order_parameter({1.0, 1.0, 0.5, 1e6}) == 0.0);
  CHECK(order_parameter({1.0, 1.0, kLambdaC, 1e6}) <= 1e-15);
  // Matches |alpha|^2 / N from the branch coefficients.
  for (double lambda : {0.8, 1.3, 2.0}) {
    const ModelParams p{1.0, 1.0, lambda, 1e6};
    const auto c = branch_coefficients(p, Branch::Sr1);
    CHECK(order_parameter(p) == doctest::Approx(c.alpha * c.alpha / p.n_atoms).epsilon(1e-12));
  }
}

TEST_CASE("order_parameter grows linearly above lambda_c") {
  std::vector<std::pair<double, double>> pts;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 25;
  for (int i = 0; i < n; ++i) {
    const double d = 1e-4 * std::pow(100.0, i / double(n - 1));
    const double y = order_parameter({1.0, 1.0, kLambdaC + d, 1e6});
    const double lx = std::log(d), ly = std::log(y);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(1.0).epsilon(0.02));
}
