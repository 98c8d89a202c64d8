#include <cmath>
#include <numbers>
#include <random>

#include "gcis/fock.hpp"
#include "gcis/json_io.hpp"
#include "helpers.hpp"

using namespace gcis;

namespace {

CoefficientVector random_coeffs(std::mt19937_64& rng, std::int64_t lo, std::size_t n) {
  std::normal_distribution<double> g;
  CoefficientVector c{lo, {}};
  for (std::size_t i = 0; i < n; ++i) c.values.emplace_back(g(rng), g(rng));
  return c;
}

double norm_sq(const FockSeries& f, double a) { return std::exp(fock_norm_log(f, a)); }

}  // namespace

TEST_CASE("numeric helpers") {
  CHECK(wrap_phase(0.0) == 0.0);
  CHECK(wrap_phase(std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_phase(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_phase(7.0) == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
  CHECK(wrap_phase(1e6) == doctest::Approx(std::remainder(1e6, 2.0 * std::numbers::pi)));

  const std::vector<double> xs = {1000.0, 1000.0};
  CHECK(log_sum_exp(xs) == doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(log_sum_exp(std::vector<double>{}) == kNegInf);
  CHECK(log_sum_exp(std::vector<double>{kNegInf, kNegInf}) == kNegInf);

  CHECK(softplus(800.0) == doctest::Approx(800.0));
  CHECK(softplus(-800.0) == 0.0);
  CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)));

  for (std::complex<double> z : {std::complex<double>(1e-12, 0.0), {1e-10, 2e-10}, {0.3, -2.0}, {-40.0, 1.0}}) {
    const auto ref = std::exp(z) - 1.0;
    const auto got = gcis::expm1(z);
    CHECK(std::abs(got - ref) <= 1e-15 * std::max(1.0, std::abs(ref)) + 1e-25);
  }
  // Cancellation regime: e^z − 1 for |z| ~ 1e-12 keeps full relative accuracy.
  const std::complex<double> tiny(1e-12, 1e-12);
  CHECK(std::abs(gcis::expm1(tiny) - (tiny + 0.5 * tiny * tiny)) < 1e-30);
}

TEST_CASE("log-polar points") {
  const auto p = LogPolarPoint::from_complex({-2.0, 0.0});
  CHECK(p.log_modulus == doctest::Approx(std::log(2.0)));
  CHECK(p.argument == doctest::Approx(std::numbers::pi));
  CHECK_THROWS_CODE(LogPolarPoint::from_complex(0.0), ErrorCode::BadParameter);
  const LogPolarPoint w1{1.0, 0.2}, w2{1.1, -0.5};
  CHECK(std::exp(log_distance(w1, w2)) == doctest::Approx(std::abs(w1.to_complex() - w2.to_complex())).epsilon(1e-14));
  // Huge moduli never overflow.
  const LogPolarPoint big1{800.0, 0.0}, big2{800.0 + 1e-3, 0.0};
  const double gap = big2.log_modulus - big1.log_modulus;
  CHECK(log_distance(big1, big2) == doctest::Approx(800.0 + std::log(std::expm1(gap))).epsilon(1e-15));
  CHECK(log_distance(w1, w1) == kNegInf);
}

TEST_CASE("to_fock places weighted coefficients") {
  const GaussianParam c(0.5, 0.25);
  const CoefficientVector coeffs{-2, {1.0, 2.0, 3.0, {0.0, 4.0}, 5.0}};
  const auto f = to_fock(c, coeffs);
  CHECK(f.c0 == Complex(3.0));
  REQUIRE(f.plus.coeffs.size() == 2);
  REQUIRE(f.minus.coeffs.size() == 2);
  // degree 0 of F₊ ← c_1 e^{-c}, degree 1 ← c_2 e^{-4c}
  CHECK(std::abs(f.plus.coeffs[0].to_complex() - Complex(0.0, 4.0) * std::exp(-c.c())) < 1e-15);
  CHECK(std::abs(f.plus.coeffs[1].to_complex() - 5.0 * std::exp(-4.0 * c.c())) < 1e-15);
  CHECK(std::abs(f.minus.coeffs[0].to_complex() - 2.0 * std::exp(-c.c())) < 1e-15);
  CHECK(std::abs(f.minus.coeffs[1].to_complex() - 1.0 * std::exp(-4.0 * c.c())) < 1e-15);

  const auto only_plus = to_fock(c, CoefficientVector{3, {1.0}});
  CHECK(only_plus.minus.is_zero());
  CHECK(only_plus.plus.degree() == 2);
  CHECK(only_plus.plus.coeffs[0].is_zero());
}

TEST_CASE("isometry") {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = 0.1 + 0.02 * trial;
    const GaussianParam c(a, trial % 2 ? 3.0 : 0.0);
    const auto coeffs = random_coeffs(rng, -15, 31);
    const auto f = to_fock(c, coeffs);
    const auto parts = split_parts(coeffs);
    CHECK(rel_err(norm_sq(f.plus, a), parts.plus.norm() * parts.plus.norm()) < 1e-13);
    CHECK(rel_err(norm_sq(f.minus, a), parts.minus.norm() * parts.minus.norm()) < 1e-13);
  }
  // Degree 40 at a = 1 needs weights e^{2·41²}, far past double range.
  const auto far = to_fock(GaussianParam(1.0), CoefficientVector{41, {1.0}});
  CHECK(fock_norm_log(far.plus, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fock_norm_log(FockSeries{}, 1.0) == kNegInf);
  CHECK(fock_norm_log(FockSeries::monomial(3), 0.5) == doctest::Approx(2.0 * 0.5 * 16.0));
}

TEST_CASE("norm by quadrature") {
  std::mt19937_64 rng(7);
  for (double a : {0.25, 0.5, 1.0}) {
    for (std::size_t n = 0; n <= 5; ++n) {
      const auto f = FockSeries::monomial(n);
      const auto q = fock_norm_quadrature(f, a);
      CHECK(rel_err(q.norm_sq, norm_sq(f, a)) < 1e-6);
    }
    for (int trial = 0; trial < 5; ++trial) {
      std::normal_distribution<double> g;
      std::vector<std::complex<double>> b(6);
      for (auto& x : b) x = {g(rng), g(rng)};
      const auto f = FockSeries::from_complex(b);
      CHECK(rel_err(fock_norm_quadrature(f, a).norm_sq, norm_sq(f, a)) < 1e-6);
    }
  }
  SUBCASE("coarse grids are rejected") {
    const auto f = FockSeries::monomial(3);
    auto grid = default_radial_grid(f, 0.5);
    auto truncated = grid;
    truncated.t_hi = 2.0;  // cuts through the bump at 2a(n+1) = 4
    CHECK_THROWS_CODE(fock_norm_quadrature(f, 0.5, truncated), ErrorCode::GridTooCoarse);
    auto sparse = grid;
    sparse.step = 1.5;
    CHECK_THROWS_CODE(fock_norm_quadrature(f, 0.5, sparse), ErrorCode::GridTooCoarse);
    auto few_angles = grid;
    few_angles.angular_points = 3;
    CHECK_THROWS_CODE(fock_norm_quadrature(f, 0.5, few_angles), ErrorCode::GridTooCoarse);
  }
  CHECK(fock_norm_quadrature(FockSeries{}, 0.5).norm_sq == 0.0);
}

TEST_CASE("monomials are orthogonal") {
  const double a = 0.5;
  for (std::size_t j = 0; j <= 4; ++j) {
    for (std::size_t k = j + 1; k <= 4; ++k) {
      const auto fj = FockSeries::monomial(j), fk = FockSeries::monomial(k);
      auto grid = default_radial_grid(FockSeries::monomial(k), a);
      const double diag = std::sqrt(norm_sq(fj, a) * norm_sq(fk, a));
      CHECK(std::abs(fock_inner_quadrature(fj, fk, a, grid)) < 1e-10 * diag);
      CHECK(rel_err(fock_inner_quadrature(fk, fk, a, grid).real(), norm_sq(fk, a)) < 1e-6);
    }
  }
}

TEST_CASE("reproducing kernel") {
  // 60-digit values from tests/oracles/kernel_ratio.py, a = 0.5.
  const double a = 0.5;
  const std::pair<double, double> oracle[] = {
      {-10.0, 1.368539474135061e-44}, {-5.0, 5.1093325290983434e-12}, {-1.0, 0.15468715807539058},
      {0.0, 0.77263720482665215},     {1.0, 1.5739364231271186},      {5.0, 1.7727176824173568},
      {10.0, 1.7726372084803297}};
  for (const auto& [t, ratio] : oracle) {
    const auto k = kernel_norm(a, {t, 0.4});
    CHECK(rel_err(k.ratio, ratio) < 1e-12);
    CHECK(k.certified_tail < 1e-12);
    // Enlarging the term count past the certified one changes nothing.
    const auto more = kernel_norm(a, {t, 0.4}, 2 * k.terms + 5);
    CHECK(rel_err(more.ratio, k.ratio) < 1e-12);
  }
  CHECK_THROWS_CODE(kernel_norm(a, {10.0, 0.0}, 3), ErrorCode::TooFewTerms);
  CHECK_THROWS_CODE(kernel_norm(a, {0.0, 0.0}, 0), ErrorCode::TooFewTerms);
  // Far out the log form keeps working where |w|^{2n} overflows.
  const auto far = kernel_norm(a, {400.0, 0.0});
  CHECK(std::isfinite(far.log_norm_sq));
  CHECK(far.ratio == doctest::Approx(1.7726372).epsilon(1e-6));
}

TEST_CASE("node transform and φ") {
  const GaussianParam c(0.5, 2.0);
  const auto w = node_transform(c, 3.0);
  CHECK(w.log_modulus == doctest::Approx(3.0));
  CHECK(w.argument == doctest::Approx(wrap_phase(12.0)));
  CHECK(std::abs(w.to_complex() - std::exp(2.0 * c.c() * 3.0)) < 1e-12 * std::exp(3.0));
  CHECK(phi(0.5, w) == doctest::Approx(4.5));
}

TEST_CASE("identity linking V²_c and the Fock side") {
  std::mt19937_64 rng(33);
  for (double b : {0.0, 2.0}) {
    for (int trial = 0; trial < 5; ++trial) {
      const GaussianParam c(0.5 + 0.25 * trial, b);
      const auto coeffs = random_coeffs(rng, 1, 6);
      for (double lambda = -5.0; lambda <= 5.0; lambda += 0.5) {
        const auto r = consistency_identity(c, coeffs, lambda);
        INFO("a=", c.a(), " b=", b, " lambda=", lambda);
        // The direct series is summed to an absolute tolerance, so tiny values
        // are only compared absolutely.
        if (std::abs(r.rhs) > 1e-12 * coeffs.norm()) {
          CHECK(r.relative_gap < 1e-9);
        } else {
          CHECK(std::abs(r.lhs - r.rhs) < 1e-16 * coeffs.norm());
        }
      }
    }
  }
  CHECK_THROWS_CODE(consistency_identity(GaussianParam(1.0), CoefficientVector{0, {1.0, 1.0}}, 0.5),
                    ErrorCode::BadParameter);
  // Zeros below n = 1 are allowed.
  CHECK(consistency_identity(GaussianParam(1.0), CoefficientVector{-1, {0.0, 0.0, 1.0}}, 0.5).relative_gap < 1e-12);
}

TEST_CASE("Fock series JSON") {
  std::vector<std::complex<double>> b = {1.0, 0.0, {0.0, -2.0}};
  const auto f = FockSeries::from_complex(b);
  const auto j = to_json(f);
  CHECK(j[1][0].is_null());
  const auto g = fock_series_from_json(j);
  REQUIRE(g.coeffs.size() == 3);
  CHECK(g.coeffs[1].is_zero());
  CHECK(std::abs(g.coeffs[2].to_complex() - Complex(0.0, -2.0)) < 1e-15);
  CHECK_THROWS_CODE(fock_series_from_json(json::object()), ErrorCode::ConfigInvalid);
}
