#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "levy_gqmle/bessel.hpp"
#include "levy_gqmle/errors.hpp"
#include "levy_gqmle/experiment.hpp"
#include "levy_gqmle/levy.hpp"
#include "levy_gqmle/stats.hpp"

using namespace levy_gqmle;

namespace {

// Cumulant generating functions log E[e^{s Z_1}], independent of the library formulas.
double cgf(const LevyLawSpec& spec, double s) {
  if (auto* p = std::get_if<Nig>(&spec)) {
    const double g = std::sqrt(p->alpha * p->alpha - p->beta * p->beta);
    const double b = p->beta + s;
    return p->mu * s + p->delta * (g - std::sqrt(p->alpha * p->alpha - b * b));
  }
  if (auto* p = std::get_if<BilateralGamma>(&spec)) {
    return -p->shape_plus * std::log(1.0 - s / p->rate_plus) -
           p->shape_minus * std::log(1.0 + s / p->rate_minus);
  }
  const auto& b = std::get<Brownian>(spec);
  return 0.5 * b.sigma * b.sigma * s * s;
}

// Derivatives 1..4 at 0 by sixth/fourth-order central stencils.
std::vector<double> cgf_derivatives(const LevyLawSpec& spec) {
  const double e = 0.02;
  auto f = [&](int k) { return cgf(spec, k * e); };
  const double d1 = (-f(2) + 8 * f(1) - 8 * f(-1) + f(-2)) / (12 * e);
  const double d2 = (-f(2) + 16 * f(1) - 30 * f(0) + 16 * f(-1) - f(-2)) / (12 * e * e);
  const double d3 = (-f(3) + 8 * f(2) - 13 * f(1) + 13 * f(-1) - 8 * f(-2) + f(-3)) /
                    (8 * e * e * e);
  const double d4 = (-f(3) + 12 * f(2) - 39 * f(1) + 56 * f(0) - 39 * f(-1) + 12 * f(-2) - f(-3)) /
                    (6 * e * e * e * e);
  return {d1, d2, d3, d4};
}

std::vector<LevyLawSpec> jump_specs() {
  return {noise_for(NoiseCase::I), noise_for(NoiseCase::II), noise_for(NoiseCase::III),
          BilateralGamma{2.0, 3.0, 0.5, 1.5}, Nig{3.0, -1.0, 0.7, 0.2}};
}

}  // namespace

TEST_CASE("cumulants: closed forms against the cumulant generating function") {
  std::vector<LevyLawSpec> specs = jump_specs();
  specs.push_back(Brownian{1.3});
  for (const auto& spec : specs) {
    const CumulantVector k = cumulants(spec, 4);
    const std::vector<double> d = cgf_derivatives(spec);
    for (int j = 1; j <= 4; ++j) {
      CHECK(k.kappa(j) == doctest::Approx(d[j - 1]).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("cumulants: reference noises") {
  auto check = [](NoiseCase c, std::vector<double> expected) {
    const CumulantVector k = cumulants(noise_for(c), 4);
    for (int j = 1; j <= 4; ++j) {
      CHECK(std::abs(k.kappa(j) - expected[j - 1]) < 1e-12);
    }
  };
  check(NoiseCase::I, {0.0, 1.0, 0.0, 0.03});
  check(NoiseCase::II, {0.0, 1.0, 0.0, 3.0});
  check(NoiseCase::Diffusion, {0.0, 1.0, 0.0, 0.0});
  check(NoiseCase::III, {0.0, 1.0, 0.8, 89.0 / 75.0});
  CHECK(cumulants(noise_for(NoiseCase::I), 2).order() == 2);
  CHECK_THROWS_AS(cumulants(noise_for(NoiseCase::I), 5), Error);
  CHECK_THROWS_AS(cumulants(noise_for(NoiseCase::I), 0), Error);
}

TEST_CASE("standardization holds for every reference noise") {
  for (NoiseCase c : all_noise_cases()) CHECK(standardization_check(noise_for(c)));
  CHECK_FALSE(standardization_check(BilateralGamma{2.0, 3.0, 0.5, 1.5}));
}

TEST_CASE("parameter domain") {
  CHECK_THROWS_AS(validate(LevyLawSpec{Nig{1.0, 1.0, 1.0, 0.0}}), Error);
  CHECK_THROWS_AS(validate(LevyLawSpec{Nig{1.0, 0.0, -1.0, 0.0}}), Error);
  CHECK_THROWS_AS(validate(LevyLawSpec{BilateralGamma{1.0, 0.0, 1.0, 1.0}}), Error);
  CHECK_THROWS_AS(validate(LevyLawSpec{Brownian{0.0}}), Error);
  RandomStream rng(1, 0);
  try {
    sample_increment(Nig{1.0, 2.0, 1.0, 0.0}, 0.1, rng);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParameterDomain);
  }
  CHECK(blumenthal_getoor_index(noise_for(NoiseCase::I)) == 1.0);
  CHECK(blumenthal_getoor_index(noise_for(NoiseCase::II)) == 0.0);
  CHECK(family_name(noise_for(NoiseCase::II)) == "bgamma");
}

TEST_CASE("sample_increment: empty interval and determinism") {
  RandomStream rng(7, 3);
  for (NoiseCase c : all_noise_cases()) CHECK(sample_increment(noise_for(c), 0.0, rng) == 0.0);
  RandomStream a(11, 5);
  RandomStream b(11, 5);
  RandomStream other(11, 6);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = sample_increment(noise_for(NoiseCase::III), 0.05, a);
    const double y = sample_increment(noise_for(NoiseCase::III), 0.05, b);
    CHECK(x == y);
    differs |= x != sample_increment(noise_for(NoiseCase::III), 0.05, other);
  }
  CHECK(differs);
}

TEST_CASE("sample_increment: NIG(10,0,10,0) mean and variance at h = 0.05") {
  const LevyLawSpec spec = noise_for(NoiseCase::I);
  const double h = 0.05;
  const long N = 1000000;
  RandomStream rng(2024, 0);
  std::vector<double> x(N);
  for (auto& v : x) v = sample_increment(spec, h, rng);
  const double k2 = h;
  const double k4 = 0.03 * h;
  const double mu4 = k4 + 3.0 * k2 * k2;
  CHECK(std::abs(mean(x)) < 4.0 * std::sqrt(k2 / N));
  CHECK(std::abs(sample_variance(x) - k2) < 4.0 * std::sqrt((mu4 - k2 * k2) / N));
}

TEST_CASE("sample_increment: bilateral Gamma fourth cumulant at h = 1") {
  const LevyLawSpec spec = noise_for(NoiseCase::II);
  RandomStream rng(99, 0);
  const int batches = 50;
  const long per = 20000;
  std::vector<double> k4;
  for (int b = 0; b < batches; ++b) {
    std::vector<double> x(per);
    for (auto& v : x) v = sample_increment(spec, 1.0, rng);
    k4.push_back(sample_cumulants(x).k4);
  }
  const double se = sample_sd(k4) / std::sqrt(static_cast<double>(batches));
  CHECK(std::abs(mean(k4) - 3.0) < 4.0 * se);
}

TEST_CASE("sample_increment: infinite divisibility h vs h/2 + h/2") {
  for (const auto& spec : {noise_for(NoiseCase::II), noise_for(NoiseCase::III)}) {
    const double h = 0.2;
    const int batches = 40;
    const long per = 10000;
    RandomStream rng(5, 1);
    std::vector<double> d2, d3, d4;
    for (int b = 0; b < batches; ++b) {
      std::vector<double> one(per);
      std::vector<double> two(per);
      for (long i = 0; i < per; ++i) {
        one[i] = sample_increment(spec, h, rng);
        two[i] = sample_increment(spec, h / 2, rng) + sample_increment(spec, h / 2, rng);
      }
      const SampleCumulants a = sample_cumulants(one);
      const SampleCumulants c = sample_cumulants(two);
      d2.push_back(a.k2 - c.k2);
      d3.push_back(a.k3 - c.k3);
      d4.push_back(a.k4 - c.k4);
    }
    for (const auto* d : {&d2, &d3, &d4}) {
      const double se = sample_sd(*d) / std::sqrt(static_cast<double>(batches));
      CHECK(std::abs(mean(*d)) < 4.0 * se);
    }
  }
}

TEST_CASE("inverse Gaussian sampler moments") {
  RandomStream rng(3, 3);
  const double m = 0.4;
  const double lambda = 0.9;
  const long N = 400000;
  std::vector<double> x(N);
  for (auto& v : x) v = sample_inverse_gaussian(m, lambda, rng);
  const double var = m * m * m / lambda;
  CHECK(std::abs(mean(x) - m) < 4.0 * std::sqrt(var / N));
  CHECK(sample_variance(x) == doctest::Approx(var).epsilon(0.03));
}

TEST_CASE("Bessel K1 against an independent reference") {
  double worst = 0.0;
  for (double lx = -6.0; lx <= std::log10(700.0); lx += 0.01) {
    const double x = std::pow(10.0, lx);
    const double ref = boost::math::cyl_bessel_k(1, x);
    worst = std::max(worst, std::abs(bessel_k1(x) - ref) / ref);
    const double scaled = bessel_k1_scaled(x);
    worst = std::max(worst, std::abs(scaled - ref * std::exp(x)) / (ref * std::exp(x)));
  }
  CHECK(worst < 1e-8);
  CHECK_THROWS_AS(bessel_k1(0.0), Error);
  CHECK_THROWS_AS(bessel_k1(-1.0), Error);
}

TEST_CASE("levy_density") {
  CHECK(levy_density(noise_for(NoiseCase::II), 1.0) ==
        doctest::Approx(std::exp(-std::sqrt(2.0))).epsilon(1e-14));
  const double nig = 100.0 / std::numbers::pi * boost::math::cyl_bessel_k(1, 10.0);
  CHECK(levy_density(noise_for(NoiseCase::I), 1.0) == doctest::Approx(nig).epsilon(1e-9));
  CHECK(nig == doctest::Approx(5.936e-4).epsilon(1e-3));
  for (double z : {0.001, 0.1, 0.7, 2.0, 9.0}) {
    CHECK(levy_density(noise_for(NoiseCase::I), z) ==
          doctest::Approx(levy_density(noise_for(NoiseCase::I), -z)).epsilon(1e-15));
    CHECK(levy_density(noise_for(NoiseCase::II), z) ==
          doctest::Approx(levy_density(noise_for(NoiseCase::II), -z)).epsilon(1e-15));
  }
  try {
    levy_density(noise_for(NoiseCase::I), 0.0);
    FAIL("expected singularity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singularity);
  }
  try {
    levy_density(noise_for(NoiseCase::Diffusion), 1.0);
    FAIL("expected no-jump-part error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoJumpPart);
  }
}

TEST_CASE("integrate_levy: moments equal cumulants") {
  for (const auto& spec : jump_specs()) {
    const CumulantVector k = cumulants(spec, 4);
    for (int r = 2; r <= 4; ++r) {
      const double v = integrate_levy(spec, [r](double z) { return std::pow(z, r); }, 1e-9);
      CHECK(std::abs(v - k.kappa(r)) <= 1e-6 * std::max(std::abs(k.kappa(r)), 1e-3));
    }
  }
  CHECK(integrate_levy(noise_for(NoiseCase::I), [](double z) { return z * z; }, 1e-8) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integrate_levy(noise_for(NoiseCase::I), [](double z) { return z * z * z * z; }, 1e-8) ==
        doctest::Approx(0.03).epsilon(1e-6));
  CHECK(integrate_levy(noise_for(NoiseCase::III), [](double) { return 0.0; }, 1e-8) == 0.0);
}

TEST_CASE("integrate_levy: vector form matches scalar calls") {
  const LevyLawSpec spec = noise_for(NoiseCase::III);
  const LevyVectorIntegral v = integrate_levy_vector(
      spec, [](double z, double* out) {
        out[0] = z * z;
        out[1] = z * z * z;
        out[2] = std::sin(z) * z;
      }, 3, 1e-9);
  CHECK(v.value[0] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(v.value[1] == doctest::Approx(0.8).epsilon(1e-7));
  const double s = integrate_levy(spec, [](double z) { return std::sin(z) * z; }, 1e-9);
  CHECK(v.value[2] == doctest::Approx(s).epsilon(1e-7));
}

TEST_CASE("integrate_levy: failures") {
  try {
    integrate_levy(noise_for(NoiseCase::II), [](double) { return 1.0; }, 1e-8);
    FAIL("expected a quadrature error");
  } catch (const QuadratureError& e) {
    CHECK(e.kind() == ErrorKind::QuadratureFailure);
    CHECK(e.residual() > 0.0);
  }
  CHECK_THROWS_AS(
      integrate_levy(noise_for(NoiseCase::I), [](double z) { return z * z * std::exp(20 * std::abs(z)); }, 1e-8),
      QuadratureError);
  CHECK_THROWS_AS(integrate_levy(noise_for(NoiseCase::Diffusion), [](double z) { return z * z; }, 1e-8),
                  Error);
}
