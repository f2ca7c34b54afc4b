#include "levy_gqmle/levy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "levy_gqmle/bessel.hpp"
#include "levy_gqmle/errors.hpp"
#include "levy_gqmle/quadrature.hpp"

namespace levy_gqmle {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void domain_error(const std::string& what) {
  throw Error(ErrorKind::ParameterDomain, what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Exponential decay rate of the Levy density on the side `sign`.
double tail_rate(const LevyLawSpec& spec, int sign) {
  return std::visit(
      overloaded{
          [&](const Nig& p) { return sign > 0 ? p.alpha - p.beta : p.alpha + p.beta; },
          [&](const BilateralGamma& p) { return sign > 0 ? p.rate_plus : p.rate_minus; },
          [](const Brownian&) -> double {
            throw Error(ErrorKind::NoJumpPart, "Brownian law has no Levy measure");
          }},
      spec);
}

}  // namespace

void validate(const LevyLawSpec& spec) {
  std::visit(overloaded{
                 [](const Nig& p) {
                   if (!positive_finite(p.alpha) || !positive_finite(p.delta) ||
                       !std::isfinite(p.beta) || !std::isfinite(p.mu)) {
                     domain_error("NIG requires alpha > 0, delta > 0 and finite beta, mu");
                   }
                   if (!(std::abs(p.beta) < p.alpha)) {
                     domain_error("NIG requires |beta| < alpha");
                   }
                 },
                 [](const BilateralGamma& p) {
                   if (!positive_finite(p.shape_plus) || !positive_finite(p.rate_plus) ||
                       !positive_finite(p.shape_minus) || !positive_finite(p.rate_minus)) {
                     domain_error("bilateral Gamma requires positive shapes and rates");
                   }
                 },
                 [](const Brownian& p) {
                   if (!positive_finite(p.sigma)) domain_error("Brownian requires sigma > 0");
                 }},
             spec);
}

std::string family_name(const LevyLawSpec& spec) {
  return std::visit(overloaded{[](const Nig&) { return std::string("nig"); },
                               [](const BilateralGamma&) { return std::string("bgamma"); },
                               [](const Brownian&) { return std::string("brownian"); }},
                    spec);
}

bool is_pure_jump(const LevyLawSpec& spec) { return !std::holds_alternative<Brownian>(spec); }

double blumenthal_getoor_index(const LevyLawSpec& spec) {
  return std::visit(overloaded{[](const Nig&) { return 1.0; },
                               [](const BilateralGamma&) { return 0.0; },
                               [](const Brownian&) { return 2.0; }},
                    spec);
}

CumulantVector cumulants(const LevyLawSpec& spec, int order) {
  validate(spec);
  if (order < 1 || order > 4) {
    throw Error(ErrorKind::ParameterDomain,
                "cumulants available in closed form for orders 1..4 only");
  }
  std::vector<double> k(4, 0.0);
  std::visit(overloaded{
                 [&](const Nig& p) {
                   const double g = std::sqrt(p.alpha * p.alpha - p.beta * p.beta);
                   const double a2 = p.alpha * p.alpha;
                   k[0] = p.mu + p.delta * p.beta / g;
                   k[1] = p.delta * a2 / (g * g * g);
                   k[2] = 3.0 * p.delta * p.beta * a2 / std::pow(g, 5);
                   k[3] = 3.0 * p.delta * a2 * (a2 + 4.0 * p.beta * p.beta) / std::pow(g, 7);
                 },
                 [&](const BilateralGamma& p) {
                   for (int j = 1; j <= 4; ++j) {
                     const double sign = (j % 2 == 0) ? 1.0 : -1.0;
                     k[j - 1] = factorial(j - 1) * (p.shape_plus / std::pow(p.rate_plus, j) +
                                                    sign * p.shape_minus / std::pow(p.rate_minus, j));
                   }
                 },
                 [&](const Brownian& p) { k[1] = p.sigma * p.sigma; }},
             spec);
  k.resize(static_cast<std::size_t>(order));
  return CumulantVector(std::move(k));
}

bool standardization_check(const LevyLawSpec& spec, double tol) {
  const CumulantVector k = cumulants(spec, 2);
  return std::abs(k.kappa(1)) <= tol && std::abs(k.kappa(2) - 1.0) <= tol;
}

double sample_inverse_gaussian(double mean, double shape, RandomStream& rng) {
  const double n = rng.normal();
  const double phi = mean * n * n / (2.0 * shape);
  // mean * (1 + phi - sqrt(phi^2 + 2 phi)), rationalised to avoid cancellation.
  const double root = mean / (1.0 + phi + std::sqrt(phi * (phi + 2.0)));
  if (rng.uniform() * (mean + root) <= mean) return root;
  return mean * mean / root;
}

double sample_increment(const LevyLawSpec& spec, double h, RandomStream& rng) {
  if (!(h >= 0.0) || !std::isfinite(h)) {
    throw Error(ErrorKind::ParameterDomain, "increment length must be finite and >= 0");
  }
  validate(spec);
  if (h == 0.0) return 0.0;
  return std::visit(
      overloaded{[&](const Nig& p) {
                   const double g = std::sqrt(p.alpha * p.alpha - p.beta * p.beta);
                   const double dh = p.delta * h;
                   const double v = sample_inverse_gaussian(dh / g, dh * dh, rng);
                   return p.mu * h + p.beta * v + std::sqrt(v) * rng.normal();
                 },
                 [&](const BilateralGamma& p) {
                   const double up = rng.gamma(p.shape_plus * h) / p.rate_plus;
                   const double down = rng.gamma(p.shape_minus * h) / p.rate_minus;
                   return up - down;
                 },
                 [&](const Brownian& p) { return p.sigma * std::sqrt(h) * rng.normal(); }},
      spec);
}

double levy_density(const LevyLawSpec& spec, double z) {
  if (z == 0.0) throw Error(ErrorKind::Singularity, "Levy density is singular at z = 0");
  const double az = std::abs(z);
  return std::visit(
      overloaded{[&](const Nig& p) {
                   const double x = p.alpha * az;
                   // e^{beta z} K1(alpha|z|) computed as e^{beta z - alpha|z|} (e^x K1(x)).
                   return p.delta * p.alpha / std::numbers::pi *
                          std::exp(p.beta * z - x) * bessel_k1_scaled(x) / az;
                 },
                 [&](const BilateralGamma& p) {
                   return z > 0.0 ? p.shape_plus * std::exp(-p.rate_plus * az) / az
                                  : p.shape_minus * std::exp(-p.rate_minus * az) / az;
                 },
                 [](const Brownian&) -> double {
                   throw Error(ErrorKind::NoJumpPart, "Brownian law has no Levy measure");
                 }},
      spec);
}

LevyVectorIntegral integrate_levy_vector(const LevyLawSpec& spec, const VectorIntegrand& F,
                                         int dim, double tol) {
  validate(spec);
  if (!is_pure_jump(spec)) {
    throw Error(ErrorKind::NoJumpPart, "integrate_levy requires a pure-jump law");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::ParameterDomain, "tolerance must be positive");
  if (dim < 1) throw Error(ErrorKind::ParameterDomain, "integrand dimension must be >= 1");

  // Lower-tail power: phi(u) ~ e^{(2 - beta) u} as u -> -inf.
  const double low_power = std::max(2.0 - blumenthal_getoor_index(spec), 1.0);
  constexpr double kMinU = -200.0;
  constexpr double kMaxScaledZ = 2000.0;
  const auto d = static_cast<std::size_t>(dim);

  LevyVectorIntegral total;
  total.value.assign(d, 0.0);
  total.error.assign(d, 0.0);
  std::vector<double> end_value(d);
  for (int sign : {+1, -1}) {
    const double rate = tail_rate(spec, sign);
    const double scale = 1.0 / rate;
    const VectorIntegrand phi = [&](double u, double* out) {
      const double z = sign * std::exp(u);
      F(z, out);
      const double w = levy_density(spec, z) * std::abs(z);
      for (std::size_t k = 0; k < d; ++k) out[k] *= w;
    };
    auto end_small = [&](double u, double divisor, const std::vector<double>& value,
                         double& worst) {
      phi(u, end_value.data());
      bool small = true;
      worst = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double tail = std::abs(end_value[k]) / divisor;
        if (!std::isfinite(tail) || !std::isfinite(value[k])) {
          throw QuadratureError("Levy quadrature: non-finite integrand", tail);
        }
        worst = std::max(worst, tail);
        if (tail > 0.25 * tol * std::abs(value[k])) small = false;
      }
      return small;
    };
    double u_lo = std::log(scale * 1e-6);
    double u_hi = std::log(scale * 50.0);
    VectorQuadratureResult core = integrate_gk15_vector(phi, dim, u_lo, u_hi, 0.25 * tol, 1e-300);
    if (!core.converged) {
      double residual = 0.0;
      for (double e : core.error) residual = std::max(residual, e);
      std::ostringstream msg;
      msg << "Levy quadrature did not converge (residual " << residual << ")";
      throw QuadratureError(msg.str(), residual);
    }
    std::vector<double> value = core.value;
    std::vector<double> error = core.error;
    int evaluations = core.evaluations;
    auto add = [&](const VectorQuadratureResult& piece) {
      for (std::size_t k = 0; k < d; ++k) {
        value[k] += piece.value[k];
        error[k] += piece.error[k];
      }
      evaluations += piece.evaluations;
    };
    // Widen the range until both end contributions are negligible.
    double worst = 0.0;
    for (;;) {
      ++evaluations;
      if (end_small(u_lo, low_power, value, worst)) break;
      if (u_lo <= kMinU) {
        throw QuadratureError("Levy quadrature: integrand not O(z^2) at the origin", worst);
      }
      const double next = u_lo - 4.0;
      add(integrate_gk15_vector(phi, dim, next, u_lo, 0.25 * tol, 1e-300));
      u_lo = next;
    }
    const std::vector<double> low_end = end_value;
    for (;;) {
      ++evaluations;
      if (end_small(u_hi, 1.0, value, worst)) break;
      if (std::exp(u_hi) * rate > kMaxScaledZ) {
        throw QuadratureError("Levy quadrature: integrand tail does not decay", worst);
      }
      const double next = u_hi + 1.0;
      add(integrate_gk15_vector(phi, dim, u_hi, next, 0.25 * tol, 1e-300));
      u_hi = next;
    }
    for (std::size_t k = 0; k < d; ++k) {
      total.value[k] += value[k];
      total.error[k] += error[k] + std::abs(low_end[k]) / low_power + std::abs(end_value[k]);
    }
    total.evaluations += evaluations;
  }
  return total;
}

LevyIntegral integrate_levy_detailed(const LevyLawSpec& spec,
                                     const std::function<double(double)>& F, double tol) {
  const VectorIntegrand g = [&F](double z, double* out) { out[0] = F(z); };
  const LevyVectorIntegral v = integrate_levy_vector(spec, g, 1, tol);
  return {v.value[0], v.error[0], v.evaluations};
}

double integrate_levy(const LevyLawSpec& spec, const std::function<double(double)>& F,
                      double tol) {
  return integrate_levy_detailed(spec, F, tol).value;
}

}  // namespace levy_gqmle
