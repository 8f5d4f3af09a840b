// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include "pickmad/copula_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pickmad/errors.hpp"
#include "pickmad/format.hpp"
#include "pickmad/numerics.hpp"

namespace pickmad {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kConditionalTolerance = 1e-12;
constexpr double kCdfQuadratureTolerance = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_unit(double u, const char* name) {
  if (!(u >= 0.0 && u <= 1.0)) {
    std::ostringstream msg;
    msg << name << "=" << u << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

void require_open_unit(double u, const char* name) {
  if (!(u > 0.0 && u < 1.0)) {
    std::ostringstream msg;
    msg << name << "=" << u << " outside (0, 1)";
    throw DomainError(msg.str());
  }
}

void require_correlation(double rho) {
  if (!(std::abs(rho) < 1.0)) {
    throw ParameterError("copula correlation must satisfy |rho| < 1, got " + format_double(rho));
  }
}

// Outer-power Clayton pieces, all driven by lx = log x so that arguments
// of the form u^(1/k) with large k keep full relative precision.
//   phi(x)  = (x^-theta - 1)^beta = expm1(-theta lx)^beta
//   D       = (1 + S^(1/beta))^(-1/theta),  S = phi(x) + phi(y)
struct OpcTerms {
  double log_a;  // log(x^-theta - 1)
  double phi;
};

OpcTerms opc_terms(const copula::OuterPowerClayton& p, double lx) {
  const double a = std::expm1(-p.theta * lx);
  if (a <= 0.0) return {kNegInf, 0.0};
  const double log_a = std::log(a);
  return {log_a, std::exp(p.beta * log_a)};
}

double opc_log_cdf(const copula::OuterPowerClayton& p, double lx, double ly) {
  const double s = opc_terms(p, lx).phi + opc_terms(p, ly).phi;
  return -std::log1p(std::pow(s, 1.0 / p.beta)) / p.theta;
}

// log dD(x, y)/dx.
double opc_log_partial(const copula::OuterPowerClayton& p, double lx, double ly) {
  const OpcTerms tx = opc_terms(p, lx);
  const OpcTerms ty = opc_terms(p, ly);
  const double s = tx.phi + ty.phi;
  if (s <= 0.0 || tx.log_a == kNegInf) return kNegInf;
  const double log_s = std::log(s);
  return -(1.0 / p.theta + 1.0) * std::log1p(std::exp(log_s / p.beta)) +
         (1.0 / p.beta - 1.0) * log_s + (p.beta - 1.0) * tx.log_a + (-p.theta - 1.0) * lx;
}

// Logistic copula in terms of lx = log x (< 0).
double logistic_log_cdf(double beta, double lx, double ly) {
  return -std::pow(std::pow(-lx, beta) + std::pow(-ly, beta), 1.0 / beta);
}

double logistic_log_partial(double beta, double lx, double ly) {
  if (lx >= 0.0) return ly >= 0.0 ? 0.0 : kNegInf;
  const double sx = std::pow(-lx, beta);
  const double sy = ly >= 0.0 ? 0.0 : std::pow(-ly, beta);
  const double s = sx + sy;
  return logistic_log_cdf(beta, lx, ly) + (1.0 / beta - 1.0) * std::log(s) +
         (beta - 1.0) * std::log(-lx) - lx;
}

double gaussian_conditional(double rho, double x, double y) {
  return numerics::normal_cdf((y - rho * x) / std::sqrt(1.0 - rho * rho));
}

double student_conditional(const copula::StudentT& p, double x, double y) {
  const double scale = std::sqrt((1.0 - p.rho * p.rho) * (p.dof + x * x) / (p.dof + 1.0));
  return numerics::student_t_cdf((y - p.rho * x) / scale, p.dof + 1.0);
}

// Root of g(v) = conditional(v) - w on v in [0, 1], with g(0) = -w and
// g(1) = 1 - w fixed by the distribution limits.
template <class Conditional>
double invert_conditional(Conditional&& conditional, double u, double w) {
  auto g = [&](double v) {
    if (v <= 0.0) return -w;
    if (v >= 1.0) return 1.0 - w;
    return conditional(v) - w;
  };
  try {
    return numerics::find_root(g, 0.0, 1.0, kConditionalTolerance);
  } catch (const NumericalError& err) {
    std::ostringstream msg;
    msg << "conditional inversion failed at (u=" << format_double(u)
        << ", w=" << format_double(w) << "): " << err.what();
    throw NumericalError(msg.str());
  }
}

// int_{-inf}^{x} density(s) conditional(s) ds on the latent scale, mapped onto
// z in (0, 1] by s = x - (1 - z) / z.
double integrate_latent(const std::function<double(double)>& density,
                        const std::function<double(double)>& conditional, double x) {
  auto mapped = [&](double z) {
    const double s = x - (1.0 - z) / z;
    return density(s) * conditional(s) / (z * z);
  };
  const auto result = numerics::integrate(mapped, 0.0, 1.0, kCdfQuadratureTolerance);
  return std::clamp(result.value, 0.0, 1.0);
}

}  // namespace

CopulaSpec CopulaSpec::outer_power_clayton(double theta, double beta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw ParameterError("outer-power Clayton requires theta > 0, got " + format_double(theta));
  }
  if (!(beta >= 1.0) || !std::isfinite(beta)) {
    throw ParameterError("outer-power Clayton requires beta >= 1, got " + format_double(beta));
  }
  return CopulaSpec(copula::OuterPowerClayton{theta, beta});
}

CopulaSpec CopulaSpec::student_t(double dof, double rho) {
  if (!(dof > 0.0) || !std::isfinite(dof)) {
    throw ParameterError("t copula requires nu > 0, got " + format_double(dof));
  }
  require_correlation(rho);
  return CopulaSpec(copula::StudentT{dof, rho});
}

CopulaSpec CopulaSpec::gaussian(double rho) {
  require_correlation(rho);
  return CopulaSpec(copula::Gaussian{rho});
}

CopulaSpec CopulaSpec::independence() { return CopulaSpec(copula::Independence{}); }

CopulaSpec CopulaSpec::comonotone() { return CopulaSpec(copula::Comonotone{}); }

CopulaSpec CopulaSpec::logistic(double beta) {
  if (!(beta >= 1.0) || !std::isfinite(beta)) {
    throw ParameterError("logistic copula requires beta >= 1, got " + format_double(beta));
  }
  return CopulaSpec(copula::Logistic{beta});
}

double CopulaSpec::standard_beta() { return std::log(2.0) / std::log(2.0 - 0.25); }

CopulaSpec CopulaSpec::standard_outer_power_clayton() {
  return outer_power_clayton(1.0, standard_beta());
}

CopulaSpec CopulaSpec::standard_student_t() { return student_t(4.0, 0.494217); }

CopulaSpec CopulaSpec::standard_gaussian() { return gaussian(0.5); }

CopulaSpec CopulaSpec::from_tag(std::string_view tag) {
  if (tag == "opclayton") return standard_outer_power_clayton();
  if (tag == "t4") return standard_student_t();
  if (tag == "gaussian") return standard_gaussian();
  if (tag == "independence") return independence();
  if (tag == "comonotone") return comonotone();
  if (tag == "logistic") return logistic(standard_beta());
  throw ParameterError("unknown copula '" + std::string(tag) +
                       "' (expected opclayton|t4|gaussian|independence|comonotone|logistic)");
}

std::string CopulaSpec::tag() const {
  return std::visit(Overloaded{
                        [](const copula::OuterPowerClayton&) { return std::string("opclayton"); },
                        [](const copula::StudentT&) { return std::string("t4"); },
                        [](const copula::Gaussian&) { return std::string("gaussian"); },
                        [](const copula::Independence&) { return std::string("independence"); },
                        [](const copula::Comonotone&) { return std::string("comonotone"); },
                        [](const copula::Logistic&) { return std::string("logistic"); },
                    },
                    variant_);
}

std::string CopulaSpec::describe() const {
  return std::visit(
      Overloaded{
          [](const copula::OuterPowerClayton& p) {
            return "opclayton(theta=" + format_double(p.theta) + ",beta=" + format_double(p.beta) +
                   ")";
          },
          [](const copula::StudentT& p) {
            return "t4(nu=" + format_double(p.dof) + ",rho=" + format_double(p.rho) + ")";
          },
          [](const copula::Gaussian& p) { return "gaussian(rho=" + format_double(p.rho) + ")"; },
          [](const copula::Independence&) { return std::string("independence()"); },
          [](const copula::Comonotone&) { return std::string("comonotone()"); },
          [](const copula::Logistic& p) { return "logistic(beta=" + format_double(p.beta) + ")"; },
      },
      variant_);
}

double cdf(const CopulaSpec& spec, double u, double v) {
  require_unit(u, "u");
  require_unit(v, "v");
  if (u == 0.0 || v == 0.0) return 0.0;
  if (u == 1.0) return v;
  if (v == 1.0) return u;
  return std::visit(
      Overloaded{
          [&](const copula::OuterPowerClayton& p) {
            return std::exp(opc_log_cdf(p, std::log(u), std::log(v)));
          },
          [&](const copula::StudentT& p) {
            const double y = numerics::student_t_quantile(v, p.dof);
            return integrate_latent([&](double s) { return numerics::student_t_pdf(s, p.dof); },
                                    [&](double s) { return student_conditional(p, s, y); },
                                    numerics::student_t_quantile(u, p.dof));
          },
          [&](const copula::Gaussian& p) {
            const double y = numerics::normal_quantile(v);
            return integrate_latent(numerics::normal_pdf,
                                    [&](double s) { return gaussian_conditional(p.rho, s, y); },
                                    numerics::normal_quantile(u));
          },
          [&](const copula::Independence&) { return u * v; },
          [&](const copula::Comonotone&) { return std::min(u, v); },
          [&](const copula::Logistic& p) {
            return std::exp(logistic_log_cdf(p.beta, std::log(u), std::log(v)));
          },
      },
      spec.variant());
}

double conditional_cdf(const CopulaSpec& spec, double u, double v) {
  require_open_unit(u, "u");
  require_unit(v, "v");
  if (v == 0.0) return 0.0;
  if (v == 1.0) return 1.0;
  return std::visit(
      Overloaded{
          [&](const copula::OuterPowerClayton& p) {
            return std::exp(opc_log_partial(p, std::log(u), std::log(v)));
          },
          [&](const copula::StudentT& p) {
            return student_conditional(p, numerics::student_t_quantile(u, p.dof),
                                       numerics::student_t_quantile(v, p.dof));
          },
          [&](const copula::Gaussian& p) {
            return gaussian_conditional(p.rho, numerics::normal_quantile(u),
                                        numerics::normal_quantile(v));
          },
          [&](const copula::Independence&) { return v; },
          [&](const copula::Comonotone&) { return v >= u ? 1.0 : 0.0; },
          [&](const copula::Logistic& p) {
            return std::exp(logistic_log_partial(p.beta, std::log(u), std::log(v)));
          },
      },
      spec.variant());
}

double conditional_inverse(const CopulaSpec& spec, double u, double w) {
  require_open_unit(u, "u");
  require_open_unit(w, "w");
  return std::visit(
      Overloaded{
          [&](const copula::OuterPowerClayton& p) {
            const double lu = std::log(u);
            return invert_conditional(
                [&](double v) { return std::exp(opc_log_partial(p, lu, std::log(v))); }, u, w);
          },
          [&](const copula::StudentT& p) {
            const double x = numerics::student_t_quantile(u, p.dof);
            const double scale = std::sqrt((1.0 - p.rho * p.rho) * (p.dof + x * x) / (p.dof + 1.0));
            return numerics::student_t_cdf(
                p.rho * x + scale * numerics::student_t_quantile(w, p.dof + 1.0), p.dof);
          },
          [&](const copula::Gaussian& p) {
            const double x = numerics::normal_quantile(u);
            return numerics::normal_cdf(p.rho * x +
                                        std::sqrt(1.0 - p.rho * p.rho) * numerics::normal_quantile(w));
          },
          [&](const copula::Independence&) { return w; },
          // Degenerate conditional: all mass at v = u.
          [&](const copula::Comonotone&) { return u; },
          [&](const copula::Logistic& p) {
            const double lu = std::log(u);
            return invert_conditional(
                [&](double v) { return std::exp(logistic_log_partial(p.beta, lu, std::log(v))); }, u,
                w);
          },
      },
      spec.variant());
}

BivariatePoint sample_one(const CopulaSpec& spec, RandomStream& rng) {
  return std::visit(
      Overloaded{
          [&](const copula::OuterPowerClayton&) {
            const double u = rng.uniform();
            const double w = rng.uniform();
            return BivariatePoint{u, conditional_inverse(spec, u, w)};
          },
          [&](const copula::StudentT& p) {
            const double z1 = rng.normal();
            const double z2 = p.rho * z1 + std::sqrt(1.0 - p.rho * p.rho) * rng.normal();
            const double scale = std::sqrt(p.dof / rng.chi_squared(p.dof));
            return BivariatePoint{numerics::student_t_cdf(z1 * scale, p.dof),
                                  numerics::student_t_cdf(z2 * scale, p.dof)};
          },
          [&](const copula::Gaussian& p) {
            const double z1 = rng.normal();
            const double z2 = p.rho * z1 + std::sqrt(1.0 - p.rho * p.rho) * rng.normal();
            return BivariatePoint{numerics::normal_cdf(z1), numerics::normal_cdf(z2)};
          },
          [&](const copula::Independence&) {
            const double u = rng.uniform();
            return BivariatePoint{u, rng.uniform()};
          },
          [&](const copula::Comonotone&) {
            const double u = rng.uniform();
            return BivariatePoint{u, u};
          },
          [&](const copula::Logistic&) {
            const double u = rng.uniform();
            const double w = rng.uniform();
            return BivariatePoint{u, conditional_inverse(spec, u, w)};
          },
      },
      spec.variant());
}

std::vector<BivariatePoint> sample(const CopulaSpec& spec, std::size_t count, RandomStream& rng) {
  if (count == 0) throw ParameterError("sample count must be >= 1");
  std::vector<BivariatePoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_one(spec, rng));
  return out;
}

double max_of_k_conditional_cdf(const CopulaSpec& spec, std::size_t k, double u, double v) {
  if (k == 0) throw ParameterError("max-of-k copula requires k >= 1");
  require_open_unit(u, "u");
  require_unit(v, "v");
  if (v == 0.0) return 0.0;
  if (v == 1.0) return 1.0;
  const double kd = static_cast<double>(k);
  const double lu = std::log(u);
  const double lv = std::log(v);
  return std::visit(
      Overloaded{
          [&](const copula::OuterPowerClayton& p) {
            // d/du D(u^(1/k), v^(1/k))^k = D^(k-1) * D_1(x, y) * x / u.
            const double lx = lu / kd;
            const double ly = lv / kd;
            return std::exp((kd - 1.0) * opc_log_cdf(p, lx, ly) + opc_log_partial(p, lx, ly) + lx -
                            lu);
          },
          [&](const copula::Independence&) { return v; },
          [&](const copula::Comonotone&) { return v >= u ? 1.0 : 0.0; },
          [&](const copula::Logistic& p) { return std::exp(logistic_log_partial(p.beta, lu, lv)); },
          [&](const auto&) -> double {
            throw ParameterError("max-of-k conditional not available in closed form for " +
                                 spec.describe());
          },
      },
      spec.variant());
}

BivariatePoint sample_log_maximum(const CopulaSpec& spec, std::size_t k, RandomStream& rng) {
  if (k == 0) throw ParameterError("sample_log_maximum requires k >= 1");
  const double kd = static_cast<double>(k);
  return std::visit(
      Overloaded{
          [&](const copula::OuterPowerClayton& p) {
            const double u = rng.uniform();
            const double w = rng.uniform();
            const double lu = std::log(u);
            const double v = invert_conditional(
                [&](double vv) {
                  const double lx = lu / kd;
                  const double ly = std::log(vv) / kd;
                  return std::exp((kd - 1.0) * opc_log_cdf(p, lx, ly) + opc_log_partial(p, lx, ly) +
                                  lx - lu);
                },
                u, w);
            return BivariatePoint{lu / kd, std::log(v) / kd};
          },
          [&](const copula::StudentT& p) {
            double m1 = -std::numeric_limits<double>::infinity();
            double m2 = m1;
            const double s = std::sqrt(1.0 - p.rho * p.rho);
            for (std::size_t i = 0; i < k; ++i) {
              const double z1 = rng.normal();
              const double z2 = p.rho * z1 + s * rng.normal();
              const double scale = std::sqrt(p.dof / rng.chi_squared(p.dof));
              m1 = std::max(m1, z1 * scale);
              m2 = std::max(m2, z2 * scale);
            }
            return BivariatePoint{numerics::student_t_log_cdf(m1, p.dof),
                                  numerics::student_t_log_cdf(m2, p.dof)};
          },
          [&](const copula::Gaussian& p) {
            double m1 = -std::numeric_limits<double>::infinity();
            double m2 = m1;
            const double s = std::sqrt(1.0 - p.rho * p.rho);
            for (std::size_t i = 0; i < k; ++i) {
              const double z1 = rng.normal();
              const double z2 = p.rho * z1 + s * rng.normal();
              m1 = std::max(m1, z1);
              m2 = std::max(m2, z2);
            }
            return BivariatePoint{numerics::normal_log_cdf(m1), numerics::normal_log_cdf(m2)};
          },
          [&](const copula::Independence&) {
            const double l1 = std::log(rng.uniform()) / kd;
            return BivariatePoint{l1, std::log(rng.uniform()) / kd};
          },
          [&](const copula::Comonotone&) {
            const double l = std::log(rng.uniform()) / kd;
            return BivariatePoint{l, l};
          },
          [&](const copula::Logistic&) {
            // Max-stable: the maxima keep copula D, margins become x^k.
            const BivariatePoint d = sample_one(spec, rng);
            return BivariatePoint{std::log(d.x1) / kd, std::log(d.x2) / kd};
          },
      },
      spec.variant());
}

double attractor_pickands(const CopulaSpec& spec, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("Pickands argument t=" + format_double(t) + " outside [0, 1]");
  }
  auto logistic_pickands = [t](double beta) {
    return std::pow(std::pow(1.0 - t, beta) + std::pow(t, beta), 1.0 / beta);
  };
  return std::visit(
      Overloaded{
          [&](const copula::OuterPowerClayton& p) { return logistic_pickands(p.beta); },
          [&](const copula::StudentT& p) {
            if (t == 0.0 || t == 1.0) return 1.0;
            // t-EV dependence function: sum over both directions of
            // w * T_{nu+1}(sqrt((nu+1)/(1-rho^2)) * ((w/(1-w))^(1/nu) - rho)).
            const double scale = std::sqrt((p.dof + 1.0) / (1.0 - p.rho * p.rho));
            auto term = [&](double w) {
              const double z = scale * (std::pow(w / (1.0 - w), 1.0 / p.dof) - p.rho);
              return w * numerics::student_t_cdf(z, p.dof + 1.0);
            };
            return term(t) + term(1.0 - t);
          },
          [&](const copula::Gaussian&) { return 1.0; },
          [&](const copula::Independence&) { return 1.0; },
          [&](const copula::Comonotone&) { return std::max(t, 1.0 - t); },
          [&](const copula::Logistic& p) { return logistic_pickands(p.beta); },
      },
      spec.variant());
}

}  // namespace pickmad
