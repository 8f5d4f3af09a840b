// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include "pickmad/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace pickmad::numerics {

double find_root(const std::function<double(double)>& f, double lo, double hi, double f_tol,
                 int max_iter) {
  double a = lo;
  double b = hi;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg << "root not bracketed on [" << lo << ", " << hi << "]: f=" << fa << ", " << fb;
    throw NumericalError(msg.str());
  }
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * eps * std::abs(b) + std::numeric_limits<double>::denorm_min();
    const double half = 0.5 * (c - b);
    if (std::abs(fb) <= f_tol || std::abs(half) <= tol) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p = 0.0;
      double q = 0.0;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * half * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * half * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = half;
        e = d;
      }
    } else {
      d = half;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (half > 0.0 ? tol : -tol);
    fb = f(b);
  }
  std::ostringstream msg;
  msg << "root finding on [" << lo << ", " << hi << "] did not converge in " << max_iter
      << " iterations (|f|=" << std::abs(fb) << ")";
  throw NumericalError(msg.str());
}

namespace {
const boost::math::normal_distribution<double> kStandardNormal{};
}  // namespace

double normal_cdf(double x) { return boost::math::cdf(kStandardNormal, x); }

double normal_log_cdf(double x) {
  if (x > 0.0) return std::log1p(-boost::math::cdf(boost::math::complement(kStandardNormal, x)));
  if (x > -20.0) return std::log(boost::math::cdf(kStandardNormal, x));
  // Phi(x) = phi(x) R(-x) with the Mills ratio R from its continued fraction,
  // evaluated bottom-up; 60 terms are exact to rounding for |x| >= 20.
  const double z = -x;
  double tail = z;
  for (int k = 60; k >= 1; --k) tail = z + k / tail;
  return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(tail);
}

double normal_quantile(double p) { return boost::math::quantile(kStandardNormal, p); }

double normal_pdf(double x) { return boost::math::pdf(kStandardNormal, x); }

double student_t_cdf(double x, double dof) {
  return boost::math::cdf(boost::math::students_t_distribution<double>(dof), x);
}

double student_t_log_cdf(double x, double dof) {
  const boost::math::students_t_distribution<double> dist(dof);
  if (x > 0.0) return std::log1p(-boost::math::cdf(boost::math::complement(dist, x)));
  return std::log(boost::math::cdf(dist, x));
}

double student_t_quantile(double p, double dof) {
  return boost::math::quantile(boost::math::students_t_distribution<double>(dof), p);
}

double student_t_pdf(double x, double dof) {
  return boost::math::pdf(boost::math::students_t_distribution<double>(dof), x);
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 16;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1U : hw;
}

}  // namespace pickmad::numerics
