// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Numerical plumbing shared by the copula, theory and experiment modules:
// globally adaptive Gauss-Kronrod quadrature, bracketed root finding,
// univariate normal / Student-t distribution functions, pairwise summation
// and a deterministic parallel-for.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <queue>
#include <span>
#include <sstream>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pickmad/errors.hpp"

namespace pickmad::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

/**
 * Globally adaptive Gauss-Kronrod (G10/K21) quadrature on [a, b].
 *
 * The panel with the largest error estimate is bisected until the summed
 * error estimate drops below `abs_tol`. Endpoints are never evaluated, so
 * integrands with bounded but non-smooth endpoint behaviour (y^0.1 near 0)
 * are fine. Throws NumericalError when `max_panels` is exhausted.
 */
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol = 1e-12,
                           std::size_t max_panels = 4000) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
  struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
  };
  // Rule tables hold the nonnegative nodes; the embedded Gauss nodes are the
  // odd-indexed Kronrod nodes.
  auto evaluate = [&f](double lo, double hi) {
    const auto& x = Rule::abscissa();
    const auto& wk = Rule::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 10>::weights();
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double f0 = f(centre);
    double kronrod = wk[0] * f0;
    double gauss = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      const double pair = f(centre - half * x[i]) + f(centre + half * x[i]);
      kronrod += wk[i] * pair;
      if (i % 2 == 1) gauss += wg[i / 2] * pair;
    }
    const double value = half * kronrod;
    return Panel{lo, hi, value, std::abs(value - half * gauss)};
  };

  std::priority_queue<Panel> panels;
  panels.push(evaluate(a, b));
  double total_value = panels.top().value;
  double total_error = panels.top().error;
  std::size_t count = 1;
  while (total_error > abs_tol) {
    if (count >= max_panels) {
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << a << ", " << b << "] stalled at error "
          << total_error << " (tolerance " << abs_tol << ")";
      throw NumericalError(msg.str());
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Interval at machine resolution; accept its contribution as is.
      total_error -= worst.error;
      Panel settled = worst;
      settled.error = 0.0;
      panels.push(settled);
      continue;
    }
    const Panel left = evaluate(worst.lo, mid);
    const Panel right = evaluate(mid, worst.hi);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  // Re-sum from the panels to avoid drift in the running total.
  double value = 0.0;
  double error = 0.0;
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  for (const auto& p : all) {
    value += p.value;
    error += p.error;
  }
  return {value, error, count};
}

/**
 * Root of a continuous function with f(lo) and f(hi) of opposite sign
 * (Brent's method). Stops once |f| <= f_tol or the bracket collapses to a
 * few ulps. Throws NumericalError if `max_iter` is exceeded.
 */
double find_root(const std::function<double(double)>& f, double lo, double hi, double f_tol,
                 int max_iter = 300);

// Univariate distribution functions (Boost.Math backed).
double normal_cdf(double x);
/// log Phi(x), accurate in both tails.
double normal_log_cdf(double x);
double normal_quantile(double p);
double student_t_cdf(double x, double dof);
/// log T_dof(x), accurate in both tails.
double student_t_log_cdf(double x, double dof);
double student_t_quantile(double p, double dof);
double student_t_pdf(double x, double dof);
double normal_pdf(double x);

/// Fixed-order pairwise summation; result depends only on the input order.
double pairwise_sum(std::span<const double> values);

/// Worker count used when the caller passes 0.
unsigned default_workers();

/**
 * Runs body(i) for i in [0, count) on up to `workers` threads. The mapping
 * of indices to threads is dynamic, so callers must write results into
 * per-index slots and combine them afterwards in index order. The first
 * exception thrown by any body is rethrown on the calling thread.
 */
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  if (workers == 0) workers = default_workers();
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    const auto n_threads = std::min<std::size_t>(workers, count);
    pool.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) return;
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            next.store(count);
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace pickmad::numerics
