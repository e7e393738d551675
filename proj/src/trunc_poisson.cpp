#include "hamrg/trunc_poisson.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hamrg/error.hpp"

namespace hamrg::tp {

double f_k(int k, double lambda) {
  if (k <= 0) return std::exp(lambda);
  if (lambda == 0.0) return 0.0;
  if (lambda < k) {
    double term = 1.0;
    for (int i = 1; i <= k; ++i) term *= lambda / i;
    double sum = 0.0;
    for (int i = k;; ++i) {
      sum += term;
      term *= lambda / (i + 1);
      if (term <= sum * 1e-17) break;
    }
    return sum;
  }
  double partial = 0.0;
  double term = 1.0;
  for (int i = 0; i < k; ++i) {
    partial += term;
    term *= lambda / (i + 1);
  }
  return std::exp(lambda) - partial;
}

namespace {

// lambda f_{l-1} / f_l, the mean of the class truncated at l.
double class_mean(int ell, double lambda) {
  return lambda * f_k(ell - 1, lambda) / f_k(ell, lambda);
}

}  // namespace

double expected_total(std::int64_t n2, std::int64_t n3, double lambda) {
  double total = 0.0;
  if (n2 > 0) total += static_cast<double>(n2) * class_mean(2, lambda);
  if (n3 > 0) total += static_cast<double>(n3) * class_mean(3, lambda);
  return total;
}

double solve_lambda(std::int64_t n2, std::int64_t n3, double target) {
  const double boundary = 2.0 * static_cast<double>(n2) + 3.0 * static_cast<double>(n3);
  if (n2 < 0 || n3 < 0 || n2 + n3 == 0 || !(target > boundary)) {
    throw InfeasibleTarget("target " + std::to_string(target) +
                           " must exceed 2*n2 + 3*n3 = " + std::to_string(boundary));
  }
  const double tol = kLambdaRelTol * target;

  double lo = kLambdaFloor;
  const double at_floor = expected_total(n2, n3, lo);
  if (at_floor >= target) {
    // Root lies below the bracket floor; the floor is already within tolerance
    // unless something is badly wrong.
    if (at_floor - target <= tol) return lo;
    throw NonConvergence("left side at lambda floor already exceeds target");
  }

  double hi = 1.0;
  while (expected_total(n2, n3, hi) < target) {
    hi *= 2.0;
    if (hi > 700.0) throw NonConvergence("target exceeds representable lambda range");
  }

  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    const double value = expected_total(n2, n3, mid);
    if (std::abs(value - target) <= tol) return mid;
    if (value < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw NonConvergence("bisection did not reach relative tolerance 1e-9");
}

double pmf(const TruncPoissonParams& params, int t) {
  if (t < params.ell) {
    throw OutOfSupport("t = " + std::to_string(t) + " below truncation level " +
                       std::to_string(params.ell));
  }
  const double lambda = params.lambda;
  const double log_p = t * std::log(lambda) - std::lgamma(t + 1.0) -
                       std::log(f_k(params.ell, lambda));
  return std::exp(log_p);
}

double mean(const TruncPoissonParams& params) {
  return class_mean(params.ell, params.lambda);
}

double variance(const TruncPoissonParams& params) {
  const double lambda = params.lambda;
  const int ell = params.ell;
  const double fl = f_k(ell, lambda);
  const double fl1 = f_k(ell - 1, lambda);
  const double fl2 = f_k(ell - 2, lambda);
  return (fl * (lambda * lambda * fl2 + lambda * fl1) - lambda * lambda * fl1 * fl1) /
         (fl * fl);
}

int sample(const TruncPoissonParams& params, Rng& rng) {
  const double u = uniform01(rng);
  int t = params.ell;
  double p = pmf(params, t);
  double cum = p;
  while (u >= cum && p > 0.0) {
    ++t;
    p *= params.lambda / t;
    cum += p;
  }
  return t;
}

MomentSummary moments(std::int64_t n2, std::int64_t n3, double lambda) {
  MomentSummary summary;
  summary.n_star = n2 + n3;
  summary.sigma_sq_2 = variance({lambda, 2});
  summary.sigma_sq_3 = variance({lambda, 3});
  const double n_star = static_cast<double>(summary.n_star);
  summary.mean = (static_cast<double>(n2) * mean({lambda, 2}) +
                  static_cast<double>(n3) * mean({lambda, 3})) /
                 n_star;
  summary.pooled_sigma_sq = (static_cast<double>(n2) * summary.sigma_sq_2 +
                             static_cast<double>(n3) * summary.sigma_sq_3) /
                            n_star;
  return summary;
}

double local_clt_estimate(std::int64_t n_star, double sigma, std::int64_t /*k*/) {
  return 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi * static_cast<double>(n_star)));
}

SamplingTable::SamplingTable(const TruncPoissonParams& params) : ell_(params.ell) {
  constexpr double kScale = 4294967296.0;  // 2^32
  constexpr std::size_t kMaxEntries = 4096;
  double p = pmf(params, params.ell);
  double cum = p;
  int t = params.ell;
  while (thresholds_.size() < kMaxEntries) {
    const double scaled = std::ceil(cum * kScale);
    if (scaled >= kScale) break;
    thresholds_.push_back(static_cast<std::uint32_t>(scaled));
    ++t;
    p *= params.lambda / t;
    cum += p;
  }
}

int SamplingTable::draw(std::uint32_t v) const {
  int k = 0;
  const int size = static_cast<int>(thresholds_.size());
  while (k < size && v >= thresholds_[k]) ++k;
  return ell_ + k;
}

}  // namespace hamrg::tp
