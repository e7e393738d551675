#pragma once

// Truncated Poisson distributions: Poisson(lambda) conditioned on being at
// least `ell`. These are the limiting degree laws of the constrained random
// sequence model, so everything downstream (degree sampling, the per-step
// lambda of 2GREEDY) funnels through this file.

#include <cstdint>
#include <vector>

#include "hamrg/random.hpp"

namespace hamrg::tp {

// f_k(lambda) = e^lambda - sum_{i<k} lambda^i / i!. For k <= 0 the sum is
// empty. When lambda < k the tail series is summed directly; subtracting the
// partial sum from e^lambda would cancel catastrophically.
double f_k(int k, double lambda);

// Fixed numeric tolerances, not configurable.
inline constexpr double kLambdaRelTol = 1e-9;
inline constexpr double kLambdaFloor = 1e-12;
inline constexpr int kMaxBisectionSteps = 200;

// Left side of the lambda equation: n2 * lambda f1/f2 + n3 * lambda f2/f3.
double expected_total(std::int64_t n2, std::int64_t n3, double lambda);

// Solves expected_total(n2, n3, lambda) = target by bracketing and bisection.
// Throws InfeasibleTarget when target <= 2*n2 + 3*n3 (the lambda -> 0 limit),
// NonConvergence when bisection fails to reach the tolerance.
double solve_lambda(std::int64_t n2, std::int64_t n3, double target);

struct TruncPoissonParams {
  double lambda = 1.0;
  int ell = 0;
};

// Pr(X = t) = lambda^t / (t! f_ell(lambda)). Throws OutOfSupport for t < ell.
double pmf(const TruncPoissonParams& params, int t);

// lambda f_{ell-1} / f_ell.
double mean(const TruncPoissonParams& params);

// Variance of a single class:
// (f_l (lambda^2 f_{l-2} + lambda f_{l-1}) - lambda^2 f_{l-1}^2) / f_l^2.
double variance(const TruncPoissonParams& params);

// Inverse-CDF walk along the pmf recurrence (ratio lambda/(t+1) per step).
int sample(const TruncPoissonParams& params, Rng& rng);

struct MomentSummary {
  double mean = 0.0;  // pooled mean, (N2 mu2 + N3 mu3) / N*
  double sigma_sq_2 = 0.0;
  double sigma_sq_3 = 0.0;
  double pooled_sigma_sq = 0.0;  // (N2 sigma2^2 + N3 sigma3^2) / N*
  std::int64_t n_star = 0;
};

MomentSummary moments(std::int64_t n2, std::int64_t n3, double lambda);

// Leading term 1/(sigma sqrt(2 pi N*)) of Pr(Z = 2M - k). The k-dependence
// only enters the error factor, which is not modeled.
double local_clt_estimate(std::int64_t n_star, double sigma, std::int64_t k);

// Precomputed 32-bit inverse-CDF thresholds for batch sampling. A draw from
// a uniform 32-bit word v is ell + #{k : v >= thresholds[k]}. The cumulative
// sums use the same recurrence as sample(); the upper tail beyond
// 1 - 2^-32 is cut.
class SamplingTable {
 public:
  explicit SamplingTable(const TruncPoissonParams& params);

  int ell() const { return ell_; }
  const std::vector<std::uint32_t>& thresholds() const { return thresholds_; }

  int draw(std::uint32_t v) const;

 private:
  int ell_;
  std::vector<std::uint32_t> thresholds_;
};

}  // namespace hamrg::tp
