#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <vector>

#include "hamrg/error.hpp"
#include "hamrg/random.hpp"
#include "hamrg/trunc_poisson.hpp"

using namespace hamrg;

namespace {

// Reference values computed offline with 50-digit arithmetic.
constexpr double kF3At2 = 2.38905609893065;
constexpr double kPmfL1E2T2 = 0.696105595588666;
constexpr double kMeanL1E2 = 2.39221119117733;
constexpr double kPmfL2E2T5 = 0.0607571789140807;
constexpr double kRootRatio4 = 2.68799934549949;

// Brute-force pmf from the definition, summed far into the tail.
double brute_pmf(double lambda, int ell, int t) {
  double norm = 0.0;
  double term = std::exp(-lambda);
  for (int i = 0; i < 400; ++i) {
    if (i >= ell) norm += term;
    term *= lambda / (i + 1);
  }
  return std::exp(-lambda + t * std::log(lambda) - std::lgamma(t + 1.0)) / norm;
}

}  // namespace

TEST_SUITE("trunc_poisson") {
  TEST_CASE("f_k reference values") {
    CHECK(tp::f_k(0, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(tp::f_k(1, 0.0) == 0.0);
    CHECK(tp::f_k(3, 2.0) == doctest::Approx(kF3At2).epsilon(1e-13));
    CHECK(tp::f_k(-1, 0.5) == doctest::Approx(std::exp(0.5)));
  }

  TEST_CASE("f_k small lambda keeps relative precision") {
    // Leading tail term lambda^3/6 dominates.
    const double lambda = 1e-6;
    const double expected = lambda * lambda * lambda / 6 * (1 + lambda / 4);
    CHECK(tp::f_k(3, lambda) == doctest::Approx(expected).epsilon(1e-9));
  }

  TEST_CASE("f_k recurrence") {
    for (double lambda : {1e-4, 0.01, 0.3, 1.0, 2.9, 3.1, 7.5, 20.0}) {
      double power = 1.0;
      for (int k = 1; k <= 8; ++k) {
        // power = lambda^{k-1} / (k-1)!
        const double lhs = tp::f_k(k, lambda);
        const double rhs = tp::f_k(k - 1, lambda) - power;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::exp(lambda)));
        power *= lambda / k;
      }
    }
  }

  TEST_CASE("solve_lambda examples") {
    const double near_zero = tp::solve_lambda(0, 1000, 3000.0001);
    CHECK(near_zero < 1e-3);
    CHECK(near_zero > 0.0);

    const double root = tp::solve_lambda(0, 1000, 4000.0);
    CHECK(root == doctest::Approx(kRootRatio4).epsilon(1e-8));
    CHECK(tp::expected_total(0, 1000, root) == doctest::Approx(4000.0).epsilon(1e-9));

    CHECK_THROWS_AS(tp::solve_lambda(500, 500, 2400.0), InfeasibleTarget);
    CHECK_THROWS_AS(tp::solve_lambda(0, 10, 30.0), InfeasibleTarget);
    CHECK_THROWS_AS(tp::solve_lambda(0, 0, 5.0), InfeasibleTarget);
  }

  TEST_CASE("solve_lambda substitutes back for random feasible triples") {
    Rng rng = derive_stream(7, 0);
    for (int i = 0; i < 1000; ++i) {
      const std::int64_t n2 = uniform_below<std::int64_t>(rng, 5000);
      const std::int64_t n3 = uniform_below<std::int64_t>(rng, 5000) + (n2 == 0 ? 1 : 0);
      const double boundary = 2.0 * n2 + 3.0 * n3;
      const double target = boundary * (1.0 + 1e-3 + 4.0 * uniform01(rng));
      const double lambda = tp::solve_lambda(n2, n3, target);
      CHECK(std::abs(tp::expected_total(n2, n3, lambda) - target) <= 1e-9 * target);
    }
  }

  TEST_CASE("pmf values and support") {
    CHECK(tp::pmf({1.0, 2}, 2) == doctest::Approx(kPmfL1E2T2).epsilon(1e-12));
    CHECK(tp::pmf({2.0, 2}, 5) == doctest::Approx(kPmfL2E2T5).epsilon(1e-12));
    CHECK(tp::pmf({1e-9, 3}, 3) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(tp::pmf({1.0, 3}, 2), OutOfSupport);
    for (double lambda : {0.05, 1.0, 4.0, 9.0}) {
      for (int ell : {2, 3}) {
        for (int t = ell; t < ell + 12; ++t) {
          CHECK(tp::pmf({lambda, ell}, t) ==
                doctest::Approx(brute_pmf(lambda, ell, t)).epsilon(1e-10));
        }
      }
    }
  }

  TEST_CASE("pmf normalization") {
    for (double lambda : {0.01, 0.5, 2.0, 5.0, 10.0}) {
      for (int ell : {0, 2, 3}) {
        double total = 0.0;
        const int cutoff = ell + static_cast<int>(60 * lambda) + 60;
        for (int t = ell; t <= cutoff; ++t) total += tp::pmf({lambda, ell}, t);
        CHECK(total <= 1.0 + 1e-12);
        CHECK(total >= 1.0 - 1e-9);
      }
    }
    double total = 0.0;
    for (int t = 2; t <= 60; ++t) total += tp::pmf({2.0, 2}, t);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("mean") {
    CHECK(tp::mean({1.0, 2}) == doctest::Approx(kMeanL1E2).epsilon(1e-12));
    CHECK(tp::mean({1e-9, 3}) == doctest::Approx(3.0).epsilon(1e-8));
  }

  TEST_CASE("variance matches direct summation") {
    for (double lambda : {0.01, 0.2, 1.0, 2.68, 5.0, 10.0}) {
      for (int ell : {2, 3}) {
        double m1 = 0.0;
        double m2 = 0.0;
        for (int t = ell; t <= 80; ++t) {
          const double p = brute_pmf(lambda, ell, t);
          m1 += p * t;
          m2 += p * t * t;
        }
        CHECK(tp::variance({lambda, ell}) == doctest::Approx(m2 - m1 * m1).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("moments pooling and scale") {
    const auto single = tp::moments(0, 100, 2.0);
    CHECK(single.pooled_sigma_sq == doctest::Approx(single.sigma_sq_3));
    CHECK(single.n_star == 100);
    const auto mixed = tp::moments(300, 100, 1.5);
    CHECK(mixed.pooled_sigma_sq ==
          doctest::Approx((300 * mixed.sigma_sq_2 + 100 * mixed.sigma_sq_3) / 400));
    for (double lambda = 0.01; lambda <= 10.0; lambda *= 1.3) {
      const auto m = tp::moments(1, 1, lambda);
      CHECK(m.sigma_sq_2 > 0.0);
      CHECK(m.sigma_sq_3 > 0.0);
      CHECK(m.sigma_sq_2 / lambda >= 0.1);
      CHECK(m.sigma_sq_2 / lambda <= 10.0);
      CHECK(m.sigma_sq_3 / lambda >= 0.1);
      CHECK(m.sigma_sq_3 / lambda <= 10.0);
    }
  }

  TEST_CASE("local CLT estimate") {
    CHECK(tp::local_clt_estimate(10000, 1.0, 0) == doctest::Approx(0.0039894228).epsilon(1e-8));
    CHECK(tp::local_clt_estimate(10000, 1.0, 0) == tp::local_clt_estimate(10000, 1.0, 17));
  }

  TEST_CASE("sampler mean and support") {
    Rng rng = derive_stream(11, 0);
    const tp::TruncPoissonParams params{1.0, 2};
    const int draws = 1'000'000;
    double sum = 0.0;
    int below = 0;
    for (int i = 0; i < draws; ++i) {
      const int t = tp::sample(params, rng);
      below += t < 2;
      sum += t;
    }
    CHECK(below == 0);
    const double se = std::sqrt(tp::variance(params) / draws);
    CHECK(std::abs(sum / draws - tp::mean(params)) <= 3 * se);

    int at_three = 0;
    for (int i = 0; i < 100000; ++i) at_three += tp::sample({1e-6, 3}, rng) == 3;
    CHECK(at_three > 99900);
  }

  TEST_CASE("sampler chi-square against pmf") {
    for (double lambda : {0.1, 1.0, 5.0}) {
      for (int ell : {2, 3}) {
        Rng rng = derive_stream(13, static_cast<std::uint64_t>(lambda * 10), ell);
        const tp::TruncPoissonParams params{lambda, ell};
        const int draws = 1'000'000;
        std::vector<double> counts(64, 0.0);
        for (int i = 0; i < draws; ++i) {
          counts[std::min(tp::sample(params, rng), 63)] += 1;
        }
        // Bins with expected count >= 20; the rest pooled into the tail bin.
        double chi2 = 0.0;
        int bins = 0;
        double tail_obs = 0.0;
        double tail_exp = 0.0;
        double covered = 0.0;
        for (int t = ell; t < 63; ++t) {
          const double e = tp::pmf(params, t) * draws;
          if (e >= 20) {
            chi2 += (counts[t] - e) * (counts[t] - e) / e;
            ++bins;
            covered += e;
          } else {
            tail_obs += counts[t];
          }
        }
        tail_obs += counts[63];
        tail_exp = draws - covered;
        if (tail_exp >= 1) {
          chi2 += (tail_obs - tail_exp) * (tail_obs - tail_exp) / tail_exp;
          ++bins;
        }
        const boost::math::chi_squared dist(bins - 1);
        const double p = boost::math::cdf(boost::math::complement(dist, chi2));
        CAPTURE(lambda);
        CAPTURE(ell);
        CHECK(p > 1e-4);
      }
    }
  }

  TEST_CASE("sampling table matches the inverse-CDF walk") {
    for (double lambda : {0.01, 1.0, 5.657, 12.0}) {
      for (int ell : {2, 3}) {
        const tp::TruncPoissonParams params{lambda, ell};
        const tp::SamplingTable table(params);
        CHECK(table.ell() == ell);
        const auto& thr = table.thresholds();
        for (std::size_t k = 1; k < thr.size(); ++k) CHECK(thr[k - 1] <= thr[k]);
        CHECK(table.draw(0) == ell);
        CHECK(table.draw(0xFFFFFFFFu) == ell + static_cast<int>(thr.size()));
        // Each threshold sits where the cumulative pmf crosses it.
        double cum = 0.0;
        for (std::size_t k = 0; k < std::min<std::size_t>(thr.size(), 20); ++k) {
          cum += tp::pmf(params, ell + static_cast<int>(k));
          CHECK(std::abs(static_cast<double>(thr[k]) - cum * 4294967296.0) <= 1.0 + 1e-6 * cum * 4294967296.0);
        }
      }
    }
  }
}
