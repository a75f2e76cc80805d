#include "ecdf.hpp"

#include <doctest.h>

#include <random>
#include <vector>

#include "errors.hpp"
#include "oracle.hpp"

using copod::MarginalModel;
using copod::skewness;

TEST_CASE("fit sorts a copy and keeps the count") {
  const std::vector<double> col{3.0, 1.0, 2.0};
  const auto m = MarginalModel::fit(col);
  CHECK(m.sorted_samples() == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(m.size() == 3);
  CHECK(m.skew() == 0.0);  // symmetric three-point set
}

TEST_CASE("constant column maps to zero skew") {
  const std::vector<double> col{5.0, 5.0, 5.0};
  CHECK(MarginalModel::fit(col).skew() == 0.0);
  CHECK(skewness(std::vector<double>{5.0, 5.0, 5.0, 5.0}) == 0.0);
}

TEST_CASE("skewness matches literal formula evaluation") {
  // Frozen values from direct evaluation of the estimator: mean-centered
  // cubes averaged with 1/n over the cube of the (n-1)-denominator sd.
  CHECK(skewness(std::vector<double>{1.0, 2.0, 3.0, 10.0}) ==
        doctest::Approx(0.6613622305514579).epsilon(1e-14));
  CHECK(skewness(std::vector<double>{0.0, 0.0, 0.0, 1.0}) ==
        doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("any two distinct values have zero skew") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  for (int t = 0; t < 100; ++t) {
    const double a = dist(gen);
    const double b = dist(gen);
    CHECK(skewness(std::vector<double>{a, b}) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("skewness rejects short input") {
  CHECK_THROWS_AS(skewness(std::vector<double>{1.0}), copod::InvalidArgumentError);
  CHECK_THROWS_AS(MarginalModel::fit(std::vector<double>{}), copod::InvalidArgumentError);
  CHECK_THROWS_AS(MarginalModel::fit(std::vector<double>{1.0, std::nan("")}),
                  copod::InvalidArgumentError);
}

TEST_CASE("tail examples") {
  const auto m = MarginalModel::fit(std::vector<double>{1.0, 2.0, 3.0});
  CHECK(m.left_tail(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(m.left_tail(0.5) == 0.0);
  CHECK(m.left_tail(10.0) == 1.0);
  CHECK(m.right_tail(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(m.right_tail(10.0) == 0.0);
  CHECK(m.right_tail(0.0) == 1.0);
  CHECK(m.left_tail(3.0) == 1.0);   // max sample
  CHECK(m.right_tail(1.0) == 1.0);  // min sample
}

TEST_CASE("binary-search tails equal the linear-scan oracle exactly") {
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  std::vector<double> samples(50);
  for (auto& s : samples) s = std::round(dist(gen) * 10.0) / 10.0;  // force ties
  const auto m = MarginalModel::fit(samples);
  for (int q = 0; q < 100; ++q) {
    const double x = std::round(dist(gen) * 10.0) / 10.0;
    CHECK(m.left_tail(x) == oracle::left_tail_count(samples, x));
    CHECK(m.right_tail(x) == oracle::right_tail_count(samples, x));
  }
}

TEST_CASE("tail monotonicity and the tie-counting identity") {
  std::mt19937 gen(3);
  std::uniform_int_distribution<int> value(-10, 10);
  for (int t = 0; t < 200; ++t) {
    std::uniform_int_distribution<int> size(1, 40);
    std::vector<double> samples(size(gen));
    for (auto& s : samples) s = value(gen);
    const auto m = MarginalModel::fit(samples);
    const auto n = static_cast<double>(samples.size());

    double prev_left = -1.0;
    double prev_right = 2.0;
    for (int xi = -12; xi <= 12; ++xi) {
      const double x = xi;
      const double l = m.left_tail(x);
      const double r = m.right_tail(x);
      CHECK(l >= prev_left);
      CHECK(r <= prev_right);
      prev_left = l;
      prev_right = r;

      std::size_t ties = 0;
      for (double s : samples) {
        if (s == x) ++ties;
      }
      // n*F(x) + n*Fbar(x) = n + #{samples == x}, exact at the count level
      CHECK(m.left_count(x) + m.right_count(x) == samples.size() + ties);
      CHECK(l == double(m.left_count(x)) / n);
      CHECK(r == double(m.right_count(x)) / n);
    }
  }
}

TEST_CASE("negation duality is exact") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> samples(30);
    for (auto& s : samples) s = std::round(dist(gen)) / 4.0;
    std::vector<double> negated;
    for (double s : samples) negated.push_back(-s);
    const auto m = MarginalModel::fit(samples);
    const auto mn = MarginalModel::fit(negated);
    for (int q = 0; q < 50; ++q) {
      const double x = std::round(dist(gen)) / 4.0;
      CHECK(m.right_tail(x) == mn.left_tail(-x));
    }
  }
}

TEST_CASE("skewness is invariant under positive affine maps") {
  std::mt19937 gen(19);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  std::uniform_real_distribution<double> shift(-20.0, 20.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> col(25);
    for (auto& x : col) x = noise(gen) + 0.3 * noise(gen) * noise(gen);
    const double a = scale(gen);
    const double c = shift(gen);
    std::vector<double> mapped;
    for (double x : col) mapped.push_back(a * x + c);
    CHECK(std::abs(skewness(mapped) - skewness(col)) <= 1e-12);
  }
}

TEST_CASE("deserialized marginal validates ordering") {
  CHECK_THROWS_AS(MarginalModel({3.0, 1.0, 2.0}, 0.0), copod::InvalidArgumentError);
  CHECK_NOTHROW(MarginalModel({1.0, 1.0, 2.0}, 0.0));  // ties are fine
}
