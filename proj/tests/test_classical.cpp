#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "classical.hpp"
#include "core.hpp"
#include "dist.hpp"
#include "error.hpp"
#include "rng.hpp"
#include "stats.hpp"

using namespace rocsbb;

namespace {

ThreeGroupSample random_sample(Rng& rng, std::size_t max_n) {
  ThreeGroupSample s;
  for (auto* y : {&s.y1, &s.y2, &s.y3}) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * max_n);
    for (std::size_t i = 0; i < n; ++i) y->push_back(rng.normal());
  }
  return s;
}

double brute_force_vus(const ThreeGroupSample& s) {
  std::size_t hits = 0;
  for (double a : s.y1)
    for (double b : s.y2)
      for (double c : s.y3)
        if (a < b && b < c) ++hits;
  return static_cast<double>(hits) /
         static_cast<double>(s.n1() * s.n2() * s.n3());
}

}  // namespace

TEST_CASE("empirical_cdf") {
  const std::vector<double> v{1, 2, 3};
  CHECK(empirical_cdf(v, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(empirical_cdf(v, 0.5) == 0.0);
  CHECK(empirical_cdf(v, 3.0) == 1.0);
  CHECK(empirical_cdf(v, 99.0) == 1.0);
  CHECK_THROWS_AS(empirical_cdf({}, 1.0), Error);
}

TEST_CASE("kernel_cdf") {
  CHECK(kernel_cdf({0.0}, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(kernel_cdf({0.0}, 1.0, 1.96) == doctest::Approx(0.975).epsilon(1e-3));
  SUBCASE("h -> 0 limit away from atoms") {
    CHECK(kernel_cdf({1, 2, 3}, 1e-9, 2.5) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    // At an atom the Gaussian kernel splits the atom's mass in half.
    CHECK(kernel_cdf({1, 2, 3}, 1e-9, 2.0) == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("strictly increasing in z") {
    CHECK(kernel_cdf({1, 2, 3}, 0.5, 1.4) < kernel_cdf({1, 2, 3}, 0.5, 1.6));
  }
  CHECK_THROWS_AS(kernel_cdf({1.0}, 0.0, 1.0), Error);
}

TEST_CASE("bandwidth_nrd0") {
  SUBCASE("hand value for 1..5") {
    // SD = sqrt(2.5), IQR = 2 with interpolated quartiles (2, 4);
    // h = 0.9 * min(1.5811, 2/1.34) * 5^(-0.2)
    const double expected = 0.9 * (2.0 / 1.34) * std::pow(5.0, -0.2);
    CHECK(bandwidth_nrd0({1, 2, 3, 4, 5}) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(bandwidth_nrd0({1, 2, 3, 4, 5}) == doctest::Approx(0.974).epsilon(1e-3));
  }
  SUBCASE("positive homogeneity of degree one") {
    const std::vector<double> v{0.3, 1.2, 2.7, 0.9, 4.1, 3.3};
    std::vector<double> scaled;
    for (double x : v) scaled.push_back(7.5 * x);
    CHECK(bandwidth_nrd0(scaled) ==
          doctest::Approx(7.5 * bandwidth_nrd0(v)).epsilon(1e-12));
  }
  SUBCASE("agrees with the formula on random data") {
    Rng rng(42);
    std::vector<double> v(37);
    for (auto& x : v) x = rng.normal() * 3.0 + 1.0;
    const double expected = 0.9 *
                            std::min(sample_sd(v), interquartile_range(v) / 1.34) *
                            std::pow(37.0, -0.2);
    CHECK(bandwidth_nrd0(v) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("degenerate inputs") {
    CHECK_THROWS_AS(bandwidth_nrd0({1.0}), Error);
    CHECK_THROWS_AS(bandwidth_nrd0({2.0, 2.0, 2.0}), Error);
  }
}

TEST_CASE("ucv_criterion single-pair hand evaluation") {
  // values (0,1) at h=1. With the ordered-sum convention sum_{i != j} the
  // pair contributes twice: 1/(4 sqrt(pi)) + [phi_sqrt2(1) - 2 phi(1)].
  const double phi1 = normal_pdf(1.0);
  const double phi_s2 = normal_pdf(1.0 / std::sqrt(2.0)) / std::sqrt(2.0);
  const double expected = 1.0 / (4.0 * std::sqrt(M_PI)) + (phi_s2 - 2.0 * phi1);
  CHECK(ucv_criterion({0.0, 1.0}, 1.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("bandwidth_ucv") {
  SUBCASE("tie pathology stays off h = 0") {
    // Each value duplicated: UCV(h) -> -inf as h -> 0. The guarded positive
    // lower bound keeps the selected bandwidth strictly positive.
    const std::vector<double> v{1, 1, 2, 2, 3, 3, 4, 4};
    const auto r = bandwidth_ucv(v);
    CHECK(r.h > 0.0);
    CHECK(std::isfinite(r.h));
    CHECK(r.h >= bandwidth_nrd0(v) / 20.0);
  }
  SUBCASE("boundary flag set when the optimum lies at an endpoint") {
    Rng rng(271);
    std::vector<double> v(200);
    for (auto& x : v) x = rng.normal();
    // The UCV-optimal bandwidth for these data is far below 5, so a search
    // constrained to [5, 10] must stop at the lower endpoint and say so.
    const auto r = bandwidth_ucv(v, 5.0, 10.0);
    CHECK(r.h == doctest::Approx(5.0).epsilon(0.01));
    CHECK(r.hit_boundary);
  }
  SUBCASE("within a factor two of nrd0 for normal data, on average") {
    Rng rng(314);
    double log_ratio_sum = 0.0;
    const int reps = 50;
    for (int rep = 0; rep < reps; ++rep) {
      std::vector<double> v(500);
      for (auto& x : v) x = rng.normal();
      const double h_ucv = bandwidth_ucv(v).h;
      const double h_rot = bandwidth_nrd0(v);
      log_ratio_sum += std::log(h_ucv / h_rot);
    }
    const double avg_ratio = std::exp(log_ratio_sum / reps);
    CHECK(avg_ratio > 0.5);
    CHECK(avg_ratio < 2.0);
  }
  SUBCASE("explicit search interval respected") {
    Rng rng(9);
    std::vector<double> v(100);
    for (auto& x : v) x = rng.normal();
    const auto r = bandwidth_ucv(v, 0.2, 0.4);
    CHECK(r.h >= 0.2);
    CHECK(r.h <= 0.4);
  }
}

TEST_CASE("empirical_vus") {
  SUBCASE("triple enumeration hand example") {
    ThreeGroupSample s{{1.0, 2.0}, {1.5, 3.0}, {2.5, 4.0}};
    CHECK(empirical_vus(s) == 0.5);  // 4 of 8 triples
  }
  SUBCASE("perfect separation") {
    ThreeGroupSample s{{1, 2}, {3, 4}, {5, 6}};
    CHECK(empirical_vus(s) == 1.0);
  }
  SUBCASE("single tied value") {
    ThreeGroupSample s{{7.0}, {7.0}, {7.0}};
    CHECK(empirical_vus(s) == 0.0);
  }
  SUBCASE("matches brute force on random data") {
    Rng rng(55);
    for (int rep = 0; rep < 30; ++rep) {
      const auto s = random_sample(rng, 8);
      CHECK(empirical_vus(s) == brute_force_vus(s));
    }
  }
  SUBCASE("invariant under increasing transformations") {
    Rng rng(66);
    const auto s = random_sample(rng, 10);
    ThreeGroupSample t = s;
    const auto warp = [](std::vector<double>& y) {
      for (auto& x : y) x = std::exp(0.5 * x) + x;
    };
    warp(t.y1);
    warp(t.y2);
    warp(t.y3);
    CHECK(empirical_vus(s) == empirical_vus(t));
  }
  SUBCASE("six orderings sum to one on tie-free data") {
    Rng rng(77);
    const auto s = random_sample(rng, 9);
    const std::array<const std::vector<double>*, 3> g{&s.y1, &s.y2, &s.y3};
    double total = 0.0;
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perms) {
      total += empirical_vus({*g[p[0]], *g[p[1]], *g[p[2]]});
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("kernel_vus") {
  SUBCASE("all-equal point masses") {
    ThreeGroupSample s{{0.0}, {0.0}, {0.0}};
    CHECK(kernel_vus(s, 1.0, 1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("h -> 0 limit equals empirical") {
    ThreeGroupSample s{{1.0, 2.0}, {1.5, 3.0}, {2.5, 4.0}};
    CHECK(kernel_vus(s, 1e-8, 1e-8, 1e-8) ==
          doctest::Approx(empirical_vus(s)).epsilon(1e-7));
  }
  SUBCASE("bandwidth validation") {
    ThreeGroupSample s{{1.0}, {2.0}, {3.0}};
    CHECK_THROWS_AS(kernel_vus(s, -1.0, 1.0, 1.0), Error);
  }
  SUBCASE("Monte Carlo cross-check of the smoothing model") {
    // kernel_vus equals Pr(Y1 + h1 Z1 < Y2 + h2 Z2 < Y3 + h3 Z3) with the
    // atoms drawn uniformly from the samples and Z standard normal.
    ThreeGroupSample s{{0.0, 1.0}, {0.5, 1.5}, {1.0, 2.5}};
    const double h1 = 0.7, h2 = 0.4, h3 = 1.1;
    Rng rng(404);
    const int n = 400000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      const double a = s.y1[rng.uniform() < 0.5 ? 0 : 1] + h1 * rng.normal();
      const double b = s.y2[rng.uniform() < 0.5 ? 0 : 1] + h2 * rng.normal();
      const double c = s.y3[rng.uniform() < 0.5 ? 0 : 1] + h3 * rng.normal();
      if (a < b && b < c) ++hits;
    }
    const double mc = static_cast<double>(hits) / n;
    CHECK(kernel_vus(s, h1, h2, h3) == doctest::Approx(mc).epsilon(0.02));
  }
}

TEST_CASE("plug_in_surface") {
  const auto grid = default_grid(50);
  SUBCASE("empirical variant on perfectly separated data") {
    ThreeGroupSample s{{1, 2, 3}, {10, 11, 12}, {20, 21, 22}};
    const auto r = plug_in_surface(s, CdfMethod::empirical, grid);
    CHECK(vus_from_surface(r.values, r.grid) >= 0.99);
  }
  SUBCASE("values in range and monotone for all methods") {
    Rng rng(121);
    ThreeGroupSample s;
    for (auto* y : {&s.y1, &s.y2, &s.y3}) {
      for (int i = 0; i < 25; ++i) y->push_back(rng.normal());
    }
    for (CdfMethod m : {CdfMethod::empirical, CdfMethod::kernel_nrd0,
                        CdfMethod::kernel_ucv, CdfMethod::normal_parametric}) {
      const auto r = plug_in_surface(s, m, default_grid(15));
      for (std::size_t i = 0; i < r.values.rows(); ++i) {
        for (std::size_t j = 0; j < r.values.cols(); ++j) {
          CHECK(r.values(i, j) >= 0.0);
          CHECK(r.values(i, j) <= 1.0);
          if (i > 0) CHECK(r.values(i, j) <= r.values(i - 1, j) + 1e-12);
          if (j > 0) CHECK(r.values(i, j) <= r.values(i, j - 1) + 1e-12);
        }
      }
    }
  }
  SUBCASE("normal-parametric with exact moments reproduces the analytic surface") {
    // MLE (divisor n) of these pairs gives exactly (0,1), (1.5,1), (3,1).
    ThreeGroupSample s{{-1.0, 1.0}, {0.5, 2.5}, {2.0, 4.0}};
    const auto r = plug_in_surface(s, CdfMethod::normal_parametric, default_grid(21));
    for (std::size_t i = 0; i < r.values.rows(); ++i) {
      const double p1 = r.grid.p1_points[i];
      for (std::size_t j = 0; j < r.values.cols(); ++j) {
        const double p3 = r.grid.p3_points[j];
        const double q1 = normal_quantile(p1);             // F1^{-1}(p1), N(0,1)
        const double q3 = 3.0 + normal_quantile(1.0 - p3); // F3^{-1}(1-p3), N(3,1)
        const double truth =
            q1 < q3 ? std::max(0.0, normal_cdf(q3 - 1.5) - normal_cdf(q1 - 1.5)) : 0.0;
        CHECK(r.values(i, j) == doctest::Approx(truth).epsilon(1e-10));
      }
    }
  }
  SUBCASE("fine-grid surface integral approximates empirical_vus") {
    Rng rng(131);
    ThreeGroupSample s;
    for (auto* y : {&s.y1, &s.y2, &s.y3}) {
      for (int i = 0; i < 40; ++i) y->push_back(rng.normal());
    }
    for (auto& x : s.y2) x += 1.0;
    for (auto& x : s.y3) x += 2.0;
    const auto r = plug_in_surface(s, CdfMethod::empirical, grid);
    CHECK(std::abs(vus_from_surface(r.values, r.grid) - empirical_vus(s)) <= 0.02);
  }
}

TEST_CASE("bootstrap_vus_ci") {
  SUBCASE("single resample collapses the interval") {
    ThreeGroupSample s{{1, 2, 3}, {2.5, 4, 5}, {4.5, 6, 7}};
    const auto r = bootstrap_vus_ci(s, CdfMethod::empirical, 1, 0.95, 3);
    CHECK(r.lower == r.upper);
    CHECK(r.point == empirical_vus(s));
  }
  SUBCASE("perfect separation gives a degenerate interval at one") {
    ThreeGroupSample s{{1, 2}, {10, 11}, {20, 21}};
    const auto r = bootstrap_vus_ci(s, CdfMethod::empirical, 50, 0.95, 4);
    CHECK(r.point == 1.0);
    CHECK(r.lower == 1.0);
    CHECK(r.upper == 1.0);
  }
  SUBCASE("deterministic across thread counts") {
    Rng rng(888);
    ThreeGroupSample s;
    for (auto* y : {&s.y1, &s.y2, &s.y3}) {
      for (int i = 0; i < 20; ++i) y->push_back(rng.normal());
    }
    for (auto& x : s.y2) x += 1.0;
    for (auto& x : s.y3) x += 2.0;
    const auto a = bootstrap_vus_ci(s, CdfMethod::kernel_nrd0, 80, 0.95, 6, 1);
    const auto b = bootstrap_vus_ci(s, CdfMethod::kernel_nrd0, 80, 0.95, 6, 4);
    CHECK(a.point == b.point);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
  }
}
