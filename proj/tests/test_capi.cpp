#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "rocsbb.h"

namespace fs = std::filesystem;

TEST_CASE("version and error reporting") {
  CHECK(rocsbb_version() != nullptr);
  CHECK(rocsbb_last_error() != nullptr);
  CHECK(rocsbb_sample_from_csv("/nonexistent/nope.csv", nullptr, nullptr, nullptr,
                               nullptr, nullptr) == nullptr);
  CHECK(rocsbb_last_status() == ROCSBB_E_DATA);
  CHECK(std::strlen(rocsbb_last_error()) > 0);
}

TEST_CASE("sample round trip and validation") {
  const double y1[] = {1.0, 2.0};
  const double y2[] = {3.0};
  const double y3[] = {4.0, 5.0, 6.0};
  rocsbb_sample* s = rocsbb_sample_create(y1, 2, y2, 1, y3, 3);
  REQUIRE(s != nullptr);
  CHECK(rocsbb_sample_size(s, 1) == 2);
  CHECK(rocsbb_sample_size(s, 2) == 1);
  CHECK(rocsbb_sample_size(s, 3) == 3);
  double out[3];
  CHECK(rocsbb_sample_values(s, 3, out, 3) == ROCSBB_OK);
  CHECK(out[2] == 6.0);
  CHECK(rocsbb_sample_values(s, 3, out, 2) == ROCSBB_E_USAGE);  // buffer too small
  CHECK(rocsbb_sample_checksum(s) != 0);
  rocsbb_sample_free(s);

  const double bad[] = {std::nan("")};
  CHECK(rocsbb_sample_create(bad, 1, y2, 1, y3, 3) == nullptr);
  CHECK(rocsbb_last_status() == ROCSBB_E_DATA);
}

TEST_CASE("bundled TMT sample") {
  rocsbb_sample* s = rocsbb_sample_tmt();
  REQUIRE(s != nullptr);
  CHECK(rocsbb_sample_size(s, 1) == 170);
  CHECK(rocsbb_sample_size(s, 2) == 52);
  CHECK(rocsbb_sample_size(s, 3) == 23);

  SUBCASE("empirical VUS reproduces the reported point estimate") {
    double v = 0.0;
    CHECK(rocsbb_empirical_vus(s, &v) == ROCSBB_OK);
    CHECK(v == doctest::Approx(0.7452).epsilon(1e-3));
  }
  rocsbb_sample_free(s);
}

TEST_CASE("grid accessors") {
  rocsbb_grid* g = rocsbb_grid_default(5);
  REQUIRE(g != nullptr);
  CHECK(rocsbb_grid_size(g, 1) == 5);
  CHECK(rocsbb_grid_size(g, 3) == 5);
  double pts[5];
  CHECK(rocsbb_grid_points(g, 1, pts, 5) == ROCSBB_OK);
  CHECK(pts[0] == 0.0001);
  CHECK(pts[4] == 0.9999);
  CHECK(rocsbb_grid_points(g, 2, pts, 5) == ROCSBB_E_USAGE);
  rocsbb_grid_free(g);
  CHECK(rocsbb_grid_default(1) == nullptr);
  CHECK(rocsbb_last_status() == ROCSBB_E_USAGE);
}

TEST_CASE("bb estimate through the C API") {
  const double y1[] = {1, 2, 3, 4, 2.5};
  const double y2[] = {3.5, 4.5, 5, 6};
  const double y3[] = {5.5, 7, 8, 6.5};
  rocsbb_sample* s = rocsbb_sample_create(y1, 5, y2, 4, y3, 4);
  rocsbb_grid* g = rocsbb_grid_default(10);
  rocsbb_bb_options opts = rocsbb_bb_options_default();
  opts.replicates = 150;
  opts.seed = 3;
  opts.threads = 1;

  rocsbb_surface* surface = nullptr;
  rocsbb_posterior* posterior = nullptr;
  REQUIRE(rocsbb_bb_estimate(s, g, &opts, &surface, &posterior) == ROCSBB_OK);
  CHECK(rocsbb_surface_rows(surface) == 10);
  CHECK(rocsbb_surface_cols(surface) == 10);
  CHECK(rocsbb_posterior_draw_count(posterior) == 150);
  const double mean = rocsbb_posterior_mean(posterior);
  CHECK(mean > 0.0);
  CHECK(mean < 1.0);
  CHECK(rocsbb_posterior_lower(posterior) <= mean);
  CHECK(mean <= rocsbb_posterior_upper(posterior));

  double vus = 0.0;
  CHECK(rocsbb_surface_vus(surface, &vus) == ROCSBB_OK);
  CHECK(vus == doctest::Approx(mean).epsilon(1e-12));

  SUBCASE("surface CSV round trip") {
    const auto path = (fs::temp_directory_path() / "rocsbb_capi_surface.csv").string();
    CHECK(rocsbb_surface_write_csv(surface, path.c_str()) == ROCSBB_OK);
    rocsbb_surface* back = rocsbb_surface_read_csv(path.c_str());
    REQUIRE(back != nullptr);
    for (std::size_t i = 0; i < 10; ++i) {
      for (std::size_t j = 0; j < 10; ++j) {
        CHECK(rocsbb_surface_value(back, i, j) == rocsbb_surface_value(surface, i, j));
      }
    }
    rocsbb_surface_free(back);
    fs::remove(path);
  }

  rocsbb_posterior_free(posterior);
  rocsbb_surface_free(surface);
  rocsbb_grid_free(g);
  rocsbb_sample_free(s);
}

TEST_CASE("classical estimators through the C API") {
  const double y1[] = {1.0, 2.0};
  const double y2[] = {1.5, 3.0};
  const double y3[] = {2.5, 4.0};
  rocsbb_sample* s = rocsbb_sample_create(y1, 2, y2, 2, y3, 2);
  double v = 0.0;
  CHECK(rocsbb_empirical_vus(s, &v) == ROCSBB_OK);
  CHECK(v == 0.5);
  CHECK(rocsbb_kernel_vus(s, 1e-8, 1e-8, 1e-8, &v) == ROCSBB_OK);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-6));

  double h = 0.0;
  const double vals[] = {1, 2, 3, 4, 5};
  CHECK(rocsbb_bandwidth_nrd0(vals, 5, &h) == ROCSBB_OK);
  CHECK(h == doctest::Approx(0.974).epsilon(1e-3));
  int boundary = 0;
  CHECK(rocsbb_bandwidth_ucv(vals, 5, 0.0, 0.0, &h, &boundary) == ROCSBB_OK);
  CHECK(h > 0.0);

  double point = 0.0, lo = 0.0, hi = 0.0;
  CHECK(rocsbb_bootstrap_vus_ci(s, ROCSBB_METHOD_EMPIRICAL, 50, 0.95, 7, 1, &point,
                                &lo, &hi) == ROCSBB_OK);
  CHECK(point == 0.5);
  CHECK(lo <= hi);

  const double flat[] = {5.0, 5.0, 5.0};
  rocsbb_sample* degenerate = rocsbb_sample_create(flat, 3, flat, 3, flat, 3);
  rocsbb_grid* g = rocsbb_grid_default(5);
  rocsbb_surface* surf =
      rocsbb_plug_in_surface(degenerate, ROCSBB_METHOD_KERNEL_NRD0, g);
  CHECK(surf == nullptr);
  CHECK(rocsbb_last_status() == ROCSBB_E_DEGENERATE);
  rocsbb_grid_free(g);
  rocsbb_sample_free(degenerate);
  rocsbb_sample_free(s);
}

TEST_CASE("scenarios and studies through the C API") {
  SUBCASE("builtin and JSON scenarios agree") {
    rocsbb_scenario* builtin = rocsbb_scenario_builtin(1);
    rocsbb_scenario* custom = rocsbb_scenario_from_json(
        R"({"dist1":{"kind":"normal","mu":0,"sigma":1},
            "dist2":{"kind":"normal","mu":1.5,"sigma":1},
            "dist3":{"kind":"normal","mu":3,"sigma":1}})");
    REQUIRE(builtin != nullptr);
    REQUIRE(custom != nullptr);
    double a = 0.0, b = 0.0;
    CHECK(rocsbb_true_vus_mc(builtin, 200000, 5, 1, &a) == ROCSBB_OK);
    CHECK(rocsbb_true_vus_mc(custom, 200000, 5, 1, &b) == ROCSBB_OK);
    CHECK(a == b);  // same generator, same substreams
    rocsbb_scenario_free(builtin);
    rocsbb_scenario_free(custom);
  }
  SUBCASE("invalid JSON rejected") {
    CHECK(rocsbb_scenario_from_json("{not json") == nullptr);
    CHECK(rocsbb_last_status() == ROCSBB_E_DATA);
    CHECK(rocsbb_scenario_from_json(R"({"dist1":{"kind":"weird"}})") == nullptr);
    CHECK(rocsbb_last_status() == ROCSBB_E_DATA);
  }
  SUBCASE("small study") {
    rocsbb_scenario* sc = rocsbb_scenario_builtin(2);
    rocsbb_study_options opts = rocsbb_study_options_default();
    opts.n1 = opts.n2 = opts.n3 = 20;
    opts.n_datasets = 2;
    opts.bb_replicates = 80;
    opts.grid_points = 8;
    opts.seed = 13;
    opts.estimator_mask = (1u << ROCSBB_METHOD_BB) | (1u << ROCSBB_METHOD_EMPIRICAL);
    rocsbb_study* study = rocsbb_run_study(sc, &opts);
    REQUIRE(study != nullptr);
    CHECK(rocsbb_study_cell_count(study) == 4);
    double truth = rocsbb_study_true_vus(study);
    CHECK(truth == doctest::Approx(0.2132).epsilon(1e-3));
    const double cov = rocsbb_study_coverage(study);
    CHECK(cov >= 0.0);
    CHECK(cov <= 1.0);
    std::size_t dataset = 99;
    int method = -1, covered = -1, failed = -1;
    double emse = -1.0, vus = -1.0, lo = 0.0, hi = 0.0;
    CHECK(rocsbb_study_cell(study, 0, &dataset, &method, &emse, &vus, &lo, &hi,
                            &covered, &failed) == ROCSBB_OK);
    CHECK(dataset == 0);
    CHECK(method == ROCSBB_METHOD_BB);
    CHECK(emse >= 0.0);
    CHECK(failed == 0);
    CHECK(rocsbb_study_cell(study, 4, nullptr, nullptr, nullptr, nullptr, nullptr,
                            nullptr, nullptr, nullptr) == ROCSBB_E_USAGE);
    rocsbb_study_free(study);
    rocsbb_scenario_free(sc);
  }
}

TEST_CASE("bb cdf band through the C API") {
  const double y1[] = {1.0, 2.0};
  const double y2[] = {3.0};
  const double y3[] = {4.0};
  rocsbb_sample* s = rocsbb_sample_create(y1, 2, y2, 1, y3, 1);
  const double z[] = {0.0, 1.5, 3.0};
  double mean[3], lower[3], upper[3];
  CHECK(rocsbb_bb_cdf_band(s, 1, z, 3, 2000, 0.95, 7, 1, mean, lower, upper) ==
        ROCSBB_OK);
  CHECK(mean[0] == 0.0);
  CHECK(mean[2] == 1.0);
  CHECK(mean[1] == doctest::Approx(0.5).epsilon(0.05));
  CHECK(rocsbb_bb_cdf_band(s, 9, z, 3, 10, 0.95, 7, 1, mean, lower, upper) ==
        ROCSBB_E_USAGE);
  rocsbb_sample_free(s);
}
