#include "rocsbb.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include <json.hpp>

#include "bb.hpp"
#include "classical.hpp"
#include "core.hpp"
#include "error.hpp"
#include "io.hpp"
#include "simulation.hpp"
#include "tmt.hpp"

using nlohmann::json;

struct rocsbb_sample {
  rocsbb::ThreeGroupSample data;
};
struct rocsbb_grid {
  rocsbb::ProbabilityGrid grid;
};
struct rocsbb_surface {
  rocsbb::RocSurfaceEstimate surface;
};
struct rocsbb_posterior {
  rocsbb::VusPosterior posterior;
};
struct rocsbb_scenario {
  rocsbb::ScenarioSpec spec;
};
struct rocsbb_study {
  rocsbb::StudyResult result;
};

namespace {

thread_local std::string g_last_error;
thread_local int g_last_status = ROCSBB_OK;

int set_error(const std::exception& e) {
  g_last_error = e.what();
  g_last_status = ROCSBB_E_INTERNAL;
  if (const auto* err = dynamic_cast<const rocsbb::Error*>(&e)) {
    g_last_status = static_cast<int>(err->code());
  }
  return g_last_status;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return ROCSBB_OK;
  } catch (const std::exception& e) {
    return set_error(e);
  }
}

template <typename Handle, typename Fn>
Handle* guarded_new(Fn&& fn) {
  try {
    return new Handle{fn()};
  } catch (const std::exception& e) {
    set_error(e);
    return nullptr;
  }
}

const std::vector<double>& group_of(const rocsbb::ThreeGroupSample& s, int group) {
  switch (group) {
    case 1: return s.y1;
    case 2: return s.y2;
    case 3: return s.y3;
    default: rocsbb::throw_usage("group must be 1, 2 or 3");
  }
}

int copy_out(const std::vector<double>& src, double* out, size_t capacity) {
  return guarded([&] {
    if (out == nullptr || capacity < src.size()) {
      rocsbb::throw_usage("output buffer too small");
    }
    std::memcpy(out, src.data(), src.size() * sizeof(double));
  });
}

rocsbb::CdfMethod to_cdf_method(int method) {
  switch (method) {
    case ROCSBB_METHOD_EMPIRICAL: return rocsbb::CdfMethod::empirical;
    case ROCSBB_METHOD_KERNEL_NRD0: return rocsbb::CdfMethod::kernel_nrd0;
    case ROCSBB_METHOD_KERNEL_UCV: return rocsbb::CdfMethod::kernel_ucv;
    case ROCSBB_METHOD_NORMAL: return rocsbb::CdfMethod::normal_parametric;
    default: rocsbb::throw_usage("invalid estimation method id");
  }
}

int method_id(rocsbb::Estimator e) {
  switch (e) {
    case rocsbb::Estimator::bb: return ROCSBB_METHOD_BB;
    case rocsbb::Estimator::empirical: return ROCSBB_METHOD_EMPIRICAL;
    case rocsbb::Estimator::kernel_nrd0: return ROCSBB_METHOD_KERNEL_NRD0;
    case rocsbb::Estimator::kernel_ucv: return ROCSBB_METHOD_KERNEL_UCV;
    case rocsbb::Estimator::normal_parametric: return ROCSBB_METHOD_NORMAL;
    default: return -1;
  }
}

rocsbb::Distribution parse_distribution(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "normal") {
    return rocsbb::Distribution(rocsbb::NormalDist{j.at("mu"), j.at("sigma")});
  }
  if (kind == "gamma") {
    return rocsbb::Distribution(rocsbb::GammaDist{j.at("shape"), j.at("rate")});
  }
  if (kind == "student_t") {
    return rocsbb::Distribution(rocsbb::StudentTDist{j.at("df")});
  }
  if (kind == "beta") {
    return rocsbb::Distribution(rocsbb::BetaDist{j.at("a"), j.at("b")});
  }
  if (kind == "chi_square") {
    return rocsbb::Distribution(rocsbb::ChiSquareDist{j.at("df")});
  }
  if (kind == "normal_mixture") {
    return rocsbb::Distribution(rocsbb::NormalMixtureDist{
        j.at("pi"), j.at("mu1"), j.at("sigma1"), j.at("mu2"), j.at("sigma2")});
  }
  rocsbb::throw_data("unknown distribution kind '" + kind + "'");
}

}  // namespace

extern "C" {

const char* rocsbb_version(void) { return "0.1.0"; }

const char* rocsbb_last_error(void) { return g_last_error.c_str(); }

int rocsbb_last_status(void) { return g_last_status; }

/* ---- samples ---------------------------------------------------------- */

rocsbb_sample* rocsbb_sample_create(const double* y1, size_t n1, const double* y2,
                                    size_t n2, const double* y3, size_t n3) {
  return guarded_new<rocsbb_sample>([&] {
    if (!y1 || !y2 || !y3) rocsbb::throw_usage("sample arrays must not be NULL");
    rocsbb::ThreeGroupSample s{{y1, y1 + n1}, {y2, y2 + n2}, {y3, y3 + n3}};
    s.validate();
    return s;
  });
}

rocsbb_sample* rocsbb_sample_from_csv(const char* path, const char* group_column,
                                      const char* value_column, const char* label1,
                                      const char* label2, const char* label3) {
  return guarded_new<rocsbb_sample>([&] {
    if (!path) rocsbb::throw_usage("path must not be NULL");
    rocsbb::CsvColumns cols;
    if (group_column) cols.group_column = group_column;
    if (value_column) cols.value_column = value_column;
    if (label1) cols.labels[0] = label1;
    if (label2) cols.labels[1] = label2;
    if (label3) cols.labels[2] = label3;
    return rocsbb::load_csv(path, cols);
  });
}

rocsbb_sample* rocsbb_sample_tmt(void) {
  return guarded_new<rocsbb_sample>([] { return rocsbb::tmt_part_a(); });
}

void rocsbb_sample_free(rocsbb_sample* s) { delete s; }

size_t rocsbb_sample_size(const rocsbb_sample* s, int group) {
  if (!s || group < 1 || group > 3) return 0;
  return group_of(s->data, group).size();
}

int rocsbb_sample_values(const rocsbb_sample* s, int group, double* out, size_t capacity) {
  if (!s) return ROCSBB_E_USAGE;
  return guarded([&] {
    const auto& g = group_of(s->data, group);
    if (!out || capacity < g.size()) rocsbb::throw_usage("output buffer too small");
    std::memcpy(out, g.data(), g.size() * sizeof(double));
  });
}

uint64_t rocsbb_sample_checksum(const rocsbb_sample* s) {
  return s ? rocsbb::sample_checksum(s->data) : 0;
}

/* ---- grids ------------------------------------------------------------ */

rocsbb_grid* rocsbb_grid_default(size_t n_points) {
  return guarded_new<rocsbb_grid>([&] { return rocsbb::default_grid(n_points); });
}

rocsbb_grid* rocsbb_grid_create(const double* p1, size_t np1, const double* p3, size_t np3) {
  return guarded_new<rocsbb_grid>([&] {
    if (!p1 || !p3) rocsbb::throw_usage("grid arrays must not be NULL");
    rocsbb::ProbabilityGrid g{{p1, p1 + np1}, {p3, p3 + np3}};
    g.validate();
    return g;
  });
}

void rocsbb_grid_free(rocsbb_grid* g) { delete g; }

size_t rocsbb_grid_size(const rocsbb_grid* g, int axis) {
  if (!g) return 0;
  return axis == 1 ? g->grid.np1() : axis == 3 ? g->grid.np3() : 0;
}

int rocsbb_grid_points(const rocsbb_grid* g, int axis, double* out, size_t capacity) {
  if (!g) return ROCSBB_E_USAGE;
  if (axis != 1 && axis != 3) {
    g_last_error = "axis must be 1 or 3";
    return ROCSBB_E_USAGE;
  }
  return copy_out(axis == 1 ? g->grid.p1_points : g->grid.p3_points, out, capacity);
}

/* ---- surfaces --------------------------------------------------------- */

size_t rocsbb_surface_rows(const rocsbb_surface* s) { return s ? s->surface.values.rows() : 0; }
size_t rocsbb_surface_cols(const rocsbb_surface* s) { return s ? s->surface.values.cols() : 0; }

double rocsbb_surface_value(const rocsbb_surface* s, size_t i, size_t j) {
  if (!s || i >= s->surface.values.rows() || j >= s->surface.values.cols()) {
    return std::nan("");
  }
  return s->surface.values(i, j);
}

int rocsbb_surface_values(const rocsbb_surface* s, double* out, size_t capacity) {
  if (!s) return ROCSBB_E_USAGE;
  return copy_out(s->surface.values.data(), out, capacity);
}

int rocsbb_surface_grid_points(const rocsbb_surface* s, int axis, double* out, size_t capacity) {
  if (!s) return ROCSBB_E_USAGE;
  if (axis != 1 && axis != 3) {
    g_last_error = "axis must be 1 or 3";
    return ROCSBB_E_USAGE;
  }
  return copy_out(axis == 1 ? s->surface.grid.p1_points : s->surface.grid.p3_points,
                  out, capacity);
}

int rocsbb_surface_vus(const rocsbb_surface* s, double* out) {
  if (!s || !out) return ROCSBB_E_USAGE;
  return guarded([&] { *out = rocsbb::vus_from_surface(s->surface.values, s->surface.grid); });
}

int rocsbb_surface_emse(const rocsbb_surface* estimate, const rocsbb_surface* truth, double* out) {
  if (!estimate || !truth || !out) return ROCSBB_E_USAGE;
  return guarded([&] { *out = rocsbb::emse(estimate->surface.values, truth->surface.values); });
}

int rocsbb_surface_write_csv(const rocsbb_surface* s, const char* path) {
  if (!s || !path) return ROCSBB_E_USAGE;
  return guarded([&] { rocsbb::write_surface_csv(path, s->surface); });
}

rocsbb_surface* rocsbb_surface_read_csv(const char* path) {
  return guarded_new<rocsbb_surface>([&] {
    if (!path) rocsbb::throw_usage("path must not be NULL");
    return rocsbb::read_surface_csv(path);
  });
}

void rocsbb_surface_free(rocsbb_surface* s) { delete s; }

/* ---- Bayesian bootstrap ----------------------------------------------- */

rocsbb_bb_options rocsbb_bb_options_default(void) {
  rocsbb_bb_options o;
  o.seed = 0;
  o.replicates = 2000;
  o.level = 0.95;
  o.threads = 0;
  o.keep_surface_draws = 0;
  return o;
}

int rocsbb_bb_estimate(const rocsbb_sample* sample, const rocsbb_grid* grid,
                       const rocsbb_bb_options* options, rocsbb_surface** surface_out,
                       rocsbb_posterior** posterior_out) {
  if (!sample || !grid) return ROCSBB_E_USAGE;
  return guarded([&] {
    rocsbb::BbConfig config;
    const rocsbb_bb_options opts = options ? *options : rocsbb_bb_options_default();
    config.replicates = opts.replicates;
    config.grid = grid->grid;
    config.credibility_level = opts.level;
    config.seed = opts.seed;
    config.threads = opts.threads;
    config.keep_draws = opts.keep_surface_draws != 0;
    rocsbb::BbResult result = rocsbb::bb_estimate(sample->data, config);
    if (surface_out) *surface_out = new rocsbb_surface{std::move(result.surface)};
    if (posterior_out) *posterior_out = new rocsbb_posterior{std::move(result.vus)};
  });
}

double rocsbb_posterior_mean(const rocsbb_posterior* p) { return p ? p->posterior.mean : std::nan(""); }
double rocsbb_posterior_lower(const rocsbb_posterior* p) { return p ? p->posterior.lower : std::nan(""); }
double rocsbb_posterior_upper(const rocsbb_posterior* p) { return p ? p->posterior.upper : std::nan(""); }

size_t rocsbb_posterior_draw_count(const rocsbb_posterior* p) {
  return p ? p->posterior.draws.size() : 0;
}

int rocsbb_posterior_draws(const rocsbb_posterior* p, double* out, size_t capacity) {
  if (!p) return ROCSBB_E_USAGE;
  return copy_out(p->posterior.draws, out, capacity);
}

void rocsbb_posterior_free(rocsbb_posterior* p) { delete p; }

int rocsbb_bb_cdf_band(const rocsbb_sample* sample, int group, const double* z, size_t nz,
                       size_t replicates, double level, uint64_t seed, int threads,
                       double* mean_out, double* lower_out, double* upper_out) {
  if (!sample || !z || !mean_out || !lower_out || !upper_out) return ROCSBB_E_USAGE;
  return guarded([&] {
    const auto band = rocsbb::bb_cdf_band(group_of(sample->data, group), {z, z + nz},
                                          replicates, level, seed, threads);
    std::memcpy(mean_out, band.mean.data(), nz * sizeof(double));
    std::memcpy(lower_out, band.lower.data(), nz * sizeof(double));
    std::memcpy(upper_out, band.upper.data(), nz * sizeof(double));
  });
}

/* ---- classical estimators --------------------------------------------- */

int rocsbb_empirical_vus(const rocsbb_sample* sample, double* out) {
  if (!sample || !out) return ROCSBB_E_USAGE;
  return guarded([&] { *out = rocsbb::empirical_vus(sample->data); });
}

int rocsbb_kernel_vus(const rocsbb_sample* sample, double h1, double h2, double h3, double* out) {
  if (!sample || !out) return ROCSBB_E_USAGE;
  return guarded([&] { *out = rocsbb::kernel_vus(sample->data, h1, h2, h3); });
}

int rocsbb_bandwidth_nrd0(const double* values, size_t n, double* out) {
  if (!values || !out) return ROCSBB_E_USAGE;
  return guarded([&] { *out = rocsbb::bandwidth_nrd0({values, values + n}); });
}

int rocsbb_bandwidth_ucv(const double* values, size_t n, double lo, double hi, double* h_out,
                         int* hit_boundary_out) {
  if (!values || !h_out) return ROCSBB_E_USAGE;
  return guarded([&] {
    const auto result = rocsbb::bandwidth_ucv({values, values + n}, lo, hi);
    *h_out = result.h;
    if (hit_boundary_out) *hit_boundary_out = result.hit_boundary ? 1 : 0;
  });
}

rocsbb_surface* rocsbb_plug_in_surface(const rocsbb_sample* sample, int method,
                                       const rocsbb_grid* grid) {
  return guarded_new<rocsbb_surface>([&] {
    if (!sample || !grid) rocsbb::throw_usage("sample and grid must not be NULL");
    return rocsbb::plug_in_surface(sample->data, to_cdf_method(method), grid->grid);
  });
}

int rocsbb_bootstrap_vus_ci(const rocsbb_sample* sample, int method, size_t resamples,
                            double level, uint64_t seed, int threads, double* point_out,
                            double* lower_out, double* upper_out) {
  if (!sample) return ROCSBB_E_USAGE;
  return guarded([&] {
    const auto result = rocsbb::bootstrap_vus_ci(sample->data, to_cdf_method(method),
                                                 resamples, level, seed, threads);
    if (point_out) *point_out = result.point;
    if (lower_out) *lower_out = result.lower;
    if (upper_out) *upper_out = result.upper;
  });
}

/* ---- simulation ------------------------------------------------------- */

rocsbb_scenario* rocsbb_scenario_builtin(int id) {
  return guarded_new<rocsbb_scenario>([&] { return rocsbb::builtin_scenario(id); });
}

rocsbb_scenario* rocsbb_scenario_from_json(const char* json_text) {
  return guarded_new<rocsbb_scenario>([&] {
    if (!json_text) rocsbb::throw_usage("json_text must not be NULL");
    json j;
    try {
      j = json::parse(json_text);
    } catch (const json::parse_error& e) {
      rocsbb::throw_data(std::string("scenario JSON: ") + e.what());
    }
    try {
      return rocsbb::ScenarioSpec{0, parse_distribution(j.at("dist1")),
                                  parse_distribution(j.at("dist2")),
                                  parse_distribution(j.at("dist3"))};
    } catch (const json::exception& e) {
      rocsbb::throw_data(std::string("scenario JSON: ") + e.what());
    }
  });
}

void rocsbb_scenario_free(rocsbb_scenario* sc) { delete sc; }

rocsbb_sample* rocsbb_generate_dataset(const rocsbb_scenario* sc, size_t n1, size_t n2,
                                       size_t n3, uint64_t seed) {
  return guarded_new<rocsbb_sample>([&] {
    if (!sc) rocsbb::throw_usage("scenario must not be NULL");
    return rocsbb::generate_dataset(sc->spec, n1, n2, n3, seed);
  });
}

rocsbb_surface* rocsbb_true_surface(const rocsbb_scenario* sc, const rocsbb_grid* grid) {
  return guarded_new<rocsbb_surface>([&] {
    if (!sc || !grid) rocsbb::throw_usage("scenario and grid must not be NULL");
    return rocsbb::true_surface(sc->spec, grid->grid);
  });
}

int rocsbb_true_vus_mc(const rocsbb_scenario* sc, uint64_t draws, uint64_t seed, int threads,
                       double* out) {
  if (!sc || !out) return ROCSBB_E_USAGE;
  return guarded([&] { *out = rocsbb::true_vus_mc(sc->spec, draws, seed, threads); });
}

int rocsbb_reference_true_vus(int scenario_id, double* vus_out, double* se_out) {
  return guarded([&] {
    const auto ref = rocsbb::reference_true_vus(scenario_id);
    if (vus_out) *vus_out = ref.vus;
    if (se_out) *se_out = ref.se;
  });
}

rocsbb_study_options rocsbb_study_options_default(void) {
  rocsbb_study_options o;
  o.n1 = o.n2 = o.n3 = 50;
  o.n_datasets = 300;
  o.bb_replicates = 2000;
  o.level = 0.95;
  o.grid_points = 50;
  o.seed = 0;
  o.threads = 0;
  o.estimator_mask = (1u << ROCSBB_METHOD_BB) | (1u << ROCSBB_METHOD_EMPIRICAL) |
                     (1u << ROCSBB_METHOD_KERNEL_NRD0) | (1u << ROCSBB_METHOD_KERNEL_UCV);
  return o;
}

rocsbb_study* rocsbb_run_study(const rocsbb_scenario* sc, const rocsbb_study_options* options) {
  return guarded_new<rocsbb_study>([&] {
    if (!sc || !options) rocsbb::throw_usage("scenario and options must not be NULL");
    rocsbb::StudyConfig config;
    config.scenario = sc->spec;
    config.n1 = options->n1;
    config.n2 = options->n2;
    config.n3 = options->n3;
    config.n_datasets = options->n_datasets;
    config.bb_replicates = options->bb_replicates;
    config.credibility_level = options->level;
    config.grid = rocsbb::default_grid(options->grid_points);
    config.seed = options->seed;
    config.threads = options->threads;
    config.estimators.clear();
    const std::pair<unsigned, rocsbb::Estimator> order[] = {
        {1u << ROCSBB_METHOD_BB, rocsbb::Estimator::bb},
        {1u << ROCSBB_METHOD_EMPIRICAL, rocsbb::Estimator::empirical},
        {1u << ROCSBB_METHOD_KERNEL_NRD0, rocsbb::Estimator::kernel_nrd0},
        {1u << ROCSBB_METHOD_KERNEL_UCV, rocsbb::Estimator::kernel_ucv},
        {1u << ROCSBB_METHOD_NORMAL, rocsbb::Estimator::normal_parametric},
    };
    for (const auto& [bit, est] : order) {
      if (options->estimator_mask & bit) config.estimators.push_back(est);
    }
    return rocsbb::run_study(config);
  });
}

void rocsbb_study_free(rocsbb_study* st) { delete st; }

size_t rocsbb_study_cell_count(const rocsbb_study* st) {
  return st ? st->result.cells.size() : 0;
}

int rocsbb_study_cell(const rocsbb_study* st, size_t index, size_t* dataset_out,
                      int* method_out, double* emse_out, double* vus_out,
                      double* ci_lower_out, double* ci_upper_out, int* covered_out,
                      int* failed_out) {
  if (!st || index >= st->result.cells.size()) return ROCSBB_E_USAGE;
  const rocsbb::StudyCell& cell = st->result.cells[index];
  if (dataset_out) *dataset_out = cell.dataset;
  if (method_out) *method_out = method_id(cell.estimator);
  if (emse_out) *emse_out = cell.emse;
  if (vus_out) *vus_out = cell.vus;
  if (ci_lower_out) *ci_lower_out = cell.has_interval ? cell.ci_lower : std::nan("");
  if (ci_upper_out) *ci_upper_out = cell.has_interval ? cell.ci_upper : std::nan("");
  if (covered_out) *covered_out = cell.has_interval && cell.covered ? 1 : 0;
  if (failed_out) *failed_out = cell.failed ? 1 : 0;
  return ROCSBB_OK;
}

double rocsbb_study_true_vus(const rocsbb_study* st) {
  return st ? st->result.true_vus : std::nan("");
}

double rocsbb_study_coverage(const rocsbb_study* st) {
  return st ? st->result.coverage : std::nan("");
}

} /* extern "C" */
