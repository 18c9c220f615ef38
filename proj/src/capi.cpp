#include "polycubify/polycubify.h"

#include "chart_graph.hpp"
#include "error.hpp"
#include "fitness.hpp"
#include "initial_labeling.hpp"
#include "mesh_io.hpp"
#include "mutations.hpp"
#include "pipeline.hpp"
#include "repairs.hpp"

#include <json.hpp>

#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

using namespace polycubify;

struct pcy_mesh {
  SurfaceMesh mesh;
};

struct pcy_labeling {
  Labeling labeling;
};

struct pcy_run {
  OptimizeResult result;
  std::vector<pcy_history_row> rows;
};

namespace {

thread_local std::string g_last_error;

pcy_status fail(pcy_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
pcy_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return PCY_OK;
  } catch (const Error& e) {
    return fail(static_cast<pcy_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PCY_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PCY_ERR_INTERNAL, e.what());
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw InvalidArgumentError(what);
}

FitnessWeights to_weights(const pcy_weights* w) {
  if (!w) return {};
  return {w->workability, w->fidelity, w->compactness};
}

pcy_fitness to_c(const FitnessValue& f) { return {f.v_p, f.e_w, f.e_f, f.e_c, f.total}; }

void check_bound(const pcy_mesh* mesh, const pcy_labeling* labeling) {
  require(mesh && labeling, "null mesh or labeling");
  if (labeling->labeling.size() != mesh->mesh.num_triangles())
    throw InvalidArgumentError("labeling has " + std::to_string(labeling->labeling.size()) + " entries but the mesh has " +
                               std::to_string(mesh->mesh.num_triangles()) + " triangles");
}

nlohmann::json report_json(const SurfaceMesh& mesh, const FitnessReport& r, const FitnessWeights& w) {
  using nlohmann::json;
  json charts = json::array();
  for (const ChartStats& c : r.chart_stats)
    charts.push_back({{"id", c.id},
                      {"label", std::string(label_name(c.label))},
                      {"triangles", c.triangles},
                      {"area", c.area},
                      {"neighbors", c.neighbors}});
  return {
      {"v_p", r.fitness.v_p},
      {"e_w", r.fitness.e_w},
      {"e_f", r.fitness.e_f},
      {"e_c", r.fitness.e_c},
      {"total", r.fitness.total},
      {"d_a", r.d_a},
      {"weights", {{"w1", w.workability}, {"w2", w.fidelity}, {"w3", w.compactness}}},
      {"mesh", {{"vertices", mesh.num_vertices()}, {"triangles", mesh.num_triangles()}}},
      {"charts", r.charts},
      {"boundaries", r.boundaries},
      {"corners", r.corners},
      {"turning_points", r.turning_points},
      {"validity",
       {{"invalid_corners", r.validity.invalid_corners},
        {"invalid_boundaries", r.validity.invalid_boundaries},
        {"chart_deficit", r.validity.chart_deficit},
        {"invalid_charts", r.validity.invalid_charts}}},
      {"polycube", {{"residual", r.polycube_residual}, {"failed", r.polycube_failed}}},
      {"smoothing", {{"passes", r.smoothing.passes}, {"relabeled", r.smoothing.relabeled},
                     {"fixpoint", r.smoothing.fixpoint}}},
      {"per_chart", charts},
  };
}

MutationSpec from_c(const pcy_mutation& m) {
  require(m.kind >= 0 && m.kind <= 2, "unknown mutation kind");
  MutationSpec s;
  s.kind = static_cast<MutationKind>(m.kind);
  s.chart = m.chart;
  s.boundary = m.boundary;
  s.vertex = m.vertex;
  s.side = m.side;
  s.direction = m.direction;
  s.width = m.width;
  return s;
}

pcy_mutation to_c(const MutationSpec& s) {
  return {static_cast<int>(s.kind), s.chart, s.boundary, s.vertex, s.side, s.direction, s.width};
}

}  // namespace

extern "C" {

const char* pcy_version(void) { return POLYCUBIFY_VERSION_STRING; }

const char* pcy_last_error(void) { return g_last_error.c_str(); }

const char* pcy_status_name(pcy_status status) {
  switch (status) {
    case PCY_OK: return "ok";
    case PCY_ERR_PARSE: return "parse error";
    case PCY_ERR_TOPOLOGY: return "topology error";
    case PCY_ERR_DEGENERATE: return "degenerate geometry";
    case PCY_ERR_ORIENTATION: return "orientation error";
    case PCY_ERR_INFEASIBLE: return "infeasible problem";
    case PCY_ERR_SOLVE: return "solver failure";
    case PCY_ERR_EMPTY_ARCHIVE: return "empty archive";
    case PCY_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PCY_ERR_IO: return "i/o error";
    case PCY_ERR_NO_PATH: return "no path";
    case PCY_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

pcy_status pcy_mesh_load(const char* path, pcy_mesh** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new pcy_mesh{load_mesh(path)};
  });
}

pcy_status pcy_mesh_from_arrays(const double* xyz, size_t num_vertices, const int32_t* triangles,
                                size_t num_triangles, pcy_mesh** out) {
  return guarded([&] {
    require(xyz && triangles && out, "null argument");
    std::vector<Vec3> v(num_vertices);
    for (size_t i = 0; i < num_vertices; ++i) v[i] = Vec3(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]);
    std::vector<Triangle> t(num_triangles);
    for (size_t i = 0; i < num_triangles; ++i) t[i] = {triangles[3 * i], triangles[3 * i + 1], triangles[3 * i + 2]};
    *out = new pcy_mesh{SurfaceMesh(std::move(v), std::move(t))};
  });
}

void pcy_mesh_free(pcy_mesh* mesh) { delete mesh; }

size_t pcy_mesh_num_vertices(const pcy_mesh* mesh) { return mesh ? mesh->mesh.num_vertices() : 0; }

size_t pcy_mesh_num_triangles(const pcy_mesh* mesh) { return mesh ? mesh->mesh.num_triangles() : 0; }

double pcy_mesh_average_edge_length(const pcy_mesh* mesh) { return mesh ? mesh->mesh.average_edge_length() : 0.0; }

pcy_status pcy_labeling_naive(const pcy_mesh* mesh, pcy_labeling** out) {
  return guarded([&] {
    require(mesh && out, "null argument");
    *out = new pcy_labeling{naive_normal_labeling(mesh->mesh)};
  });
}

pcy_status pcy_labeling_graphcut(const pcy_mesh* mesh, double ratio, pcy_labeling** out) {
  return guarded([&] {
    require(mesh && out, "null argument");
    *out = new pcy_labeling{graphcut_initial_labeling(mesh->mesh, ratio)};
  });
}

pcy_status pcy_labeling_read(const pcy_mesh* mesh, const char* path, pcy_labeling** out) {
  return guarded([&] {
    require(mesh && path && out, "null argument");
    *out = new pcy_labeling{read_labeling(path, mesh->mesh.num_triangles())};
  });
}

pcy_status pcy_labeling_from_codes(const pcy_mesh* mesh, const uint8_t* codes, size_t count, pcy_labeling** out) {
  return guarded([&] {
    require(mesh && codes && out, "null argument");
    if (count != static_cast<size_t>(mesh->mesh.num_triangles()))
      throw InvalidArgumentError("got " + std::to_string(count) + " labels for " +
                                 std::to_string(mesh->mesh.num_triangles()) + " triangles");
    std::vector<Label> labels(count);
    for (size_t i = 0; i < count; ++i) {
      require(codes[i] < kNumLabels, "label code out of range");
      labels[i] = label_from_code(codes[i]);
    }
    *out = new pcy_labeling{Labeling(std::move(labels))};
  });
}

pcy_status pcy_labeling_write(const pcy_labeling* labeling, const char* path) {
  return guarded([&] {
    require(labeling && path, "null argument");
    write_labeling(path, labeling->labeling);
  });
}

size_t pcy_labeling_size(const pcy_labeling* labeling) { return labeling ? labeling->labeling.size() : 0; }

pcy_status pcy_labeling_codes(const pcy_labeling* labeling, uint8_t* out, size_t count) {
  return guarded([&] {
    require(labeling && out, "null argument");
    require(count >= static_cast<size_t>(labeling->labeling.size()), "output buffer too small");
    for (int t = 0; t < labeling->labeling.size(); ++t) out[t] = static_cast<uint8_t>(code(labeling->labeling[t]));
  });
}

void pcy_labeling_free(pcy_labeling* labeling) { delete labeling; }

pcy_status pcy_labeling_repair(const pcy_mesh* mesh, pcy_labeling* labeling, const pcy_weights* weights) {
  return guarded([&] {
    check_bound(mesh, labeling);
    labeling->labeling = apply_repairs(mesh->mesh, labeling->labeling, to_weights(weights));
  });
}

pcy_status pcy_labeling_smooth(const pcy_mesh* mesh, pcy_labeling* labeling) {
  return guarded([&] {
    check_bound(mesh, labeling);
    smooth_boundaries_in_place(mesh->mesh, labeling->labeling);
  });
}

void pcy_weights_default(pcy_weights* out) {
  if (!out) return;
  const FitnessWeights w;
  *out = {w.workability, w.fidelity, w.compactness};
}

pcy_status pcy_evaluate(const pcy_mesh* mesh, const pcy_labeling* labeling, const pcy_weights* weights,
                        pcy_metrics* out) {
  return guarded([&] {
    check_bound(mesh, labeling);
    require(out, "null argument");
    const FitnessReport r = fitness_report(mesh->mesh, labeling->labeling, to_weights(weights));
    out->fitness = to_c(r.fitness);
    out->d_a = r.d_a;
    out->charts = r.charts;
    out->boundaries = r.boundaries;
    out->corners = r.corners;
    out->turning_points = r.turning_points;
    out->invalid_corners = r.validity.invalid_corners;
    out->invalid_boundaries = r.validity.invalid_boundaries;
    out->chart_deficit = r.validity.chart_deficit;
    out->polycube_residual = r.polycube_residual;
    out->polycube_failed = r.polycube_failed ? 1 : 0;
  });
}

pcy_status pcy_report_json(const pcy_mesh* mesh, const pcy_labeling* labeling, const pcy_weights* weights,
                           char** out) {
  return guarded([&] {
    check_bound(mesh, labeling);
    require(out, "null argument");
    const FitnessWeights w = to_weights(weights);
    const std::string s = report_json(mesh->mesh, fitness_report(mesh->mesh, labeling->labeling, w), w).dump(2);
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
  });
}

void pcy_string_free(char* s) { delete[] s; }

pcy_status pcy_export_colored_ply(const pcy_mesh* mesh, const pcy_labeling* labeling, const char* path) {
  return guarded([&] {
    check_bound(mesh, labeling);
    require(path, "null argument");
    static const Rgb kColors[kNumLabels] = {{255, 0, 0}, {128, 0, 0}, {0, 255, 0},
                                            {0, 128, 0}, {0, 0, 255}, {0, 0, 128}};
    std::vector<Rgb> colors(mesh->mesh.num_triangles());
    for (int t = 0; t < mesh->mesh.num_triangles(); ++t) colors[t] = kColors[code(labeling->labeling[t])];
    write_face_colored_ply(path, mesh->mesh, colors);
  });
}

pcy_status pcy_export_polycube_obj(const pcy_mesh* mesh, const pcy_labeling* labeling, const char* path) {
  return guarded([&] {
    check_bound(mesh, labeling);
    require(path, "null argument");
    const SurfaceMesh& m = mesh->mesh;
    const Labeling smoothed = smooth_boundaries(m, labeling->labeling);
    const ChartGraph graph = extract_charts(m, smoothed);
    const FastPolycube pc = fast_surface_polycube(m, smoothed, graph, /*strict=*/false);
    write_obj(path, pc.positions, m.triangles());
  });
}

pcy_status pcy_mutate(const pcy_mesh* mesh, const pcy_labeling* labeling, const pcy_mutation* spec, int generation,
                      pcy_labeling** out) {
  return guarded([&] {
    check_bound(mesh, labeling);
    require(spec && out, "null argument");
    const ChartGraph graph = extract_charts(mesh->mesh, labeling->labeling);
    const TurningPointSet tps = detect_turning_points(mesh->mesh, graph);
    *out = new pcy_labeling{apply_mutation(mesh->mesh, labeling->labeling, graph, tps, from_c(*spec), generation)};
  });
}

pcy_status pcy_mutate_random(const pcy_mesh* mesh, const pcy_labeling* labeling, uint64_t seed, int generation,
                             pcy_mutation* drawn, pcy_labeling** out) {
  return guarded([&] {
    check_bound(mesh, labeling);
    require(out, "null argument");
    const ChartGraph graph = extract_charts(mesh->mesh, labeling->labeling);
    const TurningPointSet tps = detect_turning_points(mesh->mesh, graph);
    Rng rng(seed);
    MutationResult r = random_mutation(mesh->mesh, labeling->labeling, graph, tps, rng, generation);
    if (drawn) *drawn = to_c(r.spec);
    *out = new pcy_labeling{std::move(r.labeling)};
  });
}

void pcy_ga_config_default(pcy_ga_config* out) {
  if (!out) return;
  const OptimizeOptions o;
  out->population = o.ga.population;
  out->crossovers = o.ga.crossovers;
  out->generations = o.ga.generations;
  out->stall_limit = o.ga.stall_limit;
  out->archive_capacity = o.ga.archive_capacity;
  out->threads = o.ga.threads;
  out->seed = o.ga.seed;
  pcy_weights_default(&out->weights);
  out->ratio = o.ratio;
  out->allow_retry = o.allow_retry ? 1 : 0;
}

pcy_status pcy_optimize(const pcy_mesh* mesh, const pcy_labeling* init, const pcy_ga_config* config,
                        pcy_progress_fn progress, void* user, pcy_run** out) {
  return guarded([&] {
    require(mesh && out, "null argument");
    if (init) check_bound(mesh, init);
    pcy_ga_config cfg;
    if (config)
      cfg = *config;
    else
      pcy_ga_config_default(&cfg);
    OptimizeOptions opts;
    opts.ga.population = cfg.population;
    opts.ga.crossovers = cfg.crossovers;
    opts.ga.generations = cfg.generations;
    opts.ga.stall_limit = cfg.stall_limit;
    opts.ga.archive_capacity = cfg.archive_capacity;
    opts.ga.threads = cfg.threads;
    opts.ga.seed = cfg.seed;
    opts.ga.weights = to_weights(&cfg.weights);
    opts.ratio = cfg.ratio;
    opts.allow_retry = cfg.allow_retry != 0;

    int attempt = 0;
    GenerationCallback cb;
    if (progress)
      cb = [&](const GenerationRecord& g) {
        if (g.generation == 0) ++attempt;
        const pcy_history_row row{attempt - 1, g.generation, to_c(g.best), g.archive_size};
        progress(&row, user);
      };
    std::optional<Labeling> start;
    if (init) start = init->labeling;
    auto run = std::make_unique<pcy_run>();
    run->result = optimize(mesh->mesh, start, opts, cb);
    for (std::size_t a = 0; a < run->result.attempts.size(); ++a)
      for (const GenerationRecord& g : run->result.attempts[a].generations)
        run->rows.push_back({static_cast<int>(a), g.generation, to_c(g.best), g.archive_size});
    *out = run.release();
  });
}

pcy_status pcy_run_best_labeling(const pcy_run* run, pcy_labeling** out) {
  return guarded([&] {
    require(run && out, "null argument");
    *out = new pcy_labeling{run->result.best.labeling};
  });
}

void pcy_run_best_fitness(const pcy_run* run, pcy_fitness* out) {
  if (run && out) *out = to_c(run->result.best.fitness);
}

int pcy_run_retried(const pcy_run* run) { return run && run->result.retried ? 1 : 0; }

int pcy_run_attempts(const pcy_run* run) { return run ? static_cast<int>(run->result.attempts.size()) : 0; }

int pcy_run_generations(const pcy_run* run, int attempt) {
  if (!run || attempt < 0 || attempt >= pcy_run_attempts(run)) return -1;
  return run->result.attempts[attempt].generations_run;
}

int pcy_run_stalled(const pcy_run* run, int attempt) {
  if (!run || attempt < 0 || attempt >= pcy_run_attempts(run)) return 0;
  return run->result.attempts[attempt].stalled ? 1 : 0;
}

size_t pcy_run_history_size(const pcy_run* run) { return run ? run->rows.size() : 0; }

pcy_status pcy_run_history_row(const pcy_run* run, size_t index, pcy_history_row* out) {
  return guarded([&] {
    require(run && out, "null argument");
    require(index < run->rows.size(), "history index out of range");
    *out = run->rows[index];
  });
}

void pcy_run_timings(const pcy_run* run, pcy_timings* out) {
  if (!run || !out) return;
  const StageTimings& t = run->result.timings;
  *out = {t.init_seconds, t.evolve_seconds, t.retry_seconds, t.total_seconds};
}

void pcy_run_free(pcy_run* run) { delete run; }

}  // extern "C"
