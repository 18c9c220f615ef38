#include "polycubify/polycubify.h"
#include "scratch.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

// Unit cube, vertex index x + 2y + 4z, outward winding.
const double kCubeXyz[] = {0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 1, 1};
const int32_t kCubeTris[] = {0, 2, 3, 0, 3, 1,   // -Z
                             4, 5, 7, 4, 7, 6,   // +Z
                             0, 1, 5, 0, 5, 4,   // -Y
                             2, 6, 7, 2, 7, 3,   // +Y
                             0, 4, 6, 0, 6, 2,   // -X
                             1, 3, 7, 1, 7, 5};  // +X
const uint8_t kCubeCodes[] = {5, 5, 4, 4, 3, 3, 2, 2, 1, 1, 0, 0};

struct MeshHandle {
  pcy_mesh* m = nullptr;
  MeshHandle() { REQUIRE(pcy_mesh_from_arrays(kCubeXyz, 8, kCubeTris, 12, &m) == PCY_OK); }
  ~MeshHandle() { pcy_mesh_free(m); }
};

std::vector<uint8_t> codes_of(const pcy_labeling* l) {
  std::vector<uint8_t> out(pcy_labeling_size(l));
  REQUIRE(pcy_labeling_codes(l, out.data(), out.size()) == PCY_OK);
  return out;
}

void on_row(const pcy_history_row* row, void* user) {
  static_cast<std::vector<pcy_history_row>*>(user)->push_back(*row);
}

}  // namespace

TEST_CASE("metadata") {
  CHECK(std::strlen(pcy_version()) > 0);
  CHECK(std::string(pcy_status_name(PCY_OK)) == "ok");
  CHECK(std::string(pcy_status_name(PCY_ERR_PARSE)) != std::string(pcy_status_name(PCY_ERR_IO)));
  pcy_weights w;
  pcy_weights_default(&w);
  CHECK(w.workability == 100.0);
  CHECK(w.fidelity == 0.01);
  CHECK(w.compactness == 0.01);
  pcy_ga_config c;
  pcy_ga_config_default(&c);
  CHECK(c.population == 100);
  CHECK(c.crossovers == 10);
  CHECK(c.generations == 40);
  CHECK(c.ratio == 3.0);
}

TEST_CASE("mesh errors set a status and a message") {
  pcy_mesh* m = nullptr;
  CHECK(pcy_mesh_from_arrays(kCubeXyz, 8, kCubeTris, 11, &m) == PCY_ERR_TOPOLOGY);
  CHECK(m == nullptr);
  CHECK(std::strlen(pcy_last_error()) > 0);

  const int32_t bad[] = {0, 1, 9};
  CHECK(pcy_mesh_from_arrays(kCubeXyz, 8, bad, 1, &m) != PCY_OK);
  CHECK(pcy_mesh_load(nullptr, &m) == PCY_ERR_INVALID_ARGUMENT);
  CHECK(pcy_mesh_load("/nonexistent/x.obj", &m) == PCY_ERR_IO);

  const auto dir = scratch_dir("capi");
  write_text(dir / "bad.obj", "v 0 0 0\nf 1 2 three\n");
  CHECK(pcy_mesh_load((dir / "bad.obj").c_str(), &m) == PCY_ERR_PARSE);

  MeshHandle ok;
  CHECK(std::strlen(pcy_last_error()) == 0);  // cleared by the next successful call
  CHECK(pcy_mesh_num_vertices(ok.m) == 8);
  CHECK(pcy_mesh_num_triangles(ok.m) == 12);
  CHECK(pcy_mesh_average_edge_length(ok.m) == doctest::Approx((12 + 6 * std::sqrt(2.0)) / 18));
}

TEST_CASE("labelings") {
  MeshHandle mesh;
  pcy_labeling* naive = nullptr;
  REQUIRE(pcy_labeling_naive(mesh.m, &naive) == PCY_OK);
  CHECK(codes_of(naive) == std::vector<uint8_t>(std::begin(kCubeCodes), std::end(kCubeCodes)));

  pcy_labeling* gc = nullptr;
  REQUIRE(pcy_labeling_graphcut(mesh.m, 3.0, &gc) == PCY_OK);
  CHECK(codes_of(gc) == codes_of(naive));

  pcy_labeling* l = nullptr;
  uint8_t codes[12];
  std::memcpy(codes, kCubeCodes, 12);
  codes[0] = 9;
  CHECK(pcy_labeling_from_codes(mesh.m, codes, 12, &l) == PCY_ERR_INVALID_ARGUMENT);
  CHECK(pcy_labeling_from_codes(mesh.m, kCubeCodes, 11, &l) == PCY_ERR_INVALID_ARGUMENT);

  uint8_t small[4];
  CHECK(pcy_labeling_codes(naive, small, 4) == PCY_ERR_INVALID_ARGUMENT);

  const auto dir = scratch_dir("capi-labels");
  const std::string path = (dir / "cube.labels").string();
  REQUIRE(pcy_labeling_write(naive, path.c_str()) == PCY_OK);
  REQUIRE(pcy_labeling_read(mesh.m, path.c_str(), &l) == PCY_OK);
  CHECK(codes_of(l) == codes_of(naive));
  pcy_labeling_free(l);

  write_text(dir / "short.labels", "0\n1\n");
  CHECK(pcy_labeling_read(mesh.m, (dir / "short.labels").c_str(), &l) != PCY_OK);
  write_text(dir / "junk.labels", "zero\n");
  CHECK(pcy_labeling_read(mesh.m, (dir / "junk.labels").c_str(), &l) == PCY_ERR_PARSE);

  pcy_labeling_free(gc);
  pcy_labeling_free(naive);
}

TEST_CASE("evaluation and report") {
  MeshHandle mesh;
  pcy_labeling* naive = nullptr;
  REQUIRE(pcy_labeling_naive(mesh.m, &naive) == PCY_OK);
  pcy_metrics m;
  REQUIRE(pcy_evaluate(mesh.m, naive, nullptr, &m) == PCY_OK);
  CHECK(m.fitness.v_p == 0);
  CHECK(m.fitness.e_c == 8);
  CHECK(m.fitness.e_w == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(m.fitness.e_f == doctest::Approx(0.0));
  CHECK(m.fitness.total == doctest::Approx(100 * 1.0 + 0.01 * 8));
  CHECK(m.d_a == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(m.charts == 6);
  CHECK(m.boundaries == 12);
  CHECK(m.corners == 8);
  CHECK(m.polycube_failed == 0);

  const pcy_weights only_validity = {0, 0, 0};
  REQUIRE(pcy_evaluate(mesh.m, naive, &only_validity, &m) == PCY_OK);
  CHECK(m.fitness.total == 0.0);

  char* json = nullptr;
  REQUIRE(pcy_report_json(mesh.m, naive, nullptr, &json) == PCY_OK);
  const auto report = nlohmann::json::parse(json);
  pcy_string_free(json);
  CHECK(report["v_p"] == 0);
  CHECK(report["e_c"] == 8);
  CHECK(report["charts"] == 6);
  CHECK(report["mesh"]["triangles"] == 12);
  CHECK(report["per_chart"].size() == 6);
  CHECK(report["weights"]["w1"] == 100.0);

  pcy_labeling* wrong = nullptr;
  const uint8_t codes[] = {0, 0};
  pcy_mesh* tiny = nullptr;
  const double xyz[] = {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1};
  const int32_t tet[] = {0, 2, 1, 0, 1, 3, 0, 3, 2, 1, 2, 3};
  REQUIRE(pcy_mesh_from_arrays(xyz, 4, tet, 4, &tiny) == PCY_OK);
  REQUIRE(pcy_labeling_from_codes(tiny, codes, 2, &wrong) != PCY_OK);
  pcy_labeling* tet_naive = nullptr;
  REQUIRE(pcy_labeling_naive(tiny, &tet_naive) == PCY_OK);
  CHECK(pcy_evaluate(mesh.m, tet_naive, nullptr, &m) == PCY_ERR_INVALID_ARGUMENT);
  CHECK(std::string(pcy_last_error()).find("triangles") != std::string::npos);
  pcy_labeling_free(tet_naive);
  pcy_mesh_free(tiny);

  const auto dir = scratch_dir("capi-export");
  REQUIRE(pcy_export_colored_ply(mesh.m, naive, (dir / "c.ply").c_str()) == PCY_OK);
  REQUIRE(pcy_export_polycube_obj(mesh.m, naive, (dir / "p.obj").c_str()) == PCY_OK);
  pcy_mesh* reloaded = nullptr;
  REQUIRE(pcy_mesh_load((dir / "p.obj").c_str(), &reloaded) == PCY_OK);
  CHECK(pcy_mesh_num_triangles(reloaded) == 12);
  pcy_mesh_free(reloaded);
  REQUIRE(pcy_mesh_load((dir / "c.ply").c_str(), &reloaded) == PCY_OK);
  pcy_mesh_free(reloaded);
  pcy_labeling_free(naive);
}

TEST_CASE("mutations, repair and smoothing") {
  MeshHandle mesh;
  pcy_labeling* naive = nullptr;
  REQUIRE(pcy_labeling_naive(mesh.m, &naive) == PCY_OK);

  pcy_mutation spec = {PCY_MUTATION_CHART_REMOVAL, 0, -1, -1, 0, 0, 0.0};
  pcy_labeling* out = nullptr;
  REQUIRE(pcy_mutate(mesh.m, naive, &spec, 1, &out) == PCY_OK);
  CHECK(codes_of(out) != codes_of(naive));
  pcy_labeling_free(out);

  spec.kind = 7;
  CHECK(pcy_mutate(mesh.m, naive, &spec, 1, &out) == PCY_ERR_INVALID_ARGUMENT);

  pcy_mutation drawn;
  pcy_labeling* a = nullptr;
  pcy_labeling* b = nullptr;
  REQUIRE(pcy_mutate_random(mesh.m, naive, 11, 1, &drawn, &a) == PCY_OK);
  REQUIRE(pcy_mutate_random(mesh.m, naive, 11, 1, nullptr, &b) == PCY_OK);
  CHECK(codes_of(a) == codes_of(b));
  CHECK(drawn.kind >= 0);
  CHECK(drawn.kind <= 2);
  REQUIRE(pcy_mutate(mesh.m, naive, &drawn, 1, &out) == PCY_OK);
  CHECK(codes_of(out) == codes_of(a));
  pcy_labeling_free(out);
  pcy_labeling_free(a);
  pcy_labeling_free(b);

  pcy_labeling* l = nullptr;
  REQUIRE(pcy_labeling_from_codes(mesh.m, kCubeCodes, 12, &l) == PCY_OK);
  REQUIRE(pcy_labeling_repair(mesh.m, l, nullptr) == PCY_OK);
  REQUIRE(pcy_labeling_smooth(mesh.m, l) == PCY_OK);
  CHECK(codes_of(l) == codes_of(naive));
  pcy_labeling_free(l);
  pcy_labeling_free(naive);
}

TEST_CASE("optimize") {
  MeshHandle mesh;
  pcy_ga_config cfg;
  pcy_ga_config_default(&cfg);
  cfg.population = 16;
  cfg.crossovers = 4;
  cfg.seed = 5;
  cfg.threads = 2;
  std::vector<pcy_history_row> rows;
  pcy_run* run = nullptr;
  REQUIRE(pcy_optimize(mesh.m, nullptr, &cfg, on_row, &rows, &run) == PCY_OK);

  CHECK(pcy_run_attempts(run) == 1);
  CHECK(pcy_run_retried(run) == 0);
  CHECK(pcy_run_stalled(run, 0) == 1);
  CHECK(pcy_run_generations(run, 0) <= 3);
  CHECK(pcy_run_generations(run, 5) == -1);

  REQUIRE(pcy_run_history_size(run) == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    pcy_history_row r;
    REQUIRE(pcy_run_history_row(run, i, &r) == PCY_OK);
    CHECK(r.attempt == rows[i].attempt);
    CHECK(r.generation == static_cast<int>(i));
    CHECK(r.best.total == rows[i].best.total);
  }
  pcy_history_row r;
  CHECK(pcy_run_history_row(run, rows.size(), &r) == PCY_ERR_INVALID_ARGUMENT);

  pcy_fitness f;
  pcy_run_best_fitness(run, &f);
  CHECK(f.v_p == 0);
  CHECK(f.e_c == 8);
  pcy_labeling* best = nullptr;
  REQUIRE(pcy_run_best_labeling(run, &best) == PCY_OK);
  CHECK(codes_of(best) == std::vector<uint8_t>(std::begin(kCubeCodes), std::end(kCubeCodes)));

  pcy_timings t;
  pcy_run_timings(run, &t);
  CHECK(t.total_seconds >= t.evolve_seconds);
  CHECK(t.total_seconds < 1.0);

  pcy_run* again = nullptr;
  REQUIRE(pcy_optimize(mesh.m, best, &cfg, nullptr, nullptr, &again) == PCY_OK);
  pcy_run_best_fitness(again, &f);
  CHECK(f.v_p == 0);
  pcy_run_free(again);

  cfg.population = 0;
  CHECK(pcy_optimize(mesh.m, nullptr, &cfg, nullptr, nullptr, &again) == PCY_ERR_INVALID_ARGUMENT);
  CHECK(pcy_optimize(nullptr, nullptr, &cfg, nullptr, nullptr, &again) == PCY_ERR_INVALID_ARGUMENT);

  pcy_labeling_free(best);
  pcy_run_free(run);
}
