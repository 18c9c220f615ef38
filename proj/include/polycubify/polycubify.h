#ifndef POLYCUBIFY_POLYCUBIFY_H
#define POLYCUBIFY_POLYCUBIFY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(POLYCUBIFY_BUILDING_LIBRARY)
#    define PCY_API __declspec(dllexport)
#  else
#    define PCY_API __declspec(dllimport)
#  endif
#else
#  define PCY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one; on failure the message is
 * available from pcy_last_error() on the calling thread. */
typedef enum pcy_status {
  PCY_OK = 0,
  PCY_ERR_PARSE = 1,
  PCY_ERR_TOPOLOGY = 2,
  PCY_ERR_DEGENERATE = 3,
  PCY_ERR_ORIENTATION = 4,
  PCY_ERR_INFEASIBLE = 5,
  PCY_ERR_SOLVE = 6,
  PCY_ERR_EMPTY_ARCHIVE = 7,
  PCY_ERR_INVALID_ARGUMENT = 8,
  PCY_ERR_IO = 9,
  PCY_ERR_NO_PATH = 10,
  PCY_ERR_INTERNAL = 99
} pcy_status;

/* Label codes, also used in labeling files. */
enum {
  PCY_LABEL_POS_X = 0,
  PCY_LABEL_NEG_X = 1,
  PCY_LABEL_POS_Y = 2,
  PCY_LABEL_NEG_Y = 3,
  PCY_LABEL_POS_Z = 4,
  PCY_LABEL_NEG_Z = 5
};

typedef struct pcy_mesh pcy_mesh;
typedef struct pcy_labeling pcy_labeling;
typedef struct pcy_run pcy_run;

typedef struct pcy_weights {
  double workability;
  double fidelity;
  double compactness;
} pcy_weights;

typedef struct pcy_fitness {
  int v_p;
  double e_w;
  double e_f;
  int e_c;
  double total;
} pcy_fitness;

typedef struct pcy_metrics {
  pcy_fitness fitness;
  double d_a;
  int charts;
  int boundaries;
  int corners;
  int turning_points;
  int invalid_corners;
  int invalid_boundaries;
  int chart_deficit;
  double polycube_residual;
  int polycube_failed;
} pcy_metrics;

typedef struct pcy_ga_config {
  int population;
  int crossovers;
  int generations;
  int stall_limit;
  int archive_capacity;
  int threads; /* 0: all hardware threads */
  uint64_t seed;
  pcy_weights weights;
  double ratio; /* unary/binary ratio of the graph-cut initialization */
  int allow_retry;
} pcy_ga_config;

typedef struct pcy_history_row {
  int attempt;
  int generation;
  pcy_fitness best;
  int archive_size;
} pcy_history_row;

typedef struct pcy_timings {
  double init_seconds;
  double evolve_seconds;
  double retry_seconds;
  double total_seconds;
} pcy_timings;

enum {
  PCY_MUTATION_DIRECTIONAL_PATH = 0,
  PCY_MUTATION_CHART_REMOVAL = 1,
  PCY_MUTATION_CHART_PROPAGATION = 2
};

typedef struct pcy_mutation {
  int kind;
  int chart;
  int boundary;
  int vertex; /* -1: whole boundary for propagation */
  int side;   /* 0: left chart of the boundary, 1: right chart */
  int direction;
  double width;
} pcy_mutation;

/* Called after every generation, including row 0 of each attempt. */
typedef void (*pcy_progress_fn)(const pcy_history_row* row, void* user);

PCY_API const char* pcy_version(void);
PCY_API const char* pcy_last_error(void);
PCY_API const char* pcy_status_name(pcy_status status);

/* Meshes. .obj/.stl/.ply surfaces or .mesh tetrahedral meshes (boundary extracted). */
PCY_API pcy_status pcy_mesh_load(const char* path, pcy_mesh** out);
PCY_API pcy_status pcy_mesh_from_arrays(const double* xyz, size_t num_vertices, const int32_t* triangles,
                                        size_t num_triangles, pcy_mesh** out);
PCY_API void pcy_mesh_free(pcy_mesh* mesh);
PCY_API size_t pcy_mesh_num_vertices(const pcy_mesh* mesh);
PCY_API size_t pcy_mesh_num_triangles(const pcy_mesh* mesh);
PCY_API double pcy_mesh_average_edge_length(const pcy_mesh* mesh);

/* Labelings. */
PCY_API pcy_status pcy_labeling_naive(const pcy_mesh* mesh, pcy_labeling** out);
PCY_API pcy_status pcy_labeling_graphcut(const pcy_mesh* mesh, double ratio, pcy_labeling** out);
PCY_API pcy_status pcy_labeling_read(const pcy_mesh* mesh, const char* path, pcy_labeling** out);
PCY_API pcy_status pcy_labeling_from_codes(const pcy_mesh* mesh, const uint8_t* codes, size_t count,
                                           pcy_labeling** out);
PCY_API pcy_status pcy_labeling_write(const pcy_labeling* labeling, const char* path);
PCY_API size_t pcy_labeling_size(const pcy_labeling* labeling);
PCY_API pcy_status pcy_labeling_codes(const pcy_labeling* labeling, uint8_t* out, size_t count);
PCY_API void pcy_labeling_free(pcy_labeling* labeling);

/* Both repairs in place. */
PCY_API pcy_status pcy_labeling_repair(const pcy_mesh* mesh, pcy_labeling* labeling, const pcy_weights* weights);
PCY_API pcy_status pcy_labeling_smooth(const pcy_mesh* mesh, pcy_labeling* labeling);

PCY_API void pcy_weights_default(pcy_weights* out);
PCY_API pcy_status pcy_evaluate(const pcy_mesh* mesh, const pcy_labeling* labeling, const pcy_weights* weights,
                                pcy_metrics* out);
/* Full JSON report. Release with pcy_string_free. */
PCY_API pcy_status pcy_report_json(const pcy_mesh* mesh, const pcy_labeling* labeling, const pcy_weights* weights,
                                   char** out);
PCY_API void pcy_string_free(char* s);

/* Per-face colored PLY and the least-squares polycube as OBJ. */
PCY_API pcy_status pcy_export_colored_ply(const pcy_mesh* mesh, const pcy_labeling* labeling, const char* path);
PCY_API pcy_status pcy_export_polycube_obj(const pcy_mesh* mesh, const pcy_labeling* labeling, const char* path);

/* Mutations. */
PCY_API pcy_status pcy_mutate(const pcy_mesh* mesh, const pcy_labeling* labeling, const pcy_mutation* spec,
                              int generation, pcy_labeling** out);
/* Draws a mutation from `seed`; `drawn` (optional) receives the spec. */
PCY_API pcy_status pcy_mutate_random(const pcy_mesh* mesh, const pcy_labeling* labeling, uint64_t seed,
                                     int generation, pcy_mutation* drawn, pcy_labeling** out);

/* Optimization. `init` may be NULL to start from the graph-cut labeling. */
PCY_API void pcy_ga_config_default(pcy_ga_config* out);
PCY_API pcy_status pcy_optimize(const pcy_mesh* mesh, const pcy_labeling* init, const pcy_ga_config* config,
                                pcy_progress_fn progress, void* user, pcy_run** out);
PCY_API pcy_status pcy_run_best_labeling(const pcy_run* run, pcy_labeling** out);
PCY_API void pcy_run_best_fitness(const pcy_run* run, pcy_fitness* out);
PCY_API int pcy_run_retried(const pcy_run* run);
PCY_API int pcy_run_attempts(const pcy_run* run);
PCY_API int pcy_run_generations(const pcy_run* run, int attempt);
PCY_API int pcy_run_stalled(const pcy_run* run, int attempt);
PCY_API size_t pcy_run_history_size(const pcy_run* run);
PCY_API pcy_status pcy_run_history_row(const pcy_run* run, size_t index, pcy_history_row* out);
PCY_API void pcy_run_timings(const pcy_run* run, pcy_timings* out);
PCY_API void pcy_run_free(pcy_run* run);

#ifdef __cplusplus
}
#endif

#endif /* POLYCUBIFY_POLYCUBIFY_H */
