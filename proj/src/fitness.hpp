#pragma once

#include "chart_graph.hpp"
#include "fast_polycube.hpp"
#include "labeling.hpp"
#include "mesh.hpp"
#include "smoothing.hpp"

#include <optional>
#include <vector>

namespace polycubify {

struct FitnessWeights {
  double workability = 1e2;
  double fidelity = 1e-2;
  double compactness = 1e-2;
};

struct FitnessValue {
  int v_p = 0;
  double e_w = 0.0;
  double e_f = 0.0;
  int e_c = 0;
  double total = 0.0;
};

double combine_fitness(const FitnessValue& f, const FitnessWeights& w);

/// Area-weighted mean of 1 - n.d over all triangles, in [0, 2].
double fidelity_error(const SurfaceMesh& mesh, const Labeling& labeling);

/// Number of corners.
int compactness(const ChartGraph& graph);

/// Fitness of `labeling` as given, without smoothing it first. A polycube
/// solve failure maps E_W to the distortion clamp.
FitnessValue evaluate_unsmoothed(const SurfaceMesh& mesh, const Labeling& labeling, const FitnessWeights& w);

/// Smooths `labeling` in place (stamping with `generation`) and evaluates it.
FitnessValue smooth_and_evaluate(const SurfaceMesh& mesh, Labeling& labeling, const FitnessWeights& w,
                                 int generation = 0);

/// Fitness of the smoothed copy of `labeling`.
FitnessValue evaluate_fitness(const SurfaceMesh& mesh, const Labeling& labeling, const FitnessWeights& w = {});

struct ChartStats {
  int id = 0;
  Label label = Label::kPosX;
  int triangles = 0;
  double area = 0.0;
  int neighbors = 0;
};

struct FitnessReport {
  FitnessValue fitness;
  double d_a = 0.0;
  int charts = 0;
  int boundaries = 0;
  int corners = 0;
  int turning_points = 0;
  ValidityBreakdown validity;
  std::vector<ChartStats> chart_stats;
  double polycube_residual = 0.0;
  bool polycube_failed = false;
  SmoothingReport smoothing;
  std::optional<FastPolycube> polycube;  // absent when the solve failed
};

/// Everything the evaluate command reports, computed on the smoothed labeling.
FitnessReport fitness_report(const SurfaceMesh& mesh, const Labeling& labeling, const FitnessWeights& w = {});

}  // namespace polycubify
