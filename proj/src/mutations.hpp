#pragma once

#include "chart_graph.hpp"
#include "labeling.hpp"
#include "mesh.hpp"
#include "rng.hpp"
#include "turning_points.hpp"

#include <array>
#include <string_view>

namespace polycubify {

enum class MutationKind { kDirectionalPath = 0, kChartRemoval = 1, kChartPropagation = 2 };

std::string_view mutation_kind_name(MutationKind kind);
/// Throws InvalidArgumentError for unknown names.
MutationKind mutation_kind_from_name(std::string_view name);

struct MutationSpec {
  MutationKind kind = MutationKind::kChartRemoval;
  int chart = -1;     // removal target
  int boundary = -1;  // boundary holding `vertex`
  int vertex = -1;    // path start / propagation center; -1 propagates along the whole boundary
  int side = 0;       // 0: the boundary's left chart, 1: its right chart
  int direction = 0;  // index into orthogonal_directions(chart label)
  double width = 0.0;
};

/// The four labels orthogonal to `l`, ascending by code.
std::array<Label, 4> orthogonal_directions(Label l);

/// Walks from `start` inside `chart`, greedily following `dir`, until it
/// reaches a chart boundary other than `start_boundary` on the first step.
/// Throws NoPathError when stuck or past the step cap.
std::vector<int> directional_walk(const SurfaceMesh& mesh, const ChartGraph& graph, int chart, int start,
                                  int start_boundary, Label dir);

/// Relabels a band around a greedy walk inside one chart of the boundary.
/// Throws NoPathError if the walk fails.
Labeling directional_path(const SurfaceMesh& mesh, const Labeling& l, const ChartGraph& graph, int boundary,
                          int vertex, int side, int direction, double width, int generation);

/// Re-solves the chart with its current label forbidden and the rest locked.
Labeling chart_removal(const SurfaceMesh& mesh, const Labeling& l, const ChartGraph& graph, int chart,
                       int generation, double ratio = 3.0);

/// The chart on `side` of the boundary invades the other one around the
/// turning-point-delimited segment containing `vertex`, or along the whole
/// boundary when `vertex` is -1 or the boundary is monotone.
Labeling chart_propagation(const SurfaceMesh& mesh, const Labeling& l, const ChartGraph& graph,
                           const TurningPointSet& tps, int boundary, int vertex, int side, double width,
                           int generation);

/// Applies a spec; walks that fail leave the labeling unchanged.
Labeling apply_mutation(const SurfaceMesh& mesh, const Labeling& l, const ChartGraph& graph,
                        const TurningPointSet& tps, const MutationSpec& spec, int generation);

/// Draws a spec: uniform kind, invalid charts preferred for removal,
/// turning points preferred as locations, width uniform in [l_avg, 5 l_avg].
/// Returns false when there is nothing to target.
bool draw_mutation(const SurfaceMesh& mesh, const ChartGraph& graph, const TurningPointSet& tps, Rng& rng,
                   MutationSpec& spec);

struct MutationResult {
  Labeling labeling;
  MutationSpec spec;
  bool applied = false;
};

MutationResult random_mutation(const SurfaceMesh& mesh, const Labeling& l, const ChartGraph& graph,
                               const TurningPointSet& tps, Rng& rng, int generation);

}  // namespace polycubify
