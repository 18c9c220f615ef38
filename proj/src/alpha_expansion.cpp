#include "alpha_expansion.hpp"

#include "error.hpp"
#include "maxflow.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace polycubify {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MultiLabelProblem::MultiLabelProblem(int nodes, int labels)
    : num_nodes(nodes), num_labels(labels), unary(static_cast<std::size_t>(nodes) * labels, 0.0) {
  set_potts_penalty();
}

void MultiLabelProblem::set_potts_penalty() {
  penalty.assign(static_cast<std::size_t>(num_labels) * num_labels, 1.0);
  for (int l = 0; l < num_labels; ++l) penalty[static_cast<std::size_t>(l) * num_labels + l] = 0.0;
}

void MultiLabelProblem::validate() const {
  if (num_nodes < 0 || num_labels <= 0 || num_labels > 32) throw InvalidArgumentError("bad problem dimensions");
  if (unary.size() != static_cast<std::size_t>(num_nodes) * num_labels)
    throw InvalidArgumentError("unary table has wrong size");
  if (penalty.size() != static_cast<std::size_t>(num_labels) * num_labels)
    throw InvalidArgumentError("penalty table has wrong size");
  if (!locked.empty() && locked.size() != static_cast<std::size_t>(num_nodes))
    throw InvalidArgumentError("lock mask has wrong size");
  if (!forbidden.empty() && forbidden.size() != static_cast<std::size_t>(num_nodes))
    throw InvalidArgumentError("forbidden mask has wrong size");
  for (double u : unary)
    if (!(u >= 0.0) || !std::isfinite(u)) throw InvalidArgumentError("unary costs must be finite and non-negative");
  for (int a = 0; a < num_labels; ++a)
    for (int b = 0; b < num_labels; ++b) {
      const double p = penalty_at(a, b);
      if (!(p >= 0.0) || !std::isfinite(p) || p != penalty_at(b, a) || (a == b && p != 0.0))
        throw InvalidArgumentError("penalty table must be symmetric, non-negative, zero on the diagonal");
    }
  for (const Pairwise& t : pairwise) {
    if (t.i < 0 || t.i >= num_nodes || t.j < 0 || t.j >= num_nodes)
      throw InvalidArgumentError("pairwise term references a missing node");
    if (!(t.weight >= 0.0) || !std::isfinite(t.weight)) throw InvalidArgumentError("pairwise weight must be >= 0");
  }
}

double MultiLabelProblem::energy(const std::vector<int>& labels) const {
  double e = 0.0;
  for (int i = 0; i < num_nodes; ++i) {
    if (!is_locked(i) && is_forbidden(i, labels[i])) return kInf;
    e += unary_at(i, labels[i]);
  }
  for (const Pairwise& t : pairwise) e += t.weight * penalty_at(labels[t.i], labels[t.j]);
  return e;
}

namespace {

// One expansion move towards `alpha`. Returns the proposed labeling.
std::vector<int> expansion_move(const MultiLabelProblem& p, const std::vector<int>& labels, int alpha,
                                std::vector<int>& var_of) {
  const int n = p.num_nodes;
  std::vector<int> proposal = labels;

  // Decide which nodes are free binary variables. The others are constants,
  // possibly forced to alpha when their current label is forbidden.
  var_of.assign(n, -1);
  int num_vars = 0;
  for (int i = 0; i < n; ++i) {
    if (p.is_locked(i) || labels[i] == alpha) continue;
    const bool alpha_ok = !p.is_forbidden(i, alpha);
    const bool keep_ok = !p.is_forbidden(i, labels[i]);
    if (alpha_ok && keep_ok)
      var_of[i] = num_vars++;
    else if (alpha_ok)
      proposal[i] = alpha;
  }
  if (num_vars == 0) return proposal;

  // y = 0: switch to alpha (source side); y = 1: keep (sink side).
  std::vector<double> cost0(num_vars, 0.0), cost1(num_vars, 0.0);
  for (int i = 0; i < n; ++i) {
    const int v = var_of[i];
    if (v < 0) continue;
    cost0[v] = p.unary_at(i, alpha);
    cost1[v] = p.unary_at(i, labels[i]);
  }

  MaxFlowGraph graph(num_vars);
  for (const auto& t : p.pairwise) {
    if (t.weight == 0.0) continue;
    const int vi = var_of[t.i];
    const int vj = var_of[t.j];
    if (vi < 0 && vj < 0) continue;
    if (vi < 0 || vj < 0) {
      const int var_node = vi < 0 ? t.j : t.i;
      const int const_node = vi < 0 ? t.i : t.j;
      const int v = var_of[var_node];
      const int m = proposal[const_node];
      cost0[v] += t.weight * p.penalty_at(alpha, m);
      cost1[v] += t.weight * p.penalty_at(labels[var_node], m);
      continue;
    }
    const double a = 0.0;  // both alpha
    const double b = t.weight * p.penalty_at(alpha, labels[t.j]);
    const double c = t.weight * p.penalty_at(labels[t.i], alpha);
    double d = t.weight * p.penalty_at(labels[t.i], labels[t.j]);
    // Non-submodular terms (semi-metrics) get truncated; the caller's
    // energy check rejects any move this makes worse.
    if (a + d > b + c) d = b + c - a;
    // E = a + (c-a) y_i + (d-c) y_j + (b+c-a-d)(1-y_i) y_j
    cost1[vi] += c - a;
    cost1[vj] += d - c;
    graph.add_edge(vi, vj, b + c - a - d, 0.0);
  }
  for (int v = 0; v < num_vars; ++v) {
    // y=1 pays the source->v arc, y=0 pays v->sink.
    const double diff = cost1[v] - cost0[v];
    if (diff > 0.0)
      graph.add_terminal_caps(v, diff, 0.0);
    else if (diff < 0.0)
      graph.add_terminal_caps(v, 0.0, -diff);
  }
  graph.solve();
  for (int i = 0; i < n; ++i) {
    const int v = var_of[i];
    if (v >= 0 && graph.in_source_segment(v)) proposal[i] = alpha;
  }
  return proposal;
}

}  // namespace

ExpansionResult solve_alpha_expansion(const MultiLabelProblem& p, std::vector<int> init, int max_sweeps) {
  p.validate();
  if (init.size() != static_cast<std::size_t>(p.num_nodes))
    throw InvalidArgumentError("initial assignment has " + std::to_string(init.size()) + " entries, expected " +
                               std::to_string(p.num_nodes));
  const std::uint32_t all = p.num_labels == 32 ? 0xffffffffu : ((1u << p.num_labels) - 1u);
  for (int i = 0; i < p.num_nodes; ++i) {
    if (init[i] < 0 || init[i] >= p.num_labels) throw InvalidArgumentError("initial label out of range");
    if (!p.is_locked(i) && !p.forbidden.empty() && (p.forbidden[i] & all) == all)
      throw InfeasibleError("node " + std::to_string(i) + " has every label forbidden");
  }

  ExpansionResult result;
  result.labels = std::move(init);
  double energy = p.energy(result.labels);
  result.sweep_energies.push_back(energy);

  std::vector<int> scratch;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    for (int alpha = 0; alpha < p.num_labels; ++alpha) {
      std::vector<int> proposal = expansion_move(p, result.labels, alpha, scratch);
      const double e = p.energy(proposal);
      if (e < energy || (std::isinf(energy) && proposal != result.labels && e <= energy)) {
        improved = improved || e < energy;
        energy = e;
        result.labels = std::move(proposal);
        ++result.moves_accepted;
      }
    }
    result.sweep_energies.push_back(energy);
    if (!improved) break;
  }
  return result;
}

}  // namespace polycubify
