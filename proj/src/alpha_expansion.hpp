#pragma once

#include <cstdint>
#include <vector>

namespace polycubify {

/// Discrete pairwise energy
///   E(l) = sum_i unary(i, l_i) + sum_(i,j) w_ij * penalty(l_i, l_j)
/// with optional per-node locks and forbidden labels.
struct MultiLabelProblem {
  struct Pairwise {
    int i = 0;
    int j = 0;
    double weight = 0.0;
  };

  int num_nodes = 0;
  int num_labels = 0;
  std::vector<double> unary;    // num_nodes * num_labels, node-major
  std::vector<Pairwise> pairwise;
  std::vector<double> penalty;  // num_labels * num_labels, symmetric, zero diagonal
  std::vector<std::uint8_t> locked;      // empty or one flag per node
  std::vector<std::uint32_t> forbidden;  // empty or one label bitmask per node

  MultiLabelProblem() = default;
  MultiLabelProblem(int nodes, int labels);

  double& unary_at(int node, int label) { return unary[static_cast<std::size_t>(node) * num_labels + label]; }
  double unary_at(int node, int label) const { return unary[static_cast<std::size_t>(node) * num_labels + label]; }
  double penalty_at(int a, int b) const { return penalty[static_cast<std::size_t>(a) * num_labels + b]; }
  bool is_locked(int node) const { return !locked.empty() && locked[node]; }
  bool is_forbidden(int node, int label) const { return !forbidden.empty() && ((forbidden[node] >> label) & 1u); }

  void set_potts_penalty();
  void add_pairwise(int i, int j, double weight) { pairwise.push_back({i, j, weight}); }

  /// Infinite when an unlocked node carries a forbidden label.
  double energy(const std::vector<int>& labels) const;
  /// Throws InvalidArgumentError on malformed tables or negative costs.
  void validate() const;
};

struct ExpansionResult {
  std::vector<int> labels;
  /// Energy of the initial assignment followed by the energy after each sweep.
  std::vector<double> sweep_energies;
  int moves_accepted = 0;
};

inline constexpr int kMaxExpansionSweeps = 10;

/// Alpha-expansion with labels swept in ascending order. A move is kept only
/// when it strictly lowers the energy. Throws InfeasibleError when some
/// unlocked node has every label forbidden.
ExpansionResult solve_alpha_expansion(const MultiLabelProblem& problem, std::vector<int> init,
                                      int max_sweeps = kMaxExpansionSweeps);

}  // namespace polycubify
