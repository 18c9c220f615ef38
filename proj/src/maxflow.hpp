#pragma once

#include <deque>
#include <vector>

namespace polycubify {

/// s-t max-flow / min-cut with the Boykov-Kolmogorov search-tree algorithm.
///
/// Nodes are added up front, then terminal and pairwise capacities. After
/// solve(), `in_source_segment` reports the side of a minimum cut; nodes not
/// reachable from the source in the residual graph are on the sink side.
class MaxFlowGraph {
 public:
  explicit MaxFlowGraph(int num_nodes = 0);

  int add_nodes(int count);
  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  /// Adds source->node and node->sink capacities (accumulating).
  void add_terminal_caps(int node, double source_cap, double sink_cap);

  /// Adds i->j with capacity `cap` and j->i with capacity `rev_cap`.
  void add_edge(int i, int j, double cap, double rev_cap = 0.0);

  double solve();
  double flow() const { return flow_; }
  bool in_source_segment(int node) const;

 private:
  static constexpr int kNone = -1;
  static constexpr int kTerminal = -2;
  static constexpr int kOrphan = -3;

  struct Node {
    std::vector<int> arcs;
    int parent = kNone;
    int ts = 0;
    int dist = 0;
    bool is_sink = false;
    bool queued = false;
    double tr_cap = 0.0;  // >0: residual from source, <0: residual to sink
  };
  struct Arc {
    int head = -1;
    int sister = -1;
    double r_cap = 0.0;
  };

  void set_active(int i);
  int next_active();
  void augment(int middle);
  void process_source_orphan(int i);
  void process_sink_orphan(int i);

  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::deque<int> active_;
  std::deque<int> orphans_;
  double flow_ = 0.0;
  int time_ = 0;
  bool solved_ = false;
};

}  // namespace polycubify
