#include "maxflow.hpp"

#include "error.hpp"

#include <algorithm>
#include <limits>

namespace polycubify {

MaxFlowGraph::MaxFlowGraph(int num_nodes) : nodes_(num_nodes) {}

int MaxFlowGraph::add_nodes(int count) {
  const int first = num_nodes();
  nodes_.resize(nodes_.size() + count);
  return first;
}

void MaxFlowGraph::add_terminal_caps(int node, double source_cap, double sink_cap) {
  if (source_cap < 0.0 || sink_cap < 0.0) throw InvalidArgumentError("negative terminal capacity");
  Node& n = nodes_[node];
  // Fold the existing residual back in, route the common part directly.
  if (n.tr_cap > 0.0)
    source_cap += n.tr_cap;
  else
    sink_cap -= n.tr_cap;
  flow_ += std::min(source_cap, sink_cap);
  n.tr_cap = source_cap - sink_cap;
}

void MaxFlowGraph::add_edge(int i, int j, double cap, double rev_cap) {
  if (cap < 0.0 || rev_cap < 0.0) throw InvalidArgumentError("negative edge capacity");
  if (i == j) return;
  const int a = static_cast<int>(arcs_.size());
  arcs_.push_back({j, a + 1, cap});
  arcs_.push_back({i, a, rev_cap});
  nodes_[i].arcs.push_back(a);
  nodes_[j].arcs.push_back(a + 1);
}

void MaxFlowGraph::set_active(int i) {
  if (!nodes_[i].queued) {
    nodes_[i].queued = true;
    active_.push_back(i);
  }
}

int MaxFlowGraph::next_active() {
  while (!active_.empty()) {
    const int i = active_.front();
    active_.pop_front();
    nodes_[i].queued = false;
    if (nodes_[i].parent != kNone) return i;
  }
  return kNone;
}

void MaxFlowGraph::augment(int middle) {
  const int sister = arcs_[middle].sister;
  double bottleneck = arcs_[middle].r_cap;

  // Source tree side.
  int i = arcs_[sister].head;
  while (nodes_[i].parent != kTerminal) {
    const int a = nodes_[i].parent;
    bottleneck = std::min(bottleneck, arcs_[arcs_[a].sister].r_cap);
    i = arcs_[a].head;
  }
  bottleneck = std::min(bottleneck, nodes_[i].tr_cap);

  // Sink tree side.
  i = arcs_[middle].head;
  while (nodes_[i].parent != kTerminal) {
    const int a = nodes_[i].parent;
    bottleneck = std::min(bottleneck, arcs_[a].r_cap);
    i = arcs_[a].head;
  }
  bottleneck = std::min(bottleneck, -nodes_[i].tr_cap);

  arcs_[sister].r_cap += bottleneck;
  arcs_[middle].r_cap -= bottleneck;

  i = arcs_[sister].head;
  while (nodes_[i].parent != kTerminal) {
    const int a = nodes_[i].parent;
    arcs_[a].r_cap += bottleneck;
    Arc& down = arcs_[arcs_[a].sister];
    down.r_cap -= bottleneck;
    if (down.r_cap <= 0.0) {
      down.r_cap = 0.0;
      nodes_[i].parent = kOrphan;
      orphans_.push_front(i);
    }
    i = arcs_[a].head;
  }
  nodes_[i].tr_cap -= bottleneck;
  if (nodes_[i].tr_cap <= 0.0) {
    nodes_[i].tr_cap = 0.0;
    nodes_[i].parent = kOrphan;
    orphans_.push_front(i);
  }

  i = arcs_[middle].head;
  while (nodes_[i].parent != kTerminal) {
    const int a = nodes_[i].parent;
    arcs_[arcs_[a].sister].r_cap += bottleneck;
    arcs_[a].r_cap -= bottleneck;
    if (arcs_[a].r_cap <= 0.0) {
      arcs_[a].r_cap = 0.0;
      nodes_[i].parent = kOrphan;
      orphans_.push_front(i);
    }
    i = arcs_[a].head;
  }
  nodes_[i].tr_cap += bottleneck;
  if (nodes_[i].tr_cap >= 0.0) {
    nodes_[i].tr_cap = 0.0;
    nodes_[i].parent = kOrphan;
    orphans_.push_front(i);
  }

  flow_ += bottleneck;
}

void MaxFlowGraph::process_source_orphan(int i) {
  constexpr int kInfDist = std::numeric_limits<int>::max();
  int best_arc = kNone;
  int best_dist = kInfDist;

  for (int a0 : nodes_[i].arcs) {
    if (arcs_[arcs_[a0].sister].r_cap <= 0.0) continue;
    int j = arcs_[a0].head;
    if (nodes_[j].is_sink || nodes_[j].parent == kNone) continue;

    // Is j still rooted at the source?
    int d = 0;
    while (true) {
      if (nodes_[j].ts == time_) {
        d += nodes_[j].dist;
        break;
      }
      const int a = nodes_[j].parent;
      ++d;
      if (a == kTerminal) {
        nodes_[j].ts = time_;
        nodes_[j].dist = 1;
        break;
      }
      if (a == kOrphan) {
        d = kInfDist;
        break;
      }
      j = arcs_[a].head;
    }
    if (d < kInfDist) {
      if (d < best_dist) {
        best_arc = a0;
        best_dist = d;
      }
      for (j = arcs_[a0].head; nodes_[j].ts != time_; j = arcs_[nodes_[j].parent].head) {
        nodes_[j].ts = time_;
        nodes_[j].dist = d--;
      }
    }
  }

  nodes_[i].parent = best_arc;
  if (best_arc != kNone) {
    nodes_[i].ts = time_;
    nodes_[i].dist = best_dist + 1;
    return;
  }
  nodes_[i].parent = kNone;
  for (int a0 : nodes_[i].arcs) {
    const int j = arcs_[a0].head;
    const int a = nodes_[j].parent;
    if (nodes_[j].is_sink || a == kNone) continue;
    if (arcs_[arcs_[a0].sister].r_cap > 0.0) set_active(j);
    if (a != kTerminal && a != kOrphan && arcs_[a].head == i) {
      nodes_[j].parent = kOrphan;
      orphans_.push_back(j);
    }
  }
}

void MaxFlowGraph::process_sink_orphan(int i) {
  constexpr int kInfDist = std::numeric_limits<int>::max();
  int best_arc = kNone;
  int best_dist = kInfDist;

  for (int a0 : nodes_[i].arcs) {
    if (arcs_[a0].r_cap <= 0.0) continue;
    int j = arcs_[a0].head;
    if (!nodes_[j].is_sink || nodes_[j].parent == kNone) continue;

    int d = 0;
    while (true) {
      if (nodes_[j].ts == time_) {
        d += nodes_[j].dist;
        break;
      }
      const int a = nodes_[j].parent;
      ++d;
      if (a == kTerminal) {
        nodes_[j].ts = time_;
        nodes_[j].dist = 1;
        break;
      }
      if (a == kOrphan) {
        d = kInfDist;
        break;
      }
      j = arcs_[a].head;
    }
    if (d < kInfDist) {
      if (d < best_dist) {
        best_arc = a0;
        best_dist = d;
      }
      for (j = arcs_[a0].head; nodes_[j].ts != time_; j = arcs_[nodes_[j].parent].head) {
        nodes_[j].ts = time_;
        nodes_[j].dist = d--;
      }
    }
  }

  nodes_[i].parent = best_arc;
  if (best_arc != kNone) {
    nodes_[i].ts = time_;
    nodes_[i].dist = best_dist + 1;
    return;
  }
  nodes_[i].parent = kNone;
  for (int a0 : nodes_[i].arcs) {
    const int j = arcs_[a0].head;
    const int a = nodes_[j].parent;
    if (!nodes_[j].is_sink || a == kNone) continue;
    if (arcs_[a0].r_cap > 0.0) set_active(j);
    if (a != kTerminal && a != kOrphan && arcs_[a].head == i) {
      nodes_[j].parent = kOrphan;
      orphans_.push_back(j);
    }
  }
}

double MaxFlowGraph::solve() {
  if (solved_) return flow_;
  solved_ = true;

  for (int i = 0; i < num_nodes(); ++i) {
    Node& n = nodes_[i];
    n.ts = 0;
    if (n.tr_cap > 0.0) {
      n.is_sink = false;
      n.parent = kTerminal;
      n.dist = 1;
      set_active(i);
    } else if (n.tr_cap < 0.0) {
      n.is_sink = true;
      n.parent = kTerminal;
      n.dist = 1;
      set_active(i);
    } else {
      n.parent = kNone;
    }
  }

  int current = kNone;
  while (true) {
    int i = current;
    if (i == kNone || nodes_[i].parent == kNone) {
      i = next_active();
      if (i == kNone) break;
    }
    current = kNone;

    // Grow the tree of i until it touches the other tree.
    int middle = kNone;
    if (!nodes_[i].is_sink) {
      for (int a : nodes_[i].arcs) {
        if (arcs_[a].r_cap <= 0.0) continue;
        const int j = arcs_[a].head;
        Node& nj = nodes_[j];
        if (nj.parent == kNone) {
          nj.is_sink = false;
          nj.parent = arcs_[a].sister;
          nj.ts = nodes_[i].ts;
          nj.dist = nodes_[i].dist + 1;
          set_active(j);
        } else if (nj.is_sink) {
          middle = a;
          break;
        } else if (nj.ts <= nodes_[i].ts && nj.dist > nodes_[i].dist) {
          nj.parent = arcs_[a].sister;
          nj.ts = nodes_[i].ts;
          nj.dist = nodes_[i].dist + 1;
        }
      }
    } else {
      for (int a : nodes_[i].arcs) {
        if (arcs_[arcs_[a].sister].r_cap <= 0.0) continue;
        const int j = arcs_[a].head;
        Node& nj = nodes_[j];
        if (nj.parent == kNone) {
          nj.is_sink = true;
          nj.parent = arcs_[a].sister;
          nj.ts = nodes_[i].ts;
          nj.dist = nodes_[i].dist + 1;
          set_active(j);
        } else if (!nj.is_sink) {
          middle = arcs_[a].sister;
          break;
        } else if (nj.ts <= nodes_[i].ts && nj.dist > nodes_[i].dist) {
          nj.parent = arcs_[a].sister;
          nj.ts = nodes_[i].ts;
          nj.dist = nodes_[i].dist + 1;
        }
      }
    }

    ++time_;
    if (middle == kNone) continue;

    current = i;
    augment(middle);
    while (!orphans_.empty()) {
      const int o = orphans_.front();
      orphans_.pop_front();
      if (nodes_[o].is_sink)
        process_sink_orphan(o);
      else
        process_source_orphan(o);
    }
  }
  return flow_;
}

bool MaxFlowGraph::in_source_segment(int node) const {
  return nodes_[node].parent != kNone && !nodes_[node].is_sink;
}

}  // namespace polycubify
