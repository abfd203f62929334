#ifndef SIS_MAXFLOW_HPP
#define SIS_MAXFLOW_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace sis {

/// Dinic's blocking-flow max-flow on a residual graph with paired arcs.
///
/// `Cap` is an integer or floating type. For floating capacities an arc
/// counts as residual only while its remaining capacity exceeds `epsilon`,
/// which makes termination and the extracted cut robust to round-off.
template <class Cap>
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t node_count, Cap epsilon = Cap{0})
      : head_(node_count, kNone), level_(node_count), cursor_(node_count), epsilon_(epsilon) {}

  std::size_t node_count() const { return head_.size(); }

  /// Adds u->v with capacity `cap` and v->u with `reverse_cap`.
  void add_edge(std::size_t u, std::size_t v, Cap cap, Cap reverse_cap = Cap{0}) {
    if (u >= node_count() || v >= node_count()) throw std::out_of_range("arc endpoint");
    if (cap < Cap{0} || reverse_cap < Cap{0}) throw std::invalid_argument("negative capacity");
    arcs_.push_back({v, head_[u], cap});
    head_[u] = arcs_.size() - 1;
    arcs_.push_back({u, head_[v], reverse_cap});
    head_[v] = arcs_.size() - 1;
  }

  Cap solve(std::size_t source, std::size_t sink) {
    if (source == sink) throw std::invalid_argument("source equals sink");
    Cap total{0};
    while (build_levels(source, sink)) {
      std::copy(head_.begin(), head_.end(), cursor_.begin());
      while (true) {
        const Cap pushed = augment(source, sink, std::numeric_limits<Cap>::max());
        if (!(pushed > epsilon_)) break;
        total += pushed;
      }
    }
    return total;
  }

  /// Nodes reachable from `source` in the residual graph. After solve() this
  /// is the source side of the minimal minimum cut.
  std::vector<bool> reachable_from(std::size_t source) const {
    std::vector<bool> seen(node_count(), false);
    std::vector<std::size_t> stack{source};
    seen[source] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t a = head_[u]; a != kNone; a = arcs_[a].next) {
        const std::size_t v = arcs_[a].to;
        if (!seen[v] && arcs_[a].cap > epsilon_) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return seen;
  }

  /// Nodes that can still reach `sink` in the residual graph. After solve()
  /// the complement is the source side of the maximal minimum cut.
  std::vector<bool> reaching(std::size_t sink) const {
    std::vector<bool> seen(node_count(), false);
    std::vector<std::size_t> stack{sink};
    seen[sink] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      // Arc a = (u -> v) is the partner of the arc stored at v.
      for (std::size_t b = head_[v]; b != kNone; b = arcs_[b].next) {
        const std::size_t u = arcs_[b].to;
        if (!seen[u] && arcs_[b ^ 1].cap > epsilon_) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    return seen;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  struct Arc {
    std::size_t to;
    std::size_t next;
    Cap cap;
  };

  bool build_levels(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t a = head_[u]; a != kNone; a = arcs_[a].next) {
        const std::size_t v = arcs_[a].to;
        if (level_[v] < 0 && arcs_[a].cap > epsilon_) {
          level_[v] = level_[u] + 1;
          queue.push(v);
        }
      }
    }
    return level_[sink] >= 0;
  }

  Cap augment(std::size_t u, std::size_t sink, Cap limit) {
    if (u == sink) return limit;
    for (std::size_t& a = cursor_[u]; a != kNone; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.cap > epsilon_ && level_[arc.to] == level_[u] + 1) {
        const Cap pushed = augment(arc.to, sink, std::min(limit, arc.cap));
        if (pushed > epsilon_) {
          arc.cap -= pushed;
          arcs_[a ^ 1].cap += pushed;
          return pushed;
        }
      }
    }
    return Cap{0};
  }

  std::vector<Arc> arcs_;
  std::vector<std::size_t> head_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  Cap epsilon_;
};

}  // namespace sis

#endif
