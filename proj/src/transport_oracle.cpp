#include "trajlabel/transport_oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace trajlabel {

namespace {

// Minimal successive-shortest-paths min-cost-flow tailored to the dense
// bipartite transport graph. Node layout: source, T row nodes, T_e column
// nodes, sink. Arc costs are integers so every Bellman-Ford relaxation is
// exact: with double costs the +c / -c residual pairs accumulate rounding
// error into phantom negative cycles, and the predecessor chain can loop.
struct Arc {
  int to;
  int rev;       // index of the reverse arc in graph[to]
  long long cap;
  long long cost;
};

constexpr long long kUnreachable = std::numeric_limits<long long>::max();

class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes) : graph_(nodes) {}

  void add_arc(int from, int to, long long cap, long long cost) {
    graph_[from].push_back(
        {to, static_cast<int>(graph_[to].size()), cap, cost});
    graph_[to].push_back(
        {from, static_cast<int>(graph_[from].size()) - 1, 0, -cost});
  }

  // Pushes `amount` units from source to sink along successively cheapest
  // residual paths. Returns false if the flow cannot be routed.
  bool run(int source, int sink, long long amount) {
    while (amount > 0) {
      const int n = static_cast<int>(graph_.size());
      std::vector<long long> dist(n, kUnreachable);
      std::vector<int> prev_node(n, -1);
      std::vector<int> prev_arc(n, -1);
      dist[source] = 0;
      // Bellman-Ford; the residual graph has no negative cycles because
      // reverse arcs only open along an optimal forward flow, and integer
      // arithmetic keeps that invariant exact.
      for (int pass = 0; pass < n; ++pass) {
        bool changed = false;
        for (int u = 0; u < n; ++u) {
          if (dist[u] == kUnreachable) continue;
          for (int k = 0; k < static_cast<int>(graph_[u].size()); ++k) {
            const Arc& arc = graph_[u][k];
            if (arc.cap <= 0) continue;
            const long long cand = dist[u] + arc.cost;
            if (cand < dist[arc.to]) {
              dist[arc.to] = cand;
              prev_node[arc.to] = u;
              prev_arc[arc.to] = k;
              changed = true;
            }
          }
        }
        if (!changed) break;
      }
      if (dist[sink] == kUnreachable) return false;

      long long push = amount;
      for (int v = sink; v != source; v = prev_node[v]) {
        push = std::min(push, graph_[prev_node[v]][prev_arc[v]].cap);
      }
      for (int v = sink; v != source; v = prev_node[v]) {
        Arc& arc = graph_[prev_node[v]][prev_arc[v]];
        arc.cap -= push;
        graph_[arc.to][arc.rev].cap += push;
      }
      amount -= push;
    }
    return true;
  }

  const std::vector<std::vector<Arc>>& graph() const { return graph_; }

 private:
  std::vector<std::vector<Arc>> graph_;
};

}  // namespace

ExactTransport exact_transport(const Matrix& cost) {
  const Index t = cost.rows();
  const Index te = cost.cols();
  if (t < 1 || te < 1) {
    throw std::invalid_argument("cost matrix must be non-empty");
  }
  if (t * te > 64) {
    throw std::invalid_argument(
        "exact_transport is limited to rows * cols <= 64 (got " +
        std::to_string(t * te) + ")");
  }
  if (!cost.allFinite()) {
    throw std::invalid_argument("cost matrix contains non-finite entries");
  }

  // Scaling the uniform marginals by t * te makes every supply and demand an
  // integer: each of the t rows supplies te units, each of the te columns
  // demands t units. Costs are snapped to a 2^-44 grid (relative error about
  // 6e-14 of the largest entry, far below any tolerance this oracle backs) so
  // the flow solver works in exact integer arithmetic.
  const double magnitude = cost.cwiseAbs().maxCoeff();
  const double scale =
      magnitude > 0.0 ? std::ldexp(1.0, 44) / magnitude : 1.0;
  const int source = 0;
  const int sink = static_cast<int>(t + te) + 1;
  MinCostFlow flow(static_cast<int>(t + te) + 2);
  for (Index i = 0; i < t; ++i) {
    flow.add_arc(source, 1 + static_cast<int>(i), te, 0);
  }
  for (Index j = 0; j < te; ++j) {
    flow.add_arc(1 + static_cast<int>(t + j), sink, t, 0);
  }
  for (Index i = 0; i < t; ++i) {
    for (Index j = 0; j < te; ++j) {
      flow.add_arc(1 + static_cast<int>(i), 1 + static_cast<int>(t + j),
                   te, std::llround(cost(i, j) * scale));
    }
  }

  if (!flow.run(source, sink, t * te)) {
    throw SolverError("transport flow could not be routed", 0.0, 0);
  }

  const double unit = 1.0 / static_cast<double>(t * te);
  ExactTransport result;
  result.plan = Matrix::Zero(t, te);
  for (Index i = 0; i < t; ++i) {
    for (const Arc& arc : flow.graph()[1 + static_cast<int>(i)]) {
      if (arc.to >= 1 + static_cast<int>(t) && arc.to < sink) {
        const long long sent = te - arc.cap;
        if (sent > 0) {
          const Index j = static_cast<Index>(arc.to) - 1 - t;
          result.plan(i, j) = static_cast<double>(sent) * unit;
        }
      }
    }
  }
  result.cost = (cost.array() * result.plan.array()).sum();
  return result;
}

}  // namespace trajlabel
