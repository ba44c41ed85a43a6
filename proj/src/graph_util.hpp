#pragma once

#include <algorithm>
#include <vector>

#include "doomsday/arena.hpp"

namespace doomsday {

struct SccResult {
  std::vector<int> comp;  // -1 for vertices outside the carrier
  int count = 0;
};

/// Tarjan over the given adjacency, restricted to `carrier`.
inline SccResult scc_decompose(const std::vector<std::vector<int>>& succ,
                               const Region& carrier) {
  const int n = static_cast<int>(succ.size());
  SccResult res;
  res.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0;
  struct Frame {
    int v;
    size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (!carrier.test(root) || index[root] >= 0)
      continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& f = call.back();
      if (f.edge < succ[f.v].size()) {
        int w = succ[f.v][f.edge++];
        if (!carrier.test(w))
          continue;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            res.comp[w] = res.count;
            if (w == v)
              break;
          }
          ++res.count;
        }
      }
    }
  }
  return res;
}

/// Shortest path src -> dst inside `allowed`; empty when unreachable.
/// Returns [src] when src == dst.
inline std::vector<int> bfs_path(const std::vector<std::vector<int>>& succ,
                                 const Region& allowed, int src, int dst) {
  if (!allowed.test(src))
    return {};
  if (src == dst)
    return {src};
  const int n = static_cast<int>(succ.size());
  std::vector<int> parent(n, -2);
  parent[src] = -1;
  std::vector<int> queue{src};
  for (size_t q = 0; q < queue.size(); ++q) {
    int v = queue[q];
    for (int w : succ[v]) {
      if (!allowed.test(w) || parent[w] != -2)
        continue;
      parent[w] = v;
      if (w == dst) {
        std::vector<int> path{dst};
        for (int x = v; x != -1; x = parent[x])
          path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return {};
}

/// Forward-reachable set from src inside `allowed`.
inline Region reachable_from(const std::vector<std::vector<int>>& succ,
                             const Region& allowed, int src) {
  Region seen(allowed.size());
  if (!allowed.test(src))
    return seen;
  seen.set(src);
  std::vector<int> queue{src};
  for (size_t q = 0; q < queue.size(); ++q)
    for (int w : succ[queue[q]])
      if (allowed.test(w) && !seen.test(w)) {
        seen.set(w);
        queue.push_back(w);
      }
  return seen;
}

/// True if v lies on a cycle of the subgraph induced by `allowed`
/// (nontrivial SCC membership or a self-loop).
inline bool on_cycle(const std::vector<std::vector<int>>& succ,
                     const Region& allowed, const SccResult& sccs, int v) {
  if (!allowed.test(v) || sccs.comp[v] < 0)
    return false;
  for (int w : succ[v])
    if (allowed.test(w) && (w == v || sccs.comp[w] == sccs.comp[v]))
      return true;
  return false;
}

} // namespace doomsday
