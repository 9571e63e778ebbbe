#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

namespace holocode {

// Dinic max-flow on a small integer-capacity graph.
class MaxFlow {
  public:
    explicit MaxFlow(size_t nodes) : adj_(nodes) {}

    void add_edge(size_t u, size_t v, uint64_t cap) {
        if (u >= adj_.size() || v >= adj_.size()) {
            throw std::invalid_argument("MaxFlow: node out of range");
        }
        adj_[u].push_back({v, cap, adj_[v].size()});
        adj_[v].push_back({u, 0, adj_[u].size() - 1});
    }

    void add_undirected_edge(size_t u, size_t v, uint64_t cap) {
        if (u >= adj_.size() || v >= adj_.size()) {
            throw std::invalid_argument("MaxFlow: node out of range");
        }
        adj_[u].push_back({v, cap, adj_[v].size()});
        adj_[v].push_back({u, cap, adj_[u].size() - 1});
    }

    uint64_t max_flow(size_t s, size_t t) {
        uint64_t flow = 0;
        while (bfs(s, t)) {
            iter_.assign(adj_.size(), 0);
            for (;;) {
                uint64_t f = dfs(s, t, UINT64_MAX);
                if (f == 0) break;
                flow += f;
            }
        }
        return flow;
    }

  private:
    struct Edge {
        size_t to;
        uint64_t cap;
        size_t rev;
    };
    std::vector<std::vector<Edge>> adj_;
    std::vector<int> level_;
    std::vector<size_t> iter_;

    bool bfs(size_t s, size_t t) {
        level_.assign(adj_.size(), -1);
        std::queue<size_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            size_t u = q.front();
            q.pop();
            for (const auto& e : adj_[u]) {
                if (e.cap > 0 && level_[e.to] < 0) {
                    level_[e.to] = level_[u] + 1;
                    q.push(e.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    uint64_t dfs(size_t u, size_t t, uint64_t limit) {
        if (u == t) return limit;
        for (size_t& i = iter_[u]; i < adj_[u].size(); i++) {
            Edge& e = adj_[u][i];
            if (e.cap == 0 || level_[e.to] != level_[u] + 1) continue;
            uint64_t f = dfs(e.to, t, limit < e.cap ? limit : e.cap);
            if (f > 0) {
                e.cap -= f;
                adj_[e.to][e.rev].cap += f;
                return f;
            }
        }
        return 0;
    }
};

}  // namespace holocode
