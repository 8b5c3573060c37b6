#include "hints/maxflow.hpp"

#include <algorithm>
#include <queue>

namespace hints {

int FlowNetwork::add_node() {
    term_src_.push_back(0);
    term_snk_.push_back(0);
    out_.emplace_back();
    return int(term_src_.size()) - 1;
}

void FlowNetwork::add_arc(int u, int v, double cap_uv, double cap_vu) {
    check_node(u);
    check_node(v);
    check_cap(cap_uv);
    check_cap(cap_vu);
    int i = int(arcs_.size());
    arcs_.push_back({v, cap_uv});
    arcs_.push_back({u, cap_vu});
    out_[u].push_back(i);
    out_[v].push_back(i + 1);
    if (cap_uv > 0) original_arcs_.push_back({i, cap_uv});
    if (cap_vu > 0) original_arcs_.push_back({i + 1, cap_vu});
}

void FlowNetwork::add_terminal(int u, double cap_src, double cap_snk) {
    check_node(u);
    check_cap(cap_src);
    check_cap(cap_snk);
    term_src_[u] += cap_src;  // inf + x saturates to inf
    term_snk_[u] += cap_snk;
}

double FlowNetwork::cut_cost(const std::vector<Side>& side) const {
    if (int(side.size()) != num_nodes()) throw ValidationError("side assignment size mismatch");
    double cut = 0;
    for (auto [ai, cap] : original_arcs_) {
        int from = arcs_[ai ^ 1].to;
        int to = arcs_[ai].to;
        if (side[from] == Side::Source && side[to] == Side::Sink) cut += cap;
    }
    for (int u = 0; u < num_nodes(); ++u) {
        if (side[u] == Side::Sink) cut += term_src_[u];
        if (side[u] == Side::Source) cut += term_snk_[u];
    }
    return cut;
}

int FlowNetwork::infinite_arc_count() const {
    int n = 0;
    for (auto [ai, cap] : original_arcs_)
        if (cap == kInf) n++;
    return n;
}

CutResult FlowNetwork::solve() const {
    const int n = num_nodes();
    const int s = n, t = n + 1;

    // Materialize terminal arcs so Dinic runs on one homogeneous arc list.
    std::vector<std::vector<int>> out = out_;
    std::vector<Arc> arcs = arcs_;
    out.resize(n + 2);
    auto add = [&](int u, int v, double cap) {
        int i = int(arcs.size());
        arcs.push_back({v, cap});
        arcs.push_back({u, 0.0});
        out[u].push_back(i);
        out[v].push_back(i + 1);
    };
    for (int u = 0; u < n; ++u) {
        if (term_src_[u] > 0) add(s, u, term_src_[u]);
        if (term_snk_[u] > 0) add(u, t, term_snk_[u]);
    }

    std::vector<int> level(n + 2), it(n + 2);
    auto bfs = [&]() {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> bq;
        bq.push(s);
        level[s] = 0;
        while (!bq.empty()) {
            int u = bq.front();
            bq.pop();
            for (int ai : out[u]) {
                const Arc& a = arcs[ai];
                if (a.cap > 0 && level[a.to] < 0) {
                    level[a.to] = level[u] + 1;
                    bq.push(a.to);
                }
            }
        }
        return level[t] >= 0;
    };

    std::vector<int> path_arc;
    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        while (true) {
            // Walk a shortest augmenting path with per-node arc cursors.
            path_arc.clear();
            int u = s;
            bool reached = false;
            while (true) {
                if (u == t) {
                    reached = true;
                    break;
                }
                if (it[u] < int(out[u].size())) {
                    int ai = out[u][it[u]];
                    const Arc& a = arcs[ai];
                    if (a.cap > 0 && level[a.to] == level[u] + 1) {
                        path_arc.push_back(ai);
                        u = a.to;
                    } else {
                        ++it[u];
                    }
                } else {
                    if (u == s) break;
                    level[u] = -1;  // dead end this phase
                    int ai = path_arc.back();
                    path_arc.pop_back();
                    u = arcs[ai ^ 1].to;
                    ++it[u];
                }
            }
            if (!reached) break;
            double aug = kInf;
            for (int ai : path_arc) aug = std::min(aug, arcs[ai].cap);
            if (aug == kInf)
                throw InfeasibleError("no finite cut: all-infinite augmenting path");
            for (int ai : path_arc) {
                arcs[ai].cap -= aug;
                arcs[ai ^ 1].cap += aug;
            }
        }
    }

    // Residual reachability from s defines the cut sides.
    std::vector<char> reach(n + 2, 0);
    {
        std::queue<int> bq;
        bq.push(s);
        reach[s] = 1;
        while (!bq.empty()) {
            int u = bq.front();
            bq.pop();
            for (int ai : out[u]) {
                const Arc& a = arcs[ai];
                if (a.cap > 0 && !reach[a.to]) {
                    reach[a.to] = 1;
                    bq.push(a.to);
                }
            }
        }
    }

    CutResult r;
    r.side.resize(n);
    for (int u = 0; u < n; ++u) r.side[u] = reach[u] ? Side::Source : Side::Sink;

    // Price the reported cut from the original capacities; this is exactly
    // the severed-arc total promised by the result invariants.
    double cut = 0;
    for (auto [ai, cap] : original_arcs_) {
        int from = arcs_[ai ^ 1].to;
        int to = arcs_[ai].to;
        if (reach[from] && !reach[to]) cut += cap;
    }
    for (int u = 0; u < n; ++u) {
        if (!reach[u] && term_src_[u] > 0) cut += term_src_[u];
        if (reach[u] && term_snk_[u] > 0) cut += term_snk_[u];
    }
    if (cut == kInf) throw InfeasibleError("no finite cut: infinite arc crosses the reported cut");
    r.flow = cut;
    return r;
}

}  // namespace hints
