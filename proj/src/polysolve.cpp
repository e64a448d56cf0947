#include "lexmatch/polysolve.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace lexmatch {

namespace {

void require_bipartite(const Instance& inst, const char* who) {
    if (inst.kind() != Kind::Bipartite)
        throw std::invalid_argument(std::string(who) + " needs a bipartite instance");
}

// Plain Dinic's algorithm; sizes here are tiny, so no scaling.
struct FlowNet {
    struct Arc {
        int to, cap;
    };
    std::vector<Arc> arcs;                // arc i and i^1 are a residual pair
    std::vector<std::vector<int>> at;     // node -> arc indices
    std::vector<int> level, it;

    explicit FlowNet(int nodes) : at(nodes), level(nodes), it(nodes) {}

    void add(int from, int to, int cap) {
        at[from].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({to, cap});
        at[to].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({from, 0});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int ai : at[v])
                if (arcs[ai].cap > 0 && level[arcs[ai].to] < 0) {
                    level[arcs[ai].to] = level[v] + 1;
                    q.push(arcs[ai].to);
                }
        }
        return level[t] >= 0;
    }

    int dfs(int v, int t, int pushed) {
        if (v == t) return pushed;
        for (int& i = it[v]; i < static_cast<int>(at[v].size()); ++i) {
            const int ai = at[v][i];
            if (arcs[ai].cap <= 0 || level[arcs[ai].to] != level[v] + 1) continue;
            if (const int got = dfs(arcs[ai].to, t, std::min(pushed, arcs[ai].cap))) {
                arcs[ai].cap -= got;
                arcs[ai ^ 1].cap += got;
                return got;
            }
        }
        return 0;
    }

    int max_flow(int s, int t) {
        int flow = 0;
        while (bfs(s, t)) {
            std::fill(it.begin(), it.end(), 0);
            while (const int got = dfs(s, t, 1 << 30)) flow += got;
        }
        return flow;
    }
};

}  // namespace

Matching deferred_acceptance(const Instance& inst, Side proposing) {
    require_bipartite(inst, "deferred_acceptance");
    const int n = inst.n();
    std::vector<std::vector<AgentId>> held(n);  // per receiving agent
    std::vector<int> held_by(n, 0);             // per proposing agent
    std::vector<int> next(n, 0);

    auto worst_held = [&](AgentId w) {
        AgentId worst = held[w].front();
        for (AgentId x : held[w])
            if (inst.rank(w, x) > inst.rank(w, worst)) worst = x;
        return worst;
    };

    for (;;) {
        AgentId a = -1;
        for (AgentId v = 0; v < n && a < 0; ++v)
            if (inst.side(v) == proposing && held_by[v] < inst.cap(v) &&
                next[v] < static_cast<int>(inst.prefs(v).size()))
                a = v;
        if (a < 0) break;

        const AgentId w = inst.prefs(a)[next[a]++];
        if (static_cast<int>(held[w].size()) < inst.cap(w)) {
            held[w].push_back(a);
            ++held_by[a];
        } else if (!held[w].empty()) {
            const AgentId x = worst_held(w);
            if (inst.rank(w, a) < inst.rank(w, x)) {
                held[w].erase(std::find(held[w].begin(), held[w].end(), x));
                --held_by[x];
                held[w].push_back(a);
                ++held_by[a];
            }
        }
    }

    std::vector<Edge> edges;
    for (AgentId w = 0; w < n; ++w)
        for (AgentId a : held[w]) edges.push_back(make_edge(a, w));
    return Matching(n, std::move(edges));
}

int max_matching_size(const Instance& inst, const std::vector<Edge>& forced) {
    require_bipartite(inst, "max_matching_size");
    const int n = inst.n();

    std::vector<int> residual(n);
    for (AgentId a = 0; a < n; ++a) residual[a] = inst.cap(a);
    std::vector<char> is_forced(inst.edges().size(), 0);
    for (std::size_t i = 0; i < forced.size(); ++i) {
        const int ei = inst.edge_index(forced[i]);
        if (ei < 0) throw std::invalid_argument("forced edge outside the instance");
        if (is_forced[ei]) throw std::invalid_argument("duplicate forced edge");
        is_forced[ei] = 1;
        if (--residual[forced[i].u] < 0 || --residual[forced[i].v] < 0)
            throw std::invalid_argument("forced set violates a capacity");
    }

    // source = n, sink = n+1; side A feeds from the source.
    FlowNet net(n + 2);
    for (AgentId a = 0; a < n; ++a) {
        if (residual[a] <= 0) continue;
        if (inst.side(a) == Side::A)
            net.add(n, a, residual[a]);
        else
            net.add(a, n + 1, residual[a]);
    }
    for (std::size_t ei = 0; ei < inst.edges().size(); ++ei) {
        if (is_forced[ei]) continue;
        const Edge e = inst.edges()[ei];
        const AgentId from = inst.side(e.u) == Side::A ? e.u : e.v;
        const AgentId to = from == e.u ? e.v : e.u;
        net.add(from, to, 1);
    }
    return static_cast<int>(forced.size()) + net.max_flow(n, n + 1);
}

Matching solve_pareto_max(const Instance& inst, Side proposing) {
    require_bipartite(inst, "solve_pareto_max");
    const int best = max_matching_size(inst, {});

    std::vector<Edge> committed;
    std::vector<int> deg(inst.n(), 0);
    for (AgentId u = 0; u < inst.n(); ++u) {
        if (inst.side(u) != proposing) continue;
        for (AgentId w : inst.prefs(u)) {
            if (deg[u] == inst.cap(u)) break;
            if (deg[w] == inst.cap(w)) continue;
            committed.push_back(make_edge(u, w));
            if (max_matching_size(inst, committed) == best) {
                ++deg[u];
                ++deg[w];
            } else {
                committed.pop_back();
            }
        }
    }
    return Matching(inst.n(), std::move(committed));
}

}  // namespace lexmatch
