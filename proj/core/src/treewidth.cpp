#include "ucq/treewidth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <set>

#include "ucq/errors.hpp"

namespace ucq {

int TreeDecomposition::width() const {
    size_t max_bag = 1;  // empty decomposition reports 0
    for (const auto& b : bags) max_bag = std::max(max_bag, b.size());
    return static_cast<int>(max_bag) - 1;
}

namespace {

// Vertices reachable from v through S, as a mask (v included).
uint32_t reach_through(const std::vector<uint32_t>& adj, uint32_t s_mask, int v) {
    uint32_t reached = 1u << v;
    while (true) {
        uint32_t frontier = 0;
        for (uint32_t m = reached; m != 0; m &= m - 1)
            frontier |= adj[std::countr_zero(m)];
        uint32_t grown = reached | (frontier & s_mask);
        if (grown == reached) return reached;
        reached = grown;
    }
}

TreeDecomposition decomposition_from_order(const GaifmanGraph& g, const std::vector<int>& order) {
    int n = g.vertex_count();
    std::vector<std::set<int>> fill(n);
    for (int u = 0; u < n; ++u) fill[u] = std::set<int>(g.adj[u].begin(), g.adj[u].end());
    std::vector<int> when(n);
    for (int i = 0; i < n; ++i) when[order[i]] = i;

    TreeDecomposition td;
    td.parent.assign(n, -1);
    td.bags.resize(n);
    // eliminate in order, recording bag = {v} + later neighbors, and turning
    // the later neighbors into a clique
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> later;
        for (int u : fill[v])
            if (when[u] > i) later.push_back(u);
        td.bags[i] = later;
        td.bags[i].push_back(v);
        std::sort(td.bags[i].begin(), td.bags[i].end());
        for (size_t a = 0; a < later.size(); ++a)
            for (size_t b = a + 1; b < later.size(); ++b) {
                fill[later[a]].insert(later[b]);
                fill[later[b]].insert(later[a]);
            }
        if (!later.empty()) {
            int next = n;
            for (int u : later) next = std::min(next, when[u]);
            td.parent[i] = next;
        }
    }
    // several roots appear for disconnected graphs; chain them so T is a tree
    int first_root = -1;
    for (int i = n - 1; i >= 0; --i) {
        if (td.parent[i] != -1) continue;
        if (first_root == -1)
            first_root = i;
        else
            td.parent[i] = first_root;
    }
    return td;
}

}  // namespace

TreewidthResult treewidth_exact(const GaifmanGraph& g, int cap) {
    int n = g.vertex_count();
    if (n > cap)
        throw CapExceededError("treewidth exact",
                               std::to_string(n) + " vertices exceeds cap " + std::to_string(cap));
    if (n == 0) return {0, {}};
    if (n > 26) throw CapExceededError("treewidth exact", "hard limit of 26 vertices");

    std::vector<uint32_t> adj(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v : g.adj[u]) adj[u] |= 1u << v;

    // opt[S] = best over orders eliminating exactly S first of the max
    // eliminated back-degree; q(S\v, v) counts v's neighbors outside S
    // reachable through S\v.
    size_t states = size_t(1) << n;
    std::vector<int8_t> opt(states, 0);
    std::vector<int8_t> choice(states, -1);
    for (uint32_t s = 1; s < states; ++s) {
        int best = 127;
        int best_v = -1;
        for (uint32_t m = s; m != 0; m &= m - 1) {
            int v = std::countr_zero(m);
            uint32_t rest = s & ~(1u << v);
            uint32_t reached = reach_through(adj, rest, v);
            uint32_t boundary = 0;
            for (uint32_t r = reached; r != 0; r &= r - 1)
                boundary |= adj[std::countr_zero(r)];
            int q = std::popcount(boundary & ~s & ~(1u << v));
            int value = std::max<int>(opt[rest], q);
            if (value < best) {
                best = value;
                best_v = v;
            }
        }
        opt[s] = static_cast<int8_t>(best);
        choice[s] = static_cast<int8_t>(best_v);
    }

    std::vector<int> order(n);
    uint32_t s = static_cast<uint32_t>(states - 1);
    for (int i = n - 1; i >= 0; --i) {
        int v = choice[s];
        order[i] = v;
        s &= ~(1u << v);
    }

    TreewidthResult result;
    result.width = opt[states - 1];
    result.decomposition = decomposition_from_order(g, order);
    return result;
}

std::pair<int, int> treewidth_bounds(const GaifmanGraph& g) {
    int n = g.vertex_count();
    if (n == 0) return {0, 0};

    // lower: max over the peeling process of the minimum degree (degeneracy)
    std::vector<std::set<int>> adj(n);
    for (int u = 0; u < n; ++u) adj[u] = std::set<int>(g.adj[u].begin(), g.adj[u].end());
    std::vector<bool> gone(n, false);
    int lower = 0;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int u = 0; u < n; ++u)
            if (!gone[u] && (best < 0 || adj[u].size() < adj[best].size())) best = u;
        lower = std::max(lower, static_cast<int>(adj[best].size()));
        gone[best] = true;
        for (int v : adj[best]) adj[v].erase(best);
        adj[best].clear();
    }

    // upper: min-fill elimination, width = max eliminated degree
    for (int u = 0; u < n; ++u) adj[u] = std::set<int>(g.adj[u].begin(), g.adj[u].end());
    gone.assign(n, false);
    int upper = 0;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_fill = -1;
        for (int u = 0; u < n; ++u) {
            if (gone[u]) continue;
            long missing = 0;
            for (auto it = adj[u].begin(); it != adj[u].end(); ++it)
                for (auto jt = std::next(it); jt != adj[u].end(); ++jt)
                    if (!adj[*it].count(*jt)) ++missing;
            if (best < 0 || missing < best_fill ||
                (missing == best_fill && adj[u].size() < adj[best].size())) {
                best = u;
                best_fill = missing;
            }
        }
        upper = std::max(upper, static_cast<int>(adj[best].size()));
        std::vector<int> neighbors(adj[best].begin(), adj[best].end());
        for (size_t a = 0; a < neighbors.size(); ++a)
            for (size_t b = a + 1; b < neighbors.size(); ++b) {
                adj[neighbors[a]].insert(neighbors[b]);
                adj[neighbors[b]].insert(neighbors[a]);
            }
        gone[best] = true;
        for (int v : neighbors) adj[v].erase(best);
        adj[best].clear();
    }
    return {lower, upper};
}

bool validate_decomposition(const GaifmanGraph& g, const TreeDecomposition& td, std::string* why) {
    auto fail = [&](const std::string& message) {
        if (why) *why = message;
        return false;
    };
    int n = g.vertex_count();
    int m = static_cast<int>(td.bags.size());
    if (td.parent.size() != td.bags.size()) return fail("parent/bag size mismatch");
    if (n == 0) return m == 0 ? true : fail("empty graph needs an empty decomposition");
    if (m == 0) return fail("no bags");

    // exactly one root, parent links acyclic
    int roots = 0;
    for (int i = 0; i < m; ++i) {
        if (td.parent[i] == -1) ++roots;
        else if (td.parent[i] < 0 || td.parent[i] >= m) return fail("parent out of range");
    }
    if (roots != 1) return fail("tree must have exactly one root");
    for (int i = 0; i < m; ++i) {
        int hops = 0;
        for (int j = i; j != -1; j = td.parent[j])
            if (++hops > m) return fail("parent links contain a cycle");
    }

    // (C1) every vertex in some bag
    std::vector<bool> covered(n, false);
    for (const auto& bag : td.bags)
        for (int v : bag) {
            if (v < 0 || v >= n) return fail("bag contains unknown vertex");
            covered[v] = true;
        }
    for (int v = 0; v < n; ++v)
        if (!covered[v]) return fail("(C1) vertex " + std::to_string(v) + " in no bag");

    // (C2) every edge inside some bag
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (const auto& bag : td.bags)
            if (std::binary_search(bag.begin(), bag.end(), u) &&
                std::binary_search(bag.begin(), bag.end(), v)) {
                found = true;
                break;
            }
        if (!found)
            return fail("(C2) edge {" + std::to_string(u) + "," + std::to_string(v) + "} in no bag");
    }

    // (C3) the bags containing v induce a connected subtree
    std::vector<std::vector<int>> children(m);
    for (int i = 0; i < m; ++i)
        if (td.parent[i] >= 0) children[td.parent[i]].push_back(i);
    for (int v = 0; v < n; ++v) {
        std::vector<int> holding;
        for (int i = 0; i < m; ++i)
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) holding.push_back(i);
        if (holding.empty()) continue;
        std::set<int> holding_set(holding.begin(), holding.end());
        std::set<int> seen;
        std::queue<int> queue;
        queue.push(holding[0]);
        seen.insert(holding[0]);
        while (!queue.empty()) {
            int i = queue.front();
            queue.pop();
            std::vector<int> near = children[i];
            if (td.parent[i] >= 0) near.push_back(td.parent[i]);
            for (int j : near)
                if (holding_set.count(j) && !seen.count(j)) {
                    seen.insert(j);
                    queue.push(j);
                }
        }
        if (seen.size() != holding_set.size())
            return fail("(C3) bags holding vertex " + std::to_string(v) + " are disconnected");
    }
    return true;
}

}  // namespace ucq
