#include "ucq/analysis.hpp"

#include <algorithm>
#include <set>

#include "ucq/errors.hpp"
#include "ucq/homomorphism.hpp"

namespace ucq {

std::optional<JoinForest> gyo_join_forest(const Structure& s) {
    JoinForest forest;
    for (int sym = 0; sym < s.signature().size(); ++sym)
        for (const auto& t : s.relation(sym)) forest.atoms.push_back({sym, t});

    int m = static_cast<int>(forest.atoms.size());
    forest.parent.assign(m, -1);
    if (m == 0) return forest;  // no atoms: trivially acyclic, empty forest

    std::vector<std::set<ElementId>> vars(m);
    for (int i = 0; i < m; ++i) vars[i] = std::set<ElementId>(forest.atoms[i].vars.begin(),
                                                              forest.atoms[i].vars.end());
    std::vector<int> occ(s.universe_size(), 0);
    for (int i = 0; i < m; ++i)
        for (ElementId v : vars[i]) ++occ[v];

    std::vector<bool> alive(m, true);
    int alive_count = m;
    bool changed = true;
    while (changed && alive_count > 1) {
        changed = false;
        // drop variables private to a single alive atom
        for (int i = 0; i < m; ++i) {
            if (!alive[i]) continue;
            for (auto it = vars[i].begin(); it != vars[i].end();) {
                if (occ[*it] == 1) {
                    occ[*it] = 0;
                    it = vars[i].erase(it);
                    changed = true;
                } else {
                    ++it;
                }
            }
        }
        // absorb an atom whose variables sit inside another alive atom
        for (int i = 0; i < m && alive_count > 1; ++i) {
            if (!alive[i]) continue;
            for (int j = 0; j < m; ++j) {
                if (j == i || !alive[j]) continue;
                if (std::includes(vars[j].begin(), vars[j].end(), vars[i].begin(), vars[i].end())) {
                    forest.parent[i] = j;
                    forest.kill_order.push_back(i);
                    alive[i] = false;
                    --alive_count;
                    for (ElementId v : vars[i]) --occ[v];
                    changed = true;
                    break;
                }
            }
        }
    }
    if (alive_count > 1) return std::nullopt;
    for (int i = 0; i < m; ++i)
        if (alive[i]) forest.root = i;
    return forest;
}

bool is_acyclic(const Structure& s) {
    return gyo_join_forest(s).has_value();
}

GaifmanGraph contract(const ConjunctiveQuery& q) {
    GaifmanGraph g = gaifman_graph(q.body());
    std::vector<int> free_vertices;
    for (ElementId e : q.free_elements()) free_vertices.push_back(static_cast<int>(e));
    std::vector<int> quantified;
    for (ElementId e : q.quantified_elements()) quantified.push_back(static_cast<int>(e));

    GaifmanGraph result = g.induced(free_vertices);
    std::vector<int> position(g.vertex_count(), -1);
    for (size_t i = 0; i < free_vertices.size(); ++i) position[free_vertices[i]] = static_cast<int>(i);

    GaifmanGraph quantified_part = g.induced(quantified);
    std::vector<std::set<int>> adj(result.vertex_count());
    for (size_t i = 0; i < result.adj.size(); ++i)
        adj[i] = std::set<int>(result.adj[i].begin(), result.adj[i].end());
    for (const auto& component : quantified_part.connected_components()) {
        std::set<int> touched;  // free vertices adjacent to this component
        for (int local : component) {
            int y = quantified[local];
            for (int u : g.adj[y])
                if (position[u] >= 0) touched.insert(position[u]);
        }
        for (auto it = touched.begin(); it != touched.end(); ++it)
            for (auto jt = std::next(it); jt != touched.end(); ++jt) {
                adj[*it].insert(*jt);
                adj[*jt].insert(*it);
            }
    }
    for (size_t i = 0; i < adj.size(); ++i) result.adj[i].assign(adj[i].begin(), adj[i].end());
    return result;
}

namespace {

// Pin fixing the free variables pointwise.
PartialMap identity_on_free(const ConjunctiveQuery& q) {
    PartialMap pin(q.body().universe_size(), kNoPin);
    for (ElementId e : q.free_elements()) pin[e] = e;
    return pin;
}

// Searches for an X-fixing endomorphism of q's body that avoids some
// quantified element, i.e. a homomorphism into a proper induced substructure.
std::optional<std::vector<ElementId>> find_nonsurjective_endomorphism(const ConjunctiveQuery& q) {
    const Structure& body = q.body();
    for (ElementId skipped : q.quantified_elements()) {
        std::vector<ElementId> keep;
        for (ElementId e = 0; e < body.universe_size(); ++e)
            if (e != skipped) keep.push_back(e);
        Structure target = induced_substructure(body, keep);
        // ids shift above `skipped`; translate the identity pin on X
        PartialMap pin(body.universe_size(), kNoPin);
        for (ElementId e : q.free_elements()) pin[e] = e < skipped ? e : e - 1;
        auto hom = find_homomorphism(body, target, pin);
        if (!hom) continue;
        // express the map back in body ids
        std::vector<ElementId> endo(body.universe_size());
        for (ElementId e = 0; e < body.universe_size(); ++e) {
            ElementId image = (*hom)[e];
            endo[e] = image < skipped ? image : image + 1;
        }
        return endo;
    }
    return std::nullopt;
}

void check_core_cap(const ConjunctiveQuery& q, const Caps& caps) {
    if (static_cast<int>(q.body().universe_size()) > caps.max_core_universe)
        throw CapExceededError("core universe",
                               std::to_string(q.body().universe_size()) + " elements exceeds cap " +
                                   std::to_string(caps.max_core_universe));
}

}  // namespace

bool is_counting_minimal(const ConjunctiveQuery& q, const Caps& caps) {
    check_core_cap(q, caps);
    if (q.quantifier_free()) return true;
    return !find_nonsurjective_endomorphism(q).has_value();
}

ConjunctiveQuery counting_core(const ConjunctiveQuery& q, const Caps& caps) {
    check_core_cap(q, caps);
    ConjunctiveQuery current = q;
    while (true) {
        if (current.quantifier_free()) return current;
        auto endo = find_nonsurjective_endomorphism(current);
        if (!endo) return current;
        std::set<ElementId> image(endo->begin(), endo->end());
        std::vector<ElementId> keep(image.begin(), image.end());
        Structure restricted = induced_substructure(current.body(), keep);
        std::vector<std::string> free_names = current.free_names();
        current = ConjunctiveQuery::with_free_names(std::move(restricted), free_names);
    }
}

int degree_of_freedom(const ConjunctiveQuery& q) {
    GaifmanGraph g = gaifman_graph(q.body());
    int best = 0;
    for (ElementId y : q.quantified_elements()) {
        int free_neighbors = 0;
        for (int u : g.adj[y])
            if (q.is_free(static_cast<ElementId>(u))) ++free_neighbors;
        best = std::max(best, free_neighbors);
    }
    return best;
}

CqReport classify_cq(const ConjunctiveQuery& q, std::optional<int> bound, const Caps& caps) {
    CqReport report;
    report.bound = bound;
    report.self_join_free = q.body().self_join_free();
    report.degree_of_freedom = degree_of_freedom(q);
    report.acyclic = is_acyclic(q.body());

    auto guarded = [&](const char* field, auto&& compute) {
        try {
            compute();
        } catch (const CapExceededError& e) {
            report.field_errors[field] = e.what();
        }
    };
    guarded("treewidth", [&] {
        report.treewidth = treewidth_exact(gaifman_graph(q.body()), caps.max_universe).width;
    });
    guarded("contract_treewidth", [&] {
        report.contract_treewidth = treewidth_exact(contract(q), caps.max_universe).width;
    });
    guarded("is_minimal", [&] { report.is_minimal = is_counting_minimal(q, caps); });
    guarded("core", [&] { report.core = counting_core(q, caps); });
    if (report.core) {
        guarded("core_treewidth", [&] {
            report.core_treewidth =
                treewidth_exact(gaifman_graph(report.core->body()), caps.max_universe).width;
        });
        guarded("core_contract_treewidth", [&] {
            report.core_contract_treewidth =
                treewidth_exact(contract(*report.core), caps.max_universe).width;
        });
    }
    if (bound && report.core_treewidth && report.core_contract_treewidth) {
        report.classification = (*report.core_treewidth <= *bound &&
                                 *report.core_contract_treewidth <= *bound)
                                    ? Classification::PolyTime
                                    : Classification::Hard;
    }
    return report;
}

}  // namespace ucq
