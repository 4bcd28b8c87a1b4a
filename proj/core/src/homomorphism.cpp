#include "ucq/homomorphism.hpp"

#include <algorithm>
#include <unordered_set>

namespace ucq {

namespace {

struct TupleHash {
    size_t operator()(const Tuple& t) const {
        size_t seed = t.size();
        for (ElementId e : t) seed ^= e + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
        return seed;
    }
};

// Backtracking search state over src variables.
struct Search {
    const Structure& src;
    const Structure& dst;
    std::vector<int> sym_map;                                   // src symbol -> dst symbol
    std::vector<std::unordered_set<Tuple, TupleHash>> dst_sets; // per src symbol
    std::vector<std::vector<ElementId>> domains;                // per src element
    std::vector<ElementId> order;                               // assignment order
    // tuples (sym, tuple index) that become fully assigned at a given order position
    std::vector<std::vector<std::pair<int, int>>> due;
    PartialMap assignment;

    Search(const Structure& s, const Structure& d, const PartialMap& pin) : src(s), dst(d) {
        if (!dst.signature().contains(src.signature()))
            throw SignatureMismatchError("homomorphism source signature must be contained in destination signature");
        int nsym = src.signature().size();
        sym_map.resize(nsym);
        dst_sets.resize(nsym);
        for (int sym = 0; sym < nsym; ++sym) {
            sym_map[sym] = dst.signature().index_of(src.signature().symbol(sym).name);
            for (const auto& t : dst.relation(sym_map[sym])) dst_sets[sym].insert(t);
        }

        size_t n = src.universe_size();
        assignment.assign(n, kNoPin);
        if (!pin.empty()) {
            if (pin.size() != n) throw PreconditionError("pin size must match the source universe");
            for (size_t e = 0; e < n; ++e) {
                if (pin[e] == kNoPin) continue;
                if (pin[e] >= dst.universe_size())
                    throw PreconditionError("pin maps outside the destination universe");
                assignment[e] = pin[e];
            }
        }

        // candidate domain per element: intersection over (symbol, position)
        // occurrences of the dst elements seen at that position
        std::vector<std::vector<std::vector<bool>>> position_support(nsym);
        for (int sym = 0; sym < nsym; ++sym) {
            int arity = src.signature().arity(sym);
            position_support[sym].assign(arity, std::vector<bool>(dst.universe_size(), false));
            for (const auto& t : dst.relation(sym_map[sym]))
                for (int p = 0; p < arity; ++p) position_support[sym][p][t[p]] = true;
        }
        std::vector<std::vector<bool>> allowed(n, std::vector<bool>(dst.universe_size(), true));
        std::vector<bool> constrained(n, false);
        for (int sym = 0; sym < nsym; ++sym) {
            int arity = src.signature().arity(sym);
            for (const auto& t : src.relation(sym))
                for (int p = 0; p < arity; ++p) {
                    constrained[t[p]] = true;
                    for (size_t v = 0; v < dst.universe_size(); ++v)
                        if (!position_support[sym][p][v]) allowed[t[p]][v] = false;
                }
        }
        domains.resize(n);
        for (size_t e = 0; e < n; ++e) {
            if (assignment[e] != kNoPin) continue;
            if (!constrained[e]) {
                for (ElementId v = 0; v < dst.universe_size(); ++v) domains[e].push_back(v);
            } else {
                for (ElementId v = 0; v < dst.universe_size(); ++v)
                    if (allowed[e][v]) domains[e].push_back(v);
            }
        }

        // smallest-domain-first, ties by element id
        for (ElementId e = 0; e < n; ++e)
            if (assignment[e] == kNoPin) order.push_back(e);
        std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
            return domains[a].size() < domains[b].size();
        });

        // position of each element in the assignment order; pinned = -1 (already set)
        std::vector<int> pos(n, -1);
        for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
        due.resize(order.size());
        std::vector<std::pair<int, int>> immediately_due;
        for (int sym = 0; sym < nsym; ++sym) {
            const auto& rel = src.relation(sym);
            for (int ti = 0; ti < static_cast<int>(rel.size()); ++ti) {
                int last = -1;
                for (ElementId e : rel[ti]) last = std::max(last, pos[e]);
                if (last < 0)
                    immediately_due.push_back({sym, ti});
                else
                    due[last].push_back({sym, ti});
            }
        }
        pinned_consistent = check_tuples(immediately_due);
    }

    bool pinned_consistent = true;

    bool check_tuples(const std::vector<std::pair<int, int>>& refs) const {
        for (auto [sym, ti] : refs) {
            const Tuple& t = src.relation(sym)[ti];
            Tuple image(t.size());
            for (size_t p = 0; p < t.size(); ++p) image[p] = assignment[t[p]];
            if (!dst_sets[sym].count(image)) return false;
        }
        return true;
    }

    // Visits every extension in deterministic order; `sink` returns false to stop.
    template <typename Sink>
    bool run(size_t depth, Sink&& sink) {
        if (depth == order.size()) return sink(assignment);
        ElementId e = order[depth];
        for (ElementId v : domains[e]) {
            assignment[e] = v;
            if (check_tuples(due[depth])) {
                if (!run(depth + 1, sink)) {
                    assignment[e] = kNoPin;
                    return false;
                }
            }
        }
        assignment[e] = kNoPin;
        return true;
    }
};

}  // namespace

PartialMap empty_pin(const Structure& src) {
    return PartialMap(src.universe_size(), kNoPin);
}

std::vector<std::vector<ElementId>> enumerate_homomorphisms(const Structure& src,
                                                            const Structure& dst,
                                                            const PartialMap& pin) {
    Search search(src, dst, pin);
    std::vector<std::vector<ElementId>> result;
    if (!search.pinned_consistent) return result;
    search.run(0, [&](const PartialMap& h) {
        result.push_back(h);
        return true;
    });
    return result;
}

std::optional<std::vector<ElementId>> find_homomorphism(const Structure& src,
                                                        const Structure& dst,
                                                        const PartialMap& pin) {
    Search search(src, dst, pin);
    std::optional<std::vector<ElementId>> found;
    if (!search.pinned_consistent) return found;
    search.run(0, [&](const PartialMap& h) {
        found = h;
        return false;
    });
    return found;
}

bool homomorphism_exists(const Structure& src, const Structure& dst, const PartialMap& pin) {
    return find_homomorphism(src, dst, pin).has_value();
}

bool partial_map_consistent(const Structure& src, const Structure& dst, const PartialMap& map) {
    for (int sym = 0; sym < src.signature().size(); ++sym) {
        int dsym = dst.signature().index_of(src.signature().symbol(sym).name);
        for (const auto& t : src.relation(sym)) {
            Tuple image(t.size());
            bool complete = true;
            for (size_t p = 0; p < t.size(); ++p) {
                if (map[t[p]] == kNoPin) { complete = false; break; }
                image[p] = map[t[p]];
            }
            if (!complete) continue;
            if (dsym < 0 || !dst.has_tuple(dsym, image)) return false;
        }
    }
    return true;
}

}  // namespace ucq
