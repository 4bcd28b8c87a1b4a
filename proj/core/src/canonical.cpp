#include "ucq/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>

#include "ucq/errors.hpp"

namespace ucq {

namespace {

constexpr long kSearchNodeBudget = 200000;

// Individualization-refinement canonical labeling over the incidence structure
// (element nodes and tuple nodes, tuple slots carry positions). Exact, aimed
// at universes of a few dozen elements.
struct Canonicalizer {
    struct TupleRef {
        int symbol;
        const Tuple* tuple;
    };

    const Structure& s;
    const std::vector<bool>& free_mask;
    int n;
    std::vector<TupleRef> tuples;
    std::vector<std::vector<std::pair<int, int>>> incidence;  // element -> (tuple index, position)
    long nodes_visited = 0;
    std::string best;
    bool have_best = false;

    Canonicalizer(const Structure& structure, const std::vector<bool>& free)
        : s(structure), free_mask(free), n(static_cast<int>(structure.universe_size())) {
        for (int sym = 0; sym < s.signature().size(); ++sym)
            for (const auto& t : s.relation(sym)) tuples.push_back({sym, &t});
        incidence.resize(n);
        for (int ti = 0; ti < static_cast<int>(tuples.size()); ++ti) {
            const Tuple& t = *tuples[ti].tuple;
            for (int p = 0; p < static_cast<int>(t.size()); ++p)
                incidence[t[p]].push_back({ti, p});
        }
    }

    // Relabels signatures into dense ids in signature-sorted order, which keeps
    // the colors isomorphism-invariant (no dependence on element numbering).
    static void relabel(std::vector<std::vector<uint64_t>>& sigs, std::vector<uint64_t>& colors) {
        std::map<std::vector<uint64_t>, uint64_t> ids;
        for (const auto& sig : sigs) ids.emplace(sig, 0);
        uint64_t next = 0;
        for (auto& [sig, id] : ids) id = next++;
        for (size_t i = 0; i < sigs.size(); ++i) colors[i] = ids[sigs[i]];
    }

    void refine(std::vector<uint64_t>& color) const {
        std::vector<uint64_t> tuple_color(tuples.size(), 0);
        size_t classes = count_classes(color);
        while (true) {
            std::vector<std::vector<uint64_t>> tuple_sigs(tuples.size());
            for (size_t ti = 0; ti < tuples.size(); ++ti) {
                auto& sig = tuple_sigs[ti];
                sig.push_back(static_cast<uint64_t>(tuples[ti].symbol));
                for (ElementId e : *tuples[ti].tuple) sig.push_back(color[e]);
            }
            relabel(tuple_sigs, tuple_color);

            std::vector<std::vector<uint64_t>> elem_sigs(n);
            for (int e = 0; e < n; ++e) {
                std::vector<std::pair<uint64_t, uint64_t>> occ;
                occ.reserve(incidence[e].size());
                for (auto [ti, p] : incidence[e]) occ.push_back({tuple_color[ti], static_cast<uint64_t>(p)});
                std::sort(occ.begin(), occ.end());
                auto& sig = elem_sigs[e];
                sig.push_back(color[e]);
                for (auto [tc, p] : occ) {
                    sig.push_back(tc);
                    sig.push_back(p);
                }
            }
            std::vector<uint64_t> next(n);
            relabel(elem_sigs, next);
            size_t next_classes = count_classes(next);
            color = std::move(next);
            if (next_classes == classes) break;
            classes = next_classes;
        }
    }

    static size_t count_classes(const std::vector<uint64_t>& color) {
        std::vector<uint64_t> sorted = color;
        std::sort(sorted.begin(), sorted.end());
        return std::unique(sorted.begin(), sorted.end()) - sorted.begin();
    }

    std::string certificate(const std::vector<uint64_t>& color) const {
        // discrete coloring: canonical position = color value
        std::vector<int> position(n);
        for (int e = 0; e < n; ++e) position[e] = static_cast<int>(color[e]);
        std::string out;
        out += "n=" + std::to_string(n) + ";";
        out += "sig=";
        for (const auto& sym : s.signature().symbols())
            out += sym.name + "/" + std::to_string(sym.arity) + ",";
        out += ";free=";
        std::vector<int> free_positions;
        for (int e = 0; e < n; ++e)
            if (free_mask[e]) free_positions.push_back(position[e]);
        std::sort(free_positions.begin(), free_positions.end());
        for (int p : free_positions) out += std::to_string(p) + ",";
        for (int sym = 0; sym < s.signature().size(); ++sym) {
            out += ";R" + std::to_string(sym) + "=";
            std::vector<Tuple> renamed;
            for (const auto& t : s.relation(sym)) {
                Tuple r(t.size());
                for (size_t p = 0; p < t.size(); ++p) r[p] = static_cast<ElementId>(position[t[p]]);
                renamed.push_back(std::move(r));
            }
            std::sort(renamed.begin(), renamed.end());
            for (const auto& t : renamed) {
                for (ElementId e : t) out += std::to_string(e) + ".";
                out += "|";
            }
        }
        return out;
    }

    void search(std::vector<uint64_t> color) {
        if (++nodes_visited > kSearchNodeBudget)
            throw CapExceededError("canonicalization", "search tree too large");
        refine(color);
        if (count_classes(color) == static_cast<size_t>(n) || n == 0) {
            std::string cert = certificate(color);
            if (!have_best || cert < best) {
                best = std::move(cert);
                have_best = true;
            }
            return;
        }
        // smallest color value with at least two members
        uint64_t target = 0;
        {
            std::map<uint64_t, int> sizes;
            for (int e = 0; e < n; ++e) ++sizes[color[e]];
            for (auto& [c, count] : sizes)
                if (count >= 2) { target = c; break; }
        }
        bool tried_bare_twin = false;
        for (int e = 0; e < n; ++e) {
            if (color[e] != target) continue;
            if (incidence[e].empty()) {
                // elements in no tuple with equal color are interchangeable
                if (tried_bare_twin) continue;
                tried_bare_twin = true;
            }
            std::vector<uint64_t> child(color.size());
            for (int f = 0; f < n; ++f) child[f] = color[f] * 2;
            child[e] += 1;
            search(std::move(child));
        }
    }

    std::string run() {
        std::vector<uint64_t> color(n);
        for (int e = 0; e < n; ++e) color[e] = free_mask[e] ? 1 : 0;
        search(std::move(color));
        return best;
    }
};

}  // namespace

CanonicalCode canonical_form(const ConjunctiveQuery& q) {
    std::vector<bool> free(q.body().universe_size(), false);
    for (ElementId e : q.free_elements()) free[e] = true;
    Canonicalizer canonicalizer(q.body(), free);
    return canonicalizer.run();
}

CanonicalCode canonical_form(const Structure& s) {
    std::vector<bool> free(s.universe_size(), true);
    Canonicalizer canonicalizer(s, free);
    return canonicalizer.run();
}

namespace {

// Exact byte-level print of a disjunct, used to skip permutations of literally
// identical disjuncts inside a tie group.
std::string verbatim_print(const Structure& s) {
    std::string out;
    for (const auto& n : s.element_names()) out += n + ",";
    out += ";";
    for (int sym = 0; sym < s.signature().size(); ++sym) {
        out += "#";
        for (const auto& t : s.relation(sym)) {
            for (ElementId e : t) out += std::to_string(e) + ".";
            out += "|";
        }
    }
    return out;
}

// Union of the disjuncts in the given order with disjunct-position tags on the
// relation symbols; free variables are shared, quantified variables stay local.
ConjunctiveQuery tagged_union(const Ucq& psi, const std::vector<int>& disjunct_order) {
    std::vector<RelationSymbol> symbols;
    for (size_t pos = 0; pos < disjunct_order.size(); ++pos)
        for (const auto& sym : psi.signature().symbols())
            symbols.push_back({std::to_string(pos) + ":" + sym.name, sym.arity});
    StructureBuilder builder(Signature{symbols});
    for (const auto& name : psi.free_names()) builder.add_element("f:" + name);
    for (size_t pos = 0; pos < disjunct_order.size(); ++pos) {
        const Structure& d = psi.disjunct(disjunct_order[pos]);
        std::vector<std::string> key(d.universe_size());
        for (ElementId e = 0; e < d.universe_size(); ++e) {
            const std::string& name = d.element_name(e);
            bool is_free = std::find(psi.free_names().begin(), psi.free_names().end(), name) !=
                           psi.free_names().end();
            key[e] = is_free ? "f:" + name : "q" + std::to_string(pos) + ":" + name;
            builder.add_element(key[e]);
        }
        for (int sym = 0; sym < d.signature().size(); ++sym)
            for (const auto& t : d.relation(sym)) {
                std::vector<std::string> names;
                names.reserve(t.size());
                for (ElementId e : t) names.push_back(key[e]);
                builder.add_tuple_by_names(
                    std::to_string(pos) + ":" + d.signature().symbol(sym).name, names);
            }
    }
    Structure merged = builder.build();
    std::vector<ElementId> free;
    for (const auto& name : psi.free_names()) free.push_back(*merged.element_index("f:" + name));
    return ConjunctiveQuery(std::move(merged), std::move(free));
}

}  // namespace

CanonicalCode ucq_canonical_form(const Ucq& psi) {
    size_t l = psi.size();
    std::vector<CanonicalCode> codes(l);
    std::vector<std::string> prints(l);
    for (size_t i = 0; i < l; ++i) {
        codes[i] = canonical_form(psi.disjunct_query(i));
        prints[i] = verbatim_print(psi.disjunct(i));
    }
    // disjuncts sorted by individual code; within equal-code groups all
    // distinct-looking arrangements compete for the minimal joint certificate
    std::vector<int> base(l);
    std::iota(base.begin(), base.end(), 0);
    std::sort(base.begin(), base.end(), [&](int a, int b) {
        return std::tie(codes[a], prints[a], a) < std::tie(codes[b], prints[b], b);
    });

    std::optional<CanonicalCode> min_code;
    long candidates = 0;
    auto consider = [&](const std::vector<int>& order) {
        if (++candidates > 40320)
            throw CapExceededError("ucq canonicalization", "too many tied disjunct arrangements");
        CanonicalCode code = canonical_form(tagged_union(psi, order));
        if (!min_code || code < *min_code) min_code = std::move(code);
    };

    // permute inside each maximal run of equal codes; runs permute independently
    std::vector<std::pair<size_t, size_t>> runs;
    size_t start = 0;
    for (size_t i = 1; i <= l; ++i) {
        if (i == l || codes[base[i]] != codes[base[start]]) {
            runs.push_back({start, i});
            start = i;
        }
    }
    std::vector<int> order = base;
    std::vector<size_t> nontrivial;
    for (size_t r = 0; r < runs.size(); ++r)
        if (runs[r].second - runs[r].first > 1) nontrivial.push_back(r);

    // recursive product over the runs' permutations, skipping rearrangements of
    // byte-identical disjuncts (next_permutation over the print keys)
    std::function<void(size_t)> walk = [&](size_t ri) {
        if (ri == nontrivial.size()) {
            consider(order);
            return;
        }
        auto [from, to] = runs[nontrivial[ri]];
        std::vector<std::pair<std::string, int>> keyed;
        for (size_t i = from; i < to; ++i) keyed.push_back({prints[base[i]], base[i]});
        std::sort(keyed.begin(), keyed.end());
        do {
            for (size_t i = from; i < to; ++i) order[i] = keyed[i - from].second;
            walk(ri + 1);
        } while (std::next_permutation(keyed.begin(), keyed.end(),
                                       [](const auto& a, const auto& b) { return a.first < b.first; }));
    };
    walk(0);
    return *min_code;
}

}  // namespace ucq
