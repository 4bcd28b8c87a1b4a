#include "ucq/counting.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ucq/analysis.hpp"
#include "ucq/canonical.hpp"
#include "ucq/errors.hpp"
#include "ucq/homomorphism.hpp"

namespace ucq {

namespace {

struct TupleHash {
    size_t operator()(const Tuple& t) const {
        size_t seed = t.size();
        for (ElementId e : t) seed ^= e + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
        return seed;
    }
};

// The database aligned to the query's signature: missing symbols become empty
// relations, arity conflicts are an error.
Structure align_database(const Signature& query_sig, const Structure& db) {
    if (db.signature().contains(query_sig)) return db;
    Signature merged = Signature::unite(db.signature(), query_sig);  // throws on arity conflict
    StructureBuilder builder(merged);
    for (const auto& n : db.element_names()) builder.add_element(n);
    for (int sym = 0; sym < db.signature().size(); ++sym)
        for (const auto& t : db.relation(sym)) builder.add_tuple(db.signature().symbol(sym).name, t);
    return builder.build();
}

std::vector<ElementId> isolated_free(const ConjunctiveQuery& q) {
    std::vector<ElementId> result;
    std::vector<ElementId> isolated = q.body().isolated_elements();
    for (ElementId e : isolated)
        if (q.is_free(e)) result.push_back(e);
    return result;
}

}  // namespace

AnswerCount count_cq_bruteforce(const ConjunctiveQuery& q, const Structure& db_raw, const Caps& caps) {
    Structure db = align_database(q.body().signature(), db_raw);
    std::vector<ElementId> iso = isolated_free(q);
    std::vector<ElementId> enumerated;
    for (ElementId e : q.free_elements())
        if (std::find(iso.begin(), iso.end(), e) == iso.end()) enumerated.push_back(e);

    size_t n = db.universe_size();
    BigInt space = bigint_pow(BigInt(n), static_cast<unsigned>(enumerated.size()));
    if (space > caps.max_assignments)
        throw CapExceededError("assignments", space.str() + " assignments exceed cap " +
                                                  std::to_string(caps.max_assignments));

    BigInt hits = 0;
    if (n == 0) {
        // answers are maps X -> empty universe: exactly one (the empty map)
        // when X is empty and the body is satisfiable, none otherwise
        if (q.free_elements().empty() && homomorphism_exists(q.body(), db)) hits = 1;
        return {hits, CountMethod::BruteForce};
    }

    std::vector<ElementId> values(enumerated.size(), 0);
    while (true) {
        PartialMap pin(q.body().universe_size(), kNoPin);
        for (size_t i = 0; i < enumerated.size(); ++i) pin[enumerated[i]] = values[i];
        if (homomorphism_exists(q.body(), db, pin)) ++hits;
        // odometer over the enumerated variables
        size_t i = 0;
        for (; i < values.size(); ++i) {
            if (++values[i] < n) break;
            values[i] = 0;
        }
        if (i == values.size()) break;
    }
    hits *= bigint_pow(BigInt(n), static_cast<unsigned>(iso.size()));
    return {hits, CountMethod::BruteForce};
}

namespace {

// Backtracking over the free variables with incremental tuple checks; the
// quantified variables are handled by an existence search per leaf.
struct FreeAssignmentSearch {
    const ConjunctiveQuery& q;
    const Structure& db;
    std::vector<ElementId> order;  // enumerated free variables
    // tuples fully inside the free set, indexed by the order position at which
    // they become fully assigned
    std::vector<std::vector<std::pair<int, int>>> due;
    std::vector<std::unordered_set<Tuple, TupleHash>> db_sets;
    std::vector<int> sym_map;
    PartialMap assignment;
    bool has_quantified;

    FreeAssignmentSearch(const ConjunctiveQuery& query, const Structure& database,
                         const std::vector<ElementId>& enumerated)
        : q(query), db(database), order(enumerated) {
        const Structure& body = q.body();
        int nsym = body.signature().size();
        sym_map.resize(nsym);
        db_sets.resize(nsym);
        for (int sym = 0; sym < nsym; ++sym) {
            sym_map[sym] = db.signature().index_of(body.signature().symbol(sym).name);
            for (const auto& t : db.relation(sym_map[sym])) db_sets[sym].insert(t);
        }
        assignment.assign(body.universe_size(), kNoPin);
        has_quantified = !q.quantifier_free();

        std::vector<int> pos(body.universe_size(), -1);
        for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
        due.resize(order.size());
        for (int sym = 0; sym < nsym; ++sym) {
            const auto& rel = body.relation(sym);
            for (int ti = 0; ti < static_cast<int>(rel.size()); ++ti) {
                int last = -1;
                bool all_free_enumerated = true;
                for (ElementId e : rel[ti]) {
                    if (pos[e] < 0) { all_free_enumerated = false; break; }
                    last = std::max(last, pos[e]);
                }
                if (all_free_enumerated && last >= 0) due[last].push_back({sym, ti});
            }
        }
    }

    bool tuple_ok(int sym, int ti) const {
        const Tuple& t = q.body().relation(sym)[ti];
        Tuple image(t.size());
        for (size_t p = 0; p < t.size(); ++p) image[p] = assignment[t[p]];
        return db_sets[sym].count(image) > 0;
    }

    BigInt count(size_t depth) {
        if (depth == order.size()) {
            if (!has_quantified) return 1;
            return homomorphism_exists(q.body(), db, assignment) ? 1 : 0;
        }
        BigInt total = 0;
        ElementId e = order[depth];
        for (ElementId v = 0; v < db.universe_size(); ++v) {
            assignment[e] = v;
            bool ok = true;
            for (auto [sym, ti] : due[depth])
                if (!tuple_ok(sym, ti)) { ok = false; break; }
            if (ok) total += count(depth + 1);
        }
        assignment[e] = kNoPin;
        return total;
    }
};

}  // namespace

AnswerCount count_cq_backtracking(const ConjunctiveQuery& q, const Structure& db_raw) {
    Structure db = align_database(q.body().signature(), db_raw);
    std::vector<ElementId> iso = isolated_free(q);
    std::vector<ElementId> enumerated;
    for (ElementId e : q.free_elements())
        if (std::find(iso.begin(), iso.end(), e) == iso.end()) enumerated.push_back(e);

    FreeAssignmentSearch search(q, db, enumerated);
    BigInt hits = search.count(0);
    hits *= bigint_pow(BigInt(db.universe_size()), static_cast<unsigned>(iso.size()));
    return {hits, CountMethod::Backtracking};
}

AnswerCount count_cq_acyclic(const ConjunctiveQuery& q, const Structure& db_raw) {
    if (!q.quantifier_free())
        throw PreconditionError("the acyclic counter handles quantifier-free queries only");
    auto forest = gyo_join_forest(q.body());
    if (!forest) throw PreconditionError("the acyclic counter requires an acyclic query");
    Structure db = align_database(q.body().signature(), db_raw);

    size_t n_atoms = forest->atoms.size();
    BigInt isolated_factor =
        bigint_pow(BigInt(db.universe_size()), static_cast<unsigned>(isolated_free(q).size()));
    if (n_atoms == 0) return {isolated_factor, CountMethod::Yannakakis};

    // distinct variable list per atom plus the projection of matching db
    // tuples onto it; projections are injective, so rows are distinct
    std::vector<std::vector<ElementId>> vars(n_atoms);
    std::vector<std::vector<Tuple>> rows(n_atoms);
    for (size_t i = 0; i < n_atoms; ++i) {
        const Atom& atom = forest->atoms[i];
        std::set<ElementId> vs(atom.vars.begin(), atom.vars.end());
        vars[i].assign(vs.begin(), vs.end());
        int dsym = db.signature().index_of(q.body().signature().symbol(atom.symbol).name);
        for (const auto& t : db.relation(dsym)) {
            // repeated query variables force equal database entries
            std::unordered_map<ElementId, ElementId> bind;
            bool ok = true;
            for (size_t p = 0; p < t.size(); ++p) {
                auto [it, inserted] = bind.try_emplace(atom.vars[p], t[p]);
                if (!inserted && it->second != t[p]) { ok = false; break; }
            }
            if (!ok) continue;
            Tuple row(vars[i].size());
            for (size_t k = 0; k < vars[i].size(); ++k) row[k] = bind[vars[i][k]];
            rows[i].push_back(std::move(row));
        }
    }

    auto key_positions = [&](size_t child, size_t parent) {
        std::vector<std::pair<int, int>> positions;  // (child column, parent column)
        for (size_t a = 0; a < vars[child].size(); ++a) {
            auto it = std::lower_bound(vars[parent].begin(), vars[parent].end(), vars[child][a]);
            if (it != vars[parent].end() && *it == vars[child][a])
                positions.push_back({static_cast<int>(a),
                                     static_cast<int>(it - vars[parent].begin())});
        }
        return positions;
    };
    auto project = [](const Tuple& row, const std::vector<std::pair<int, int>>& positions,
                      bool child_side) {
        Tuple key;
        key.reserve(positions.size());
        for (auto [c, p] : positions) key.push_back(row[child_side ? c : p]);
        return key;
    };

    // full reducer: child-to-parent semijoins in absorption order, then
    // parent-to-child in reverse
    for (int child : forest->kill_order) {
        int parent = forest->parent[child];
        auto positions = key_positions(child, parent);
        std::unordered_set<Tuple, TupleHash> keys;
        for (const auto& row : rows[child]) keys.insert(project(row, positions, true));
        std::vector<Tuple> kept;
        for (auto& row : rows[parent])
            if (keys.count(project(row, positions, false))) kept.push_back(std::move(row));
        rows[parent] = std::move(kept);
    }
    for (auto it = forest->kill_order.rbegin(); it != forest->kill_order.rend(); ++it) {
        int child = *it;
        int parent = forest->parent[child];
        auto positions = key_positions(child, parent);
        std::unordered_set<Tuple, TupleHash> keys;
        for (const auto& row : rows[parent]) keys.insert(project(row, positions, false));
        std::vector<Tuple> kept;
        for (auto& row : rows[child])
            if (keys.count(project(row, positions, true))) kept.push_back(std::move(row));
        rows[child] = std::move(kept);
    }

    // root-ward aggregation: each row starts with multiplicity 1 and absorbs
    // the keyed sums of its children
    std::vector<std::vector<BigInt>> weight(n_atoms);
    for (size_t i = 0; i < n_atoms; ++i) weight[i].assign(rows[i].size(), BigInt(1));
    for (int child : forest->kill_order) {
        int parent = forest->parent[child];
        auto positions = key_positions(child, parent);
        std::unordered_map<Tuple, BigInt, TupleHash> sums;
        for (size_t r = 0; r < rows[child].size(); ++r)
            sums[project(rows[child][r], positions, true)] += weight[child][r];
        for (size_t r = 0; r < rows[parent].size(); ++r) {
            auto it = sums.find(project(rows[parent][r], positions, false));
            if (it == sums.end())
                weight[parent][r] = 0;  // unreachable after full reduction
            else
                weight[parent][r] *= it->second;
        }
    }
    BigInt total = 0;
    for (const auto& w : weight[forest->root]) total += w;
    total *= isolated_factor;
    return {total, CountMethod::Yannakakis};
}

namespace {

// Pruned search over the shared free variables of a UCQ. Counts assignments
// answering at least one disjunct. Work is measured in visited nodes.
struct UnionSearch {
    const Ucq& psi;
    const Structure& db;
    std::vector<std::string> order_names;
    long long budget;
    long long visited = 0;

    struct DisjunctState {
        const Structure* body;
        std::vector<ElementId> var_of_order;  // order position -> element id in body
        std::vector<std::vector<std::pair<int, int>>> due;
        std::vector<std::unordered_set<Tuple, TupleHash>> db_sets;
        bool quantifier_free_part;  // no quantified variables at all
        PartialMap assignment;
    };
    std::vector<DisjunctState> states;

    UnionSearch(const Ucq& u, const Structure& database, std::vector<std::string> order,
                long long cap)
        : psi(u), db(database), order_names(std::move(order)), budget(cap) {
        for (size_t j = 0; j < psi.size(); ++j) {
            const Structure& body = psi.disjunct(j);
            DisjunctState st;
            st.body = &body;
            st.assignment.assign(body.universe_size(), kNoPin);
            st.quantifier_free_part = body.universe_size() == psi.free_names().size();
            int nsym = body.signature().size();
            st.db_sets.resize(nsym);
            for (int sym = 0; sym < nsym; ++sym) {
                int dsym = db.signature().index_of(body.signature().symbol(sym).name);
                for (const auto& t : db.relation(dsym)) st.db_sets[sym].insert(t);
            }
            st.var_of_order.resize(order_names.size());
            std::vector<int> pos(body.universe_size(), -1);
            for (size_t i = 0; i < order_names.size(); ++i) {
                ElementId e = *body.element_index(order_names[i]);
                st.var_of_order[i] = e;
                pos[e] = static_cast<int>(i);
            }
            st.due.resize(order_names.size());
            for (int sym = 0; sym < nsym; ++sym) {
                const auto& rel = body.relation(sym);
                for (int ti = 0; ti < static_cast<int>(rel.size()); ++ti) {
                    int last = -1;
                    bool all_enumerated = true;
                    for (ElementId e : rel[ti]) {
                        if (pos[e] < 0) { all_enumerated = false; break; }
                        last = std::max(last, pos[e]);
                    }
                    if (all_enumerated && last >= 0) st.due[last].push_back({sym, ti});
                }
            }
            states.push_back(std::move(st));
        }
    }

    void charge() {
        if (++visited > budget)
            throw CapExceededError("assignments", "union search exceeded " + std::to_string(budget) +
                                                      " visited nodes");
    }

    bool tuple_ok(const DisjunctState& st, int sym, int ti) const {
        const Tuple& t = st.body->relation(sym)[ti];
        Tuple image(t.size());
        for (size_t p = 0; p < t.size(); ++p) image[p] = st.assignment[t[p]];
        return st.db_sets[sym].count(image) > 0;
    }

    BigInt count(size_t depth, uint64_t alive) {
        charge();
        if (depth == order_names.size()) {
            for (size_t j = 0; j < psi.size(); ++j) {
                if (!(alive & (uint64_t(1) << j))) continue;
                if (states[j].quantifier_free_part) return 1;  // all tuples verified
                if (homomorphism_exists(*states[j].body, db, states[j].assignment)) return 1;
            }
            return 0;
        }
        BigInt total = 0;
        for (ElementId v = 0; v < db.universe_size(); ++v) {
            uint64_t next_alive = 0;
            for (size_t j = 0; j < psi.size(); ++j) {
                if (!(alive & (uint64_t(1) << j))) continue;
                DisjunctState& st = states[j];
                st.assignment[st.var_of_order[depth]] = v;
                bool ok = true;
                for (auto [sym, ti] : st.due[depth])
                    if (!tuple_ok(st, sym, ti)) { ok = false; break; }
                if (ok) next_alive |= uint64_t(1) << j;
            }
            if (next_alive) total += count(depth + 1, next_alive);
        }
        for (size_t j = 0; j < psi.size(); ++j)
            if (alive & (uint64_t(1) << j))
                states[j].assignment[states[j].var_of_order[depth]] = kNoPin;
        return total;
    }
};

}  // namespace

AnswerCount count_ucq_direct(const Ucq& psi_raw, const Structure& db_raw, const Caps& caps) {
    if (psi_raw.size() > 64)
        throw CapExceededError("disjuncts", "direct union counting handles at most 64 disjuncts");
    Structure db = align_database(psi_raw.signature(), db_raw);
    // free variables isolated in every disjunct factor out of the enumeration
    std::vector<std::string> enumerated;
    size_t everywhere_isolated = 0;
    for (const auto& name : psi_raw.free_names()) {
        bool isolated_everywhere = true;
        for (size_t j = 0; j < psi_raw.size() && isolated_everywhere; ++j) {
            const Structure& body = psi_raw.disjunct(j);
            ElementId e = *body.element_index(name);
            for (int sym = 0; sym < body.signature().size() && isolated_everywhere; ++sym)
                for (const auto& t : body.relation(sym))
                    if (std::find(t.begin(), t.end(), e) != t.end()) {
                        isolated_everywhere = false;
                        break;
                    }
        }
        if (isolated_everywhere)
            ++everywhere_isolated;
        else
            enumerated.push_back(name);
    }

    if (db.universe_size() == 0) {
        BigInt hits = 0;
        if (psi_raw.free_names().empty())
            for (size_t j = 0; j < psi_raw.size() && hits == 0; ++j)
                if (homomorphism_exists(psi_raw.disjunct(j), db)) hits = 1;
        return {hits, CountMethod::BruteForce};
    }

    UnionSearch search(psi_raw, db, enumerated, caps.max_assignments);
    BigInt hits = search.count(0, (uint64_t(1) << psi_raw.size()) - 1);
    hits *= bigint_pow(BigInt(db.universe_size()), static_cast<unsigned>(everywhere_isolated));
    return {hits, CountMethod::BruteForce};
}

AnswerCount count_ucq_expansion(const Ucq& psi, const Structure& db, const ExpansionTable& table) {
    if (table.source_code != ucq_canonical_form(psi) || table.disjunct_count != psi.size())
        throw PreconditionError("expansion table does not belong to this UCQ");
    BigInt total = 0;
    for (const auto& entry : table.entries) {
        if (entry.coefficient == 0) continue;
        const ConjunctiveQuery& q = entry.query;
        AnswerCount partial = (q.quantifier_free() && is_acyclic(q.body()))
                                  ? count_cq_acyclic(q, db)
                                  : count_cq_backtracking(q, db);
        total += entry.coefficient * partial.value;
    }
    return {total, CountMethod::InclusionExclusion};
}

}  // namespace ucq
