#include "ucq/structure.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace ucq {

Signature::Signature(std::vector<RelationSymbol> symbols) : symbols_(std::move(symbols)) {
    std::sort(symbols_.begin(), symbols_.end(),
              [](const RelationSymbol& a, const RelationSymbol& b) { return a.name < b.name; });
    for (size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].arity < 1)
            throw PreconditionError("relation symbol '" + symbols_[i].name + "' has arity < 1");
        if (i > 0 && symbols_[i].name == symbols_[i - 1].name)
            throw PreconditionError("duplicate relation symbol '" + symbols_[i].name + "'");
    }
}

int Signature::index_of(std::string_view name) const {
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name,
                               [](const RelationSymbol& s, std::string_view n) { return s.name < n; });
    if (it == symbols_.end() || it->name != name) return -1;
    return static_cast<int>(it - symbols_.begin());
}

int Signature::max_arity() const {
    int m = 0;
    for (const auto& s : symbols_) m = std::max(m, s.arity);
    return m;
}

bool Signature::contains(const Signature& other) const {
    for (const auto& s : other.symbols_) {
        int i = index_of(s.name);
        if (i < 0 || symbols_[i].arity != s.arity) return false;
    }
    return true;
}

bool operator==(const Signature& a, const Signature& b) {
    if (a.symbols_.size() != b.symbols_.size()) return false;
    for (size_t i = 0; i < a.symbols_.size(); ++i)
        if (a.symbols_[i].name != b.symbols_[i].name || a.symbols_[i].arity != b.symbols_[i].arity)
            return false;
    return true;
}

Signature Signature::intersect(const Signature& a, const Signature& b) {
    std::vector<RelationSymbol> shared;
    for (const auto& s : a.symbols_) {
        int i = b.index_of(s.name);
        if (i >= 0 && b.symbols_[i].arity == s.arity) shared.push_back(s);
    }
    return Signature(shared);
}

Signature Signature::unite(const Signature& a, const Signature& b) {
    std::vector<RelationSymbol> all = a.symbols_;
    for (const auto& s : b.symbols_) {
        int i = a.index_of(s.name);
        if (i < 0) {
            all.push_back(s);
        } else if (a.symbols_[i].arity != s.arity) {
            throw SignatureMismatchError("symbol '" + s.name + "' used with arities " +
                                         std::to_string(a.symbols_[i].arity) + " and " +
                                         std::to_string(s.arity));
        }
    }
    return Signature(all);
}

std::optional<ElementId> Structure::element_index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool Structure::has_tuple(int symbol, const Tuple& t) const {
    const auto& rel = relations_[symbol];
    return std::binary_search(rel.begin(), rel.end(), t);
}

size_t Structure::total_tuples() const {
    size_t n = 0;
    for (const auto& r : relations_) n += r.size();
    return n;
}

long long Structure::encoded_size() const {
    long long size = sig_.size() + static_cast<long long>(names_.size());
    for (int i = 0; i < sig_.size(); ++i)
        size += static_cast<long long>(relations_[i].size()) * sig_.arity(i);
    return size;
}

bool Structure::self_join_free() const {
    for (const auto& r : relations_)
        if (r.size() > 1) return false;
    return true;
}

bool Structure::has_self_loop_tuple() const {
    for (const auto& r : relations_)
        for (const auto& t : r) {
            bool all_equal = true;
            for (ElementId e : t)
                if (e != t[0]) { all_equal = false; break; }
            if (all_equal && t.size() >= 2) return true;
        }
    return false;
}

std::vector<ElementId> Structure::isolated_elements() const {
    std::vector<bool> seen(names_.size(), false);
    for (const auto& r : relations_)
        for (const auto& t : r)
            for (ElementId e : t) seen[e] = true;
    std::vector<ElementId> isolated;
    for (ElementId e = 0; e < names_.size(); ++e)
        if (!seen[e]) isolated.push_back(e);
    return isolated;
}

bool operator==(const Structure& a, const Structure& b) {
    return a.sig_ == b.sig_ && a.names_ == b.names_ && a.relations_ == b.relations_;
}

StructureBuilder::StructureBuilder(Signature sig) {
    s_.sig_ = std::move(sig);
    s_.relations_.resize(s_.sig_.size());
}

ElementId StructureBuilder::add_element(const std::string& name) {
    auto it = s_.index_.find(name);
    if (it != s_.index_.end()) return it->second;
    ElementId id = static_cast<ElementId>(s_.names_.size());
    s_.names_.push_back(name);
    s_.index_.emplace(name, id);
    return id;
}

bool StructureBuilder::has_element(std::string_view name) const {
    return s_.index_.count(std::string(name)) > 0;
}

void StructureBuilder::add_tuple(std::string_view relation, const Tuple& tuple) {
    int sym = s_.sig_.index_of(relation);
    if (sym < 0)
        throw SignatureMismatchError("unknown relation symbol '" + std::string(relation) + "'");
    if (static_cast<int>(tuple.size()) != s_.sig_.arity(sym))
        throw SignatureMismatchError("arity mismatch for '" + std::string(relation) + "': got " +
                                     std::to_string(tuple.size()) + ", expected " +
                                     std::to_string(s_.sig_.arity(sym)));
    for (ElementId e : tuple)
        if (e >= s_.names_.size())
            throw PreconditionError("tuple element id out of range");
    s_.relations_[sym].push_back(tuple);
}

void StructureBuilder::add_tuple_by_names(std::string_view relation,
                                          const std::vector<std::string>& names) {
    Tuple t;
    t.reserve(names.size());
    for (const auto& n : names) t.push_back(add_element(n));
    add_tuple(relation, t);
}

Structure StructureBuilder::build() {
    if (built_) throw PreconditionError("StructureBuilder already consumed");
    built_ = true;
    for (auto& rel : s_.relations_) {
        std::sort(rel.begin(), rel.end());
        rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
    }
    return std::move(s_);
}

ConjunctiveQuery::ConjunctiveQuery(Structure body, std::vector<ElementId> free)
    : body_(std::move(body)), free_(std::move(free)) {
    std::sort(free_.begin(), free_.end());
    free_.erase(std::unique(free_.begin(), free_.end()), free_.end());
    free_mask_.assign(body_.universe_size(), false);
    for (ElementId e : free_) {
        if (e >= body_.universe_size())
            throw PreconditionError("free variable id outside the universe");
        free_mask_[e] = true;
    }
}

ConjunctiveQuery ConjunctiveQuery::with_free_names(Structure body,
                                                   const std::vector<std::string>& names) {
    std::vector<ElementId> free;
    for (const auto& n : names) {
        auto id = body.element_index(n);
        if (!id) throw PreconditionError("free variable '" + n + "' not in the universe");
        free.push_back(*id);
    }
    return ConjunctiveQuery(std::move(body), std::move(free));
}

std::vector<ElementId> ConjunctiveQuery::quantified_elements() const {
    std::vector<ElementId> q;
    for (ElementId e = 0; e < body_.universe_size(); ++e)
        if (!free_mask_[e]) q.push_back(e);
    return q;
}

std::vector<std::string> ConjunctiveQuery::free_names() const {
    std::vector<std::string> names;
    names.reserve(free_.size());
    for (ElementId e : free_) names.push_back(body_.element_name(e));
    return names;
}

Ucq::Ucq(std::vector<Structure> disjuncts, std::vector<std::string> free_names)
    : disjuncts_(std::move(disjuncts)), free_names_(std::move(free_names)) {
    if (disjuncts_.empty()) throw PreconditionError("a UCQ needs at least one disjunct");
    for (size_t i = 1; i < disjuncts_.size(); ++i)
        if (disjuncts_[i].signature() != disjuncts_[0].signature())
            throw SignatureMismatchError("disjuncts must share one signature");
    {
        std::set<std::string> seen;
        for (const auto& n : free_names_)
            if (!seen.insert(n).second)
                throw PreconditionError("duplicate free variable '" + n + "'");
    }
    for (size_t i = 0; i < disjuncts_.size(); ++i)
        for (const auto& n : free_names_)
            if (!disjuncts_[i].element_index(n))
                throw PreconditionError("free variable '" + n + "' missing from disjunct " +
                                        std::to_string(i + 1));
}

ConjunctiveQuery Ucq::disjunct_query(size_t i) const {
    return ConjunctiveQuery::with_free_names(disjuncts_[i], free_names_);
}

bool Ucq::quantifier_free() const {
    for (const auto& d : disjuncts_)
        if (d.universe_size() != free_names_.size()) return false;
    return true;
}

bool Ucq::has_self_loop_atom() const {
    for (const auto& d : disjuncts_)
        if (d.has_self_loop_tuple()) return true;
    return false;
}

long long Ucq::encoded_size() const {
    long long total = 0;
    for (const auto& d : disjuncts_)
        total += d.encoded_size() + static_cast<long long>(free_names_.size());
    return total;
}

bool GaifmanGraph::has_edge(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::pair<int, int>> GaifmanGraph::edges() const {
    std::vector<std::pair<int, int>> result;
    for (int u = 0; u < vertex_count(); ++u)
        for (int v : adj[u])
            if (u < v) result.emplace_back(u, v);
    return result;
}

size_t GaifmanGraph::edge_count() const {
    size_t twice = 0;
    for (const auto& a : adj) twice += a.size();
    return twice / 2;
}

bool GaifmanGraph::is_forest() const {
    // simple graph: forest iff |E| = |V| - #components
    return edge_count() == vertex_count() - connected_components().size();
}

GaifmanGraph GaifmanGraph::induced(const std::vector<int>& keep) const {
    std::vector<int> position(vertex_count(), -1);
    for (size_t i = 0; i < keep.size(); ++i) position[keep[i]] = static_cast<int>(i);
    GaifmanGraph g;
    g.names.reserve(keep.size());
    g.adj.resize(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) {
        g.names.push_back(names[keep[i]]);
        for (int v : adj[keep[i]])
            if (position[v] >= 0) g.adj[i].push_back(position[v]);
        std::sort(g.adj[i].begin(), g.adj[i].end());
    }
    return g;
}

std::vector<std::vector<int>> GaifmanGraph::connected_components() const {
    int n = vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> components;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(components.size());
        components.push_back({});
        std::queue<int> queue;
        queue.push(s);
        comp[s] = id;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop();
            components[id].push_back(u);
            for (int v : adj[u])
                if (comp[v] < 0) {
                    comp[v] = id;
                    queue.push(v);
                }
        }
        std::sort(components[id].begin(), components[id].end());
    }
    return components;
}

GaifmanGraph gaifman_graph(const Structure& s) {
    int n = static_cast<int>(s.universe_size());
    std::vector<std::set<int>> adj(n);
    for (int sym = 0; sym < s.signature().size(); ++sym) {
        for (const auto& t : s.relation(sym)) {
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j) {
                    if (t[i] == t[j]) continue;  // irreflexive
                    adj[t[i]].insert(t[j]);
                    adj[t[j]].insert(t[i]);
                }
        }
    }
    GaifmanGraph g;
    g.names = s.element_names();
    g.adj.resize(n);
    for (int u = 0; u < n; ++u) g.adj[u].assign(adj[u].begin(), adj[u].end());
    return g;
}

Structure union_structures(const Structure& a, const Structure& b) {
    if (a.signature() != b.signature())
        throw SignatureMismatchError("union of structures requires identical signatures");
    StructureBuilder builder(a.signature());
    for (const auto& n : a.element_names()) builder.add_element(n);
    for (const auto& n : b.element_names()) builder.add_element(n);
    // a's ids survive unchanged; b's tuples are translated through names
    for (int sym = 0; sym < a.signature().size(); ++sym)
        for (const auto& t : a.relation(sym)) builder.add_tuple(a.signature().symbol(sym).name, t);
    for (int sym = 0; sym < b.signature().size(); ++sym)
        for (const auto& t : b.relation(sym)) {
            std::vector<std::string> names;
            names.reserve(t.size());
            for (ElementId e : t) names.push_back(b.element_name(e));
            builder.add_tuple_by_names(b.signature().symbol(sym).name, names);
        }
    return builder.build();
}

Structure tensor_product(const Structure& a, const Structure& b) {
    Signature shared = Signature::intersect(a.signature(), b.signature());
    if (shared.size() == 0)
        throw PreconditionError("tensor product requires at least one shared relation symbol");
    StructureBuilder builder(shared);
    size_t nb = b.universe_size();
    for (size_t i = 0; i < a.universe_size(); ++i)
        for (size_t j = 0; j < nb; ++j)
            builder.add_element("(" + a.element_name(static_cast<ElementId>(i)) + "," +
                                b.element_name(static_cast<ElementId>(j)) + ")");
    for (int sym = 0; sym < shared.size(); ++sym) {
        const auto& name = shared.symbol(sym).name;
        int sa = a.signature().index_of(name);
        int sb = b.signature().index_of(name);
        for (const auto& ta : a.relation(sa))
            for (const auto& tb : b.relation(sb)) {
                Tuple t(ta.size());
                for (size_t p = 0; p < ta.size(); ++p)
                    t[p] = static_cast<ElementId>(ta[p] * nb + tb[p]);
                builder.add_tuple(name, t);
            }
    }
    return builder.build();
}

Structure induced_substructure(const Structure& s, const std::vector<ElementId>& keep) {
    std::vector<bool> kept(s.universe_size(), false);
    for (ElementId e : keep) {
        if (e >= s.universe_size()) throw PreconditionError("element outside the universe");
        kept[e] = true;
    }
    StructureBuilder builder(s.signature());
    // preserve the original element order
    for (ElementId e = 0; e < s.universe_size(); ++e)
        if (kept[e]) builder.add_element(s.element_name(e));
    for (int sym = 0; sym < s.signature().size(); ++sym)
        for (const auto& t : s.relation(sym)) {
            bool inside = true;
            for (ElementId e : t)
                if (!kept[e]) { inside = false; break; }
            if (!inside) continue;
            std::vector<std::string> names;
            names.reserve(t.size());
            for (ElementId e : t) names.push_back(s.element_name(e));
            builder.add_tuple_by_names(s.signature().symbol(sym).name, names);
        }
    return builder.build();
}

}  // namespace ucq
