#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ucq/errors.hpp"

namespace ucq {

using ElementId = uint32_t;
using Tuple = std::vector<ElementId>;

struct RelationSymbol {
    std::string name;
    int arity = 1;
};

// Finite relational signature. Symbols are kept sorted by name, names are
// unique, arities are at least 1.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<RelationSymbol> symbols);

    int size() const { return static_cast<int>(symbols_.size()); }
    const RelationSymbol& symbol(int i) const { return symbols_[i]; }
    const std::vector<RelationSymbol>& symbols() const { return symbols_; }
    int index_of(std::string_view name) const;  // -1 when absent
    int arity(int i) const { return symbols_[i].arity; }
    int max_arity() const;

    // true when every symbol of `other` appears here with the same arity
    bool contains(const Signature& other) const;

    friend bool operator==(const Signature& a, const Signature& b);
    friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }

    static Signature intersect(const Signature& a, const Signature& b);
    // union of symbol sets; arity conflicts raise SignatureMismatchError
    static Signature unite(const Signature& a, const Signature& b);

private:
    std::vector<RelationSymbol> symbols_;
};

class StructureBuilder;

// Immutable finite relational structure. Doubles as a query body and as a
// database. Element identifiers are interned strings; all internal operations
// run over dense indices.
class Structure {
public:
    Structure() = default;

    const Signature& signature() const { return sig_; }
    size_t universe_size() const { return names_.size(); }
    const std::vector<std::string>& element_names() const { return names_; }
    const std::string& element_name(ElementId e) const { return names_[e]; }
    std::optional<ElementId> element_index(std::string_view name) const;

    // tuples of one relation, sorted and deduplicated
    const std::vector<Tuple>& relation(int symbol) const { return relations_[symbol]; }
    bool has_tuple(int symbol, const Tuple& t) const;
    size_t total_tuples() const;

    // |tau| + |U| + sum_R |R| * arity(R)
    long long encoded_size() const;

    // every relation holds at most one tuple
    bool self_join_free() const;
    // some relation holds a tuple all of whose entries coincide (e.g. R(v,v))
    bool has_self_loop_tuple() const;
    // element ids that occur in no tuple
    std::vector<ElementId> isolated_elements() const;

    friend bool operator==(const Structure& a, const Structure& b);
    friend bool operator!=(const Structure& a, const Structure& b) { return !(a == b); }

private:
    friend class StructureBuilder;
    Signature sig_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, ElementId> index_;
    std::vector<std::vector<Tuple>> relations_;
};

class StructureBuilder {
public:
    explicit StructureBuilder(Signature sig);

    // interning: returns the existing id when the name is already present
    ElementId add_element(const std::string& name);
    bool has_element(std::string_view name) const;

    void add_tuple(std::string_view relation, const Tuple& tuple);
    void add_tuple_by_names(std::string_view relation, const std::vector<std::string>& names);

    Structure build();  // sorts and deduplicates relations; builder is spent afterwards

private:
    Structure s_;
    bool built_ = false;
};

// A conjunctive query: a structure plus a designated free-variable set X.
class ConjunctiveQuery {
public:
    ConjunctiveQuery(Structure body, std::vector<ElementId> free);
    static ConjunctiveQuery with_free_names(Structure body, const std::vector<std::string>& names);

    const Structure& body() const { return body_; }
    const std::vector<ElementId>& free_elements() const { return free_; }  // ascending
    std::vector<ElementId> quantified_elements() const;                    // ascending
    bool is_free(ElementId e) const { return free_mask_[e]; }
    bool quantifier_free() const { return free_.size() == body_.universe_size(); }
    std::vector<std::string> free_names() const;

private:
    Structure body_;
    std::vector<ElementId> free_;
    std::vector<bool> free_mask_;
};

// A union of conjunctive queries: an ordered list of structures over one
// shared signature, all containing the shared free variables X. Quantified
// variable names are local to their disjunct; equal names in different
// disjuncts denote different variables.
class Ucq {
public:
    Ucq(std::vector<Structure> disjuncts, std::vector<std::string> free_names);

    size_t size() const { return disjuncts_.size(); }  // l(Psi)
    const Structure& disjunct(size_t i) const { return disjuncts_[i]; }
    const std::vector<Structure>& disjuncts() const { return disjuncts_; }
    ConjunctiveQuery disjunct_query(size_t i) const;
    const std::vector<std::string>& free_names() const { return free_names_; }
    const Signature& signature() const { return disjuncts_.front().signature(); }

    bool quantifier_free() const;
    int arity() const { return signature().max_arity(); }
    bool has_self_loop_atom() const;
    long long encoded_size() const;

private:
    std::vector<Structure> disjuncts_;
    std::vector<std::string> free_names_;
};

// Undirected simple graph on a structure's universe: an edge {u,v} is present
// iff some tuple contains both u and v. Symmetric and irreflexive.
struct GaifmanGraph {
    std::vector<std::string> names;
    std::vector<std::vector<int>> adj;  // sorted neighbor lists

    int vertex_count() const { return static_cast<int>(adj.size()); }
    bool has_edge(int u, int v) const;
    std::vector<std::pair<int, int>> edges() const;  // u < v
    size_t edge_count() const;
    bool is_forest() const;
    GaifmanGraph induced(const std::vector<int>& keep) const;
    std::vector<std::vector<int>> connected_components() const;
};

GaifmanGraph gaifman_graph(const Structure& s);

// Union of two structures over the same signature, merging elements by name.
Structure union_structures(const Structure& a, const Structure& b);

// Tensor product over the shared part of the signatures. The universe is the
// Cartesian product; a tuple of pairs is present iff both projections are.
Structure tensor_product(const Structure& a, const Structure& b);

// Restriction to `keep` with relations R^A intersect keep^arity.
Structure induced_substructure(const Structure& s, const std::vector<ElementId>& keep);

}  // namespace ucq
