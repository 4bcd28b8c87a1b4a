#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ucq/caps.hpp"
#include "ucq/structure.hpp"
#include "ucq/treewidth.hpp"

namespace ucq {

// One atom occurrence: a relation symbol plus its variable tuple.
struct Atom {
    int symbol;
    Tuple vars;
};

// GYO ear-decomposition output: a join forest over the atoms, linked into a
// single rooted tree. kill_order lists non-root atoms in the order they were
// absorbed (children before their parents).
struct JoinForest {
    std::vector<Atom> atoms;
    std::vector<int> parent;       // -1 for the root
    std::vector<int> kill_order;   // absorbed atoms, absorption order
    int root = -1;                 // -1 when there are no atoms
};

// Join forest by GYO reduction; nullopt when the hypergraph is cyclic.
std::optional<JoinForest> gyo_join_forest(const Structure& s);

// Alpha-acyclicity. For arity <= 2 this coincides with the Gaifman graph
// being a forest.
bool is_acyclic(const Structure& s);

// Graph on the free variables: G[X] plus an edge {u,v} whenever a connected
// component of G[Y] is adjacent to both u and v.
GaifmanGraph contract(const ConjunctiveQuery& q);

// Every endomorphism of the body that fixes X pointwise is surjective.
bool is_counting_minimal(const ConjunctiveQuery& q, const Caps& caps = {});

// The #core: repeatedly restrict along a non-surjective X-fixing endomorphism
// until none exists; unique up to isomorphism.
ConjunctiveQuery counting_core(const ConjunctiveQuery& q, const Caps& caps = {});

// Max over quantified y of the number of free Gaifman neighbors of y.
int degree_of_freedom(const ConjunctiveQuery& q);

enum class Classification { PolyTime, Hard };

struct CqReport {
    std::optional<bool> acyclic;
    std::optional<int> treewidth;
    std::optional<int> contract_treewidth;
    std::optional<bool> is_minimal;
    std::optional<ConjunctiveQuery> core;
    std::optional<int> core_treewidth;
    std::optional<int> core_contract_treewidth;
    bool self_join_free = false;
    int degree_of_freedom = 0;
    std::optional<int> bound;
    std::optional<Classification> classification;
    // sub-analyses that hit a cap, field name -> error message
    std::map<std::string, std::string> field_errors;
};

// Full per-CQ analysis. `bound` triggers the tractability verdict: PolyTime
// iff the #core's treewidth and its contract's treewidth are both <= bound.
CqReport classify_cq(const ConjunctiveQuery& q, std::optional<int> bound = std::nullopt,
                     const Caps& caps = {});

}  // namespace ucq
