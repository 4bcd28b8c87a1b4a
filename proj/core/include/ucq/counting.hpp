#pragma once

#include "ucq/bigint.hpp"
#include "ucq/caps.hpp"
#include "ucq/expansion.hpp"
#include "ucq/structure.hpp"

namespace ucq {

enum class CountMethod { BruteForce, Backtracking, Yannakakis, InclusionExclusion };

struct AnswerCount {
    BigInt value;
    CountMethod method;
};

// Ground-truth oracle: enumerates assignments on X and tests extension
// existence per assignment. Isolated free variables contribute a factor
// |U(D)| each instead of being enumerated.
AnswerCount count_cq_bruteforce(const ConjunctiveQuery& q, const Structure& db,
                                const Caps& caps = {});

// General-purpose engine: backtracking over the free variables with partial
// tuple pruning, satisfiability search over the quantified variables.
AnswerCount count_cq_backtracking(const ConjunctiveQuery& q, const Structure& db);

// Linear-time counting for acyclic quantifier-free queries: GYO join tree,
// semi-join full reduction, then root-ward multiplicity aggregation.
AnswerCount count_cq_acyclic(const ConjunctiveQuery& q, const Structure& db);

// Union semantics evaluated directly: assignments answering at least one
// disjunct, via a pruned search over the shared free variables. The work cap
// counts visited search nodes.
AnswerCount count_ucq_direct(const Ucq& psi, const Structure& db, const Caps& caps = {});

// Inclusion-exclusion through a precomputed expansion table; dispatches each
// entry to the acyclic counter when applicable, else to backtracking.
AnswerCount count_ucq_expansion(const Ucq& psi, const Structure& db, const ExpansionTable& table);

}  // namespace ucq
