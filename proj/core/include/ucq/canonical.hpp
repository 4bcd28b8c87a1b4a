#pragma once

#include <string>

#include "ucq/structure.hpp"

namespace ucq {

// Deterministic byte code with: canonical_form(q) == canonical_form(q') iff
// there is an isomorphism b of the bodies with b(X) = X'. Variable names never
// enter the code; relation symbol names and free/quantified status do.
using CanonicalCode = std::string;

CanonicalCode canonical_form(const ConjunctiveQuery& q);

// Structure canonicalization = canonical form of the quantifier-free query on it.
CanonicalCode canonical_form(const Structure& s);

// Joint canonical form of a UCQ: invariant under disjunct reordering and under
// a single universe bijection fixing the free set. Captures how disjuncts
// share free variables, which per-disjunct codes alone cannot.
CanonicalCode ucq_canonical_form(const Ucq& psi);

inline bool isomorphic(const ConjunctiveQuery& a, const ConjunctiveQuery& b) {
    return canonical_form(a) == canonical_form(b);
}

inline bool isomorphic(const Structure& a, const Structure& b) {
    return canonical_form(a) == canonical_form(b);
}

inline bool ucq_isomorphic(const Ucq& a, const Ucq& b) {
    return ucq_canonical_form(a) == ucq_canonical_form(b);
}

}  // namespace ucq
