#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucq/analysis.hpp"
#include "ucq/bigint.hpp"
#include "ucq/canonical.hpp"
#include "ucq/caps.hpp"
#include "ucq/structure.hpp"

namespace ucq {

enum class ExpansionMode {
    IsomorphismOnly,     // group terms by isomorphism; sound grouping for quantifier-free inputs
    CoreAndIsomorphism,  // replace each term by its #core first, grouping by #equivalence
};

struct ExpansionEntry {
    ConjunctiveQuery query;                  // class representative
    BigInt coefficient;                      // sum over witnesses of (-1)^{|J|+1}
    std::vector<uint64_t> witness_subsets;   // bitmasks over disjunct positions, ascending
    CanonicalCode code;
};

struct ExpansionTable {
    std::vector<ExpansionEntry> entries;  // sorted by canonical code
    size_t disjunct_count = 0;
    ExpansionMode mode = ExpansionMode::IsomorphismOnly;
    bool zeros_kept = false;
    CanonicalCode source_code;  // joint canonical form of the source UCQ
};

struct ExpansionOptions {
    Caps caps;
    bool keep_zeros = false;
};

// The conjunction of the selected disjuncts: union of their structures over
// the shared free set. `subset_mask` bit i selects disjunct i; must be nonzero.
ConjunctiveQuery combined_query(const Ucq& psi, uint64_t subset_mask);

// Enumerates all 2^l - 1 nonempty subsets (Gray-code order, optionally sharded
// across threads) and groups the combined queries into coefficient classes.
ExpansionTable cq_expansion(const Ucq& psi, ExpansionMode mode, const ExpansionOptions& opts = {});

// Coefficient of q's #equivalence class in psi's expansion; 0 when absent.
BigInt coefficient(const Ucq& psi, const ConjunctiveQuery& q, const ExpansionOptions& opts = {});

struct MetaVerdict {
    bool linear_time = false;
    std::vector<ExpansionEntry> blocking_terms;  // non-acyclic surviving classes
    std::string assumption;                      // fixed conditionality tag
};

inline constexpr const char* kMetaAssumption = "conditional on Triangle Conjecture";

// Linear-time countability of a quantifier-free UCQ: true iff every class
// surviving with a nonzero coefficient is acyclic.
MetaVerdict meta_decide(const Ucq& psi, const ExpansionOptions& opts = {});

// Max treewidth over the surviving classes of the expansion.
int hereditary_treewidth(const Ucq& psi, const ExpansionOptions& opts = {});

// Weisfeiler-Leman dimension of a quantifier-free UCQ on labelled graphs;
// equals the hereditary treewidth. Requires arity <= 2 and no R(v,v) atom.
int wl_dimension(const Ucq& psi, const ExpansionOptions& opts = {});

}  // namespace ucq
