#pragma once

namespace ucq {

// Resource limits for the exponential-time pieces. Every limit is a hard,
// named error when exceeded (CapExceededError), never a silent approximation.
struct Caps {
    int max_disjuncts = 20;                    // subset enumeration, 2^l terms
    int max_universe = 20;                     // exact treewidth DP, 2^n states
    int max_ground = 24;                       // simplicial face enumeration
    int max_core_universe = 12;                // endomorphism search for #cores
    long long max_assignments = 10'000'000;    // brute-force answer enumeration
    int jobs = 1;                              // worker threads for subset sharding
};

}  // namespace ucq
