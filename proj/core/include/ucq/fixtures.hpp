#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucq/simplicial.hpp"
#include "ucq/structure.hpp"

namespace ucq {

struct GeneratedFile {
    std::string name;
    std::string content;
};

// delta1.cx, delta2.cx: the two worked four-element complexes with reduced
// Euler characteristics -2 and 0.
std::vector<GeneratedFile> generate_figure1();

// The six selected substructures S_A of K_3^4 (s1, s24, s14, s34, s23, s123)
// plus psi1.ucq = (S_1, S_34, S_24, S_23) and psi2.ucq = (S_24, S_34, S_14,
// S_123).
std::vector<GeneratedFile> generate_figure2();

// phi<k>.ucq: the union over i < j of
//   phi_k^{i,j} = exists y: E_i(x_i,y) & E_j(x_j,y) & AND_{l != i,j} E_l(x_l, x_bot)
std::vector<GeneratedFile> generate_appendix_phi(int k);

// psi_k<k>.ucq: the single query
//   psi_k = exists y: AND_i E(x_i, x_bot) & E(x_i, y)
std::vector<GeneratedFile> generate_appendix_psi(int k);

// k<t><k>.ucq (single quantifier-free CQ) and k<t><k>.db (the same structure
// as a database).
std::vector<GeneratedFile> generate_stretched_clique(int t, int k);

// random<n>_<seed>.cx: seeded random complex on ground elements 1..n.
std::vector<GeneratedFile> generate_random_complex(int n, uint64_t seed);

// In-memory builders behind the generators, reused by tests.
Complex figure1_delta1();
Complex figure1_delta2();
Ucq figure2_psi1();
Ucq figure2_psi2();
Structure substructure_of_stretch(const StretchedClique& sc, const std::vector<int>& layers);
Ucq appendix_phi(int k);
ConjunctiveQuery appendix_psi(int k);
Complex random_complex(int n, uint64_t seed);

}  // namespace ucq
