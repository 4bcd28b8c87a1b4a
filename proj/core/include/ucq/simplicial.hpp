#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ucq/caps.hpp"
#include "ucq/structure.hpp"

namespace ucq {

// Abstract simplicial complex encoded by its ground set and facet list.
// Ground sets are limited to 64 elements (faces and facets are bitmasks).
// Facets are kept maximal and ordered by size descending, then by element
// sequence; this order fixes the facet numbering used downstream.
class Complex {
public:
    // Non-maximal input facets are dropped (counted in `discarded_facets` when
    // given). Every ground element must appear in some facet so that all
    // singletons are faces.
    static Complex from_facets(std::vector<std::string> ground,
                               const std::vector<std::vector<std::string>>& facets,
                               int* discarded_facets = nullptr);

    int ground_size() const { return static_cast<int>(ground_.size()); }
    const std::vector<std::string>& ground() const { return ground_; }
    const std::string& ground_name(int i) const { return ground_[i]; }
    int ground_index(std::string_view name) const;  // -1 when absent
    const std::vector<uint64_t>& facets() const { return facets_; }
    uint64_t full_mask() const;

    bool is_trivial() const { return ground_.size() == 1; }
    bool ground_is_face() const;

private:
    std::vector<std::string> ground_;
    std::vector<uint64_t> facets_;
};

// The downward closure of the facets, empty set included, ordered by
// (size, mask). Capped by caps.max_ground.
std::vector<uint64_t> enumerate_faces(const Complex& c, const Caps& caps = {});

// -sum over faces S of (-1)^{|S|}.
long long reduced_euler_characteristic(const Complex& c, const Caps& caps = {});

// Same value by inclusion-exclusion over facet subsets (a face is a subset of
// some facet); cross-check route, needs at most ~20 facets.
long long reduced_euler_characteristic_by_facets(const Complex& c);

// Every facet containing y also contains x.
bool dominates(const Complex& c, int x, int y);
bool dominates(const Complex& c, std::string_view x, std::string_view y);

// Deletes dominated elements (first dominated element in ground order each
// round) until none remains. Preserves the reduced Euler characteristic.
Complex reduce_to_irreducible(const Complex& c);

// Power-complex presentation of an irreducible, non-trivial complex whose
// ground set is not a face: U = {E_1..E_k} for the facets, b(x) = {E_i | x
// not in F_i}, ground of the power complex = image of b.
struct PowerComplexData {
    std::vector<std::string> universe;      // E_1..E_k
    std::vector<uint64_t> ground_masks;     // b(x) per original ground element, input order
    std::vector<std::string> ground_names;  // the original names, aligned with ground_masks
};

PowerComplexData power_complex(const Complex& c);

// The structure K_t^k: t-clique with every edge stretched into a k-edge path,
// one singleton binary relation per stretch edge.
struct StretchedClique {
    int t = 0;
    int k = 0;
    Structure structure;
    int clique_edges() const { return t * (t - 1) / 2; }
};

StretchedClique build_stretched_clique(int t, int k);

// Substructure holding exactly the i-th stretch edge of every clique edge,
// on the full universe. 1 <= i <= k. Removing any one layer from K_t^k
// leaves an acyclic structure.
Structure layer(const StretchedClique& sc, int i);

// Lemma-4.13-style wrapper: reduce to irreducible; on the degenerate branches
// (trivial, or the ground set is a face) return the Euler characteristic 0;
// otherwise emit the quantifier-free UCQ over K_t^k built from the power
// complex, one disjunct per ground element.
struct ComplexReduction {
    std::variant<long long, Ucq> result;
    bool is_euler() const { return result.index() == 0; }
    long long euler() const { return std::get<long long>(result); }
    const Ucq& ucq() const { return std::get<Ucq>(result); }
};

ComplexReduction reduce_complex_to_ucq(const Complex& c, int t, const Caps& caps = {});

}  // namespace ucq
