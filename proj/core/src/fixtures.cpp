#include "ucq/fixtures.hpp"

#include <random>

#include "ucq/errors.hpp"
#include "ucq/io.hpp"

namespace ucq {

Complex figure1_delta1() {
    return Complex::from_facets({"1", "2", "3", "4"},
                                {{"2", "3", "4"}, {"1", "2"}, {"1", "3"}, {"1", "4"}});
}

Complex figure1_delta2() {
    return Complex::from_facets({"1", "2", "3", "4"},
                                {{"1", "2"}, {"2", "3"}, {"1", "3"}, {"4"}});
}

Structure substructure_of_stretch(const StretchedClique& sc, const std::vector<int>& layers) {
    Structure result;
    bool first = true;
    for (int i : layers) {
        Structure li = layer(sc, i);
        result = first ? std::move(li) : union_structures(result, li);
        first = false;
    }
    return result;
}

Ucq figure2_psi1() {
    StretchedClique sc = build_stretched_clique(3, 4);
    std::vector<Structure> disjuncts = {
        substructure_of_stretch(sc, {1}),
        substructure_of_stretch(sc, {3, 4}),
        substructure_of_stretch(sc, {2, 4}),
        substructure_of_stretch(sc, {2, 3}),
    };
    return Ucq(std::move(disjuncts), sc.structure.element_names());
}

Ucq figure2_psi2() {
    StretchedClique sc = build_stretched_clique(3, 4);
    std::vector<Structure> disjuncts = {
        substructure_of_stretch(sc, {2, 4}),
        substructure_of_stretch(sc, {3, 4}),
        substructure_of_stretch(sc, {1, 4}),
        substructure_of_stretch(sc, {1, 2, 3}),
    };
    return Ucq(std::move(disjuncts), sc.structure.element_names());
}

std::vector<GeneratedFile> generate_figure1() {
    return {
        {"delta1.cx", serialize_complex_file(figure1_delta1())},
        {"delta2.cx", serialize_complex_file(figure1_delta2())},
    };
}

namespace {

std::string single_cq_file(const Structure& s) {
    return serialize_query_file(Ucq({s}, s.element_names()));
}

}  // namespace

std::vector<GeneratedFile> generate_figure2() {
    StretchedClique sc = build_stretched_clique(3, 4);
    std::vector<GeneratedFile> files;
    const std::vector<std::pair<std::string, std::vector<int>>> selected = {
        {"s1.ucq", {1}},     {"s24.ucq", {2, 4}}, {"s14.ucq", {1, 4}},
        {"s34.ucq", {3, 4}}, {"s23.ucq", {2, 3}}, {"s123.ucq", {1, 2, 3}},
    };
    for (const auto& [name, layers] : selected)
        files.push_back({name, single_cq_file(substructure_of_stretch(sc, layers))});
    files.push_back({"psi1.ucq", serialize_query_file(figure2_psi1())});
    files.push_back({"psi2.ucq", serialize_query_file(figure2_psi2())});
    return files;
}

Ucq appendix_phi(int k) {
    if (k < 3) throw PreconditionError("appendix phi needs k >= 3");
    std::vector<RelationSymbol> symbols;
    for (int i = 1; i <= k; ++i) symbols.push_back({"E" + std::to_string(i), 2});
    Signature signature{symbols};
    std::vector<std::string> free_names;
    for (int i = 1; i <= k; ++i) free_names.push_back("x" + std::to_string(i));
    free_names.push_back("x_bot");

    std::vector<Structure> disjuncts;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
            StructureBuilder builder(signature);
            for (const auto& n : free_names) builder.add_element(n);
            builder.add_tuple_by_names("E" + std::to_string(i), {"x" + std::to_string(i), "y"});
            builder.add_tuple_by_names("E" + std::to_string(j), {"x" + std::to_string(j), "y"});
            for (int l = 1; l <= k; ++l) {
                if (l == i || l == j) continue;
                builder.add_tuple_by_names("E" + std::to_string(l),
                                           {"x" + std::to_string(l), "x_bot"});
            }
            disjuncts.push_back(builder.build());
        }
    return Ucq(std::move(disjuncts), std::move(free_names));
}

ConjunctiveQuery appendix_psi(int k) {
    if (k < 1) throw PreconditionError("appendix psi needs k >= 1");
    StructureBuilder builder(Signature{{{"E", 2}}});
    std::vector<std::string> free_names;
    for (int i = 1; i <= k; ++i) free_names.push_back("x" + std::to_string(i));
    free_names.push_back("x_bot");
    for (const auto& n : free_names) builder.add_element(n);
    for (int i = 1; i <= k; ++i) {
        builder.add_tuple_by_names("E", {"x" + std::to_string(i), "x_bot"});
        builder.add_tuple_by_names("E", {"x" + std::to_string(i), "y"});
    }
    return ConjunctiveQuery::with_free_names(builder.build(), free_names);
}

std::vector<GeneratedFile> generate_appendix_phi(int k) {
    return {{"phi" + std::to_string(k) + ".ucq", serialize_query_file(appendix_phi(k))}};
}

std::vector<GeneratedFile> generate_appendix_psi(int k) {
    ConjunctiveQuery q = appendix_psi(k);
    Ucq single({q.body()}, q.free_names());
    return {{"psi_k" + std::to_string(k) + ".ucq", serialize_query_file(single)}};
}

std::vector<GeneratedFile> generate_stretched_clique(int t, int k) {
    StretchedClique sc = build_stretched_clique(t, k);
    std::string stem = "k" + std::to_string(t) + (t >= 10 || k >= 10 ? "_" : "") + std::to_string(k);
    return {
        {stem + ".ucq", single_cq_file(sc.structure)},
        {stem + ".db", serialize_database_file(sc.structure)},
    };
}

Complex random_complex(int n, uint64_t seed) {
    if (n < 1 || n > 24) throw PreconditionError("random complex needs 1 <= n <= 24");
    std::mt19937_64 rng(seed);
    std::vector<std::string> ground;
    for (int i = 1; i <= n; ++i) ground.push_back(std::to_string(i));

    std::uniform_int_distribution<int> facet_count_dist(1, 2 * n);
    std::uniform_int_distribution<int> coin(0, 1);
    int facet_count = facet_count_dist(rng);
    std::vector<std::vector<std::string>> facets;
    std::vector<bool> covered(n, false);
    for (int f = 0; f < facet_count; ++f) {
        std::vector<std::string> facet;
        for (int i = 0; i < n; ++i)
            if (coin(rng)) facet.push_back(ground[i]);
        if (facet.empty()) facet.push_back(ground[rng() % n]);
        for (const auto& name : facet) covered[std::stoi(name) - 1] = true;
        facets.push_back(std::move(facet));
    }
    for (int i = 0; i < n; ++i)
        if (!covered[i]) facets.push_back({ground[i]});
    return Complex::from_facets(std::move(ground), facets);
}

std::vector<GeneratedFile> generate_random_complex(int n, uint64_t seed) {
    Complex c = random_complex(n, seed);
    return {{"random" + std::to_string(n) + "_" + std::to_string(seed) + ".cx",
             serialize_complex_file(c)}};
}

}  // namespace ucq
