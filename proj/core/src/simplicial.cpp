#include "ucq/simplicial.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "ucq/errors.hpp"

namespace ucq {

namespace {

// element index sequence of a mask, ascending
std::vector<int> mask_elements(uint64_t mask) {
    std::vector<int> out;
    for (uint64_t m = mask; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

void sort_facets(std::vector<uint64_t>& facets) {
    std::sort(facets.begin(), facets.end(), [](uint64_t a, uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa > pb;  // larger facets first
        return mask_elements(a) < mask_elements(b);
    });
}

std::vector<uint64_t> drop_non_maximal(std::vector<uint64_t> facets, int* discarded) {
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    std::vector<uint64_t> maximal;
    int dropped = 0;
    for (uint64_t f : facets) {
        bool contained = false;
        for (uint64_t g : facets)
            if (f != g && (f & g) == f) { contained = true; break; }
        if (contained)
            ++dropped;
        else
            maximal.push_back(f);
    }
    if (discarded) *discarded += dropped;
    return maximal;
}

}  // namespace

Complex Complex::from_facets(std::vector<std::string> ground,
                             const std::vector<std::vector<std::string>>& facets,
                             int* discarded_facets) {
    Complex c;
    c.ground_ = std::move(ground);
    if (c.ground_.empty()) throw PreconditionError("a complex needs a nonempty ground set");
    if (c.ground_.size() > 64) throw CapExceededError("ground", "ground sets are limited to 64 elements");
    {
        std::set<std::string> seen;
        for (const auto& g : c.ground_)
            if (!seen.insert(g).second) throw PreconditionError("duplicate ground element '" + g + "'");
    }
    if (discarded_facets) *discarded_facets = 0;
    std::vector<uint64_t> masks;
    for (const auto& facet : facets) {
        uint64_t mask = 0;
        for (const auto& name : facet) {
            int i = c.ground_index(name);
            if (i < 0) throw PreconditionError("facet element '" + name + "' not in the ground set");
            mask |= uint64_t(1) << i;
        }
        if (mask == 0) throw PreconditionError("empty facet");
        masks.push_back(mask);
    }
    masks = drop_non_maximal(std::move(masks), discarded_facets);
    sort_facets(masks);
    uint64_t covered = 0;
    for (uint64_t f : masks) covered |= f;
    if (covered != c.full_mask())
        throw PreconditionError("every ground element must appear in at least one facet");
    c.facets_ = std::move(masks);
    return c;
}

int Complex::ground_index(std::string_view name) const {
    for (size_t i = 0; i < ground_.size(); ++i)
        if (ground_[i] == name) return static_cast<int>(i);
    return -1;
}

uint64_t Complex::full_mask() const {
    return ground_.size() == 64 ? ~uint64_t(0) : (uint64_t(1) << ground_.size()) - 1;
}

bool Complex::ground_is_face() const {
    for (uint64_t f : facets_)
        if (f == full_mask()) return true;
    return false;
}

std::vector<uint64_t> enumerate_faces(const Complex& c, const Caps& caps) {
    if (c.ground_size() > caps.max_ground)
        throw CapExceededError("ground", std::to_string(c.ground_size()) +
                                             " ground elements exceeds cap " +
                                             std::to_string(caps.max_ground));
    std::set<uint64_t> faces;
    for (uint64_t f : c.facets()) {
        // all submasks of f, the empty set included
        uint64_t sub = f;
        while (true) {
            faces.insert(sub);
            if (sub == 0) break;
            sub = (sub - 1) & f;
        }
    }
    std::vector<uint64_t> out(faces.begin(), faces.end());
    std::sort(out.begin(), out.end(), [](uint64_t a, uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    return out;
}

long long reduced_euler_characteristic(const Complex& c, const Caps& caps) {
    long long signed_sum = 0;
    for (uint64_t face : enumerate_faces(c, caps))
        signed_sum += (std::popcount(face) % 2 == 0) ? 1 : -1;
    return -signed_sum;
}

long long reduced_euler_characteristic_by_facets(const Complex& c) {
    size_t k = c.facets().size();
    if (k > 24) throw CapExceededError("facets", "facet-based route handles at most 24 facets");
    // sum over faces of (-1)^{|S|} = sum over nonempty facet subsets T of
    // (-1)^{|T|+1} [ intersection of T empty ]; chi-hat negates it
    long long value = 0;
    for (uint64_t sub = 1; sub < (uint64_t(1) << k); ++sub) {
        uint64_t intersection = c.full_mask();
        for (uint64_t m = sub; m != 0; m &= m - 1)
            intersection &= c.facets()[std::countr_zero(m)];
        if (intersection == 0) value += (std::popcount(sub) % 2 == 1) ? 1 : -1;
    }
    return -value;
}

bool dominates(const Complex& c, int x, int y) {
    if (x == y) throw PreconditionError("domination needs two distinct elements");
    if (x < 0 || x >= c.ground_size() || y < 0 || y >= c.ground_size())
        throw PreconditionError("element outside the ground set");
    uint64_t bx = uint64_t(1) << x, by = uint64_t(1) << y;
    for (uint64_t f : c.facets())
        if ((f & by) && !(f & bx)) return false;
    return true;
}

bool dominates(const Complex& c, std::string_view x, std::string_view y) {
    int ix = c.ground_index(x), iy = c.ground_index(y);
    if (ix < 0 || iy < 0) throw PreconditionError("element outside the ground set");
    return dominates(c, ix, iy);
}

namespace {

Complex delete_element(const Complex& c, int y) {
    std::vector<std::string> ground;
    for (int i = 0; i < c.ground_size(); ++i)
        if (i != y) ground.push_back(c.ground_name(i));
    std::vector<std::vector<std::string>> facets;
    for (uint64_t f : c.facets()) {
        std::vector<std::string> names;
        for (int i : mask_elements(f))
            if (i != y) names.push_back(c.ground_name(i));
        if (!names.empty()) facets.push_back(std::move(names));
    }
    return Complex::from_facets(std::move(ground), facets);
}

}  // namespace

Complex reduce_to_irreducible(const Complex& c) {
    Complex current = c;
    bool changed = true;
    while (changed && current.ground_size() > 1) {
        changed = false;
        for (int y = 0; y < current.ground_size() && !changed; ++y)
            for (int x = 0; x < current.ground_size() && !changed; ++x) {
                if (x == y) continue;
                if (dominates(current, x, y)) {
                    current = delete_element(current, y);
                    changed = true;
                }
            }
    }
    return current;
}

PowerComplexData power_complex(const Complex& c) {
    if (c.is_trivial()) throw PreconditionError("power complex: the complex is trivial");
    if (c.ground_is_face()) throw PreconditionError("power complex: the ground set is a face");
    for (int y = 0; y < c.ground_size(); ++y)
        for (int x = 0; x < c.ground_size(); ++x)
            if (x != y && dominates(c, x, y))
                throw PreconditionError("power complex: the complex is not irreducible ('" +
                                        c.ground_name(x) + "' dominates '" + c.ground_name(y) + "')");
    size_t k = c.facets().size();
    if (k > 64) throw CapExceededError("facets", "power complex over more than 64 facets");
    PowerComplexData data;
    for (size_t i = 0; i < k; ++i) data.universe.push_back("E" + std::to_string(i + 1));
    for (int x = 0; x < c.ground_size(); ++x) {
        uint64_t b = 0;
        for (size_t i = 0; i < k; ++i)
            if (!(c.facets()[i] & (uint64_t(1) << x))) b |= uint64_t(1) << i;
        data.ground_masks.push_back(b);
        data.ground_names.push_back(c.ground_name(x));
    }
    return data;
}

namespace {

std::string stretch_symbol(int edge, int j) {
    return "E" + std::to_string(edge) + "_" + std::to_string(j);
}

}  // namespace

StretchedClique build_stretched_clique(int t, int k) {
    if (t < 2) throw PreconditionError("stretched clique needs t >= 2");
    if (k < 1) throw PreconditionError("stretched clique needs k >= 1");
    int m = t * (t - 1) / 2;
    std::vector<RelationSymbol> symbols;
    for (int e = 1; e <= m; ++e)
        for (int j = 1; j <= k; ++j) symbols.push_back({stretch_symbol(e, j), 2});
    StructureBuilder builder(Signature{symbols});
    for (int i = 1; i <= t; ++i) builder.add_element("v" + std::to_string(i));
    int edge = 0;
    for (int a = 1; a <= t; ++a)
        for (int b = a + 1; b <= t; ++b) {
            ++edge;
            std::string previous = "v" + std::to_string(a);
            for (int j = 1; j <= k; ++j) {
                std::string next = (j == k) ? "v" + std::to_string(b)
                                            : "p" + std::to_string(edge) + "_" + std::to_string(j);
                builder.add_tuple_by_names(stretch_symbol(edge, j), {previous, next});
                previous = next;
            }
        }
    StretchedClique sc;
    sc.t = t;
    sc.k = k;
    sc.structure = builder.build();
    return sc;
}

Structure layer(const StretchedClique& sc, int i) {
    if (i < 1 || i > sc.k) throw PreconditionError("layer index out of range");
    StructureBuilder builder(sc.structure.signature());
    for (const auto& name : sc.structure.element_names()) builder.add_element(name);
    for (int e = 1; e <= sc.clique_edges(); ++e) {
        std::string sym = stretch_symbol(e, i);
        int s = sc.structure.signature().index_of(sym);
        for (const auto& t : sc.structure.relation(s)) builder.add_tuple(sym, t);
    }
    return builder.build();
}

ComplexReduction reduce_complex_to_ucq(const Complex& c, int t, const Caps& caps) {
    (void)caps;
    if (t < 2) throw PreconditionError("reduction needs t >= 2");
    // the ground set being a face forces every subset to be a face
    if (c.ground_is_face()) return {0LL};
    Complex irreducible = reduce_to_irreducible(c);
    if (irreducible.is_trivial()) return {0LL};
    if (irreducible.ground_is_face()) return {0LL};

    PowerComplexData power = power_complex(irreducible);
    int k = static_cast<int>(power.universe.size());
    StretchedClique sc = build_stretched_clique(t, k);
    std::vector<Structure> disjuncts;
    for (uint64_t mask : power.ground_masks) {
        Structure disjunct;
        bool first = true;
        for (int i = 0; i < k; ++i) {
            if (!(mask & (uint64_t(1) << i))) continue;
            Structure li = layer(sc, i + 1);
            disjunct = first ? std::move(li) : union_structures(disjunct, li);
            first = false;
        }
        disjuncts.push_back(std::move(disjunct));
    }
    return {Ucq(std::move(disjuncts), sc.structure.element_names())};
}

}  // namespace ucq
