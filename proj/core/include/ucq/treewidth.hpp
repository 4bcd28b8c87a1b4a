#pragma once

#include <string>
#include <vector>

#include "ucq/structure.hpp"

namespace ucq {

// Rooted tree decomposition; node i's parent is parent[i] (-1 for the root).
struct TreeDecomposition {
    std::vector<int> parent;
    std::vector<std::vector<int>> bags;  // sorted vertex ids

    int width() const;  // max bag size - 1; 0 for an empty decomposition
};

struct TreewidthResult {
    int width = 0;
    TreeDecomposition decomposition;
};

// Exact treewidth via dynamic programming over vertex subsets (2^n states),
// with a witness decomposition built from the recovered elimination order.
// Edgeless graphs get width 0 with single-vertex bags.
TreewidthResult treewidth_exact(const GaifmanGraph& g, int cap = 20);

// (lower, upper) with lower from the maximum-minimum-degree bound and upper
// from min-fill elimination. No size cap.
std::pair<int, int> treewidth_bounds(const GaifmanGraph& g);

// Machine check of conditions (C1)-(C3) plus tree well-formedness.
bool validate_decomposition(const GaifmanGraph& g, const TreeDecomposition& td,
                            std::string* why = nullptr);

}  // namespace ucq
