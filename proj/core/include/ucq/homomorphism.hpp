#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ucq/structure.hpp"

namespace ucq {

// Partial map from src elements to dst elements; kNoPin marks unassigned slots.
inline constexpr ElementId kNoPin = static_cast<ElementId>(-1);
using PartialMap = std::vector<ElementId>;

PartialMap empty_pin(const Structure& src);

// All homomorphisms src -> dst extending `pin`, in a deterministic order.
// Requires signature(src) contained in signature(dst).
std::vector<std::vector<ElementId>> enumerate_homomorphisms(const Structure& src,
                                                            const Structure& dst,
                                                            const PartialMap& pin = {});

// First homomorphism extending `pin` in the same deterministic order, if any.
std::optional<std::vector<ElementId>> find_homomorphism(const Structure& src,
                                                        const Structure& dst,
                                                        const PartialMap& pin = {});

bool homomorphism_exists(const Structure& src, const Structure& dst, const PartialMap& pin = {});

// Per-assignment consistency helper shared by the counting engines: true iff
// `map` (total on the elements it pins) violates no tuple all of whose
// elements are pinned.
bool partial_map_consistent(const Structure& src, const Structure& dst, const PartialMap& map);

}  // namespace ucq
