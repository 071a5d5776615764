#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "parab/geometry.hpp"

namespace parab {

/// Combinatorics of the lower convex hull of a lifted grid function, kept
/// around for subgradient queries and for walking slides along hull edges.
struct HullInfo {
    /// Downward-facing facets as node-id triangles ([2] = -1 for 1-D chords).
    std::vector<std::array<NodeId, 3>> facets;
    /// Per node: one covering facet, -1 if uncovered.
    std::vector<std::int32_t> node_facet;
    /// Per node: supporting slope of the lifted envelope (physical units),
    /// lexicographically smallest among covering facets.
    std::vector<Vec> node_slope;
    std::vector<std::uint8_t> is_vertex;
    bool exact = false;   // hull-based (n <= 2) vs directional relaxation (n = 3)
    long uncovered = 0;   // rasterization fallbacks, expected 0
};

/// Lower convex envelope of the lifted values (one value per domain node).
/// Returns envelope values in the lifted frame and fills `info`.
/// n = 1: monotone chain; n = 2: incremental 3-D lower hull with filtered
/// predicates; n = 3: sweeps of chord relaxation along 13 lattice lines.
std::vector<double> lower_envelope(const GridDomain& dom, const std::vector<double>& lifted,
                                   HullInfo& info);

}  // namespace parab
