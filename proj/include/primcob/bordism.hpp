#pragma once

#include "primcob/multipoint.hpp"

#include <optional>

namespace primcob {

struct ParityReport {
    std::string model_name;
    int r = 0;
    std::vector<int> counts;   ///< |Lambda_r_i| for i = 1..r
    std::vector<int> parities; ///< counts mod 2
    bool chain_pass = false;
    bool generic = false;
    GenericityReport genericity;
    std::vector<std::string> warnings;
    int grid_resolution = 0;
};

/// Boundary endpoint of a traced arc: either a point of the level-i set
/// (zero height slack) or of the level-(i-1) set (two tuple entries collide).
struct ArcEndpoint {
    bool collision = false; ///< false: slack boundary (level i), true: collision (level i-1)
    int point_index = -1;   ///< index into the matching resolved point set
    std::vector<std::array<double, 2>> config;
};

struct CobordismArc {
    int i = 0;
    std::vector<std::vector<std::array<double, 2>>> polyline; ///< sampled tuple configurations
    ArcEndpoint endpoint_a, endpoint_b;
};

struct TraceResult {
    int i = 0;
    std::vector<CobordismArc> arcs;
    bool pairing_pass = false;
    bool inconclusive = false;
    std::vector<std::string> warnings;
    ResolvedPointSet level_i;       ///< Lambda_r_i, the slack-0 boundary
    ResolvedPointSet level_im1;     ///< Lambda_r_{i-1}, the collision boundary
};

/// Mod-2 parity of every mixed set in the chain. A non-generic model yields
/// generic = false and no chain verdict.
ParityReport parity_chain(const PrimMapModel& model, int r, const SolveOptions& opts = {},
                          std::optional<GenericityReport> precomputed_genericity = std::nullopt);

/// Traces the 1-dimensional cobordism between the level-i and level-(i-1)
/// mixed sets: seeds one arc at every boundary point, follows it to the other
/// boundary, and verifies that the resulting endpoint matching is a perfect
/// pairing of the two point sets.
TraceResult trace_cobordism(const PrimMapModel& model, int r, int i,
                            const SolveOptions& opts = {});

/// Classical parity consistency: an even fold count on curves, cusp count
/// congruent to the Euler characteristic on builtin surfaces.
bool euler_cross_check(const PrimMapModel& model, const SolveOptions& opts = {});

} // namespace primcob
