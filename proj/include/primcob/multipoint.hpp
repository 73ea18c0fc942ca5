#pragma once

#include "primcob/prim_map.hpp"

#include <string>
#include <vector>

namespace primcob {

struct SolveOptions {
    int grid_resolution = 256;       // per-axis samples for curves; per-axis for surfaces
    double diagonal_tube = 1e-3;     // exclusion radius around the fat diagonal
    double dedup_radius = 1e-6;      // merge radius after refinement
    double residual_tol = 1e-10;
    int max_newton_iters = 60;
};

/// One resolved configuration: an ordered tuple of domain points with the
/// trailing entries in canonical (sorted) order, its common target value and
/// the final residual of the defining system.
struct ResolvedPoint {
    std::vector<std::array<double, 2>> tuple;
    std::array<double, 3> target{0, 0, 0};
    double residual = 0;
    int index = 0;
};

struct ResolvedPointSet {
    std::string kind; // "M_r", "N_r", "Sigma_1^j", "Lambda_r_i"
    int r = 0;
    int i = 0;
    int j = 0;
    std::vector<ResolvedPoint> points;
    std::vector<std::string> warnings;
    int grid_resolution = 0;
    int refinement_iterations = 0;

    int count() const { return static_cast<int>(points.size()); }
};

struct Polyline {
    std::vector<std::array<double, 2>> pts;
    bool closed = false;
};

/// Result of find_strata: dimension-0 strata come back as points, the fold
/// curves of a surface as traced polylines (with the points member empty).
struct StrataResult {
    bool is_polyline = false;
    ResolvedPointSet points;
    std::vector<Polyline> polylines;
};

/// Resolved r-fold point sets in source (tuples up to the action on the
/// trailing entries) and target (full quotient). Requires the dimension
/// n - (r-1)(k+1) to be zero for the model.
std::pair<ResolvedPointSet, ResolvedPointSet> find_multiple_points(const PrimMapModel& model,
                                                                   int r,
                                                                   const SolveOptions& opts = {});

/// Level-j singularity locus of the projection. Curves: j = 1 points.
/// Surfaces: j = 1 fold polylines, j = 2 cusp points.
StrataResult find_strata(const PrimMapModel& model, int j, const SolveOptions& opts = {});

/// Mixed set: configurations (x_1, [x_2..x_i]) with x_1 on the level-(r-i)
/// stratum of the projection and the lift taking one common value on all
/// entries. i = r delegates to find_multiple_points, i = 1 to find_strata.
ResolvedPointSet find_mixed(const PrimMapModel& model, int r, int i,
                            const SolveOptions& opts = {});

/// True iff the source set is an r-sheeted covering of the target set.
bool covering_check(const ResolvedPointSet& source, const ResolvedPointSet& target);

} // namespace primcob
