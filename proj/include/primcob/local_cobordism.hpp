#pragma once

#include "primcob/normal_form.hpp"

namespace primcob {

/// A solved pair (u, v): u on the level-j stratum of F, F(u) = F(v), u != v,
/// with tv > tu. Both points share one coefficient assignment.
struct PairSolution {
    NormalFormSpec spec;
    int j = 0;
    Rat tu, tv;
    std::map<std::pair<int, int>, Rat> coeffs;
    SourcePoint u, v;
};

/// High coefficient block for solve_pair: values y(i,m) for j+2 <= m <= r
/// per i, slot (0,r) absent.
using HighBlock = std::map<std::pair<int, int>, Rat>;

/// Closed-form solve of the pair constraints for j < r-1. For each component
/// independently: split p = q + rhat with rhat the fixed high part, recover
/// the (j+1)-st coefficient from the Taylor identity at tu evaluated at tv,
/// then rebuild q with q(0) = 0. Exact throughout.
PairSolution solve_pair(const NormalFormSpec& spec, int j, const Rat& tu, const Rat& tv,
                        const HighBlock& high);

/// The j = r-1 case: a single parameter tv > 0, tu = -tv/r, all companion
/// polynomials identically zero, p_0(t) = p_0(tu) + (t + r tu)(t - tu)^r
/// pinned by p_0(0) = 0.
PairSolution solve_pair_top(const NormalFormSpec& spec, const Rat& tv);

struct PathEntry {
    Rat tu, tv;
    HighBlock high;
};

struct ConvergenceReport {
    std::vector<double> gaps;      ///< tv - tu per step
    std::vector<double> distances; ///< coefficient distance to the limit point
    bool limit_in_stratum = false; ///< limit_point passes membership at level j+1
    bool converged = false;
    bool pass = false;
};

/// Solves every path entry and measures coefficient-vector distance to
/// limit_point. Passes when the distances are below 1e-6 once the gap is
/// below 1e-4 and the limit point lies on the level-(j+1) stratum exactly.
ConvergenceReport boundary_limit_check(const NormalFormSpec& spec, int j,
                                       const std::vector<PathEntry>& path,
                                       const SourcePoint& limit_point);

} // namespace primcob
