#pragma once

#include "primcob/poly.hpp"

#include <map>
#include <vector>

namespace primcob {

/// The local model of a corank-1 singular germ of multiplicity r in
/// codimension k with z residual directions. Source dimension is
/// r(k+1) + z, the projected target has dimension 1 + k + (r(k+1)-1) + z,
/// the lift has one more coordinate (the height t).
struct NormalFormSpec {
    int r = 1;
    int k = 0;
    int z = 0;

    int source_dim() const { return r * (k + 1) + z; }
    int target_dim() const { return 1 + k + (r * (k + 1) - 1) + z; }
    int lift_target_dim() const { return target_dim() + 1; }
    /// Number of y-slots: pairs (i, j), 0 <= i <= k, 1 <= j <= r, slot (0, r) absent.
    int y_count() const { return r * (k + 1) - 1; }
    void validate() const;
};

/// Point in the source chart: distinguished variable t, coefficient block y,
/// residual block s. y is keyed by (i, j) with the (0, r) slot absent.
struct SourcePoint {
    Rat t;
    std::map<std::pair<int, int>, Rat> y;
    std::vector<Rat> s;
};

struct TargetPoint {
    std::vector<Rat> values;
};

void check_conforms(const NormalFormSpec& spec, const SourcePoint& x);

/// p_0(t) = t^{r+1} + sum_{j=1}^{r-1} y(0,j) t^j;
/// p_i(t) = sum_{j=1}^{r} y(i,j) t^j for i >= 1.
RationalPoly component_poly(const NormalFormSpec& spec, const SourcePoint& x, int i);

TargetPoint eval_normal_form(const NormalFormSpec& spec, const SourcePoint& x);
TargetPoint eval_lift(const NormalFormSpec& spec, const SourcePoint& x);

/// Closure-sense membership in the level-j singularity stratum:
/// p_i^(m)(t) = 0 for all 0 <= i <= k, 1 <= m <= j. Throws for j < 1 or j > r.
bool stratum_membership(const NormalFormSpec& spec, const SourcePoint& x, int j);

/// Free parameters of the level-j stratum chart, j < r: t, the residual block,
/// and the coefficients y(i,m) for j+1 <= m <= r (slot (0,r) absent).
struct StratumParams {
    Rat t;
    std::vector<Rat> s;
    std::map<std::pair<int, int>, Rat> high;
};

/// Solves the triangular linear system p_i^(m)(t) = 0, m = j..1, for the low
/// coefficients; the result passes stratum_membership(.., j) exactly.
SourcePoint stratum_parametrize(const NormalFormSpec& spec, int j, const StratumParams& params);

/// The level-r stratum is the single point t = 0, y = 0 over each residual value.
SourcePoint top_stratum_point(const NormalFormSpec& spec, const std::vector<Rat>& s);

/// One point of the fiber of the projected map through x0. The distinguished
/// coordinate may be irrational; it is reported as an isolating interval plus
/// a refined float, with exact = true when t is an exact rational.
struct FiberPoint {
    Rat t_lo, t_hi;
    double t_approx;
    bool exact;
};

/// All real solutions of F(x) = F(x0). The y and s blocks are forced to match
/// x0; the t values are the real roots of gcd_i(p_i(t) - p_i(t0)).
std::vector<FiberPoint> solve_fiber(const NormalFormSpec& spec, const SourcePoint& x0);

} // namespace primcob
