#include "primcob/local_cobordism.hpp"

#include <cmath>
#include <stdexcept>

namespace primcob {

namespace {

Rat factorial(int m) {
    Rat f(1);
    for (int a = 2; a <= m; ++a) f *= a;
    return f;
}

SourcePoint point_from_coeffs(const NormalFormSpec& spec, const Rat& t,
                              const std::map<std::pair<int, int>, Rat>& coeffs) {
    SourcePoint x;
    x.t = t;
    x.y = coeffs;
    x.s.assign(static_cast<std::size_t>(spec.z), Rat(0));
    return x;
}

void verify_pair(const PairSolution& sol) {
    for (int i = 0; i <= sol.spec.k; ++i) {
        RationalPoly p = component_poly(sol.spec, sol.u, i);
        for (int m = 1; m <= sol.j; ++m)
            if (p.derivative(m).eval(sol.tu) != 0)
                throw std::logic_error("pair solution violates derivative constraint");
        if (p.eval(sol.tu) != p.eval(sol.tv))
            throw std::logic_error("pair solution violates value-matching constraint");
    }
}

} // namespace

PairSolution solve_pair(const NormalFormSpec& spec, int j, const Rat& tu, const Rat& tv,
                        const HighBlock& high) {
    spec.validate();
    if (j < 1 || j >= spec.r - 1)
        throw std::invalid_argument(j >= spec.r - 1 ? "use solve_pair_top"
                                                    : "stratum level must be >= 1");
    if (tv <= tu) throw std::invalid_argument("outside half-space: need tv > tu");

    PairSolution sol;
    sol.spec = spec;
    sol.j = j;
    sol.tu = tu;
    sol.tv = tv;

    Rat gap = tv - tu;
    for (int i = 0; i <= spec.k; ++i) {
        // Fixed high part rhat; for the first component it also carries the
        // unit leading term of degree r+1.
        RationalPoly rhat;
        if (i == 0) rhat = RationalPoly::monomial(Rat(1), spec.r + 1);
        for (int m = j + 2; m <= spec.r; ++m) {
            if (i == 0 && m == spec.r) continue;
            auto it = high.find({i, m});
            if (it == high.end()) throw std::invalid_argument("incomplete high coefficient block");
            rhat = rhat + RationalPoly::monomial(it->second, m);
            sol.coeffs[{i, m}] = it->second;
        }

        // q^(m)(tu) = -rhat^(m)(tu) for m = 1..j; the Taylor identity at tu
        // evaluated at tv yields the (j+1)-st coefficient.
        std::vector<Rat> qd(static_cast<std::size_t>(j) + 1, Rat(0));
        for (int m = 1; m <= j; ++m) qd[static_cast<std::size_t>(m)] = -rhat.derivative(m).eval(tu);

        Rat sum(0);
        Rat gap_pow(1);
        for (int m = 1; m <= j; ++m) {
            gap_pow *= gap;
            sum += qd[static_cast<std::size_t>(m)] * gap_pow / factorial(m);
        }
        gap_pow *= gap; // (tv - tu)^(j+1)
        Rat lambda = (rhat.eval(tu) - rhat.eval(tv) - sum) / gap_pow;

        // q(t) - q(tu) as a polynomial in (t - tu), shifted back and pinned
        // by q(0) = 0.
        std::vector<Rat> ucoeffs(static_cast<std::size_t>(j) + 2, Rat(0));
        for (int m = 1; m <= j; ++m)
            ucoeffs[static_cast<std::size_t>(m)] = qd[static_cast<std::size_t>(m)] / factorial(m);
        ucoeffs[static_cast<std::size_t>(j) + 1] = lambda;
        RationalPoly q = RationalPoly(std::move(ucoeffs)).taylor_shift(-tu);
        q = q - RationalPoly::constant(q.eval(Rat(0)));

        RationalPoly p = q + rhat;
        for (int m = 1; m <= j + 1; ++m) sol.coeffs[{i, m}] = p.coeff(m);
    }

    sol.u = point_from_coeffs(spec, tu, sol.coeffs);
    sol.v = point_from_coeffs(spec, tv, sol.coeffs);
    verify_pair(sol);
    return sol;
}

PairSolution solve_pair_top(const NormalFormSpec& spec, const Rat& tv) {
    spec.validate();
    if (spec.r < 2) throw std::invalid_argument("top pair needs r >= 2");
    if (tv <= 0) throw std::invalid_argument("outside half-space: need tv > 0");

    PairSolution sol;
    sol.spec = spec;
    sol.j = spec.r - 1;
    sol.tv = tv;
    sol.tu = -tv / spec.r;

    // p_0(t) = p_0(tu) + (t + r tu)(t - tu)^r, constant term pinned to zero.
    RationalPoly lin(std::vector<Rat>{Rat(spec.r) * sol.tu, Rat(1)});
    RationalPoly pow = RationalPoly::constant(Rat(1));
    RationalPoly shift(std::vector<Rat>{-sol.tu, Rat(1)});
    for (int a = 0; a < spec.r; ++a) pow = pow * shift;
    RationalPoly p0 = lin * pow;
    p0 = p0 - RationalPoly::constant(p0.eval(Rat(0)));

    if (p0.coeff(spec.r) != 0 || p0.coeff(spec.r + 1) != 1)
        throw std::logic_error("top pair polynomial has unexpected leading terms");

    for (int m = 1; m <= spec.r - 1; ++m) sol.coeffs[{0, m}] = p0.coeff(m);
    for (int i = 1; i <= spec.k; ++i)
        for (int m = 1; m <= spec.r; ++m) sol.coeffs[{i, m}] = Rat(0);

    sol.u = point_from_coeffs(spec, sol.tu, sol.coeffs);
    sol.v = point_from_coeffs(spec, sol.tv, sol.coeffs);
    verify_pair(sol);
    return sol;
}

ConvergenceReport boundary_limit_check(const NormalFormSpec& spec, int j,
                                       const std::vector<PathEntry>& path,
                                       const SourcePoint& limit_point) {
    spec.validate();
    if (j < 1 || j >= spec.r) throw std::invalid_argument("invalid stratum level for path");
    check_conforms(spec, limit_point);

    ConvergenceReport rep;
    for (const auto& entry : path) {
        PairSolution sol = (j == spec.r - 1) ? solve_pair_top(spec, entry.tv)
                                             : solve_pair(spec, j, entry.tu, entry.tv, entry.high);
        rep.gaps.push_back(to_double(sol.tv - sol.tu));
        double d2 = 0.0;
        for (const auto& [ij, c] : sol.coeffs) {
            auto it = limit_point.y.find(ij);
            Rat lim = (it != limit_point.y.end()) ? it->second : Rat(0);
            double diff = to_double(c - lim);
            d2 += diff * diff;
        }
        rep.distances.push_back(std::sqrt(d2));
    }

    rep.limit_in_stratum = stratum_membership(spec, limit_point, j + 1);
    bool any_tight = false, all_tight_ok = true;
    for (std::size_t n = 0; n < rep.gaps.size(); ++n) {
        if (rep.gaps[n] <= 1e-4) {
            any_tight = true;
            if (rep.distances[n] > 1e-6) all_tight_ok = false;
        }
    }
    rep.converged = any_tight && all_tight_ok;
    rep.pass = rep.converged && rep.limit_in_stratum;
    return rep;
}

} // namespace primcob
