#include <doctest.h>

#include "primcob/local_cobordism.hpp"

#include <random>

using namespace primcob;

namespace {

Rat rand_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> den(1, 5);
    return Rat(num(rng), den(rng));
}

HighBlock rand_high(const NormalFormSpec& spec, int j, std::mt19937_64& rng) {
    HighBlock h;
    for (int i = 0; i <= spec.k; ++i)
        for (int m = j + 2; m <= spec.r; ++m) {
            if (i == 0 && m == spec.r) continue;
            h[{i, m}] = rand_rat(rng);
        }
    return h;
}

// the defining constraints, checked exactly
void check_pair(const PairSolution& sol) {
    const NormalFormSpec& spec = sol.spec;
    for (int i = 0; i <= spec.k; ++i) {
        RationalPoly pu = component_poly(spec, sol.u, i);
        for (int m = 1; m <= sol.j; ++m) CHECK(pu.derivative(m).eval(sol.tu) == Rat(0));
        CHECK(pu.eval(sol.tu) == pu.eval(sol.tv));
    }
    CHECK(sol.tv > sol.tu);
    CHECK(stratum_membership(spec, sol.u, sol.j));
}

} // namespace

TEST_CASE("symmetric quartic pair") {
    // r=3, j=1, tu=-1, tv=1: p_0 = t^4 - 2t^2
    NormalFormSpec spec{3, 0, 0};
    PairSolution sol = solve_pair(spec, 1, Rat(-1), Rat(1), {});
    CHECK(sol.coeffs.at({0, 2}) == Rat(-2));
    CHECK(sol.coeffs.at({0, 1}) == Rat(0));
    RationalPoly p0 = component_poly(spec, sol.u, 0);
    CHECK(p0.derivative().eval(Rat(-1)) == Rat(0));
    CHECK(p0.eval(Rat(-1)) == Rat(-1));
    CHECK(p0.eval(Rat(1)) == Rat(-1));
    check_pair(sol);
}

TEST_CASE("odd-symmetric data forces an even polynomial") {
    NormalFormSpec spec{3, 0, 0};
    for (long cn = 1; cn <= 6; ++cn) {
        Rat c(cn, 2);
        PairSolution sol = solve_pair(spec, 1, -c, c, {});
        CHECK(sol.coeffs.at({0, 1}) == Rat(0));
        check_pair(sol);
    }
}

TEST_CASE("precondition errors") {
    NormalFormSpec spec{3, 0, 0};
    CHECK_THROWS_WITH(solve_pair(spec, 1, Rat(1), Rat(1), {}), "outside half-space: need tv > tu");
    CHECK_THROWS_WITH(solve_pair(spec, 1, Rat(2), Rat(1), {}), "outside half-space: need tv > tu");
    CHECK_THROWS_WITH(solve_pair(spec, 2, Rat(-1), Rat(1), {}), "use solve_pair_top");
    CHECK_THROWS_WITH(solve_pair_top(spec, Rat(0)), "outside half-space: need tv > 0");
    CHECK_THROWS_WITH(solve_pair_top(spec, Rat(-1)), "outside half-space: need tv > 0");
}

TEST_CASE("top case, r=2") {
    NormalFormSpec spec{2, 0, 0};
    PairSolution sol = solve_pair_top(spec, Rat(1));
    CHECK(sol.tu == Rat(-1, 2));
    CHECK(sol.coeffs.at({0, 1}) == Rat(-3, 4)); // p_0 = t^3 - (3/4)t
    RationalPoly p0 = component_poly(spec, sol.u, 0);
    CHECK(p0.eval(Rat(1)) == Rat(1, 4));
    CHECK(p0.eval(Rat(-1, 2)) == Rat(1, 4));
    CHECK(p0.derivative().eval(Rat(-1, 2)) == Rat(0));
    check_pair(sol);
}

TEST_CASE("top case, general tv: p_0 = t^3 - 3 tu^2 t") {
    NormalFormSpec spec{2, 0, 0};
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<int> num(1, 9), den(1, 4);
        Rat tv(num(rng), den(rng));
        PairSolution sol = solve_pair_top(spec, tv);
        Rat tu = -tv / 2;
        CHECK(sol.tu == tu);
        CHECK(sol.coeffs.at({0, 1}) == -3 * tu * tu);
        check_pair(sol);
    }
}

TEST_CASE("top case tu formula") {
    NormalFormSpec spec{5, 0, 0};
    PairSolution sol = solve_pair_top(spec, Rat(5));
    CHECK(sol.tu == Rat(-1));
    CHECK(spec.r * sol.tu + sol.tv == Rat(0));
    check_pair(sol);
}

TEST_CASE("top-case rigidity: companion polynomials vanish") {
    std::mt19937_64 rng(6);
    for (int r = 2; r <= 5; ++r)
        for (int k = 0; k <= 2; ++k) {
            NormalFormSpec spec{r, k, 0};
            std::uniform_int_distribution<int> num(1, 7);
            PairSolution sol = solve_pair_top(spec, Rat(num(rng), 2));
            for (int i = 1; i <= k; ++i) CHECK(component_poly(spec, sol.u, i).is_zero());
            check_pair(sol);
        }
}

TEST_CASE("exactness and uniqueness over seeded random data") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> rd(3, 5), kd(0, 2);
        NormalFormSpec spec{rd(rng), kd(rng), 0};
        std::uniform_int_distribution<int> jd(1, spec.r - 2);
        int j = jd(rng);
        Rat tu = rand_rat(rng);
        Rat gap(std::uniform_int_distribution<int>(1, 6)(rng), 2);
        Rat tv = tu + gap;
        HighBlock high = rand_high(spec, j, rng);
        PairSolution sol = solve_pair(spec, j, tu, tv, high);
        check_pair(sol);

        // re-solving is bit-identical
        PairSolution again = solve_pair(spec, j, tu, tv, high);
        CHECK(sol.coeffs == again.coeffs);

        // perturbing a high coefficient changes the output
        if (!high.empty()) {
            HighBlock bumped = high;
            bumped.begin()->second += Rat(1, 3);
            PairSolution other = solve_pair(spec, j, tu, tv, bumped);
            CHECK(sol.coeffs != other.coeffs);
        }
    }
}

TEST_CASE("smoothness probe: lambda_{j+1} sensitivity in tv") {
    // float finite difference of the exact solver against a symbolic slope
    NormalFormSpec spec{4, 0, 0};
    int j = 1;
    HighBlock high;
    high[{0, 3}] = Rat(1, 2);
    auto lam = [&](const Rat& tv) {
        PairSolution s = solve_pair(spec, j, Rat(-1), tv, high);
        return to_double(s.coeffs.at({0, j + 1}));
    };
    const double h = 1e-5;
    double fd = (lam(Rat(3, 2) + parse_rat("0.00001").value()) -
                 lam(Rat(3, 2) - parse_rat("0.00001").value())) /
                (2 * h);
    // symbolic slope via a tiny exact secant (rational step 1/2^20)
    Rat eps(1, 1 << 20);
    PairSolution a = solve_pair(spec, j, Rat(-1), Rat(3, 2) - eps, high);
    PairSolution b = solve_pair(spec, j, Rat(-1), Rat(3, 2) + eps, high);
    double sym = to_double((b.coeffs.at({0, j + 1}) - a.coeffs.at({0, j + 1})) / (2 * eps));
    CHECK(fd == doctest::Approx(sym).epsilon(1e-6));
}

TEST_CASE("boundary limit along tv = 2^-n, r=2") {
    NormalFormSpec spec{2, 0, 0};
    std::vector<PathEntry> path;
    for (int n = 1; n <= 20; ++n) {
        PathEntry e;
        e.tv = Rat(1, std::int64_t(1) << n);
        e.tu = -e.tv / 2;
        path.push_back(e);
    }
    SourcePoint limit = top_stratum_point(spec, {});
    ConvergenceReport rep = boundary_limit_check(spec, 1, path, limit);
    CHECK(rep.converged);
    CHECK(rep.limit_in_stratum);
    CHECK(rep.pass);
    REQUIRE(rep.distances.size() == 20);
    CHECK(rep.distances.back() <= 1e-6);
}

TEST_CASE("boundary limit, r=3 symmetric pinch") {
    NormalFormSpec spec{3, 0, 0};
    std::vector<PathEntry> path;
    for (int n = 1; n <= 20; ++n) {
        PathEntry e;
        e.tv = Rat(1, std::int64_t(1) << n);
        e.tu = -e.tv;
        path.push_back(e);
    }
    // independent oracle: the level-2 chart at t = 0
    StratumParams sp;
    sp.t = Rat(0);
    SourcePoint limit = stratum_parametrize(spec, 2, sp);
    ConvergenceReport rep = boundary_limit_check(spec, 1, path, limit);
    CHECK(rep.pass);
}

TEST_CASE("constant-gap path fails, negative control") {
    NormalFormSpec spec{2, 0, 0};
    std::vector<PathEntry> path;
    for (int n = 0; n < 10; ++n) {
        PathEntry e;
        e.tv = Rat(1);
        e.tu = Rat(-1, 2);
        path.push_back(e);
    }
    ConvergenceReport rep = boundary_limit_check(spec, 1, path, top_stratum_point(spec, {}));
    CHECK_FALSE(rep.pass);
}
