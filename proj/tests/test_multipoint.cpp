#include <doctest.h>

#include "primcob/multipoint.hpp"

#include <cmath>

using namespace primcob;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("figure eight double points") {
    PrimMapModel fe = builtin_model("figure_eight");
    auto [src, tgt] = find_multiple_points(fe, 2);
    REQUIRE(src.count() == 2);
    REQUIRE(tgt.count() == 1);
    CHECK(src.kind == "M_r");
    CHECK(tgt.kind == "N_r");

    // tuples (0, pi) and (pi, 0), target the origin
    CHECK(src.points[0].tuple[0][0] == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(src.points[0].tuple[1][0] == doctest::Approx(kPi).epsilon(1e-8));
    CHECK(src.points[1].tuple[0][0] == doctest::Approx(kPi).epsilon(1e-8));
    CHECK(src.points[1].tuple[1][0] == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(tgt.points[0].target[0] == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(tgt.points[0].target[1] == doctest::Approx(0.0).epsilon(1e-8));
    for (const auto& p : src.points) CHECK(p.residual <= 1e-8);

    CHECK(covering_check(src, tgt));
}

TEST_CASE("round circle has no double points") {
    PrimMapModel rc = builtin_model("round_circle");
    auto [src, tgt] = find_multiple_points(rc, 2);
    CHECK(src.count() == 0);
    CHECK(tgt.count() == 0);
    CHECK(covering_check(src, tgt)); // vacuous
}

TEST_CASE("dimension guard") {
    PrimMapModel fe = builtin_model("figure_eight");
    CHECK_THROWS(find_multiple_points(fe, 3)); // dim n-(r-1)(k+1) = -1
    PrimMapModel torus = builtin_model("round_torus");
    CHECK_THROWS(find_multiple_points(torus, 2)); // dim 1, not isolated
}

TEST_CASE("torus has no triple points") {
    PrimMapModel torus = builtin_model("round_torus");
    auto [src, tgt] = find_multiple_points(torus, 3);
    CHECK(src.count() == 0);
    CHECK(tgt.count() == 0);
}

TEST_CASE("figure eight folds") {
    PrimMapModel fe = builtin_model("figure_eight");
    StrataResult res = find_strata(fe, 1);
    REQUIRE_FALSE(res.is_polyline);
    REQUIRE(res.points.count() == 4);
    double expected[4] = {kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4};
    for (int i = 0; i < 4; ++i)
        CHECK(res.points.points[static_cast<std::size_t>(i)].tuple[0][0] ==
              doctest::Approx(expected[i]).epsilon(1e-9));
    CHECK_THROWS(find_strata(fe, 2)); // curves only carry folds
}

TEST_CASE("round circle folds") {
    StrataResult res = find_strata(builtin_model("round_circle"), 1);
    REQUIRE(res.points.count() == 2);
    CHECK(res.points.points[0].tuple[0][0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(res.points.points[1].tuple[0][0] == doctest::Approx(kPi).epsilon(1e-9));
}

TEST_CASE("torus fold curves and cusps") {
    PrimMapModel torus = builtin_model("round_torus");
    StrataResult folds = find_strata(torus, 1);
    REQUIRE(folds.is_polyline);
    // two closed fold circles, phi = 0 and phi = pi
    REQUIRE(folds.polylines.size() == 2);
    for (const auto& pl : folds.polylines) {
        CHECK(pl.closed);
        for (const auto& x : pl.pts)
            CHECK(std::fabs(std::sin(x[1])) == doctest::Approx(0.0).epsilon(1e-6));
    }
    StrataResult cusps = find_strata(torus, 2);
    CHECK(cusps.points.count() == 0);
}

TEST_CASE("mixed set delegation") {
    PrimMapModel fe = builtin_model("figure_eight");
    ResolvedPointSet top = find_mixed(fe, 2, 2);
    CHECK(top.count() == 2); // = M_2
    ResolvedPointSet bottom = find_mixed(fe, 2, 1);
    CHECK(bottom.count() == 4); // = Sigma^1 folds
    CHECK(bottom.kind == "Lambda_r_i");
    CHECK(bottom.i == 1);
    CHECK_THROWS(find_mixed(fe, 2, 0));
    CHECK_THROWS(find_mixed(fe, 2, 3));
}

TEST_CASE("torus mixed sets are all empty") {
    PrimMapModel torus = builtin_model("round_torus");
    for (int i = 1; i <= 3; ++i) CHECK(find_mixed(torus, 3, i).count() == 0);
}

TEST_CASE("grid refinement stability") {
    PrimMapModel fe = builtin_model("figure_eight");
    SolveOptions coarse, fine;
    coarse.grid_resolution = 128;
    fine.grid_resolution = 512;
    auto [src_c, tgt_c] = find_multiple_points(fe, 2, coarse);
    auto [src_f, tgt_f] = find_multiple_points(fe, 2, fine);
    REQUIRE(src_c.count() == src_f.count());
    for (int i = 0; i < src_c.count(); ++i)
        for (std::size_t e = 0; e < 2; ++e)
            CHECK(src_c.points[static_cast<std::size_t>(i)].tuple[e][0] ==
                  doctest::Approx(src_f.points[static_cast<std::size_t>(i)].tuple[e][0])
                      .epsilon(1e-8));
}

TEST_CASE("covering check rejects tampered sets") {
    PrimMapModel fe = builtin_model("figure_eight");
    auto [src, tgt] = find_multiple_points(fe, 2);
    ResolvedPointSet broken = src;
    broken.points.pop_back();
    CHECK_FALSE(covering_check(broken, tgt));

    ResolvedPointSet moved = src;
    moved.points[0].target[0] += 0.5;
    CHECK_FALSE(covering_check(moved, tgt));
}

TEST_CASE("determinism of the solvers") {
    PrimMapModel fe = builtin_model("figure_eight");
    auto a = find_multiple_points(fe, 2);
    auto b = find_multiple_points(fe, 2);
    REQUIRE(a.first.count() == b.first.count());
    for (int i = 0; i < a.first.count(); ++i) {
        CHECK(a.first.points[static_cast<std::size_t>(i)].tuple ==
              b.first.points[static_cast<std::size_t>(i)].tuple);
        CHECK(a.first.points[static_cast<std::size_t>(i)].residual ==
              b.first.points[static_cast<std::size_t>(i)].residual);
    }
}
