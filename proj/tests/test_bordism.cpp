#include <doctest.h>

#include "primcob/bordism.hpp"

#include <set>

using namespace primcob;

TEST_CASE("parity chain on the figure eight") {
    ParityReport rep = parity_chain(builtin_model("figure_eight"), 2);
    CHECK(rep.generic);
    REQUIRE(rep.counts.size() == 2);
    CHECK(rep.counts[0] == 4); // folds
    CHECK(rep.counts[1] == 2); // double tuples
    CHECK(rep.parities == std::vector<int>{0, 0});
    CHECK(rep.chain_pass);
    CHECK(rep.warnings.empty());
}

TEST_CASE("parity chain on the round circle") {
    ParityReport rep = parity_chain(builtin_model("round_circle"), 2);
    CHECK(rep.generic);
    CHECK(rep.counts == std::vector<int>{2, 0});
    CHECK(rep.chain_pass);
}

TEST_CASE("parity chain on the torus is vacuous") {
    ParityReport rep = parity_chain(builtin_model("round_torus"), 3);
    CHECK(rep.generic);
    CHECK(rep.counts == std::vector<int>{0, 0, 0});
    CHECK(rep.chain_pass);
}

TEST_CASE("non-generic model gets no verdict") {
    // doubly traversed circle: every point a tangential double point
    PrimMapModel bad = builtin_model("trig_curve",
                                     {Rat(0), Rat(0), Rat(0), Rat(0), Rat(1),
                                      Rat(0), Rat(0), Rat(0), Rat(1), Rat(0)});
    ParityReport rep = parity_chain(bad, 2);
    CHECK_FALSE(rep.generic);
    CHECK_FALSE(rep.chain_pass);
    CHECK(rep.counts.empty());
}

TEST_CASE("cobordism arcs on the figure eight") {
    TraceResult res = trace_cobordism(builtin_model("figure_eight"), 2, 2);
    CHECK(res.pairing_pass);
    CHECK_FALSE(res.inconclusive);
    REQUIRE(res.arcs.size() == 3);
    CHECK(res.level_i.count() == 2);
    CHECK(res.level_im1.count() == 4);

    // the six endpoints cover both boundary sets exactly once
    std::multiset<std::pair<bool, int>> endpoints;
    for (const auto& arc : res.arcs) {
        endpoints.insert({arc.endpoint_a.collision, arc.endpoint_a.point_index});
        endpoints.insert({arc.endpoint_b.collision, arc.endpoint_b.point_index});
    }
    REQUIRE(endpoints.size() == 6);
    for (int q = 0; q < 2; ++q) CHECK(endpoints.count({false, q}) == 1);
    for (int q = 0; q < 4; ++q) CHECK(endpoints.count({true, q}) == 1);

    // the slack-boundary arc joins the two double tuples
    int slack_arcs = 0;
    for (const auto& arc : res.arcs)
        if (!arc.endpoint_a.collision && !arc.endpoint_b.collision) ++slack_arcs;
    CHECK(slack_arcs == 1);
}

TEST_CASE("cobordism arc on the round circle") {
    TraceResult res = trace_cobordism(builtin_model("round_circle"), 2, 2);
    CHECK(res.pairing_pass);
    REQUIRE(res.arcs.size() == 1);
    CHECK(res.arcs[0].endpoint_a.collision);
    CHECK(res.arcs[0].endpoint_b.collision);
    CHECK(res.level_i.count() == 0);
    CHECK(res.level_im1.count() == 2);
}

TEST_CASE("trace level bounds") {
    PrimMapModel fe = builtin_model("figure_eight");
    CHECK_THROWS(trace_cobordism(fe, 2, 1));
    CHECK_THROWS(trace_cobordism(fe, 2, 3));
}

TEST_CASE("arc samples stay on the fiber-product constraint") {
    TraceResult res = trace_cobordism(builtin_model("figure_eight"), 2, 2);
    PrimMapModel fe = builtin_model("figure_eight");
    for (const auto& arc : res.arcs)
        for (const auto& cfg : arc.polyline) {
            REQUIRE(cfg.size() == 2);
            auto a = fe.value(cfg[0]), b = fe.value(cfg[1]);
            CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-6)); // f-values match along H
        }
}

TEST_CASE("euler cross-check on the accepted zoo") {
    CHECK(euler_cross_check(builtin_model("figure_eight")));
    CHECK(euler_cross_check(builtin_model("round_circle")));
    CHECK(euler_cross_check(builtin_model("round_torus")));
}

TEST_CASE("parity chain accepts a precomputed genericity report") {
    PrimMapModel fe = builtin_model("figure_eight");
    GenericityReport gen = genericity_report(fe);
    ParityReport rep = parity_chain(fe, 2, {}, gen);
    CHECK(rep.generic);
    CHECK(rep.chain_pass);

    GenericityReport forced;
    forced.generic = false;
    ParityReport rejected = parity_chain(fe, 2, {}, forced);
    CHECK_FALSE(rejected.generic);
    CHECK(rejected.counts.empty());
}
