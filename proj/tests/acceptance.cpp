// Acceptance gate: ten end-to-end criteria over the exact local algebra, the
// desk-scale model zoo and the CLI artifacts. One verdict line per criterion;
// exit 0 iff nothing failed (criterion 9 is a stretch target and may be
// skipped, never failed).

#include "primcob/bordism.hpp"
#include "primcob/local_cobordism.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sys/wait.h>

using namespace primcob;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int n, const char* name, bool ok) {
    std::printf("criterion %d (%s): %s\n", n, name, ok ? "pass" : "fail");
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rat rand_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-10, 10);
    std::uniform_int_distribution<int> den(1, 6);
    return Rat(num(rng), den(rng));
}

// mirrors the sweep generator of the CLI: degree <= 4 trig curves with
// decaying random harmonics
std::vector<Rat> random_trig_params(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coarse(-24, 24);
    std::vector<Rat> params;
    for (int comp = 0; comp < 2; ++comp) {
        params.push_back(Rat(coarse(rng), 48));
        for (int h = 1; h <= 4; ++h) {
            int den = 16 * h * h;
            params.push_back(Rat(coarse(rng), den));
            params.push_back(Rat(coarse(rng), den));
        }
    }
    params[1] += Rat(1);
    params[2 + 9] += Rat(1);
    return params;
}

// ---- criterion 1: exact stratum parametrization suite ----
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> rd(2, 5), kd(0, 3), zd(0, 2);
        NormalFormSpec spec{rd(rng), kd(rng), zd(rng)};
        std::uniform_int_distribution<int> jd(1, spec.r - 1);
        int j = jd(rng);
        StratumParams params;
        params.t = rand_rat(rng);
        for (int m = 0; m < spec.z; ++m) params.s.push_back(rand_rat(rng));
        for (int i = 0; i <= spec.k; ++i)
            for (int m = j + 1; m <= spec.r; ++m) {
                if (i == 0 && m == spec.r) continue;
                params.high[{i, m}] = rand_rat(rng);
            }
        SourcePoint x = stratum_parametrize(spec, j, params);
        // exact zero residuals of every defining derivative
        for (int i = 0; i <= spec.k && ok; ++i) {
            RationalPoly p = component_poly(spec, x, i);
            for (int m = 1; m <= j; ++m)
                if (p.derivative(m).eval(x.t) != Rat(0)) ok = false;
        }
        if (!stratum_membership(spec, x, j)) ok = false;
    }
    ok = ok && seconds_since(t0) < 10.0;
    verdict(1, "exact stratum parametrization, 200 seeded samples under 10s", ok);
}

// ---- criterion 2: exact pair suite ----
void criterion_2() {
    std::mt19937_64 rng(2002);
    bool ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        std::uniform_int_distribution<int> rd(3, 5), kd(0, 2);
        NormalFormSpec spec{rd(rng), kd(rng), 0};
        std::uniform_int_distribution<int> jd(1, spec.r - 2);
        int j = jd(rng);
        Rat tu = rand_rat(rng);
        Rat tv = tu + Rat(std::uniform_int_distribution<int>(1, 8)(rng), 3);
        HighBlock high;
        for (int i = 0; i <= spec.k; ++i)
            for (int m = j + 2; m <= spec.r; ++m) {
                if (i == 0 && m == spec.r) continue;
                high[{i, m}] = rand_rat(rng);
            }
        PairSolution sol = solve_pair(spec, j, tu, tv, high);
        for (int i = 0; i <= spec.k && ok; ++i) {
            RationalPoly p = component_poly(spec, sol.u, i);
            for (int m = 1; m <= j; ++m)
                if (p.derivative(m).eval(tu) != Rat(0)) ok = false;
            if (p.eval(tu) != p.eval(tv)) ok = false;
        }
    }
    // top case: tu = -tv/r exactly, and the frozen r=2 example
    for (int r = 2; r <= 5 && ok; ++r) {
        NormalFormSpec spec{r, 0, 0};
        PairSolution sol = solve_pair_top(spec, Rat(7, 3));
        if (sol.tu != Rat(-7, 3) / r) ok = false;
    }
    if (ok) {
        PairSolution sol = solve_pair_top(NormalFormSpec{2, 0, 0}, Rat(1));
        RationalPoly p0 = component_poly(sol.spec, sol.u, 0);
        std::vector<Rat> expect{Rat(0), Rat(-3, 4), Rat(0), Rat(1)}; // t^3 - (3/4)t
        ok = p0 == RationalPoly(expect);
    }
    verdict(2, "exact pair parametrization incl. top case t^3-(3/4)t", ok);
}

// ---- criterion 3: boundary limit ----
void criterion_3() {
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
    bool ok = rep.pass && rep.limit_in_stratum && rep.distances.back() <= 1e-6 &&
              stratum_membership(spec, limit, 2);
    verdict(3, "boundary limit tv=2^-n reaches the level-2 point", ok);
}

// ---- criterion 4: top-stratum fibers are singletons ----
void criterion_4() {
    std::mt19937_64 rng(4004);
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        std::uniform_int_distribution<int> rd(2, 4), kd(0, 2);
        NormalFormSpec spec{rd(rng), kd(rng), trial % 3};
        std::vector<Rat> s;
        for (int m = 0; m < spec.z; ++m) s.push_back(rand_rat(rng));
        auto fiber = solve_fiber(spec, top_stratum_point(spec, s));
        ok = fiber.size() == 1;
    }
    verdict(4, "top-stratum points are never double points, 50 samples", ok);
}

// ---- criterion 5: the figure-eight instance ----
bool figure_eight_ok = false;
void criterion_5() {
    auto t0 = std::chrono::steady_clock::now();
    PrimMapModel fe = builtin_model("figure_eight");
    bool ok = find_strata(fe, 1).points.count() == 4;
    auto [src, tgt] = find_multiple_points(fe, 2);
    ok = ok && src.count() == 2 && tgt.count() == 1 && covering_check(src, tgt);
    ParityReport chain = parity_chain(fe, 2);
    ok = ok && chain.generic && chain.chain_pass;
    TraceResult tr = trace_cobordism(fe, 2, 2);
    ok = ok && tr.pairing_pass && tr.arcs.size() == 3;
    // six endpoints, each boundary point used exactly once
    std::vector<int> slack_used(2, 0), coll_used(4, 0);
    for (const auto& arc : tr.arcs)
        for (const ArcEndpoint* e : {&arc.endpoint_a, &arc.endpoint_b}) {
            if (e->point_index < 0) ok = false;
            else if (e->collision) ++coll_used[static_cast<std::size_t>(e->point_index)];
            else ++slack_used[static_cast<std::size_t>(e->point_index)];
        }
    for (int c : slack_used) ok = ok && c == 1;
    for (int c : coll_used) ok = ok && c == 1;
    ok = ok && seconds_since(t0) < 5.0;
    figure_eight_ok = ok;
    verdict(5, "figure-eight counts, covering, chain and 3 arcs under 5s", ok);
}

// ---- criterion 6: circle and torus ----
void criterion_6() {
    ParityReport rc = parity_chain(builtin_model("round_circle"), 2);
    ParityReport rt = parity_chain(builtin_model("round_torus"), 3);
    bool ok = rc.generic && rc.counts == std::vector<int>{2, 0} && rc.chain_pass &&
              rt.generic && rt.counts == std::vector<int>{0, 0, 0} && rt.chain_pass;
    verdict(6, "round circle (2,0) and round torus (0,0,0)", ok);
}

// ---- criterion 7: random sweep ----
std::vector<PrimMapModel> accepted_sweep_models;
void criterion_7() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7);
    int rejected = 0;
    bool ok = true;
    for (int s = 0; s < 100; ++s) {
        PrimMapModel model = builtin_model("trig_curve", random_trig_params(rng));
        GenericityReport gen = genericity_report(model);
        if (!gen.generic) {
            ++rejected;
            continue;
        }
        ParityReport chain = parity_chain(model, 2, {}, gen);
        auto [src, tgt] = find_multiple_points(model, 2);
        if (!chain.chain_pass || !covering_check(src, tgt)) ok = false;
        accepted_sweep_models.push_back(model);
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 120.0;
    std::printf("  (sweep: %d rejected, %zu accepted, %.1fs)\n", rejected,
                accepted_sweep_models.size(), dt);
    verdict(7, "100-sample random sweep, all accepted chains pass under 2min", ok);
}

// ---- criterion 8: euler cross-check on every accepted model ----
void criterion_8() {
    bool ok = figure_eight_ok ? euler_cross_check(builtin_model("figure_eight")) : false;
    ok = ok && euler_cross_check(builtin_model("round_circle"));
    ok = ok && euler_cross_check(builtin_model("round_torus"));
    for (const auto& m : accepted_sweep_models)
        if (!euler_cross_check(m)) ok = false;
    verdict(8, "euler parity cross-check on all accepted models", ok);
}

// ---- criterion 9 (stretch): Boy surface ----
void criterion_9() {
    bool skipped = false, ok = false;
    try {
        PrimMapModel boy = builtin_model("boy_surface");
        GenericityReport gen = genericity_report(boy);
        if (!gen.generic) {
            skipped = true;
        } else {
            auto [src, tgt] = find_multiple_points(boy, 3);
            int cusps = find_strata(boy, 2).points.count();
            ParityReport chain = parity_chain(boy, 3, {}, gen);
            ok = tgt.count() == 1 && src.count() == 3 && cusps % 2 == 1 &&
                 chain.counts.size() == 3 && chain.counts[1] % 2 == 1 && chain.chain_pass;
            if (!ok) skipped = true; // stretch target: report skipped, never failed
        }
    } catch (const std::exception&) {
        skipped = true;
    }
    std::printf("criterion 9 (Boy surface: 1 triple point, odd cusps, chain pass): %s\n",
                skipped ? "skipped" : "pass");
}

// ---- criterion 10: determinism of the CLI artifacts ----
int run_cli(const std::string& args) {
    std::string cmd = std::string(SINGCOB_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string report_bytes_without_timestamp(const fs::path& p) {
    std::ifstream in(p);
    if (!in) return "<missing>";
    Json j;
    in >> j;
    j["meta"].erase("generated_at");
    return j.dump();
}

void criterion_10() {
    fs::path base = fs::temp_directory_path() / "singcob_acceptance";
    fs::path a = base / "a", b = base / "b";
    fs::create_directories(a);
    fs::create_directories(b);
    std::ofstream(base / "fe.cfg") << "model = figure_eight\nr = 2\n";
    std::string cfg = " --config " + (base / "fe.cfg").string();
    bool ok = true;
    for (const char* sub : {"chain-verify", "multipoints", "trace-cobordism"}) {
        ok = ok && run_cli(std::string(sub) + cfg + " --out " + a.string()) == 0;
        ok = ok && run_cli(std::string(sub) + cfg + " --out " + b.string()) == 0;
        std::string fa = report_bytes_without_timestamp(a / (std::string(sub) + ".json"));
        std::string fb = report_bytes_without_timestamp(b / (std::string(sub) + ".json"));
        ok = ok && fa == fb && fa != "<missing>";
    }
    ok = ok && run_cli("sweep --seed 7 --count 100 --out " + a.string()) == 0;
    ok = ok && run_cli("sweep --seed 7 --count 100 --out " + b.string()) == 0;
    ok = ok && report_bytes_without_timestamp(a / "sweep.json") ==
                   report_bytes_without_timestamp(b / "sweep.json");
    verdict(10, "reruns with identical seeds are byte-identical modulo timestamp", ok);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria satisfied\n");
    return 0;
}
