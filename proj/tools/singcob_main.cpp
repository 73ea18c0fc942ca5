// singcob: batch verification of multiple-point / singularity structure of
// projected immersions. Subcommands mirror the library workflows; every run
// writes a JSON report and exits 0 (pass), 1 (verdict failed), 2 (usage) or
// 3 (inconclusive).

#include "primcob/bordism.hpp"
#include "primcob/config.hpp"
#include "primcob/local_cobordism.hpp"
#include "primcob/report.hpp"
#include "primcob/svg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <random>

using namespace primcob;

namespace {

constexpr int EXIT_PASS = 0;
constexpr int EXIT_VERDICT_FAIL = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_INCONCLUSIVE = 3;

SolveOptions solve_options(const RunConfig& cfg) {
    SolveOptions opts;
    opts.grid_resolution = cfg.grid_resolution;
    opts.diagonal_tube = cfg.tol("diagonal_tube", opts.diagonal_tube);
    opts.dedup_radius = cfg.tol("dedup_radius", opts.dedup_radius);
    opts.residual_tol = cfg.tol("residual_tol", opts.residual_tol);
    return opts;
}

Thresholds thresholds(const RunConfig& cfg) {
    Thresholds t;
    t.immersion = cfg.tol("immersion", t.immersion);
    t.double_angle = cfg.tol("double_angle", t.double_angle);
    t.fold_nondegeneracy = cfg.tol("fold_nondegeneracy", t.fold_nondegeneracy);
    t.cusp_regularity = cfg.tol("cusp_regularity", t.cusp_regularity);
    t.degeneracy_gap = cfg.tol("degeneracy_gap", t.degeneracy_gap);
    return t;
}

std::string out_path(const RunConfig& cfg, const std::string& stem) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / (stem + ".json")).string();
}

int finish(Json& rep, const RunConfig& cfg, const std::string& stem, int code) {
    rep["diagnostics"]["exit_code"] = code;
    write_report(rep, out_path(cfg, stem));
    std::cout << rep.dump(2) << "\n";
    return code;
}

Json polylines_json(const std::vector<Polyline>& pls) {
    Json arr = Json::array();
    for (const auto& pl : pls) {
        arr.push_back({{"closed", pl.closed}, {"samples", static_cast<int>(pl.pts.size())}});
    }
    return arr;
}

int run_strata(const RunConfig& cfg, const PrimMapModel& model) {
    Json rep = report_envelope("strata", model.name, cfg.params, cfg.seed);
    auto opts = solve_options(cfg);
    bool warned = false;
    int jmax = model.domain.dim == 1 ? 1 : 2;
    std::vector<Polyline> fold_curves;
    const ResolvedPointSet* fold_pts = nullptr;
    const ResolvedPointSet* cusp_pts = nullptr;
    std::vector<StrataResult> keep;
    keep.reserve(static_cast<std::size_t>(jmax));
    for (int j = 1; j <= jmax; ++j) {
        keep.push_back(find_strata(model, j, opts));
        StrataResult& res = keep.back();
        std::string key = "Sigma_1^" + std::to_string(j);
        if (res.is_polyline) {
            rep["results"][key] = {{"polylines", polylines_json(res.polylines)}};
            fold_curves = res.polylines;
        } else {
            rep["results"][key] = point_set_json(res.points);
            warned = warned || !res.points.warnings.empty();
            if (j == 1) fold_pts = &res.points;
            else cusp_pts = &res.points;
        }
    }
    if (cfg.svg) {
        auto svg = render_svg(model, nullptr, fold_pts, cusp_pts,
                              fold_curves.empty() ? nullptr : &fold_curves);
        write_svg(svg, (std::filesystem::path(cfg.out_dir) / "strata.svg").string());
    }
    return finish(rep, cfg, "strata", warned ? EXIT_INCONCLUSIVE : EXIT_PASS);
}

int run_multipoints(const RunConfig& cfg, const PrimMapModel& model) {
    Json rep = report_envelope("multipoints", model.name, cfg.params, cfg.seed);
    auto opts = solve_options(cfg);
    auto [src, tgt] = find_multiple_points(model, cfg.r, opts);
    bool covering = covering_check(src, tgt);
    rep["results"]["M_r"] = point_set_json(src);
    rep["results"]["N_r"] = point_set_json(tgt);
    rep["results"]["covering_check"] = covering ? "pass" : "fail";
    if (cfg.svg) {
        auto svg = render_svg(model, &tgt, nullptr, nullptr, nullptr);
        write_svg(svg, (std::filesystem::path(cfg.out_dir) / "multipoints.svg").string());
    }
    bool warned = !src.warnings.empty() || !tgt.warnings.empty();
    int code = !covering ? EXIT_VERDICT_FAIL : (warned ? EXIT_INCONCLUSIVE : EXIT_PASS);
    return finish(rep, cfg, "multipoints", code);
}

int run_chain_verify(const RunConfig& cfg, const PrimMapModel& model) {
    Json rep = report_envelope("chain-verify", model.name, cfg.params, cfg.seed);
    auto opts = solve_options(cfg);
    auto gen = genericity_report(model, cfg.grid_resolution, thresholds(cfg));
    ParityReport pr = parity_chain(model, cfg.r, opts, gen);
    rep["results"]["parity_chain"] = parity_json(pr);
    int code;
    if (!pr.generic) code = EXIT_INCONCLUSIVE;
    else if (!pr.chain_pass) code = EXIT_VERDICT_FAIL;
    else code = pr.warnings.empty() ? EXIT_PASS : EXIT_INCONCLUSIVE;
    return finish(rep, cfg, "chain-verify", code);
}

int run_trace(const RunConfig& cfg, const PrimMapModel& model) {
    Json rep = report_envelope("trace-cobordism", model.name, cfg.params, cfg.seed);
    auto opts = solve_options(cfg);
    int code = EXIT_PASS;
    for (int i = 2; i <= cfg.r; ++i) {
        TraceResult res = trace_cobordism(model, cfg.r, i, opts);
        rep["results"]["level_" + std::to_string(i)] = trace_json(res);
        if (res.inconclusive) code = std::max(code, EXIT_INCONCLUSIVE);
        else if (!res.pairing_pass) code = EXIT_VERDICT_FAIL;
    }
    return finish(rep, cfg, "trace-cobordism", code);
}

int run_normal_form(const RunConfig& cfg) {
    Json rep = report_envelope("normal-form", "normal_form", {}, cfg.seed);
    NormalFormSpec spec{cfg.nf_r, cfg.nf_k, cfg.nf_z};
    spec.validate();
    Json res;
    res["spec"] = {{"r", spec.r}, {"k", spec.k}, {"z", spec.z},
                   {"source_dim", spec.source_dim()}, {"target_dim", spec.target_dim()}};
    bool all_pass = true;

    // membership + parametrize at the configured level
    if (cfg.nf_j >= 1 && cfg.nf_j < spec.r) {
        StratumParams sp;
        sp.t = cfg.nf_t;
        sp.s.assign(static_cast<std::size_t>(spec.z), Rat(0));
        for (int i = 0; i <= spec.k; ++i)
            for (int m = cfg.nf_j + 1; m <= spec.r; ++m) {
                if (i == 0 && m == spec.r) continue;
                sp.high[{i, m}] = Rat(0);
            }
        SourcePoint x = stratum_parametrize(spec, cfg.nf_j, sp);
        bool member = stratum_membership(spec, x, cfg.nf_j);
        res["parametrize_membership"] = member ? "pass" : "fail";
        all_pass = all_pass && member;
    }

    // top stratum + fiber singleton
    {
        SourcePoint top = top_stratum_point(spec, std::vector<Rat>(static_cast<std::size_t>(spec.z), Rat(0)));
        auto fiber = solve_fiber(spec, top);
        res["top_fiber_size"] = static_cast<int>(fiber.size());
        bool single = fiber.size() == 1;
        res["top_fiber_singleton"] = single ? "pass" : "fail";
        all_pass = all_pass && single;
    }

    // pair parametrization (closed form for j < r-1, one-parameter top case)
    if (cfg.nf_j < spec.r - 1) {
        HighBlock high;
        for (int i = 0; i <= spec.k; ++i)
            for (int m = cfg.nf_j + 2; m <= spec.r; ++m) {
                if (i == 0 && m == spec.r) continue;
                high[{i, m}] = Rat(0);
            }
        PairSolution sol = solve_pair(spec, cfg.nf_j, cfg.nf_tu, cfg.nf_tv, high);
        bool ok = stratum_membership(spec, sol.u, cfg.nf_j) &&
                  eval_normal_form(spec, sol.u).values == eval_normal_form(spec, sol.v).values;
        res["solve_pair"] = ok ? "pass" : "fail";
        all_pass = all_pass && ok;
    }
    if (spec.r >= 2) {
        PairSolution sol = solve_pair_top(spec, cfg.nf_tv > 0 ? cfg.nf_tv : Rat(1));
        bool ok = sol.tu == -sol.tv / spec.r &&
                  stratum_membership(spec, sol.u, spec.r - 1) &&
                  eval_normal_form(spec, sol.u).values == eval_normal_form(spec, sol.v).values;
        res["solve_pair_top"] = ok ? "pass" : "fail";
        all_pass = all_pass && ok;

        // boundary limit tv = 2^-n into the level-r point
        std::vector<PathEntry> path;
        for (int n = 1; n <= 20; ++n) {
            PathEntry e;
            e.tv = Rat(1, std::int64_t(1) << n);
            e.tu = -e.tv / spec.r;
            path.push_back(e);
        }
        SourcePoint limit = top_stratum_point(spec, {});
        auto conv = boundary_limit_check(spec, spec.r - 1, path, limit);
        res["boundary_limit"] = conv.pass ? "pass" : "fail";
        all_pass = all_pass && conv.pass;
    }
    rep["results"] = res;
    return finish(rep, cfg, "normal-form", all_pass ? EXIT_PASS : EXIT_VERDICT_FAIL);
}

std::vector<Rat> random_trig_params(std::mt19937_64& rng) {
    // degree <= 4 trig curve: per component a0, a1, b1, ..., a4, b4.
    // Higher harmonics decay so most samples stay immersed and generic.
    std::uniform_int_distribution<int> coarse(-24, 24);
    std::vector<Rat> params;
    for (int comp = 0; comp < 2; ++comp) {
        params.push_back(Rat(coarse(rng), 48)); // a0
        for (int h = 1; h <= 4; ++h) {
            int den = 16 * h * h;
            params.push_back(Rat(coarse(rng), den));
            params.push_back(Rat(coarse(rng), den));
        }
    }
    // guarantee a nontrivial base harmonic in each component
    params[1] += Rat(1);
    params[2 + 9] += Rat(1); // b1 of the second component
    return params;
}

int run_sweep(const RunConfig& cfg) {
    if (!cfg.seed_set) {
        std::cerr << "sweep requires an explicit seed\n";
        return EXIT_USAGE;
    }
    Json rep = report_envelope("sweep", "trig_curve", {}, cfg.seed);
    auto opts = solve_options(cfg);
    std::mt19937_64 rng(cfg.seed);
    int rejected = 0, failures = 0, covering_failures = 0;
    Json samples = Json::array();
    for (int s = 0; s < cfg.count; ++s) {
        auto params = random_trig_params(rng);
        PrimMapModel model = builtin_model("trig_curve", params);
        auto gen = genericity_report(model, cfg.grid_resolution, thresholds(cfg));
        Json entry;
        entry["sample"] = s;
        entry["genericity"] = genericity_json(gen);
        if (!gen.generic) {
            ++rejected;
            samples.push_back(entry);
            continue;
        }
        ParityReport pr = parity_chain(model, 2, opts, gen);
        auto [src, tgt] = find_multiple_points(model, 2, opts);
        bool covering = covering_check(src, tgt);
        entry["counts"] = pr.counts;
        entry["parities"] = pr.parities;
        entry["chain"] = pr.chain_pass ? "pass" : "fail";
        entry["covering_check"] = covering ? "pass" : "fail";
        if (!pr.chain_pass) ++failures;
        if (!covering) ++covering_failures;
        samples.push_back(entry);
    }
    rep["results"]["samples"] = samples;
    rep["results"]["rejected"] = rejected;
    rep["results"]["rejection_rate"] =
        residual_string(cfg.count ? static_cast<double>(rejected) / cfg.count : 0.0);
    rep["results"]["chain_failures"] = failures;
    rep["results"]["covering_failures"] = covering_failures;
    int code = (failures || covering_failures) ? EXIT_VERDICT_FAIL : EXIT_PASS;
    return finish(rep, cfg, "sweep", code);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiple-point and singularity verification for projected immersions"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int count = -1, grid = -1, r_flag = -1;
    std::string out_dir;
    bool svg = false;
    std::vector<std::string> tol_overrides;

    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--seed", seed, "64-bit RNG seed")->each([&](const std::string&) { seed_given = true; });
    app.add_option("--count", count, "number of sweep samples");
    app.add_option("--grid", grid, "per-axis grid resolution");
    app.add_option("-r,--tuple", r_flag, "tuple order r");
    app.add_option("--out", out_dir, "report output directory");
    app.add_flag("--svg", svg, "also write an SVG plot");
    app.add_option("--tol-override", tol_overrides, "KEY=VAL tolerance override")->take_all();

    auto* sub_strata = app.add_subcommand("strata", "singularity strata of the projection");
    auto* sub_multi = app.add_subcommand("multipoints", "resolved multiple-point sets + covering check");
    auto* sub_chain = app.add_subcommand("chain-verify", "mod-2 parity chain over the mixed sets");
    auto* sub_trace = app.add_subcommand("trace-cobordism", "arc tracing between adjacent mixed sets");
    auto* sub_nf = app.add_subcommand("normal-form", "exact local normal-form suite");
    auto* sub_sweep = app.add_subcommand("sweep", "random trig-curve statistics");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : EXIT_USAGE;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (seed_given) {
            cfg.seed = seed;
            cfg.seed_set = true;
        }
        if (count >= 0) cfg.count = count;
        if (grid > 0) cfg.grid_resolution = grid;
        if (r_flag > 0) cfg.r = r_flag;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (svg) cfg.svg = true;
        for (const auto& ov : tol_overrides) {
            auto eq = ov.find('=');
            if (eq == std::string::npos) throw ConfigError("bad --tol-override: " + ov);
            cfg.tol_overrides[ov.substr(0, eq)] = std::stod(ov.substr(eq + 1));
        }

        if (sub_nf->parsed()) return run_normal_form(cfg);
        if (sub_sweep->parsed()) return run_sweep(cfg);

        if (cfg.model_name.empty()) throw ConfigError("config must name a model");
        PrimMapModel model = builtin_model(cfg.model_name, cfg.params);
        if (sub_strata->parsed()) return run_strata(cfg, model);
        if (sub_multi->parsed()) return run_multipoints(cfg, model);
        if (sub_chain->parsed()) return run_chain_verify(cfg, model);
        if (sub_trace->parsed()) return run_trace(cfg, model);
        return EXIT_USAGE;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }
}
