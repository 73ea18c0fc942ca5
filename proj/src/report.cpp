#include "primcob/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

namespace primcob {

std::string residual_string(double r) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", r);
    return buf;
}

Json report_envelope(const std::string& subcommand, const std::string& model_name,
                     const std::vector<Rat>& params, std::uint64_t seed) {
    Json rep;
    rep["schema_version"] = 1;
    auto now = std::chrono::system_clock::now().time_since_epoch();
    rep["meta"] = {
        {"generated_at", std::chrono::duration_cast<std::chrono::seconds>(now).count()},
        {"subcommand", subcommand},
        {"seed", seed},
    };
    Json pj = Json::array();
    for (const auto& p : params) pj.push_back(rat_to_string(p));
    rep["model"] = {{"name", model_name}, {"params", pj}};
    rep["results"] = Json::object();
    rep["diagnostics"] = Json::object();
    return rep;
}

Json point_set_json(const ResolvedPointSet& set) {
    Json j;
    j["kind"] = set.kind;
    j["r"] = set.r;
    if (set.i > 0) j["i"] = set.i;
    if (set.j > 0) j["j"] = set.j;
    j["count"] = set.count();
    Json pts = Json::array();
    for (const auto& p : set.points) {
        Json e;
        Json tup = Json::array();
        for (const auto& x : p.tuple) tup.push_back({x[0], x[1]});
        e["tuple"] = tup;
        e["target"] = {p.target[0], p.target[1], p.target[2]};
        e["residual"] = residual_string(p.residual);
        e["index"] = p.index;
        pts.push_back(e);
    }
    j["points"] = pts;
    j["provenance"] = {{"grid_resolution", set.grid_resolution},
                       {"refinement_iterations", set.refinement_iterations}};
    j["warnings"] = set.warnings;
    return j;
}

Json genericity_json(const GenericityReport& rep) {
    auto margin = [](double v) { return v >= 1e17 ? Json("none") : Json(v); };
    return Json{{"immersion_margin", margin(rep.immersion_margin)},
                {"double_point_angle_min", margin(rep.double_point_angle_min)},
                {"fold_nondegeneracy_min", margin(rep.fold_nondegeneracy_min)},
                {"cusp_regularity_min", margin(rep.cusp_regularity_min)},
                {"degeneracy_gap_min", margin(rep.degeneracy_gap_min)},
                {"verdict", rep.generic ? "generic" : "rejected"},
                {"notes", rep.notes}};
}

Json parity_json(const ParityReport& rep) {
    Json j;
    j["model"] = rep.model_name;
    j["r"] = rep.r;
    j["counts"] = rep.counts;
    j["parities"] = rep.parities;
    j["chain_verdict"] = !rep.generic ? "rejected" : (rep.chain_pass ? "pass" : "fail");
    j["genericity"] = genericity_json(rep.genericity);
    j["warnings"] = rep.warnings;
    j["provenance"] = {{"grid_resolution", rep.grid_resolution}};
    return j;
}

Json trace_json(const TraceResult& res) {
    Json j;
    j["i"] = res.i;
    j["arc_count"] = static_cast<int>(res.arcs.size());
    j["pairing_verdict"] =
        res.inconclusive ? "inconclusive" : (res.pairing_pass ? "pass" : "fail");
    Json arcs = Json::array();
    for (const auto& arc : res.arcs) {
        Json a;
        auto ep = [](const ArcEndpoint& e) {
            return Json{{"boundary", e.collision ? "collision" : "slack_zero"},
                        {"point_index", e.point_index}};
        };
        a["endpoint_a"] = ep(arc.endpoint_a);
        a["endpoint_b"] = ep(arc.endpoint_b);
        a["samples"] = static_cast<int>(arc.polyline.size());
        arcs.push_back(a);
    }
    j["arcs"] = arcs;
    j["level_i"] = point_set_json(res.level_i);
    j["level_i_minus_1"] = point_set_json(res.level_im1);
    j["warnings"] = res.warnings;
    return j;
}

void write_report(const Json& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    out << report.dump(2) << "\n";
}

} // namespace primcob
