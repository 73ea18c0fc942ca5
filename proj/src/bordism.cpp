#include "primcob/bordism.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primcob {

namespace {

// Configuration-space system for the interior of the cobordism at level i:
// state = (x_1, ..., x_i) concatenated, constraints
//   x_1 on the level-(r-i) stratum of f,
//   f(x_a) = f(x_1) for a = 2..i,
//   h(x_a) = h(x_2) for a = 3..i,
// leaving a 1-dimensional solution set. Slack = h(x_1) - h(x_2).
struct ConfigSystem {
    const PrimMapModel* model;
    int r, i;
    int n;       // domain dimension
    int fcomps;  // components of f (ambient - 1)
    int D;       // state dimension = i * n
    int C;       // number of constraints = D - 1

    ConfigSystem(const PrimMapModel& m, int r_, int i_) : model(&m), r(r_), i(i_) {
        n = m.domain.dim;
        fcomps = m.ambient_dim - 1;
        D = i * n;
        int strat = (r - i >= 1) ? 1 : 0; // corank-1 locus: one equation (det df)
        if (r - i >= 2) throw std::invalid_argument("stratum level too deep for this tracer");
        if (strat == 1 && n != 2)
            throw std::invalid_argument("stratified first entry requires a surface model");
        C = strat + (i - 1) * fcomps + std::max(0, i - 2);
        if (D - C != 1) throw std::invalid_argument("configuration space is not 1-dimensional");
    }

    std::array<double, 2> entry(const Eigen::VectorXd& s, int e) const {
        std::array<double, 2> x{s(e * n), n == 2 ? s(e * n + 1) : 0.0};
        return x;
    }

    void residual_jacobian(const Eigen::VectorXd& s, Eigen::VectorXd& F, Eigen::MatrixXd& J) const {
        F.setZero(C);
        J.setZero(C, D);
        std::vector<MapJet> jets(static_cast<std::size_t>(i));
        for (int e = 0; e < i; ++e) jets[static_cast<std::size_t>(e)] = model->jet(entry(s, e));
        int row = 0;
        if (r - i >= 1) {
            FoldLocalData fd = fold_local_data(*model, entry(s, 0));
            F(row) = fd.det;
            for (int d = 0; d < n; ++d) J(row, d) = fd.grad[static_cast<std::size_t>(d)];
            ++row;
        }
        for (int e = 1; e < i; ++e)
            for (int c = 0; c < fcomps; ++c) {
                F(row) = jets[static_cast<std::size_t>(e)].v[c] - jets[0].v[c];
                for (int d = 0; d < n; ++d) {
                    J(row, e * n + d) = jets[static_cast<std::size_t>(e)].d1[c][d];
                    J(row, d) -= jets[0].d1[c][d];
                }
                ++row;
            }
        int hc = model->ambient_dim - 1;
        for (int e = 2; e < i; ++e) {
            F(row) = jets[static_cast<std::size_t>(e)].v[hc] - jets[1].v[hc];
            for (int d = 0; d < n; ++d) {
                J(row, e * n + d) = jets[static_cast<std::size_t>(e)].d1[hc][d];
                J(row, n + d) -= jets[1].d1[hc][d];
            }
            ++row;
        }
    }

    double slack(const Eigen::VectorXd& s) const {
        int hc = model->ambient_dim - 1;
        return model->height(entry(s, 0)) - model->height(entry(s, 1)) + 0.0 * hc;
    }

    Eigen::VectorXd slack_gradient(const Eigen::VectorXd& s) const {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(D);
        int hc = model->ambient_dim - 1;
        MapJet j0 = model->jet(entry(s, 0)), j1 = model->jet(entry(s, 1));
        for (int d = 0; d < n; ++d) {
            g(d) = j0.d1[hc][d];
            g(n + d) = -j1.d1[hc][d];
        }
        return g;
    }

    bool correct(Eigen::VectorXd& s, double tol, int iters) const {
        Eigen::VectorXd F(C);
        Eigen::MatrixXd J(C, D);
        for (int it = 0; it < iters; ++it) {
            residual_jacobian(s, F, J);
            if (F.norm() <= tol) return true;
            Eigen::MatrixXd JJt = J * J.transpose();
            Eigen::VectorXd lam = JJt.ldlt().solve(F);
            Eigen::VectorXd step = J.transpose() * lam;
            if (!step.allFinite() || step.norm() > 0.5) return false;
            s -= step;
        }
        residual_jacobian(s, F, J);
        return F.norm() <= tol;
    }

    Eigen::VectorXd tangent(const Eigen::VectorXd& s) const {
        Eigen::VectorXd F(C);
        Eigen::MatrixXd J(C, D);
        residual_jacobian(s, F, J);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        Eigen::MatrixXd ker = lu.kernel();
        Eigen::VectorXd t = ker.col(0);
        double nrm = t.norm();
        if (nrm > 0) t /= nrm;
        return t;
    }

    double min_collision_gap(const Eigen::VectorXd& s, int* which = nullptr) const {
        double best = 1e18;
        for (int e = 1; e < i; ++e) {
            double d = model->domain.distance(entry(s, 0), entry(s, e));
            if (d < best) {
                best = d;
                if (which) *which = e;
            }
        }
        return best;
    }

    std::vector<std::array<double, 2>> config_of(const Eigen::VectorXd& s) const {
        std::vector<std::array<double, 2>> cfg;
        for (int e = 0; e < i; ++e) cfg.push_back(model->domain.canonical(entry(s, e)));
        std::sort(cfg.begin() + 1, cfg.end(), [](const auto& a, const auto& b) {
            if (a[0] != b[0]) return a[0] < b[0];
            return a[1] < b[1];
        });
        return cfg;
    }
};

bool config_matches(const PrimMapModel& m, const std::vector<std::array<double, 2>>& a,
                    const std::vector<std::array<double, 2>>& b, double radius) {
    if (a.size() != b.size()) return false;
    if (m.domain.distance(a[0], b[0]) > radius) return false;
    // Trailing entries up to permutation.
    std::vector<bool> taken(b.size(), false);
    for (std::size_t e = 1; e < a.size(); ++e) {
        bool found = false;
        for (std::size_t l = 1; l < b.size(); ++l) {
            if (taken[l]) continue;
            if (m.domain.distance(a[e], b[l]) <= radius) {
                taken[l] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

int find_point(const PrimMapModel& m, const ResolvedPointSet& set,
               const std::vector<std::array<double, 2>>& cfg, double radius) {
    for (const auto& p : set.points)
        if (config_matches(m, cfg, p.tuple, radius)) return p.index;
    return -1;
}

struct SeedState {
    Eigen::VectorXd s;
    bool from_collision = false;
    int point_index = -1;
};

// Kernel direction of df at a surface point, or the 1-direction on curves.
std::array<double, 2> split_direction(const PrimMapModel& m, const std::array<double, 2>& x) {
    if (m.domain.dim == 1) return {1.0, 0.0};
    FoldLocalData fd = fold_local_data(m, x);
    return fd.kernel;
}

} // namespace

ParityReport parity_chain(const PrimMapModel& model, int r, const SolveOptions& opts,
                          std::optional<GenericityReport> precomputed_genericity) {
    ParityReport rep;
    rep.model_name = model.name;
    rep.r = r;
    rep.grid_resolution = opts.grid_resolution;
    rep.genericity = precomputed_genericity ? *precomputed_genericity : genericity_report(model);
    rep.generic = rep.genericity.generic;
    if (!rep.generic) return rep;
    for (int i = 1; i <= r; ++i) {
        ResolvedPointSet s = find_mixed(model, r, i, opts);
        rep.counts.push_back(s.count());
        rep.parities.push_back(s.count() % 2);
        for (const auto& w : s.warnings) rep.warnings.push_back(w);
    }
    rep.chain_pass = true;
    for (int p : rep.parities)
        if (p != rep.parities[0]) rep.chain_pass = false;
    return rep;
}

TraceResult trace_cobordism(const PrimMapModel& model, int r, int i, const SolveOptions& opts) {
    if (i < 2 || i > r) throw std::invalid_argument("trace level i must satisfy 2 <= i <= r");
    TraceResult res;
    res.i = i;
    res.level_i = find_mixed(model, r, i, opts);
    res.level_im1 = find_mixed(model, r, i - 1, opts);

    ConfigSystem sys(model, r, i);
    const double step = 1e-2;
    const double collide_radius = std::max(opts.diagonal_tube, 4e-2);
    const double match_radius = 1e-3;
    const int max_steps = 200000;

    // One seed per boundary point.
    std::vector<SeedState> seeds;
    for (const auto& p : res.level_i.points) {
        SeedState st;
        st.from_collision = false;
        st.point_index = p.index;
        st.s.resize(sys.D);
        for (int e = 0; e < i; ++e)
            for (int d = 0; d < sys.n; ++d)
                st.s(e * sys.n + d) = p.tuple[static_cast<std::size_t>(e)][static_cast<std::size_t>(d)];
        seeds.push_back(st);
    }
    for (const auto& p : res.level_im1.points) {
        // Split the lead entry into a near-collided pair along the kernel
        // direction; the corrector snaps the seed onto the interior manifold.
        std::array<double, 2> k = split_direction(model, p.tuple[0]);
        const double delta = 2e-2;
        for (double sign : {1.0, -1.0}) {
            SeedState st;
            st.from_collision = true;
            st.point_index = p.index;
            st.s.resize(sys.D);
            std::array<double, 2> xa{p.tuple[0][0] + sign * delta * k[0],
                                     p.tuple[0][1] + sign * delta * k[1]};
            std::array<double, 2> xb{p.tuple[0][0] - sign * delta * k[0],
                                     p.tuple[0][1] - sign * delta * k[1]};
            for (int d = 0; d < sys.n; ++d) st.s(d) = xa[static_cast<std::size_t>(d)];
            // Remaining entries: the old trailing entries, plus the second
            // half of the split pair in the last slot.
            for (std::size_t e = 1; e < p.tuple.size(); ++e)
                for (int d = 0; d < sys.n; ++d)
                    st.s(static_cast<int>(e) * sys.n + d) = p.tuple[e][static_cast<std::size_t>(d)];
            for (int d = 0; d < sys.n; ++d)
                st.s((i - 1) * sys.n + d) = xb[static_cast<std::size_t>(d)];
            if (!sys.correct(st.s, 1e-11, 80)) continue;
            if (sys.slack(st.s) < 0) continue;
            if (sys.min_collision_gap(st.s) < delta / 2) continue;
            seeds.push_back(st);
            break;
        }
    }

    // Trace each seed to its far boundary.
    struct TraceOutcome {
        bool ok = false;
        ArcEndpoint far;
        std::vector<std::vector<std::array<double, 2>>> polyline;
    };
    std::vector<TraceOutcome> outcomes;

    for (const auto& seed : seeds) {
        TraceOutcome out;
        Eigen::VectorXd s = seed.s;
        if (!sys.correct(s, 1e-11, 80)) {
            res.warnings.push_back("seed correction failed");
            outcomes.push_back(out);
            continue;
        }
        Eigen::VectorXd t = sys.tangent(s);
        // Launch direction: increase the slack when starting at the slack
        // boundary; move the collision gap open when starting from a split.
        if (!seed.from_collision) {
            double ds = sys.slack_gradient(s).dot(t);
            if (ds < 0) t = -t;
        } else {
            // Any direction that does not immediately re-collide works; pick
            // the one that grows the collision gap.
            Eigen::VectorXd probe = s + step * t;
            sys.correct(probe, 1e-11, 40);
            if (sys.min_collision_gap(probe) < sys.min_collision_gap(s)) t = -t;
        }
        out.polyline.push_back(sys.config_of(s));
        bool done = false;
        double prev_slack = sys.slack(s);
        int launch_grace = 10;
        for (int itstep = 0; itstep < max_steps && !done; ++itstep) {
            Eigen::VectorXd pred = s + step * t;
            if (!sys.correct(pred, 1e-11, 40)) {
                res.warnings.push_back("corrector failed along arc");
                break;
            }
            Eigen::VectorXd nt = sys.tangent(pred);
            if (nt.dot(t) < 0) nt = -nt;
            double cur_slack = sys.slack(pred);
            bool grace = itstep < launch_grace;
            if (!grace && cur_slack < 0) {
                // Bisect back to slack = 0 on the constraint manifold.
                Eigen::VectorXd lo = s, hi = pred;
                for (int b = 0; b < 60; ++b) {
                    Eigen::VectorXd mid = 0.5 * (lo + hi);
                    sys.correct(mid, 1e-11, 40);
                    if (sys.slack(mid) >= 0) lo = mid;
                    else hi = mid;
                }
                out.far.collision = false;
                out.far.config = sys.config_of(lo);
                out.far.point_index = find_point(model, res.level_i, out.far.config, match_radius);
                out.polyline.push_back(out.far.config);
                out.ok = out.far.point_index >= 0;
                if (!out.ok) res.warnings.push_back("slack endpoint matched no known point");
                done = true;
                break;
            }
            int which = 0;
            if (!grace && sys.min_collision_gap(pred, &which) < collide_radius) {
                // Creep toward the collision limit with shrinking steps; the
                // constraint Jacobian degenerates right at the boundary, so
                // stop once the gap is tight.
                Eigen::VectorXd cur = pred;
                Eigen::VectorXd ct = nt;
                double sstep = step / 5;
                for (int shrink = 0; shrink < 2000; ++shrink) {
                    double g = sys.min_collision_gap(cur, &which);
                    if (g < 2e-3 || sstep < 1e-7) break;
                    Eigen::VectorXd nxt = cur + sstep * ct;
                    if (!sys.correct(nxt, 1e-10, 40)) {
                        sstep /= 2;
                        continue;
                    }
                    if (sys.min_collision_gap(nxt) >= g) {
                        sstep /= 2;
                        continue;
                    }
                    Eigen::VectorXd t2 = sys.tangent(nxt);
                    if (t2.dot(ct) < 0) t2 = -t2;
                    cur = nxt;
                    ct = t2;
                }
                sys.min_collision_gap(cur, &which);
                // Lead entry of the limit configuration: midpoint of the
                // colliding pair; drop the collided trailing entry.
                auto x0 = sys.entry(cur, 0);
                auto xw = sys.entry(cur, which);
                // Unwrap across the periodic seam before averaging.
                for (int d = 0; d < 2; ++d) {
                    double diff = xw[static_cast<std::size_t>(d)] - x0[static_cast<std::size_t>(d)];
                    const double twopi = 6.283185307179586476925286766559;
                    while (diff > 3.141592653589793) diff -= twopi;
                    while (diff < -3.141592653589793) diff += twopi;
                    xw[static_cast<std::size_t>(d)] = x0[static_cast<std::size_t>(d)] + diff;
                }
                std::vector<std::array<double, 2>> cfg;
                cfg.push_back(model.domain.canonical(
                    {0.5 * (x0[0] + xw[0]), 0.5 * (x0[1] + xw[1])}));
                for (int e = 1; e < i; ++e)
                    if (e != which) cfg.push_back(model.domain.canonical(sys.entry(cur, e)));
                std::sort(cfg.begin() + 1, cfg.end(), [](const auto& a, const auto& b) {
                    if (a[0] != b[0]) return a[0] < b[0];
                    return a[1] < b[1];
                });
                out.far.collision = true;
                out.far.config = cfg;
                out.far.point_index = find_point(model, res.level_im1, cfg, 2e-2);
                out.polyline.push_back(sys.config_of(cur));
                out.ok = out.far.point_index >= 0;
                if (!out.ok) res.warnings.push_back("collision endpoint matched no known point");
                done = true;
                break;
            }
            s = pred;
            t = nt;
            prev_slack = cur_slack;
            if (itstep % 10 == 0) out.polyline.push_back(sys.config_of(s));
        }
        if (!done && out.polyline.size() > 1) res.inconclusive = true;
        (void)prev_slack;
        outcomes.push_back(out);
    }

    // Boundary matching: seed b must land on a boundary point, and the
    // resulting pairing must be a perfect matching of level_i + level_im1.
    int total = res.level_i.count() + res.level_im1.count();
    auto key_of = [&](bool collision, int idx) { return (collision ? 1000000 : 0) + idx; };
    std::vector<std::pair<int, int>> pairs;
    bool all_ok = !seeds.empty() || total == 0;
    if (static_cast<int>(seeds.size()) != total) all_ok = false;
    for (std::size_t q = 0; q < outcomes.size(); ++q) {
        if (!outcomes[q].ok) {
            all_ok = false;
            res.inconclusive = true;
            continue;
        }
        int a = key_of(seeds[q].from_collision, seeds[q].point_index);
        int b = key_of(outcomes[q].far.collision, outcomes[q].far.point_index);
        pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(pairs.begin(), pairs.end());
    // Each unordered pair must occur exactly twice (once traced from each
    // end), and every boundary point exactly once across distinct pairs.
    bool pairing = all_ok;
    std::vector<std::pair<int, int>> arcs_keys;
    for (std::size_t q = 0; q < pairs.size();) {
        std::size_t l = q;
        while (l < pairs.size() && pairs[l] == pairs[q]) ++l;
        if (l - q != 2) pairing = false;
        arcs_keys.push_back(pairs[q]);
        q = l;
    }
    std::vector<int> used;
    for (auto& [a, b] : arcs_keys) {
        used.push_back(a);
        used.push_back(b);
    }
    std::sort(used.begin(), used.end());
    if (static_cast<int>(used.size()) != total) pairing = false;
    for (std::size_t q = 1; q < used.size(); ++q)
        if (used[q] == used[q - 1]) pairing = false;
    res.pairing_pass = pairing && !res.inconclusive;

    // Materialize one arc record per discovered pair.
    for (auto& key : arcs_keys) {
        for (std::size_t q = 0; q < outcomes.size(); ++q) {
            if (!outcomes[q].ok) continue;
            int a = key_of(seeds[q].from_collision, seeds[q].point_index);
            int b = key_of(outcomes[q].far.collision, outcomes[q].far.point_index);
            if (std::minmax(a, b) != std::minmax(key.first, key.second)) continue;
            CobordismArc arc;
            arc.i = i;
            arc.polyline = outcomes[q].polyline;
            arc.endpoint_a.collision = seeds[q].from_collision;
            arc.endpoint_a.point_index = seeds[q].point_index;
            arc.endpoint_a.config = outcomes[q].polyline.front();
            arc.endpoint_b = outcomes[q].far;
            res.arcs.push_back(arc);
            break;
        }
    }
    return res;
}

bool euler_cross_check(const PrimMapModel& model, const SolveOptions& opts) {
    if (model.domain.dim == 1) {
        StrataResult st = find_strata(model, 1, opts);
        return st.points.count() % 2 == 0;
    }
    int chi;
    if (model.name == "round_torus" || model.name == "tilted_torus") chi = 0;
    else if (model.name == "boy_surface") chi = 1;
    else throw std::invalid_argument("no known Euler characteristic for model " + model.name);
    StrataResult st = find_strata(model, 2, opts);
    return st.points.count() % 2 == ((chi % 2) + 2) % 2;
}

} // namespace primcob
