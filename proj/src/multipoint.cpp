#include "primcob/multipoint.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace primcob {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap1_local(double x) {
    x = std::fmod(x, kTwoPi);
    if (x < 0) x += kTwoPi;
    if (x >= kTwoPi) x -= kTwoPi;
    return x;
}

// A root converging onto the chart seam can come back as 2pi instead of 0;
// pull it to the low side so sorting and dedup see one representative.
std::array<double, 2> snap_seam(std::array<double, 2> x, int dim) {
    for (int d = 0; d < dim; ++d)
        if (x[static_cast<std::size_t>(d)] > kTwoPi - 1e-6) x[static_cast<std::size_t>(d)] -= kTwoPi;
    return x;
}

// Chart-singular band of sphere-chart models: near v = 0 or pi the chart
// collapses a whole u-circle, so candidates there are chart artifacts, not
// geometry. Solvers skip the band; genuine loci inside it are invisible at
// desk scale and the caller is warned via the model's documented exclusion.
bool in_excluded_band(const PrimMapModel& m, const std::array<double, 2>& x) {
    return m.chart_exclusion > 0 && m.domain.dim == 2 &&
           std::fabs(std::sin(x[1])) < m.chart_exclusion;
}

int codim_of_lift(const PrimMapModel& model) {
    // g maps into R^(n+k+1): k = ambient - dim - 1.
    return model.ambient_dim - model.domain.dim - 1;
}

void require_dim0(const PrimMapModel& model, int r) {
    int n = model.domain.dim;
    int k = codim_of_lift(model);
    int dim = n - (r - 1) * (k + 1);
    if (dim != 0)
        throw std::invalid_argument(
            "multiple-point set has dimension n-(r-1)(k+1) = " + std::to_string(dim) +
            "; only dimension 0 is supported");
}

std::array<double, 3> value_of(const PrimMapModel& m, const std::array<double, 2>& x) {
    return m.value(x);
}

double tuple_residual(const PrimMapModel& m, const std::vector<std::array<double, 2>>& tuple) {
    double res = 0;
    auto v0 = value_of(m, tuple[0]);
    for (std::size_t e = 1; e < tuple.size(); ++e) {
        auto v = value_of(m, tuple[e]);
        for (int c = 0; c < m.ambient_dim; ++c) res = std::max(res, std::fabs(v[c] - v0[c]));
    }
    return res;
}

bool tuple_less(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a[1] < b[1];
}

void sort_points(ResolvedPointSet& s) {
    std::sort(s.points.begin(), s.points.end(), [](const ResolvedPoint& p, const ResolvedPoint& q) {
        for (std::size_t e = 0; e < std::min(p.tuple.size(), q.tuple.size()); ++e) {
            if (p.tuple[e][0] != q.tuple[e][0]) return p.tuple[e][0] < q.tuple[e][0];
            if (p.tuple[e][1] != q.tuple[e][1]) return p.tuple[e][1] < q.tuple[e][1];
        }
        return p.tuple.size() < q.tuple.size();
    });
    for (std::size_t n = 0; n < s.points.size(); ++n) s.points[n].index = static_cast<int>(n);
}

bool same_config(const PrimMapModel& m, const std::vector<std::array<double, 2>>& a,
                 const std::vector<std::array<double, 2>>& b, double radius) {
    if (a.size() != b.size()) return false;
    for (std::size_t e = 0; e < a.size(); ++e)
        if (m.domain.distance(a[e], b[e]) > radius) return false;
    return true;
}

// ---------- curves: double points ----------

std::vector<std::array<double, 2>> solve_curve_doubles(const PrimMapModel& model,
                                                       const SolveOptions& opts,
                                                       std::vector<std::string>& warnings) {
    const int N = opts.grid_resolution;
    std::vector<std::array<double, 2>> vals(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        auto v = value_of(model, {kTwoPi * i / N, 0});
        vals[static_cast<std::size_t>(i)] = {v[0], v[1]};
    }
    double cell = kTwoPi / N;
    std::vector<std::array<double, 2>> unordered; // (a, b) with a < b
    for (int i = 0; i < N; ++i)
        for (int l = i + 1; l < N; ++l) {
            double t1 = kTwoPi * i / N, t2 = kTwoPi * l / N;
            double sep = model.domain.distance({t1, 0}, {t2, 0});
            if (sep < std::max(opts.diagonal_tube, 4 * cell)) continue;
            double dx = vals[i][0] - vals[l][0], dy = vals[i][1] - vals[l][1];
            if (dx * dx + dy * dy > 9 * cell * cell) continue;
            std::array<double, 2> p{t1, t2};
            bool ok = false;
            for (int it = 0; it < opts.max_newton_iters; ++it) {
                MapJet j1 = model.jet({p[0], 0}), j2 = model.jet({p[1], 0});
                Eigen::Vector2d F(j1.v[0] - j2.v[0], j1.v[1] - j2.v[1]);
                if (F.norm() <= opts.residual_tol) { ok = true; break; }
                Eigen::Matrix2d J;
                J << j1.d1[0][0], -j2.d1[0][0], j1.d1[1][0], -j2.d1[1][0];
                if (std::fabs(J.determinant()) < 1e-14) break;
                Eigen::Vector2d s = J.partialPivLu().solve(F);
                p[0] -= s(0);
                p[1] -= s(1);
            }
            if (!ok) {
                // Non-converged candidate cells near real solutions are
                // common; only record ones that got close.
                MapJet j1 = model.jet({p[0], 0}), j2 = model.jet({p[1], 0});
                double rres = std::hypot(j1.v[0] - j2.v[0], j1.v[1] - j2.v[1]);
                if (rres < 1e-4)
                    warnings.push_back("double-point candidate did not converge near (" +
                                       std::to_string(t1) + ", " + std::to_string(t2) + ")");
                continue;
            }
            double psep = model.domain.distance({p[0], 0}, {p[1], 0});
            if (psep < opts.diagonal_tube) continue;
            std::array<double, 2> a = snap_seam(model.domain.canonical({p[0], 0}), 1);
            std::array<double, 2> b = snap_seam(model.domain.canonical({p[1], 0}), 1);
            std::array<double, 2> pair{a[0], b[0]};
            if (pair[0] > pair[1]) std::swap(pair[0], pair[1]);
            bool dup = false;
            double rad = opts.dedup_radius * 1e3;
            for (auto& q : unordered) {
                bool direct = model.domain.distance({q[0], 0}, {pair[0], 0}) < rad &&
                              model.domain.distance({q[1], 0}, {pair[1], 0}) < rad;
                bool swapped = model.domain.distance({q[0], 0}, {pair[1], 0}) < rad &&
                               model.domain.distance({q[1], 0}, {pair[0], 0}) < rad;
                if (direct || swapped) dup = true;
            }
            if (!dup) unordered.push_back(pair);
        }
    std::sort(unordered.begin(), unordered.end());
    return unordered;
}

// ---------- surfaces: triple points ----------

struct GridSample {
    std::array<double, 2> x;
    std::array<double, 3> v;
};

std::vector<std::vector<std::array<double, 2>>> solve_surface_triples(
    const PrimMapModel& model, const SolveOptions& opts, std::vector<std::string>& warnings) {
    const int N = std::min(opts.grid_resolution, 128);
    std::vector<GridSample> samples;
    samples.reserve(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int l = 0; l < N; ++l) {
            GridSample s;
            s.x = {kTwoPi * i / N, kTwoPi * l / N};
            if (in_excluded_band(model, s.x)) continue;
            s.v = value_of(model, s.x);
            samples.push_back(s);
        }
    // Voxel hash over the image.
    double lo[3] = {1e18, 1e18, 1e18}, hi[3] = {-1e18, -1e18, -1e18};
    for (auto& s : samples)
        for (int c = 0; c < 3; ++c) {
            lo[c] = std::min(lo[c], s.v[c]);
            hi[c] = std::max(hi[c], s.v[c]);
        }
    double cell = 0;
    for (int c = 0; c < 3; ++c) cell = std::max(cell, (hi[c] - lo[c]) / 40.0);
    if (cell <= 0) cell = 1.0;
    std::map<std::array<int, 3>, std::vector<int>> voxels;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        std::array<int, 3> key;
        for (int c = 0; c < 3; ++c)
            key[static_cast<std::size_t>(c)] = static_cast<int>(std::floor((samples[s].v[c] - lo[c]) / cell));
        voxels[key].push_back(static_cast<int>(s));
    }

    double dcell = kTwoPi / N;
    double min_sep = std::max(opts.diagonal_tube, 3 * dcell);
    std::vector<std::vector<std::array<double, 2>>> triples; // sorted canonical entries

    auto try_candidate = [&](int ia, int ib, int ic) {
        const auto &A = samples[static_cast<std::size_t>(ia)], &B = samples[static_cast<std::size_t>(ib)],
                   &C = samples[static_cast<std::size_t>(ic)];
        if (model.domain.distance(A.x, B.x) < min_sep || model.domain.distance(A.x, C.x) < min_sep ||
            model.domain.distance(B.x, C.x) < min_sep)
            return;
        // 6-dim Newton on g(x1)-g(x2) = 0, g(x1)-g(x3) = 0.
        std::array<std::array<double, 2>, 3> p{A.x, B.x, C.x};
        bool ok = false;
        for (int it = 0; it < opts.max_newton_iters; ++it) {
            MapJet j1 = model.jet(p[0]), j2 = model.jet(p[1]), j3 = model.jet(p[2]);
            Eigen::Matrix<double, 6, 1> F;
            for (int c = 0; c < 3; ++c) {
                F(c) = j1.v[c] - j2.v[c];
                F(3 + c) = j1.v[c] - j3.v[c];
            }
            if (F.norm() <= opts.residual_tol) { ok = true; break; }
            Eigen::Matrix<double, 6, 6> J = Eigen::Matrix<double, 6, 6>::Zero();
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 2; ++d) {
                    J(c, d) = j1.d1[c][d];
                    J(c, 2 + d) = -j2.d1[c][d];
                    J(3 + c, d) = j1.d1[c][d];
                    J(3 + c, 4 + d) = -j3.d1[c][d];
                }
            Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(J);
            if (!lu.isInvertible()) break;
            Eigen::Matrix<double, 6, 1> s = lu.solve(F);
            if (s.norm() > 1.0) break; // diverging
            for (int e = 0; e < 3; ++e)
                for (int d = 0; d < 2; ++d) p[static_cast<std::size_t>(e)][static_cast<std::size_t>(d)] -= s(2 * e + d);
        }
        if (!ok) return;
        for (const auto& e : p)
            if (in_excluded_band(model, e)) return;
        if (model.domain.distance(p[0], p[1]) < opts.diagonal_tube ||
            model.domain.distance(p[0], p[2]) < opts.diagonal_tube ||
            model.domain.distance(p[1], p[2]) < opts.diagonal_tube)
            return;
        std::vector<std::array<double, 2>> entries = {snap_seam(model.domain.canonical(p[0]), 2),
                                                      snap_seam(model.domain.canonical(p[1]), 2),
                                                      snap_seam(model.domain.canonical(p[2]), 2)};
        std::sort(entries.begin(), entries.end(), tuple_less);
        for (auto& t : triples)
            if (same_config(model, t, entries, 1e-4)) return;
        triples.push_back(entries);
    };

    for (auto& [key, idx] : voxels) {
        // Gather this voxel plus neighbors.
        std::vector<int> pool;
        for (int du = -1; du <= 1; ++du)
            for (int dv = -1; dv <= 1; ++dv)
                for (int dw = -1; dw <= 1; ++dw) {
                    auto it = voxels.find({key[0] + du, key[1] + dv, key[2] + dw});
                    if (it != voxels.end())
                        pool.insert(pool.end(), it->second.begin(), it->second.end());
                }
        if (pool.size() > 600) {
            warnings.push_back("voxel pool too dense; skipped a candidate region");
            continue;
        }
        if (idx.empty()) continue;
        // Cluster the pool by domain location, then try one representative
        // per cluster triple.
        std::vector<std::vector<int>> pool_clusters;
        for (int s : pool) {
            bool placed = false;
            for (auto& cl : pool_clusters)
                if (model.domain.distance(samples[static_cast<std::size_t>(cl[0])].x,
                                          samples[static_cast<std::size_t>(s)].x) < min_sep) {
                    cl.push_back(s);
                    placed = true;
                    break;
                }
            if (!placed) pool_clusters.push_back({s});
        }
        if (pool_clusters.size() < 3) continue;
        for (std::size_t a = 0; a < pool_clusters.size(); ++a)
            for (std::size_t b = a + 1; b < pool_clusters.size(); ++b)
                for (std::size_t c = b + 1; c < pool_clusters.size(); ++c)
                    try_candidate(pool_clusters[a][0], pool_clusters[b][0], pool_clusters[c][0]);
    }
    std::sort(triples.begin(), triples.end());
    return triples;
}

// ---------- curve strata ----------

std::vector<double> solve_curve_folds(const PrimMapModel& model, const SolveOptions& opts) {
    const int N = opts.grid_resolution;
    std::vector<double> fp(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) fp[static_cast<std::size_t>(i)] = model.jet({kTwoPi * i / N, 0}).d1[0][0];
    std::vector<double> folds;
    for (int i = 0; i < N; ++i) {
        double va = fp[static_cast<std::size_t>(i)], vb = fp[static_cast<std::size_t>((i + 1) % N)];
        double a = kTwoPi * i / N, b = kTwoPi * (i + 1) / N;
        if (va == 0.0) {
            folds.push_back(a);
            continue;
        }
        if (va * vb >= 0) continue;
        for (int it = 0; it < 60; ++it) {
            double m = 0.5 * (a + b);
            double vm = model.jet({m, 0}).d1[0][0];
            if (va * vm <= 0) b = m;
            else { a = m; va = vm; }
        }
        double th = 0.5 * (a + b);
        for (int it = 0; it < 8; ++it) { // Newton polish
            MapJet j = model.jet({th, 0});
            if (std::fabs(j.d2[0][0][0]) < 1e-14) break;
            th -= j.d1[0][0] / j.d2[0][0][0];
        }
        folds.push_back(wrap1_local(th));
    }
    std::sort(folds.begin(), folds.end());
    // merge near-duplicates (periodic)
    std::vector<double> out;
    for (double th : folds) {
        bool dup = false;
        for (double q : out)
            if (model.domain.distance({q, 0}, {th, 0}) < opts.dedup_radius * 1e3) dup = true;
        if (!dup) out.push_back(th);
    }
    return out;
}

// ---------- surface fold tracing ----------

std::array<double, 2> fold_correct(const PrimMapModel& model, std::array<double, 2> x) {
    for (int it = 0; it < 40; ++it) {
        FoldLocalData fd = fold_local_data(model, x);
        double g2 = fd.grad[0] * fd.grad[0] + fd.grad[1] * fd.grad[1];
        if (g2 < 1e-18) break;
        double step = fd.det / g2;
        x[0] -= step * fd.grad[0];
        x[1] -= step * fd.grad[1];
        if (std::fabs(fd.det) < 1e-13) break;
    }
    return x;
}

std::vector<Polyline> trace_fold_curves(const PrimMapModel& model, const SolveOptions& opts) {
    const int N = std::min(std::max(opts.grid_resolution, 64), 256);
    std::vector<std::array<double, 2>> seeds;
    for (int i = 0; i < N; ++i)
        for (int l = 0; l < N; ++l) {
            std::array<double, 2> x{kTwoPi * i / N, kTwoPi * l / N};
            std::array<double, 2> xr{kTwoPi * (i + 1) / N, kTwoPi * l / N};
            std::array<double, 2> xu{kTwoPi * i / N, kTwoPi * (l + 1) / N};
            if (in_excluded_band(model, x) || in_excluded_band(model, xr) ||
                in_excluded_band(model, xu))
                continue;
            double d0 = fold_local_data(model, x).det;
            // a grid point sitting exactly on the fold produces no sign change
            if (d0 == 0) {
                seeds.push_back(x);
                continue;
            }
            if (d0 * fold_local_data(model, xr).det < 0)
                seeds.push_back(fold_correct(model, {0.5 * (x[0] + xr[0]), x[1]}));
            if (d0 * fold_local_data(model, xu).det < 0)
                seeds.push_back(fold_correct(model, {x[0], 0.5 * (x[1] + xu[1])}));
        }
    std::vector<Polyline> curves;
    const double step = 0.01;
    std::vector<bool> used(seeds.size(), false);
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        if (used[s]) continue;
        std::array<double, 2> start = seeds[s];
        FoldLocalData fd0 = fold_local_data(model, start);
        double tnorm = std::hypot(fd0.grad[0], fd0.grad[1]);
        if (tnorm < 1e-12) continue;
        std::array<double, 2> dir0{-fd0.grad[1] / tnorm, fd0.grad[0] / tnorm};

        // Follow the curve in one direction; stops on the excluded band, a
        // grad blow-down, or closure back to the start.
        bool closed = false;
        auto trace_dir = [&](std::array<double, 2> dir) {
            std::vector<std::array<double, 2>> pts;
            std::array<double, 2> x = start;
            const int max_steps = 20000;
            for (int it = 0; it < max_steps; ++it) {
                std::array<double, 2> pred{x[0] + step * dir[0], x[1] + step * dir[1]};
                if (in_excluded_band(model, pred)) break;
                pred = fold_correct(model, pred);
                FoldLocalData fd = fold_local_data(model, pred);
                double n = std::hypot(fd.grad[0], fd.grad[1]);
                if (n < 1e-12) break;
                std::array<double, 2> ndir{-fd.grad[1] / n, fd.grad[0] / n};
                if (ndir[0] * dir[0] + ndir[1] * dir[1] < 0) {
                    ndir[0] = -ndir[0];
                    ndir[1] = -ndir[1];
                }
                dir = ndir;
                x = pred;
                pts.push_back(model.domain.wrap(x));
                if (it > 10 && model.domain.distance(x, start) < step) {
                    closed = true;
                    break;
                }
            }
            return pts;
        };

        Polyline pl;
        auto fwd = trace_dir(dir0);
        if (closed) {
            pl.pts.push_back(model.domain.wrap(start));
            pl.pts.insert(pl.pts.end(), fwd.begin(), fwd.end());
            pl.closed = true;
        } else {
            auto bwd = trace_dir({-dir0[0], -dir0[1]});
            pl.pts.assign(bwd.rbegin(), bwd.rend());
            pl.pts.push_back(model.domain.wrap(start));
            pl.pts.insert(pl.pts.end(), fwd.begin(), fwd.end());
            pl.closed = closed; // a loop can also close during the reverse leg
        }
        // Retire seeds lying on this curve or on one of its deck images.
        for (std::size_t q = 0; q < seeds.size(); ++q) {
            if (used[q]) continue;
            for (const auto& p : pl.pts)
                if (model.domain.distance(seeds[q], p) < 3 * step) {
                    used[q] = true;
                    break;
                }
        }
        if (pl.pts.size() > 3) curves.push_back(std::move(pl));
    }
    return curves;
}

std::vector<std::array<double, 2>> solve_surface_cusps(const PrimMapModel& model,
                                                       const std::vector<Polyline>& folds,
                                                       const SolveOptions& opts) {
    std::vector<std::array<double, 2>> cusps;
    auto refine_cusp = [&](std::array<double, 2>& x) -> bool {
        // Newton on (det, tangency) with a finite-difference Jacobian of the
        // analytic values.
        for (int it = 0; it < opts.max_newton_iters; ++it) {
            FoldLocalData fd = fold_local_data(model, x);
            Eigen::Vector2d F(fd.det, fd.tangency);
            if (F.norm() <= opts.residual_tol) return true;
            const double h = 1e-6;
            Eigen::Matrix2d J;
            for (int d = 0; d < 2; ++d) {
                std::array<double, 2> xp = x, xm = x;
                xp[static_cast<std::size_t>(d)] += h;
                xm[static_cast<std::size_t>(d)] -= h;
                FoldLocalData fp = fold_local_data(model, xp), fm = fold_local_data(model, xm);
                J(0, d) = (fp.det - fm.det) / (2 * h);
                J(1, d) = (fp.tangency - fm.tangency) / (2 * h);
            }
            if (std::fabs(J.determinant()) < 1e-14) return false;
            Eigen::Vector2d s = J.partialPivLu().solve(F);
            if (s.norm() > 0.5) return false;
            x[0] -= s(0);
            x[1] -= s(1);
        }
        return false;
    };
    for (const auto& pl : folds) {
        for (std::size_t e = 0; e + 1 < pl.pts.size(); ++e) {
            double ta = fold_local_data(model, pl.pts[e]).tangency;
            double tb = fold_local_data(model, pl.pts[e + 1]).tangency;
            if (ta * tb >= 0 && ta != 0) continue;
            std::array<double, 2> x{0.5 * (pl.pts[e][0] + pl.pts[e + 1][0]),
                                    0.5 * (pl.pts[e][1] + pl.pts[e + 1][1])};
            // Guard the periodic seam: consecutive trace points are close in
            // the domain metric, so a long chord means a wrap.
            if (model.domain.distance(pl.pts[e], pl.pts[e + 1]) > 0.1) continue;
            std::array<double, 2> refined = x;
            if (!refine_cusp(refined)) continue;
            if (in_excluded_band(model, refined)) continue;
            refined = model.domain.canonical(refined);
            bool dup = false;
            for (auto& q : cusps)
                if (model.domain.distance(q, refined) < 1e-4) dup = true;
            if (!dup) cusps.push_back(refined);
        }
    }
    std::sort(cusps.begin(), cusps.end(), tuple_less);
    return cusps;
}

// ---------- surfaces: mixed (r=3, i=2) ----------

std::vector<std::vector<std::array<double, 2>>> solve_surface_mixed2(
    const PrimMapModel& model, const std::vector<Polyline>& folds, const SolveOptions& opts,
    std::vector<std::string>& warnings) {
    const int N = std::min(opts.grid_resolution, 128);
    std::vector<GridSample> samples;
    for (int i = 0; i < N; ++i)
        for (int l = 0; l < N; ++l) {
            GridSample s;
            s.x = {kTwoPi * i / N, kTwoPi * l / N};
            if (in_excluded_band(model, s.x)) continue;
            s.v = value_of(model, s.x);
            samples.push_back(s);
        }
    double dcell = kTwoPi / N;
    double min_sep = std::max(opts.diagonal_tube, 3 * dcell);
    std::vector<std::vector<std::array<double, 2>>> out;

    auto try_candidate = [&](std::array<double, 2> x1, std::array<double, 2> x2) {
        for (int it = 0; it < opts.max_newton_iters; ++it) {
            MapJet j1 = model.jet(x1), j2 = model.jet(x2);
            FoldLocalData fd = fold_local_data(model, x1);
            Eigen::Vector4d F(fd.det, j1.v[0] - j2.v[0], j1.v[1] - j2.v[1], j1.v[2] - j2.v[2]);
            if (F.norm() <= opts.residual_tol) {
                if (in_excluded_band(model, x1) || in_excluded_band(model, x2)) return;
                if (model.domain.distance(x1, x2) < opts.diagonal_tube) return;
                std::vector<std::array<double, 2>> cfg = {model.domain.canonical(x1),
                                                          model.domain.canonical(x2)};
                for (auto& t : out)
                    if (same_config(model, t, cfg, 1e-4)) return;
                out.push_back(cfg);
                return;
            }
            Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
            J(0, 0) = fd.grad[0];
            J(0, 1) = fd.grad[1];
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 2; ++d) {
                    J(1 + c, d) = j1.d1[c][d];
                    J(1 + c, 2 + d) = -j2.d1[c][d];
                }
            Eigen::FullPivLU<Eigen::Matrix4d> lu(J);
            if (!lu.isInvertible()) return;
            Eigen::Vector4d s = lu.solve(F);
            if (s.norm() > 1.0) return;
            x1[0] -= s(0);
            x1[1] -= s(1);
            x2[0] -= s(2);
            x2[1] -= s(3);
        }
        warnings.push_back("mixed-set candidate did not converge");
    };

    for (const auto& pl : folds)
        for (std::size_t e = 0; e < pl.pts.size(); e += 2) {
            auto v1 = value_of(model, pl.pts[e]);
            for (const auto& s : samples) {
                if (model.domain.distance(pl.pts[e], s.x) < min_sep) continue;
                double d = 0;
                for (int c = 0; c < 3; ++c) d = std::max(d, std::fabs(v1[c] - s.v[c]));
                if (d > 3 * dcell) continue;
                try_candidate(pl.pts[e], s.x);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::pair<ResolvedPointSet, ResolvedPointSet> find_multiple_points(const PrimMapModel& model,
                                                                   int r,
                                                                   const SolveOptions& opts) {
    require_dim0(model, r);
    ResolvedPointSet source, target;
    source.kind = "M_r";
    target.kind = "N_r";
    source.r = target.r = r;
    source.grid_resolution = target.grid_resolution = opts.grid_resolution;
    source.refinement_iterations = target.refinement_iterations = opts.max_newton_iters;

    std::vector<std::vector<std::array<double, 2>>> configs; // unordered, sorted entries
    if (model.domain.dim == 1) {
        for (auto& pr : solve_curve_doubles(model, opts, source.warnings))
            configs.push_back({{pr[0], 0}, {pr[1], 0}});
    } else {
        configs = solve_surface_triples(model, opts, source.warnings);
    }

    for (const auto& cfg : configs) {
        // Target point: one entry per unordered configuration.
        ResolvedPoint tp;
        tp.tuple = cfg;
        auto v = value_of(model, cfg[0]);
        tp.target = v;
        tp.residual = tuple_residual(model, cfg);
        target.points.push_back(tp);
        // Source points: each entry once in the lead position, the rest sorted.
        for (std::size_t lead = 0; lead < cfg.size(); ++lead) {
            ResolvedPoint sp;
            sp.tuple.push_back(cfg[lead]);
            for (std::size_t e = 0; e < cfg.size(); ++e)
                if (e != lead) sp.tuple.push_back(cfg[e]);
            std::sort(sp.tuple.begin() + 1, sp.tuple.end(), tuple_less);
            sp.target = v;
            sp.residual = tp.residual;
            source.points.push_back(sp);
        }
    }
    sort_points(source);
    sort_points(target);
    target.warnings = source.warnings;
    return {source, target};
}

StrataResult find_strata(const PrimMapModel& model, int j, const SolveOptions& opts) {
    StrataResult res;
    res.points.kind = "Sigma_1^j";
    res.points.j = j;
    res.points.grid_resolution = opts.grid_resolution;
    res.points.refinement_iterations = opts.max_newton_iters;
    if (model.domain.dim == 1) {
        if (j != 1) throw std::invalid_argument("curves only carry the level-1 stratum");
        for (double th : solve_curve_folds(model, opts)) {
            ResolvedPoint p;
            p.tuple.push_back({th, 0});
            p.target = value_of(model, {th, 0});
            p.residual = std::fabs(model.jet({th, 0}).d1[0][0]);
            res.points.points.push_back(p);
        }
        sort_points(res.points);
        return res;
    }
    if (j == 1) {
        res.is_polyline = true;
        res.polylines = trace_fold_curves(model, opts);
        return res;
    }
    if (j == 2) {
        auto folds = trace_fold_curves(model, opts);
        for (auto& x : solve_surface_cusps(model, folds, opts)) {
            ResolvedPoint p;
            p.tuple.push_back(x);
            p.target = value_of(model, x);
            FoldLocalData fd = fold_local_data(model, x);
            p.residual = std::max(std::fabs(fd.det), std::fabs(fd.tangency));
            res.points.points.push_back(p);
        }
        sort_points(res.points);
        return res;
    }
    throw std::invalid_argument("unsupported stratum level for this domain dimension");
}

ResolvedPointSet find_mixed(const PrimMapModel& model, int r, int i, const SolveOptions& opts) {
    require_dim0(model, r);
    if (i < 1 || i > r) throw std::invalid_argument("mixed index i must satisfy 1 <= i <= r");
    if (i == r) {
        auto [source, target] = find_multiple_points(model, r, opts);
        source.kind = "Lambda_r_i";
        source.i = i;
        return source;
    }
    if (i == 1) {
        StrataResult st = find_strata(model, r - 1, opts);
        ResolvedPointSet out = st.points;
        out.kind = "Lambda_r_i";
        out.r = r;
        out.i = 1;
        return out;
    }
    // 1 < i < r: surfaces with r = 3, i = 2.
    if (model.domain.dim != 2 || r != 3 || i != 2)
        throw std::invalid_argument("unsupported mixed set for this model");
    ResolvedPointSet out;
    out.kind = "Lambda_r_i";
    out.r = r;
    out.i = i;
    out.grid_resolution = opts.grid_resolution;
    out.refinement_iterations = opts.max_newton_iters;
    auto folds = trace_fold_curves(model, opts);
    for (auto& cfg : solve_surface_mixed2(model, folds, opts, out.warnings)) {
        ResolvedPoint p;
        p.tuple = cfg;
        p.target = value_of(model, cfg[0]);
        p.residual = tuple_residual(model, cfg);
        FoldLocalData fd = fold_local_data(model, cfg[0]);
        p.residual = std::max(p.residual, std::fabs(fd.det));
        out.points.push_back(p);
    }
    sort_points(out);
    return out;
}

bool covering_check(const ResolvedPointSet& source, const ResolvedPointSet& target) {
    int r = source.r;
    if (source.count() != r * target.count()) return false;
    for (const auto& tp : target.points) {
        int above = 0;
        for (const auto& sp : source.points) {
            double d = 0;
            for (int c = 0; c < 3; ++c) d = std::max(d, std::fabs(sp.target[c] - tp.target[c]));
            if (d < 1e-6) ++above;
        }
        if (above != r) return false;
    }
    return true;
}

} // namespace primcob
