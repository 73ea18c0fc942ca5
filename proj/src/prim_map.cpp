#include "primcob/prim_map.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primcob {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap1(double x) {
    x = std::fmod(x, kTwoPi);
    if (x < 0) x += kTwoPi;
    // fmod can return exactly 2pi after the correction
    if (x >= kTwoPi) x -= kTwoPi;
    return x;
}

double circ_dist(double a, double b) {
    double d = std::fabs(wrap1(a) - wrap1(b));
    return std::min(d, kTwoPi - d);
}
} // namespace

std::array<double, 2> ChartedDomain::wrap(std::array<double, 2> x) const {
    x[0] = wrap1(x[0]);
    if (dim == 2) x[1] = wrap1(x[1]);
    else x[1] = 0.0;
    return x;
}

std::array<double, 2> ChartedDomain::canonical(const std::array<double, 2>& x) const {
    std::array<double, 2> best = wrap(x);
    for (const auto& g : deck) {
        std::array<double, 2> y = wrap(g(x));
        if (y[0] < best[0] - 1e-12 ||
            (std::fabs(y[0] - best[0]) <= 1e-12 && y[1] < best[1] - 1e-12))
            best = y;
    }
    return best;
}

double ChartedDomain::distance(const std::array<double, 2>& a, const std::array<double, 2>& b) const {
    auto base = [&](const std::array<double, 2>& p, const std::array<double, 2>& q) {
        double d0 = circ_dist(p[0], q[0]);
        double d1 = dim == 2 ? circ_dist(p[1], q[1]) : 0.0;
        return std::sqrt(d0 * d0 + d1 * d1);
    };
    double best = base(a, b);
    for (const auto& g : deck) best = std::min(best, base(wrap(g(a)), b));
    return best;
}

double MapJet::det_df() const {
    if (dim != 2) throw std::logic_error("det_df requires a surface jet");
    return d1[0][0] * d1[1][1] - d1[0][1] * d1[1][0];
}

MapJet PrimMapModel::jet(const std::array<double, 2>& x, int order) const {
    return eval_jet(*this, x, order);
}

std::array<double, 3> PrimMapModel::value(const std::array<double, 2>& x) const {
    MapJet j = jet(x, 0);
    return {j.v[0], j.v[1], j.v[2]};
}

double PrimMapModel::height(const std::array<double, 2>& x) const {
    MapJet j = jet(x, 0);
    return j.v[ambient_dim - 1];
}

MapJet eval_jet(const PrimMapModel& model, const std::array<double, 2>& x, int order) {
    (void)order; // closed-form jets are cheap; always computed to order 3
    MapJet out;
    out.dim = model.domain.dim;
    out.ambient = model.ambient_dim;
    if (model.domain.dim == 1) {
        TJet1 comp[3];
        model.eval_curve(x[0], comp);
        for (int c = 0; c < model.ambient_dim; ++c) {
            out.v[c] = comp[c].value();
            out.d1[c][0] = comp[c].d1();
            out.d2[c][0][0] = comp[c].d2();
            out.d3[c][0][0][0] = comp[c].d3();
        }
    } else {
        TJet2 comp[3];
        model.eval_surface(x[0], x[1], comp);
        for (int c = 0; c < model.ambient_dim; ++c) {
            const TJet2& f = comp[c];
            out.v[c] = f.value();
            out.d1[c][0] = f.du();
            out.d1[c][1] = f.dv();
            out.d2[c][0][0] = f.duu();
            out.d2[c][0][1] = out.d2[c][1][0] = f.duv();
            out.d2[c][1][1] = f.dvv();
            out.d3[c][0][0][0] = f.duuu();
            out.d3[c][0][0][1] = out.d3[c][0][1][0] = out.d3[c][1][0][0] = f.duuv();
            out.d3[c][0][1][1] = out.d3[c][1][0][1] = out.d3[c][1][1][0] = f.duvv();
            out.d3[c][1][1][1] = f.dvvv();
        }
    }
    return out;
}

namespace {

PrimMapModel make_trig_curve(std::vector<double> c1, std::vector<double> c2,
                             const std::string& name) {
    PrimMapModel m;
    m.name = name;
    m.domain.dim = 1;
    m.ambient_dim = 2;
    m.eval_curve = [c1 = std::move(c1), c2 = std::move(c2)](double theta, TJet1* out) {
        TJet1 th = TJet1::variable(theta);
        auto series = [&](const std::vector<double>& co) {
            TJet1 acc = TJet1::constant(co.empty() ? 0.0 : co[0]);
            for (std::size_t idx = 1, m_ = 1; idx < co.size(); idx += 2, ++m_) {
                acc = acc + co[idx] * cos(static_cast<double>(m_) * th);
                if (idx + 1 < co.size()) acc = acc + co[idx + 1] * sin(static_cast<double>(m_) * th);
            }
            return acc;
        };
        out[0] = series(c1);
        out[1] = series(c2);
    };
    return m;
}

PrimMapModel make_torus(double R, double rho, double tilt, const std::string& name) {
    PrimMapModel m;
    m.name = name;
    m.domain.dim = 2;
    m.ambient_dim = 3;
    m.params = {R, rho, tilt};
    m.eval_surface = [R, rho, tilt](double theta, double phi, TJet2* out) {
        TJet2 th = TJet2::variable_u(theta);
        TJet2 ph = TJet2::variable_v(phi);
        TJet2 ring = TJet2::constant(R) + rho * cos(ph);
        TJet2 x = ring * cos(th);
        TJet2 y = ring * sin(th);
        TJet2 z = rho * sin(ph);
        double ca = std::cos(tilt), sa = std::sin(tilt);
        out[0] = x;
        out[1] = ca * y - sa * z;
        out[2] = sa * y + ca * z;
    };
    return m;
}

// Apery's quartic immersion of the projective plane (Apery, "Models of the
// real projective plane", 1987), evaluated over the spherical double-cover
// chart. An optional pre-rotation moves the chart poles on the surface.
PrimMapModel make_boy(double rot) {
    PrimMapModel m;
    m.name = "boy_surface";
    m.domain.dim = 2;
    m.ambient_dim = 3;
    m.params = {rot};
    m.chart_exclusion = 0.15; // |sin v| below this: chart-singular band
    m.domain.deck = {
        [](const std::array<double, 2>& p) -> std::array<double, 2> {
            return {p[0] + M_PI, M_PI - p[1]};
        },
        [](const std::array<double, 2>& p) -> std::array<double, 2> {
            return {p[0] + M_PI, kTwoPi - p[1]};
        },
        [](const std::array<double, 2>& p) -> std::array<double, 2> {
            return {p[0], p[1] + M_PI};
        },
    };
    m.eval_surface = [rot](double u, double v, TJet2* out) {
        TJet2 uu = TJet2::variable_u(u);
        TJet2 vv = TJet2::variable_v(v);
        TJet2 sx = cos(uu) * sin(vv);
        TJet2 sy = sin(uu) * sin(vv);
        TJet2 sz = cos(vv);
        // Pre-rotation about the y-axis keeps interesting loci off the poles.
        double cr = std::cos(rot), sr = std::sin(rot);
        TJet2 x = cr * sx + sr * sz;
        TJet2 y = sy;
        TJet2 z = -1.0 * sr * sx + cr * sz;

        TJet2 x2 = x * x, y2 = y * y, z2 = z * z;
        TJet2 n2 = x2 + y2 + z2; // = 1 on the sphere, kept for the jets
        TJet2 f1 = 0.5 * ((2.0 * x2 - y2 - z2) * n2 + 2.0 * (y * z) * (y2 - z2) +
                          (z * x) * (x2 - z2) + (x * y) * (y2 - x2));
        double s3 = std::sqrt(3.0);
        TJet2 f2 = (s3 / 2.0) * ((y2 - z2) * n2 + (z * x) * (z2 - x2) + (x * y) * (y2 - x2));
        TJet2 sum = x + y + z;
        TJet2 f3 = 0.125 * sum * (sum * sum * sum + 4.0 * (y - x) * (z - y) * (x - z));
        // The raw f3 axis is the 3-fold symmetry axis of the quartics, a
        // degenerate projection direction. A fixed ambient rotation makes the
        // height generic.
        const double a1 = 0.55, a2 = 0.35;
        double c1 = std::cos(a1), s1 = std::sin(a1), c2 = std::cos(a2), s2 = std::sin(a2);
        TJet2 g1 = c1 * f1 + s1 * f3;
        TJet2 g3a = -1.0 * s1 * f1 + c1 * f3;
        TJet2 g2 = c2 * f2 + s2 * g3a;
        TJet2 g3 = -1.0 * s2 * f2 + c2 * g3a;
        out[0] = g1;
        out[1] = g2;
        out[2] = g3;
    };
    return m;
}

} // namespace

PrimMapModel builtin_model(const std::string& name, const std::vector<Rat>& params) {
    std::vector<double> p;
    p.reserve(params.size());
    for (const auto& r : params) p.push_back(to_double(r));

    if (name == "round_circle") {
        return make_trig_curve({0, 1, 0}, {0, 0, 1}, name);
    }
    if (name == "figure_eight") {
        return make_trig_curve({0, 0, 0, 0, 1}, {0, 0, 1}, name);
    }
    if (name == "trig_curve") {
        if (p.empty() || p.size() % 2 != 0)
            throw std::invalid_argument("trig_curve needs an even-length coefficient list");
        std::size_t half = p.size() / 2;
        PrimMapModel m = make_trig_curve(std::vector<double>(p.begin(), p.begin() + half),
                                         std::vector<double>(p.begin() + half, p.end()), name);
        m.params = p;
        return m;
    }
    if (name == "round_torus") {
        double R = p.size() > 0 ? p[0] : 2.0;
        double rho = p.size() > 1 ? p[1] : 1.0;
        return make_torus(R, rho, 0.0, name);
    }
    if (name == "tilted_torus") {
        double R = p.size() > 0 ? p[0] : 2.0;
        double rho = p.size() > 1 ? p[1] : 1.0;
        double tilt = p.size() > 2 ? p[2] : 0.5;
        return make_torus(R, rho, tilt, name);
    }
    if (name == "boy_surface") {
        double rot = p.size() > 0 ? p[0] : 0.35;
        return make_boy(rot);
    }
    throw std::invalid_argument("unknown builtin model: " + name);
}

namespace {

struct FoldSample {
    std::array<double, 2> x;
    double grad_norm;
    double tangency;
    double tangency_deriv;
};

// Metric weight for chart-intrinsic singular values: identity except over a
// sphere chart, where the u-direction is scaled by 1/|sin v|.
Eigen::Matrix2d chart_weight(const PrimMapModel& model, const std::array<double, 2>& x) {
    Eigen::Matrix2d w = Eigen::Matrix2d::Identity();
    if (model.chart_exclusion > 0.0) {
        double sv = std::fabs(std::sin(x[1]));
        if (sv > 1e-9) w(0, 0) = 1.0 / sv;
    }
    return w;
}

bool in_excluded_band(const PrimMapModel& model, const std::array<double, 2>& x) {
    return model.chart_exclusion > 0.0 && std::fabs(std::sin(x[1])) < model.chart_exclusion;
}

double immersion_margin_at(const PrimMapModel& model, const std::array<double, 2>& x) {
    MapJet j = model.jet(x);
    if (model.domain.dim == 1) {
        double n = 0;
        for (int c = 0; c < model.ambient_dim; ++c) n += j.d1[c][0] * j.d1[c][0];
        return std::sqrt(n);
    }
    Eigen::Matrix<double, 3, 2> dg;
    for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 2; ++d) dg(c, d) = j.d1[c][d];
    Eigen::Matrix<double, 3, 2> m = dg * chart_weight(model, x);
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(m);
    return svd.singularValues()(1);
}

using FoldData = FoldLocalData;

FoldData fold_data(const PrimMapModel& model, const std::array<double, 2>& x) {
    return fold_local_data(model, x);
}

void refine_fold_point(const PrimMapModel& model, std::array<double, 2>& x) {
    // Newton on det(df) = 0 along the gradient direction.
    for (int it = 0; it < 40; ++it) {
        FoldData fd = fold_data(model, x);
        double g2 = fd.grad[0] * fd.grad[0] + fd.grad[1] * fd.grad[1];
        if (g2 < 1e-18) break;
        double step = fd.det / g2;
        x[0] -= step * fd.grad[0];
        x[1] -= step * fd.grad[1];
        if (std::fabs(fd.det) < 1e-13) break;
    }
}

} // namespace

FoldLocalData fold_local_data(const PrimMapModel& model, const std::array<double, 2>& x) {
    MapJet j = model.jet(x);
    FoldLocalData fd;
    auto a = [&](int c, int d) { return j.d1[c][d]; };
    fd.det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    for (int d = 0; d < 2; ++d)
        fd.grad[static_cast<std::size_t>(d)] = j.d2[0][0][d] * a(1, 1) + a(0, 0) * j.d2[1][1][d] -
                                               j.d2[0][1][d] * a(1, 0) - a(0, 1) * j.d2[1][0][d];
    // Kernel direction of the 2x2 f-Jacobian (meaningful near det = 0).
    Eigen::Vector2d k1(a(0, 1), -a(0, 0)), k2(a(1, 1), -a(1, 0));
    Eigen::Vector2d k = (k1.norm() >= k2.norm()) ? k1 : k2;
    if (k.norm() > 0) k.normalize();
    fd.kernel = {k(0), k(1)};
    fd.tangency = fd.grad[0] * fd.kernel[0] + fd.grad[1] * fd.kernel[1];
    return fd;
}

GenericityReport genericity_report(const PrimMapModel& model, int grid_resolution,
                                   const Thresholds& thr) {
    GenericityReport rep;
    const int N = std::max(grid_resolution, 16);
    const double big = 1e18;
    rep.immersion_margin = big;
    rep.double_point_angle_min = big;
    rep.fold_nondegeneracy_min = big;
    rep.cusp_regularity_min = big;
    rep.degeneracy_gap_min = big;

    if (model.domain.dim == 1) {
        std::vector<double> fp(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) {
            double th = kTwoPi * i / N;
            MapJet j = model.jet({th, 0});
            double n = std::sqrt(j.d1[0][0] * j.d1[0][0] + j.d1[1][0] * j.d1[1][0]);
            rep.immersion_margin = std::min(rep.immersion_margin, n);
            fp[static_cast<std::size_t>(i)] = j.d1[0][0]; // f' = first-component derivative
        }
        // Folds: sign changes of f', refined by bisection.
        std::vector<double> folds;
        for (int i = 0; i < N; ++i) {
            double va = fp[static_cast<std::size_t>(i)], vb = fp[static_cast<std::size_t>((i + 1) % N)];
            if (va == 0.0) folds.push_back(kTwoPi * i / N);
            else if (va * vb < 0) {
                double a = kTwoPi * i / N, b = kTwoPi * (i + 1) / N;
                for (int it = 0; it < 80; ++it) {
                    double m = 0.5 * (a + b);
                    double vm = model.jet({m, 0}).d1[0][0];
                    if (va * vm <= 0) b = m;
                    else { a = m; va = vm; }
                }
                folds.push_back(0.5 * (a + b));
            }
        }
        for (double th : folds) {
            MapJet j = model.jet({th, 0});
            rep.fold_nondegeneracy_min = std::min(rep.fold_nondegeneracy_min, std::fabs(j.d2[0][0][0]));
            rep.cusp_regularity_min = std::min(rep.cusp_regularity_min, std::fabs(j.d1[1][0]));
        }
        for (std::size_t i = 0; i < folds.size(); ++i)
            for (std::size_t l = i + 1; l < folds.size(); ++l)
                rep.degeneracy_gap_min = std::min(rep.degeneracy_gap_min, circ_dist(folds[i], folds[l]));
        // Double points: coarse pair scan + Newton.
        std::vector<std::array<double, 2>> doubles;
        const int Np = std::min(N, 512);
        std::vector<std::array<double, 2>> vals(static_cast<std::size_t>(Np));
        for (int i = 0; i < Np; ++i) {
            auto v = model.value({kTwoPi * i / Np, 0});
            vals[static_cast<std::size_t>(i)] = {v[0], v[1]};
        }
        double cell = kTwoPi / Np;
        for (int i = 0; i < Np; ++i)
            for (int l = 0; l < Np; ++l) {
                double t1 = kTwoPi * i / Np, t2 = kTwoPi * l / Np;
                if (circ_dist(t1, t2) < 8 * cell) continue;
                double dx = vals[i][0] - vals[l][0], dy = vals[i][1] - vals[l][1];
                if (dx * dx + dy * dy > cell * cell * 16) continue;
                // Newton on g(t1) - g(t2) = 0.
                std::array<double, 2> p{t1, t2};
                bool ok = false;
                for (int it = 0; it < 40; ++it) {
                    MapJet j1 = model.jet({p[0], 0}), j2 = model.jet({p[1], 0});
                    Eigen::Vector2d F(j1.v[0] - j2.v[0], j1.v[1] - j2.v[1]);
                    Eigen::Matrix2d J;
                    J << j1.d1[0][0], -j2.d1[0][0], j1.d1[1][0], -j2.d1[1][0];
                    if (std::fabs(J.determinant()) < 1e-12) break;
                    Eigen::Vector2d s = J.partialPivLu().solve(F);
                    p[0] -= s(0);
                    p[1] -= s(1);
                    if (F.norm() < 1e-12) { ok = true; break; }
                }
                if (!ok) {
                    // A coincidence the Newton step cannot separate (singular
                    // pair Jacobian at zero residual) is a tangential contact;
                    // feed its angle into the margin instead of dropping it.
                    MapJet j1 = model.jet({p[0], 0}), j2 = model.jet({p[1], 0});
                    double res = std::hypot(j1.v[0] - j2.v[0], j1.v[1] - j2.v[1]);
                    if (res < 1e-8 && circ_dist(p[0], p[1]) >= 4 * cell) {
                        Eigen::Vector2d u(j1.d1[0][0], j1.d1[1][0]), w(j2.d1[0][0], j2.d1[1][0]);
                        double ang = std::acos(
                            std::clamp(std::fabs(u.normalized().dot(w.normalized())), 0.0, 1.0));
                        rep.double_point_angle_min = std::min(rep.double_point_angle_min, ang);
                    }
                    continue;
                }
                if (circ_dist(p[0], p[1]) < 4 * cell) continue;
                bool dup = false;
                for (auto& q : doubles)
                    if (circ_dist(q[0], p[0]) < 1e-6 && circ_dist(q[1], p[1]) < 1e-6) dup = true;
                if (dup) continue;
                doubles.push_back({wrap1(p[0]), wrap1(p[1])});
            }
        for (auto& d : doubles) {
            MapJet j1 = model.jet({d[0], 0}), j2 = model.jet({d[1], 0});
            Eigen::Vector2d u(j1.d1[0][0], j1.d1[1][0]), w(j2.d1[0][0], j2.d1[1][0]);
            double ang = std::acos(std::clamp(std::fabs(u.normalized().dot(w.normalized())), 0.0, 1.0));
            rep.double_point_angle_min = std::min(rep.double_point_angle_min, ang);
            for (double th : folds) {
                rep.degeneracy_gap_min = std::min(rep.degeneracy_gap_min, circ_dist(th, d[0]));
                rep.degeneracy_gap_min = std::min(rep.degeneracy_gap_min, circ_dist(th, d[1]));
            }
        }
    } else {
        const int Ns = std::min(N, 192);
        for (int i = 0; i < Ns; ++i)
            for (int l = 0; l < Ns; ++l) {
                std::array<double, 2> x{kTwoPi * i / Ns, kTwoPi * l / Ns};
                if (in_excluded_band(model, x)) continue;
                rep.immersion_margin = std::min(rep.immersion_margin, immersion_margin_at(model, x));
            }
        // Fold curve samples: det(df) sign changes along grid edges.
        std::vector<FoldSample> fold_samples;
        for (int i = 0; i < Ns; ++i)
            for (int l = 0; l < Ns; ++l) {
                std::array<double, 2> x{kTwoPi * i / Ns, kTwoPi * l / Ns};
                std::array<double, 2> xr{kTwoPi * (i + 1) / Ns, kTwoPi * l / Ns};
                std::array<double, 2> xu{kTwoPi * i / Ns, kTwoPi * (l + 1) / Ns};
                if (in_excluded_band(model, x)) continue;
                double d0 = fold_data(model, x).det;
                for (auto& nb : {xr, xu}) {
                    if (in_excluded_band(model, nb)) continue;
                    double d1 = fold_data(model, nb).det;
                    if (d0 * d1 < 0) {
                        std::array<double, 2> mid{0.5 * (x[0] + nb[0]), 0.5 * (x[1] + nb[1])};
                        refine_fold_point(model, mid);
                        FoldData fd = fold_data(model, mid);
                        FoldSample fs;
                        fs.x = mid;
                        fs.grad_norm = std::hypot(fd.grad[0], fd.grad[1]);
                        fs.tangency = fd.tangency;
                        // Derivative of the tangency along the fold tangent,
                        // by a small analytic step (third derivatives are in
                        // the jets; a tight central difference of the exact
                        // first-order data is adequate here).
                        Eigen::Vector2d tangent(-fd.grad[1], fd.grad[0]);
                        if (tangent.norm() > 0) tangent.normalize();
                        double h = 1e-5;
                        FoldData fp_ = fold_data(model, {mid[0] + h * tangent(0), mid[1] + h * tangent(1)});
                        FoldData fm_ = fold_data(model, {mid[0] - h * tangent(0), mid[1] - h * tangent(1)});
                        fs.tangency_deriv = (fp_.tangency - fm_.tangency) / (2 * h);
                        fold_samples.push_back(fs);
                    }
                }
            }
        for (const auto& fs : fold_samples) {
            rep.fold_nondegeneracy_min = std::min(rep.fold_nondegeneracy_min, fs.grad_norm);
            if (std::fabs(fs.tangency) < 0.05)
                rep.cusp_regularity_min =
                    std::min(rep.cusp_regularity_min, std::fabs(fs.tangency_deriv));
        }
    }

    auto have = [&](double v) { return v < big; };
    rep.generic = rep.immersion_margin >= thr.immersion &&
                  (!have(rep.fold_nondegeneracy_min) || rep.fold_nondegeneracy_min >= thr.fold_nondegeneracy) &&
                  (!have(rep.double_point_angle_min) || rep.double_point_angle_min >= thr.double_angle) &&
                  (!have(rep.cusp_regularity_min) || rep.cusp_regularity_min >= thr.cusp_regularity) &&
                  (!have(rep.degeneracy_gap_min) || rep.degeneracy_gap_min >= thr.degeneracy_gap);
    if (model.chart_exclusion > 0.0)
        rep.notes = "margins sampled outside the chart-singular band";
    return rep;
}

} // namespace primcob
