#include "primcob/normal_form.hpp"

#include <stdexcept>

namespace primcob {

void NormalFormSpec::validate() const {
    if (r < 1) throw std::invalid_argument("multiplicity index r must be >= 1");
    if (k < 0) throw std::invalid_argument("codimension k must be >= 0");
    if (z < 0) throw std::invalid_argument("residual dimension z must be >= 0");
}

void check_conforms(const NormalFormSpec& spec, const SourcePoint& x) {
    spec.validate();
    if (static_cast<int>(x.s.size()) != spec.z)
        throw std::invalid_argument("source point: wrong residual block size");
    if (static_cast<int>(x.y.size()) != spec.y_count())
        throw std::invalid_argument("source point: wrong y-block size");
    for (const auto& [ij, v] : x.y) {
        auto [i, j] = ij;
        if (i < 0 || i > spec.k || j < 1 || j > spec.r || (i == 0 && j == spec.r))
            throw std::invalid_argument("source point: invalid y slot");
    }
}

RationalPoly component_poly(const NormalFormSpec& spec, const SourcePoint& x, int i) {
    std::vector<Rat> c(static_cast<std::size_t>(spec.r) + 2, Rat(0));
    if (i == 0) c[static_cast<std::size_t>(spec.r) + 1] = 1;
    int jmax = (i == 0) ? spec.r - 1 : spec.r;
    for (int j = 1; j <= jmax; ++j) {
        auto it = x.y.find({i, j});
        if (it != x.y.end()) c[static_cast<std::size_t>(j)] = it->second;
    }
    return RationalPoly(std::move(c));
}

TargetPoint eval_normal_form(const NormalFormSpec& spec, const SourcePoint& x) {
    check_conforms(spec, x);
    TargetPoint tp;
    tp.values.reserve(static_cast<std::size_t>(spec.target_dim()));
    for (int i = 0; i <= spec.k; ++i)
        tp.values.push_back(component_poly(spec, x, i).eval(x.t));
    for (const auto& [ij, v] : x.y) tp.values.push_back(v);
    for (const auto& sv : x.s) tp.values.push_back(sv);
    return tp;
}

TargetPoint eval_lift(const NormalFormSpec& spec, const SourcePoint& x) {
    TargetPoint tp = eval_normal_form(spec, x);
    tp.values.push_back(x.t);
    return tp;
}

bool stratum_membership(const NormalFormSpec& spec, const SourcePoint& x, int j) {
    check_conforms(spec, x);
    if (j < 1 || j > spec.r)
        throw std::invalid_argument("stratum empty for this normal form");
    for (int i = 0; i <= spec.k; ++i) {
        RationalPoly p = component_poly(spec, x, i);
        for (int m = 1; m <= j; ++m)
            if (p.derivative(m).eval(x.t) != 0) return false;
    }
    return true;
}

SourcePoint stratum_parametrize(const NormalFormSpec& spec, int j, const StratumParams& params) {
    spec.validate();
    if (j < 1 || j >= spec.r)
        throw std::invalid_argument("stratum level must satisfy 1 <= j < r");
    if (static_cast<int>(params.s.size()) != spec.z)
        throw std::invalid_argument("residual block size mismatch");

    SourcePoint x;
    x.t = params.t;
    x.s = params.s;
    for (int i = 0; i <= spec.k; ++i)
        for (int m = j + 1; m <= spec.r; ++m) {
            if (i == 0 && m == spec.r) continue;
            auto it = params.high.find({i, m});
            if (it == params.high.end())
                throw std::invalid_argument("incomplete high coefficient block");
            x.y[{i, m}] = it->second;
        }

    // Descending back-substitution: p_i^(m)(t) = 0 is linear in y(i,m) with
    // coefficient m!, all higher coefficients already fixed.
    for (int i = 0; i <= spec.k; ++i) {
        for (int m = j; m >= 1; --m) {
            x.y[{i, m}] = Rat(0);
            RationalPoly p = component_poly(spec, x, i);
            Rat residual = p.derivative(m).eval(x.t);
            Rat mfact(1);
            for (int a = 2; a <= m; ++a) mfact *= a;
            x.y[{i, m}] = -residual / mfact;
        }
    }
    check_conforms(spec, x);
    return x;
}

SourcePoint top_stratum_point(const NormalFormSpec& spec, const std::vector<Rat>& s) {
    spec.validate();
    if (static_cast<int>(s.size()) != spec.z)
        throw std::invalid_argument("residual block size mismatch");
    SourcePoint x;
    x.t = 0;
    x.s = s;
    for (int i = 0; i <= spec.k; ++i)
        for (int m = 1; m <= spec.r; ++m) {
            if (i == 0 && m == spec.r) continue;
            x.y[{i, m}] = Rat(0);
        }
    return x;
}

std::vector<FiberPoint> solve_fiber(const NormalFormSpec& spec, const SourcePoint& x0) {
    check_conforms(spec, x0);
    // F(x) = F(x0) pins the y and s blocks; the remaining condition is
    // p_i(t) = p_i(t0) for all i simultaneously.
    RationalPoly common;
    for (int i = 0; i <= spec.k; ++i) {
        RationalPoly p = component_poly(spec, x0, i);
        RationalPoly diff = p - RationalPoly::constant(p.eval(x0.t));
        common = (i == 0) ? diff : RationalPoly::gcd(common, diff);
    }

    // Cauchy bound of p_0(t) - p_0(t0) bounds every common root.
    RationalPoly p0 = component_poly(spec, x0, 0);
    RationalPoly d0 = p0 - RationalPoly::constant(p0.eval(x0.t));
    Rat bound(1);
    for (int n = 0; n < d0.degree(); ++n) {
        Rat a = d0.coeff(n) / d0.leading_coeff();
        if (a < 0) a = -a;
        if (Rat(1) + a > bound) bound = Rat(1) + a;
    }

    std::vector<FiberPoint> out;
    for (const auto& root : isolate_real_roots(common, -bound, bound)) {
        FiberPoint fp;
        fp.t_lo = root.lo;
        fp.t_hi = root.hi;
        fp.t_approx = root.value;
        fp.exact = (root.lo == root.hi);
        out.push_back(fp);
    }
    return out;
}

} // namespace primcob
