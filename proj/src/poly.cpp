#include "primcob/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace primcob {

RationalPoly::RationalPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

void RationalPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPoly RationalPoly::constant(const Rat& c) {
    return RationalPoly(std::vector<Rat>{c});
}

RationalPoly RationalPoly::monomial(const Rat& c, int n) {
    std::vector<Rat> v(static_cast<std::size_t>(n) + 1, Rat(0));
    v.back() = c;
    return RationalPoly(std::move(v));
}

Rat RationalPoly::coeff(int n) const {
    if (n < 0 || n >= static_cast<int>(coeffs_.size())) return Rat(0);
    return coeffs_[static_cast<std::size_t>(n)];
}

const Rat& RationalPoly::leading_coeff() const {
    if (is_zero()) throw std::logic_error("leading_coeff of zero polynomial");
    return coeffs_.back();
}

Rat RationalPoly::eval(const Rat& t) const {
    Rat acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double RationalPoly::eval_double(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * t + to_double(*it);
    return acc;
}

RationalPoly RationalPoly::derivative(int order) const {
    if (order < 0) throw std::invalid_argument("negative derivative order");
    RationalPoly p = *this;
    for (int o = 0; o < order; ++o) {
        if (p.coeffs_.size() <= 1) return RationalPoly();
        std::vector<Rat> d(p.coeffs_.size() - 1);
        for (std::size_t i = 1; i < p.coeffs_.size(); ++i)
            d[i - 1] = p.coeffs_[i] * Rat(static_cast<long long>(i));
        p = RationalPoly(std::move(d));
    }
    return p;
}

RationalPoly RationalPoly::taylor_shift(const Rat& c) const {
    // Horner on the shifted variable: acc(t) = acc(t)*(t+c) + a_i.
    RationalPoly acc;
    RationalPoly lin(std::vector<Rat>{c, Rat(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * lin + RationalPoly::constant(*it);
    return acc;
}

RationalPoly RationalPoly::operator+(const RationalPoly& o) const {
    std::vector<Rat> v(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const {
    return *this + (-o);
}

RationalPoly RationalPoly::operator-() const {
    std::vector<Rat> v = coeffs_;
    for (auto& c : v) c = -c;
    return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::operator*(const RationalPoly& o) const {
    if (is_zero() || o.is_zero()) return RationalPoly();
    std::vector<Rat> v(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            v[i + j] += coeffs_[i] * o.coeffs_[j];
    return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::operator*(const Rat& c) const {
    std::vector<Rat> v = coeffs_;
    for (auto& x : v) x *= c;
    return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::rem(const RationalPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    std::vector<Rat> r = coeffs_;
    int dd = d.degree();
    while (static_cast<int>(r.size()) - 1 >= dd) {
        while (!r.empty() && r.back() == 0) r.pop_back();
        int rd = static_cast<int>(r.size()) - 1;
        if (rd < dd) break;
        Rat q = r.back() / d.leading_coeff();
        int shift = rd - dd;
        for (int i = 0; i <= dd; ++i)
            r[static_cast<std::size_t>(i + shift)] -= q * d.coeffs()[static_cast<std::size_t>(i)];
        r.pop_back();
    }
    return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::gcd(RationalPoly a, RationalPoly b) {
    auto monic = [](RationalPoly p) {
        if (p.is_zero()) return p;
        return p * (Rat(1) / p.leading_coeff());
    };
    a = monic(std::move(a));
    b = monic(std::move(b));
    while (!b.is_zero()) {
        RationalPoly r = monic(a.rem(b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::string RationalPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int n = degree(); n >= 0; --n) {
        Rat c = coeff(n);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rat a = c > 0 ? c : Rat(-c);
        if (a != 1 || n == 0) os << rat_to_string(a);
        if (n > 0) {
            if (a != 1) os << "*";
            os << var;
            if (n > 1) os << "^" << n;
        }
        first = false;
    }
    return os.str();
}

namespace {

RationalPoly exact_div(const RationalPoly& a, const RationalPoly& b) {
    // Quotient assuming b | a.
    std::vector<Rat> r = a.coeffs();
    int dd = b.degree();
    std::vector<Rat> q(a.degree() - dd >= 0 ? static_cast<std::size_t>(a.degree() - dd) + 1 : 0,
                       Rat(0));
    while (static_cast<int>(r.size()) - 1 >= dd) {
        while (!r.empty() && r.back() == 0) r.pop_back();
        int rd = static_cast<int>(r.size()) - 1;
        if (rd < dd) break;
        Rat c = r.back() / b.leading_coeff();
        int shift = rd - dd;
        q[static_cast<std::size_t>(shift)] = c;
        for (int i = 0; i <= dd; ++i)
            r[static_cast<std::size_t>(i + shift)] -= c * b.coeffs()[static_cast<std::size_t>(i)];
        r.pop_back();
    }
    return RationalPoly(std::move(q));
}

RationalPoly squarefree_part(const RationalPoly& p) {
    if (p.degree() <= 0) return p;
    RationalPoly g = RationalPoly::gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    return exact_div(p, g);
}

std::vector<RationalPoly> sturm_chain(const RationalPoly& s) {
    std::vector<RationalPoly> chain;
    chain.push_back(s);
    chain.push_back(s.derivative());
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        RationalPoly r = chain[chain.size() - 2].rem(chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int variations(const std::vector<RationalPoly>& chain, const Rat& x) {
    int v = 0, last = 0;
    for (const auto& p : chain) {
        Rat y = p.eval(x);
        int s = y > 0 ? 1 : (y < 0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

// Midpoint of (a,b) nudged off any root of s.
Rat safe_midpoint(const RationalPoly& s, const Rat& a, const Rat& b) {
    Rat gap = b - a;
    Rat m = (a + b) / 2;
    Rat step = gap / 4;
    while (s.eval(m) == 0) {
        m += step;
        step /= 2;
        if (m >= b) m = (a + b) / 2 + gap / 7; // last resort offset
    }
    return m;
}

struct Isolator {
    const RationalPoly& s;
    std::vector<RationalPoly> chain;
    std::vector<std::pair<Rat, Rat>> intervals;

    explicit Isolator(const RationalPoly& sf) : s(sf), chain(sturm_chain(sf)) {}

    void isolate(const Rat& a, const Rat& b, int va, int vb) {
        int n = va - vb;
        if (n <= 0) return;
        if (n == 1) {
            intervals.emplace_back(a, b);
            return;
        }
        Rat m = safe_midpoint(s, a, b);
        int vm = variations(chain, m);
        isolate(a, m, va, vm);
        isolate(m, b, vm, vb);
    }
};

// Bisection + Newton on the squarefree part; root lies strictly inside (lo, hi)
// with a sign change.
double refine_root(const RationalPoly& s, Rat lo, Rat hi) {
    int slo = s.eval(lo) > 0 ? 1 : -1;
    for (int it = 0; it < 64 && hi - lo > Rat(1, 1000000); ++it) {
        Rat m = (lo + hi) / 2;
        Rat ym = s.eval(m);
        if (ym == 0) return to_double(m);
        if ((ym > 0 ? 1 : -1) == slo) lo = m;
        else hi = m;
    }
    double a = to_double(lo), b = to_double(hi);
    RationalPoly ds = s.derivative();
    double x = 0.5 * (a + b);
    for (int it = 0; it < 60; ++it) {
        double f = s.eval_double(x);
        double df = ds.eval_double(x);
        double nx = (df != 0.0) ? x - f / df : 0.5 * (a + b);
        if (!(nx > a && nx < b)) nx = 0.5 * (a + b);
        double fn = s.eval_double(nx);
        if ((fn > 0 ? 1 : -1) == (slo > 0 ? 1 : -1)) a = nx;
        else b = nx;
        x = nx;
        if (b - a < 1e-16 * (1.0 + std::abs(x))) break;
    }
    return x;
}

int exact_multiplicity(const RationalPoly& p, const Rat& r) {
    int m = 0;
    RationalPoly d = p;
    while (!d.is_zero() && d.eval(r) == 0) {
        ++m;
        d = d.derivative();
    }
    return m;
}

} // namespace

int sturm_root_count(const RationalPoly& p, const Rat& a, const Rat& b) {
    RationalPoly s = squarefree_part(p);
    if (s.degree() <= 0) return 0;
    auto chain = sturm_chain(s);
    return variations(chain, a) - variations(chain, b);
}

std::vector<IsolatedRoot> isolate_real_roots(const RationalPoly& p, const Rat& window_lo,
                                             const Rat& window_hi) {
    if (p.is_zero()) throw std::invalid_argument("indeterminate roots: zero polynomial");
    std::vector<IsolatedRoot> out;
    if (window_lo > window_hi) return out;
    if (p.degree() == 0) return out;

    RationalPoly s = squarefree_part(p);
    Rat lo = window_lo, hi = window_hi;

    // Window endpoints may be exact roots; peel them off first.
    if (s.eval(lo) == 0) {
        out.push_back({lo, lo, to_double(lo), exact_multiplicity(p, lo)});
        Rat step = (hi - lo) / 2;
        if (step == 0) return out;
        while (sturm_root_count(s, lo, lo + step) > 0) step /= 2;
        lo += step;
    }
    if (hi > lo && s.eval(hi) == 0) {
        out.push_back({hi, hi, to_double(hi), exact_multiplicity(p, hi)});
        Rat step = (hi - lo) / 2;
        while (sturm_root_count(s, hi - step, hi) > 1) step /= 2;
        hi -= step;
    }
    if (hi <= lo) {
        std::sort(out.begin(), out.end(),
                  [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.value < y.value; });
        return out;
    }

    Isolator iso(s);
    int va = variations(iso.chain, lo), vb = variations(iso.chain, hi);
    iso.isolate(lo, hi, va, vb);

    for (auto& [a, b] : iso.intervals) {
        double x = refine_root(s, a, b);
        // Snap to an exact rational root when bisection landed on one.
        Rat xr(x);
        int mult;
        if (p.eval(xr) == 0 && xr > a && xr <= b) {
            mult = exact_multiplicity(p, xr);
            out.push_back({xr, xr, x, mult});
        } else {
            // Multiplicity from the repeated-factor chain restricted to this interval.
            mult = 1;
            RationalPoly cur = RationalPoly::gcd(p, p.derivative());
            while (cur.degree() >= 1 && sturm_root_count(cur, a, b) > 0) {
                ++mult;
                cur = RationalPoly::gcd(cur, cur.derivative());
            }
            out.push_back({a, b, x, mult});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.value < y.value; });
    return out;
}

} // namespace primcob
