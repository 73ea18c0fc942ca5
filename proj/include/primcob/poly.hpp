#pragma once

#include "primcob/rational.hpp"

#include <utility>
#include <vector>

namespace primcob {

/// Univariate polynomial with exact rational coefficients, constant term
/// first. Canonical form strips trailing zeros; the zero polynomial has an
/// empty coefficient vector.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rat> coeffs);
    static RationalPoly zero() { return RationalPoly(); }
    static RationalPoly constant(const Rat& c);
    /// c * t^n
    static RationalPoly monomial(const Rat& c, int n);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    Rat coeff(int n) const;
    const Rat& leading_coeff() const;

    Rat eval(const Rat& t) const;
    double eval_double(double t) const;

    RationalPoly derivative(int order = 1) const;
    /// q with q(t) = p(t + c).
    RationalPoly taylor_shift(const Rat& c) const;

    RationalPoly operator+(const RationalPoly& o) const;
    RationalPoly operator-(const RationalPoly& o) const;
    RationalPoly operator*(const RationalPoly& o) const;
    RationalPoly operator*(const Rat& c) const;
    RationalPoly operator-() const;
    bool operator==(const RationalPoly& o) const { return coeffs_ == o.coeffs_; }

    /// Remainder of *this divided by d (d nonzero).
    RationalPoly rem(const RationalPoly& d) const;
    /// Monic gcd; gcd(0,0) = 0.
    static RationalPoly gcd(RationalPoly a, RationalPoly b);

    std::string to_string(const std::string& var = "t") const;

private:
    std::vector<Rat> coeffs_;
    void normalize();
};

struct IsolatedRoot {
    Rat lo, hi;       ///< isolating interval (lo == hi for an exact rational root)
    double value;     ///< refined float approximation
    int multiplicity; ///< multiplicity in the original polynomial
};

/// Number of distinct real roots of a squarefree p in (a, b], by Sturm's theorem.
int sturm_root_count(const RationalPoly& p, const Rat& a, const Rat& b);

/// Distinct real roots of p in [window_lo, window_hi], isolated by Sturm
/// bisection on the squarefree part and refined by bisection + Newton.
/// Throws std::invalid_argument on the zero polynomial.
std::vector<IsolatedRoot> isolate_real_roots(const RationalPoly& p, const Rat& window_lo,
                                             const Rat& window_hi);

} // namespace primcob
