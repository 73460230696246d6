#ifndef RIGVER_POLY_HPP
#define RIGVER_POLY_HPP

#include "rigver/arith.hpp"

#include <string>
#include <vector>

namespace rigver {

/// Dense univariate polynomial with integer coefficients, coeffs[k] = coefficient
/// of x^k. Trailing zeros are stripped; the zero polynomial has empty storage.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::initializer_list<Int> cs) : coeffs_(cs) { trim(); }
    explicit IntPoly(std::vector<Int> cs) : coeffs_(std::move(cs)) { trim(); }

    static IntPoly constant(Int c) { return IntPoly({std::move(c)}); }
    static IntPoly x() { return IntPoly({Int(0), Int(1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    const std::vector<Int>& coeffs() const { return coeffs_; }
    const Int& leading() const;
    Int coeff(int k) const { return k < (int)coeffs_.size() ? coeffs_[k] : Int(0); }

    Rat eval(const Rat& x) const;
    Int eval_int(const Int& x) const;

    IntPoly operator-() const;
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    IntPoly derivative() const;

    /// p(x0 + t) as a polynomial in t (exact Taylor shift).
    IntPoly shift(const Int& x0) const;

    /// Divides by the integer content (gcd of coefficients), keeping the
    /// leading sign. Identity on the zero polynomial.
    IntPoly primitive_part() const;

    /// Human syntax in the given variable name, e.g. "3*M^2 - 2*M + 1".
    std::string str(const std::string& var = "M") const;

private:
    void trim();
    std::vector<Int> coeffs_;
};

/// Number of distinct real roots of p in the open interval (a, b),
/// counted by a Sturm chain. Requires p != 0.
int count_real_roots(const IntPoly& p, const Rat& a, const Rat& b);

/// Upper bound B such that all real roots of p lie in (-B, B).
Rat root_bound(const IntPoly& p);

/// Exact decision: p(x) >= 0 for all real x >= x0 (and likewise <= 0).
/// Implemented by Taylor shift + Descartes screening, falling back to
/// Sturm-based root isolation for a complete answer.
bool nonneg_on_tail(const IntPoly& p, const Int& x0);
bool nonpos_on_tail(const IntPoly& p, const Int& x0);

/// True iff p has no real root >= x0 (used for pole checks on tails).
bool no_root_on_tail(const IntPoly& p, const Int& x0);

/// Primitive greatest common divisor (positive leading coefficient);
/// the constant 1 when the inputs are coprime.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

/// Exact quotient a / b; throws Error when b does not divide a.
IntPoly poly_divexact(const IntPoly& a, const IntPoly& b);

}  // namespace rigver

#endif
