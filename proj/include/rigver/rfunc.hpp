#ifndef RIGVER_RFUNC_HPP
#define RIGVER_RFUNC_HPP

#include "rigver/arith.hpp"
#include "rigver/poly.hpp"

#include <optional>
#include <string>

namespace rigver {

enum class Monotone { DecreasingOnTail, IncreasingOnTail, NotCertified };

/// Both tail directions at once; a constant certifies as both.
struct MonotoneFlags {
    bool nonincreasing = false;
    bool nondecreasing = false;
};

/// Rational function of the integer parameter M with integer-coefficient
/// numerator and denominator. The coefficient field of every parametric
/// constraint system in the catalog.
class ParamCoeff {
public:
    ParamCoeff() : num_(IntPoly::constant(0)), den_(IntPoly::constant(1)) {}
    ParamCoeff(const Rat& c);
    ParamCoeff(IntPoly num, IntPoly den);

    static ParamCoeff m() { return ParamCoeff(IntPoly::x(), IntPoly::constant(1)); }

    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }

    /// Exact value at integer M. Throws DomainError when the denominator
    /// vanishes there.
    Rat eval_at(const Int& m) const;
    bool has_pole_at(const Int& m) const { return den_.eval_int(m) == 0; }

    /// Largest integer pole, if any real pole exists at or above `from`.
    bool pole_on_tail(const Int& from) const { return !no_root_on_tail(den_, from); }

    /// Ratio of leading coefficients when degrees match, 0 when the numerator
    /// degree is smaller, nullopt (infinite) otherwise.
    std::optional<Rat> limit_at_infinity() const;

    ParamCoeff operator-() const;
    friend ParamCoeff operator+(const ParamCoeff& a, const ParamCoeff& b);
    friend ParamCoeff operator-(const ParamCoeff& a, const ParamCoeff& b);
    friend ParamCoeff operator*(const ParamCoeff& a, const ParamCoeff& b);
    friend ParamCoeff operator/(const ParamCoeff& a, const ParamCoeff& b);
    friend bool operator==(const ParamCoeff& a, const ParamCoeff& b);
    friend bool operator!=(const ParamCoeff& a, const ParamCoeff& b) { return !(a == b); }

    /// Constant value if the function is constant.
    std::optional<Rat> as_constant() const;

    std::string str() const;

private:
    void normalize();
    IntPoly num_, den_;
};

/// Certifies the sign of d/dM (c) on [M0, inf) by exact root isolation on the
/// derivative numerator. Weak monotonicity: constants certify as
/// DecreasingOnTail. Throws DomainError if a pole lies in [M0, inf).
Monotone certify_monotone(const ParamCoeff& c, const Int& m0);

/// Weak variants of both directions, used by the tail-dominance check.
MonotoneFlags monotone_flags(const ParamCoeff& c, const Int& m0);

}  // namespace rigver

#endif
