#ifndef RIGVER_MPOLY_HPP
#define RIGVER_MPOLY_HPP

#include "rigver/arith.hpp"

#include <map>
#include <string>

namespace rigver {

/// Sparse multivariate polynomial with exact rational coefficients and
/// named variables. Monomials are kept in canonical (map) order with zero
/// coefficients stripped, so structural equality is mathematical equality.
class MPoly {
public:
    using Monomial = std::map<std::string, int>;  // var -> exponent, exponents > 0

    MPoly() = default;
    MPoly(Rat c);
    MPoly(int c) : MPoly(Rat(c)) {}
    static MPoly var(const std::string& name);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rat>& terms() const { return terms_; }

    MPoly operator-() const;
    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly pow(int e) const;

    /// Substitutes a polynomial for a variable.
    MPoly subst(const std::string& var, const MPoly& value) const;

    Rat eval(const std::map<std::string, Rat>& point) const;

    /// True iff every monomial coefficient is >= 0.
    bool all_coeffs_nonneg() const;

    std::string str() const;

private:
    void add_term(const Monomial& m, const Rat& c);
    std::map<Monomial, Rat> terms_;
};

}  // namespace rigver

#endif
