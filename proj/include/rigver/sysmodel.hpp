#ifndef RIGVER_SYSMODEL_HPP
#define RIGVER_SYSMODEL_HPP

#include "rigver/dsl.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rigver {

struct UndeclaredVariable : Error {
    using Error::Error;
};
struct ZeroRowConstraint : Error {
    using Error::Error;
};

enum class Relation { LT, LE, EQ, GE, GT };

std::string relation_str(Relation r);
bool is_strict(Relation r);
Relation relaxed(Relation r);

struct VarDecl {
    std::string name;
    bool nonneg = false;
    friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

/// One normalized constraint: variables on the left, constant on the right.
/// The right-hand side splits into a rational function of M and a rational
/// multiple of sqrt2 (the catalog never mixes the two).
struct ParamConstraint {
    std::string id;  // c1, c2, ... in file order
    std::map<std::string, CoeffExpr> coeffs;
    Relation rel = Relation::LE;
    ParamCoeff rhs_m;
    Rat rhs_q2;

    bool operator==(const ParamConstraint& o) const {
        return coeffs == o.coeffs && rel == o.rel && rhs_m == o.rhs_m && rhs_q2 == o.rhs_q2;
    }
};

struct ParametricSystem {
    std::string name;
    std::vector<VarDecl> variables;
    std::vector<ParamConstraint> constraints;
    MDomain m_domain;
    bool uses_m = false;
    std::string provenance;

    const VarDecl* find_var(const std::string& v) const;

    bool operator==(const ParametricSystem& o) const {
        return variables == o.variables && constraints == o.constraints &&
               m_domain == o.m_domain;
    }
};

/// Fully numeric constraint over Q(sqrt2).
struct LinConstraint {
    std::string id;
    std::map<std::string, QuadExt> coeffs;
    Relation rel = Relation::LE;
    QuadExt rhs;
};

struct LinearSystem {
    std::string name;
    std::vector<VarDecl> variables;
    std::vector<LinConstraint> constraints;
    std::string instantiated_at;  // "M=15", "limit", or "" for hand-built systems

    bool has_strict() const;
};

/// Parses the DSL. Grammar:
///   param M in [lo, hi|inf);      (required iff M occurs in a coefficient)
///   var <name> [>= 0];
///   <expr> (<=|>=|<|>|=) <expr>;
///   # comment
/// Throws SyntaxError / UndeclaredVariable / ZeroRowConstraint.
ParametricSystem parse_system(const std::string& text, const std::string& name = "");

ParametricSystem parse_system_file(const std::string& path);

/// Canonical text form; parse(print(parse(t))) == parse(t).
std::string print_system(const ParametricSystem& s);

/// Exact instantiation at integer M; max(...) coefficients are resolved by
/// exact comparison of the two branches. Throws DomainError on a pole or
/// when M lies outside the declared domain.
LinearSystem instantiate(const ParametricSystem& s, const Int& m);

/// The M -> infinity system: every coefficient replaced by its limit.
/// Throws DomainError if some coefficient diverges.
LinearSystem instantiate_limit(const ParametricSystem& s);

/// Strict relations become their closures; everything else is unchanged.
LinearSystem relax_strict(LinearSystem s);

}  // namespace rigver

#endif
