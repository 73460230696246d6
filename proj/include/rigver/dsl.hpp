#ifndef RIGVER_DSL_HPP
#define RIGVER_DSL_HPP

#include "rigver/arith.hpp"
#include "rigver/rfunc.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rigver {

struct SyntaxError : Error {
    SyntaxError(const std::string& msg, int line, int col)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          line(line),
          col(col) {}
    int line, col;
};

/// Integer domain for the parameter M: [lo, hi] or the tail [lo, inf).
struct MDomain {
    Int lo = 0;
    std::optional<Int> hi;  // nullopt = inf
    bool contains(const Int& m) const { return m >= lo && (!hi || m <= *hi); }
    friend bool operator==(const MDomain&, const MDomain&) = default;
};

/// scale * max(a, b); scale carries the sign so negation stays representable.
struct MaxTerm {
    Rat scale;
    ParamCoeff a, b;
};

/// Variable coefficient in a constraint: a rational function of M plus an
/// optional scaled two-branch max, resolved at instantiation time.
struct CoeffExpr {
    ParamCoeff lin;
    std::optional<MaxTerm> mx;

    CoeffExpr() = default;
    CoeffExpr(ParamCoeff c) : lin(std::move(c)) {}

    bool is_zero() const { return lin.is_zero() && !mx; }
    bool is_m_dependent() const;

    Rat eval_at(const Int& m) const;
    std::optional<Rat> limit_at_infinity() const;
    bool has_pole_at(const Int& m) const;
    bool pole_on_tail(const Int& from) const;

    /// Weak tail monotonicity of the combined expression.
    MonotoneFlags monotone(const Int& m0) const;

    CoeffExpr operator-() const;
    CoeffExpr& operator+=(const CoeffExpr& o);
    void scale_by(const Rat& r);
    void scale_by(const ParamCoeff& c);  // throws on max terms with nonconstant c

    friend bool operator==(const CoeffExpr& a, const CoeffExpr& b);

    std::string str() const;
};

namespace dsl {

enum class Tok {
    Ident,
    Number,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    DotDot,
    Le,
    Ge,
    Lt,
    Gt,
    Eq,
    End
};

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& src);
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    bool accept(Tok k);
    Token expect(Tok k, const std::string& what);

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

/// Linear form over the declared variables:
///   sum coeffs[v] * v  +  const_m(M)  +  const_q2 * sqrt2  (+ a stray max).
/// const_mx survives only transiently while parsing `max(...) * var`.
struct LinForm {
    std::map<std::string, CoeffExpr> coeffs;
    ParamCoeff const_m;
    Rat const_q2;
    std::optional<MaxTerm> const_mx;
};

/// Parses one expression (stops before relations/semicolons).
/// `is_var` decides whether an identifier names a variable; unknown
/// identifiers are reported through `undeclared`.
LinForm parse_expression(Lexer& lx, const std::function<bool(const std::string&)>& is_var,
                         const std::function<void(const Token&)>& undeclared);

}  // namespace dsl

/// Parses a pure coefficient expression (no variables, no sqrt2),
/// e.g. "8*M/(3*(M-2))". Used by the chain files and tests.
ParamCoeff parse_param_coeff(const std::string& text);

/// Parses an exact scalar: integers, p/q, and a + b*sqrt2 combinations.
QuadExt parse_quadext(const std::string& text);

}  // namespace rigver

#endif
