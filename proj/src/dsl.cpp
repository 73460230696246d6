#include "rigver/dsl.hpp"

#include <cctype>

namespace rigver {

bool CoeffExpr::is_m_dependent() const {
    if (!lin.is_constant()) return true;
    if (mx && (!mx->a.is_constant() || !mx->b.is_constant())) return true;
    return false;
}

Rat CoeffExpr::eval_at(const Int& m) const {
    Rat v = lin.eval_at(m);
    if (mx) {
        Rat a = mx->a.eval_at(m), b = mx->b.eval_at(m);
        v += mx->scale * (a > b ? a : b);
    }
    return v;
}

std::optional<Rat> CoeffExpr::limit_at_infinity() const {
    auto l = lin.limit_at_infinity();
    if (!l) return std::nullopt;
    Rat v = *l;
    if (mx) {
        auto la = mx->a.limit_at_infinity(), lb = mx->b.limit_at_infinity();
        if (!la || !lb) return std::nullopt;
        // Rational functions are eventually ordered, so the limit of the max
        // is the max of the limits.
        v += mx->scale * (*la > *lb ? *la : *lb);
    }
    return v;
}

bool CoeffExpr::has_pole_at(const Int& m) const {
    if (lin.has_pole_at(m)) return true;
    return mx && (mx->a.has_pole_at(m) || mx->b.has_pole_at(m));
}

bool CoeffExpr::pole_on_tail(const Int& from) const {
    if (lin.pole_on_tail(from)) return true;
    return mx && (mx->a.pole_on_tail(from) || mx->b.pole_on_tail(from));
}

MonotoneFlags CoeffExpr::monotone(const Int& m0) const {
    MonotoneFlags f = monotone_flags(lin, m0);
    if (mx) {
        MonotoneFlags fa = monotone_flags(mx->a, m0);
        MonotoneFlags fb = monotone_flags(mx->b, m0);
        // max of two nonincreasing functions is nonincreasing (same for
        // nondecreasing); a negative scale swaps the directions.
        bool mx_noninc = fa.nonincreasing && fb.nonincreasing;
        bool mx_nondec = fa.nondecreasing && fb.nondecreasing;
        if (mx->scale.sign() < 0) std::swap(mx_noninc, mx_nondec);
        f.nonincreasing = f.nonincreasing && mx_noninc;
        f.nondecreasing = f.nondecreasing && mx_nondec;
    }
    return f;
}

CoeffExpr CoeffExpr::operator-() const {
    CoeffExpr r(*this);
    r.lin = -r.lin;
    if (r.mx) r.mx->scale = -r.mx->scale;
    return r;
}

CoeffExpr& CoeffExpr::operator+=(const CoeffExpr& o) {
    lin = lin + o.lin;
    if (o.mx) {
        if (mx) throw Error("unsupported: sum of two max(...) coefficients");
        mx = o.mx;
    }
    return *this;
}

void CoeffExpr::scale_by(const Rat& r) {
    lin = lin * ParamCoeff(r);
    if (mx) {
        if (r.is_zero())
            mx.reset();
        else
            mx->scale *= r;
    }
}

void CoeffExpr::scale_by(const ParamCoeff& c) {
    if (auto r = c.as_constant()) {
        scale_by(*r);
        return;
    }
    if (mx) throw Error("unsupported: max(...) scaled by an M-dependent factor");
    lin = lin * c;
}

bool operator==(const CoeffExpr& a, const CoeffExpr& b) {
    if (a.lin != b.lin) return false;
    if (a.mx.has_value() != b.mx.has_value()) return false;
    if (!a.mx) return true;
    return a.mx->scale == b.mx->scale && a.mx->a == b.mx->a && a.mx->b == b.mx->b;
}

std::string CoeffExpr::str() const {
    std::string s;
    if (!lin.is_zero() || !mx) s = lin.str();
    if (mx) {
        std::string m = "max(" + mx->a.str() + ", " + mx->b.str() + ")";
        Rat sc = mx->scale;
        std::string head;
        if (!s.empty()) {
            head = sc.sign() < 0 ? " - " : " + ";
            sc = sc.abs();
        } else if (sc.sign() < 0) {
            head = "-";
            sc = sc.abs();
        }
        s += head;
        if (sc == Rat(1))
            s += m;
        else
            s += sc.str() + "*" + m;
    }
    return s;
}

namespace dsl {

Lexer::Lexer(const std::string& src) {
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string t, int l, int c) {
        toks_.push_back({k, std::move(t), l, c});
    };
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        if (ch == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        int l = line, c = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string num;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                num += src[i++];
                ++col;
            }
            push(Tok::Number, num, l, c);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string id;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                id += src[i++];
                ++col;
            }
            push(Tok::Ident, id, l, c);
            continue;
        }
        auto two = [&](char a, char b) {
            return ch == a && i + 1 < src.size() && src[i + 1] == b;
        };
        if (two('.', '.')) {
            push(Tok::DotDot, "..", l, c);
            i += 2;
            col += 2;
            continue;
        }
        if (two('<', '=')) {
            push(Tok::Le, "<=", l, c);
            i += 2;
            col += 2;
            continue;
        }
        if (two('>', '=')) {
            push(Tok::Ge, ">=", l, c);
            i += 2;
            col += 2;
            continue;
        }
        Tok k;
        switch (ch) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '[': k = Tok::LBracket; break;
            case ']': k = Tok::RBracket; break;
            case ',': k = Tok::Comma; break;
            case ';': k = Tok::Semi; break;
            case '<': k = Tok::Lt; break;
            case '>': k = Tok::Gt; break;
            case '=': k = Tok::Eq; break;
            default:
                throw SyntaxError(std::string("unexpected character '") + ch + "'", l, c);
        }
        push(k, std::string(1, ch), l, c);
        ++i;
        ++col;
    }
    push(Tok::End, "", line, col);
}

bool Lexer::accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
}

Token Lexer::expect(Tok k, const std::string& what) {
    if (peek().kind != k)
        throw SyntaxError("expected " + what + ", got '" + peek().text + "'", peek().line,
                          peek().col);
    return next();
}

namespace {

[[noreturn]] void fail(const Token& at, const std::string& msg) {
    throw SyntaxError(msg, at.line, at.col);
}

bool pure_scalar(const LinForm& f) { return f.coeffs.empty() && !f.const_mx; }
bool pure_mfunc(const LinForm& f) { return pure_scalar(f) && f.const_q2.is_zero(); }

LinForm neg(LinForm f) {
    for (auto& [v, c] : f.coeffs) c = -c;
    f.const_m = -f.const_m;
    f.const_q2 = -f.const_q2;
    if (f.const_mx) f.const_mx->scale = -f.const_mx->scale;
    return f;
}

LinForm add(LinForm a, LinForm b, const Token& at) {
    for (auto& [v, c] : b.coeffs) {
        auto it = a.coeffs.find(v);
        if (it == a.coeffs.end())
            a.coeffs.emplace(v, std::move(c));
        else
            it->second += c;
    }
    a.const_m = a.const_m + b.const_m;
    a.const_q2 += b.const_q2;
    if (b.const_mx) {
        if (a.const_mx) fail(at, "sum of two max(...) terms is not supported");
        a.const_mx = std::move(b.const_mx);
    }
    return a;
}

LinForm mul(LinForm a, LinForm b, const Token& at) {
    // A max(...) factor distributes over a linear form with plain rational
    // coefficients (each variable receives its own scaled copy), or scales
    // by a rational constant.
    if (a.const_mx || b.const_mx) {
        if (b.const_mx) std::swap(a, b);  // a holds the max
        if (!b.coeffs.empty()) {
            if (!b.const_m.is_zero() || !b.const_q2.is_zero())
                fail(at, "max(...) times a form with a constant part is not supported");
            LinForm r;
            for (const auto& [v, c] : b.coeffs) {
                auto cv = c.lin.as_constant();
                if (c.mx || !cv) fail(at, "max(...) must multiply plain variables");
                CoeffExpr ce;
                MaxTerm t = *a.const_mx;
                t.scale *= *cv;
                ce.mx = std::move(t);
                r.coeffs.emplace(v, std::move(ce));
            }
            return r;
        }
        if (!b.const_q2.is_zero()) fail(at, "max(...) cannot multiply sqrt2 terms");
        auto bc = b.const_m.as_constant();
        if (!bc) fail(at, "max(...) cannot multiply M-dependent terms");
        a.const_mx->scale *= *bc;
        return a;
    }
    if (!a.coeffs.empty() && !b.coeffs.empty()) fail(at, "nonlinear term (variable * variable)");
    if (!b.coeffs.empty()) std::swap(a, b);  // a holds the variables, b is scalar
    if (!a.coeffs.empty()) {
        if (!b.const_q2.is_zero()) fail(at, "irrational variable coefficients are not supported");
        LinForm r;
        for (auto& [v, c] : a.coeffs) {
            CoeffExpr ce = c;
            ce.scale_by(b.const_m);
            r.coeffs.emplace(v, std::move(ce));
        }
        r.const_m = a.const_m * b.const_m;
        if (!a.const_q2.is_zero()) {
            auto bc = b.const_m.as_constant();
            if (!bc) fail(at, "sqrt2 cannot multiply M-dependent terms");
            r.const_q2 = a.const_q2 * *bc;
        }
        return r;
    }
    // scalar * scalar over Q(sqrt2), with M-dependence confined to the
    // rational part.
    LinForm r;
    if (a.const_q2.is_zero() && b.const_q2.is_zero()) {
        r.const_m = a.const_m * b.const_m;
        return r;
    }
    auto ac = a.const_m.as_constant(), bc = b.const_m.as_constant();
    if (!ac || !bc) fail(at, "sqrt2 cannot multiply M-dependent terms");
    r.const_m = ParamCoeff(*ac * *bc + Rat(2) * a.const_q2 * b.const_q2);
    r.const_q2 = *ac * b.const_q2 + a.const_q2 * *bc;
    return r;
}

LinForm div(LinForm a, LinForm b, const Token& at) {
    if (!pure_scalar(b)) fail(at, "division by a non-scalar expression");
    if (!b.const_q2.is_zero()) {
        // Divide in Q(sqrt2); everything must be M-free.
        auto bc = b.const_m.as_constant();
        if (!bc) fail(at, "mixed sqrt2 / M divisor");
        QuadExt den(*bc, b.const_q2);
        if (den.is_zero()) fail(at, "division by zero");
        if (!a.coeffs.empty() || a.const_mx) fail(at, "irrational variable coefficients");
        auto ac = a.const_m.as_constant();
        if (!ac) fail(at, "sqrt2 divisor under M-dependent term");
        QuadExt q = QuadExt(*ac, a.const_q2) / den;
        LinForm r;
        r.const_m = ParamCoeff(q.rational_part());
        r.const_q2 = q.root2_part();
        return r;
    }
    if (b.const_m.is_zero()) fail(at, "division by zero");
    LinForm r;
    if (a.const_mx) {
        auto bc = b.const_m.as_constant();
        if (!bc) fail(at, "max(...) divided by an M-dependent factor");
        r.const_mx = a.const_mx;
        r.const_mx->scale /= *bc;
    }
    for (auto& [v, c] : a.coeffs) {
        CoeffExpr ce = c;
        if (auto bc = b.const_m.as_constant())
            ce.scale_by(bc->inv());
        else if (ce.mx)
            fail(at, "max(...) divided by an M-dependent factor");
        else
            ce.lin = ce.lin / b.const_m;
        r.coeffs.emplace(v, std::move(ce));
    }
    r.const_m = a.const_m / b.const_m;
    if (!a.const_q2.is_zero()) {
        auto bc = b.const_m.as_constant();
        if (!bc) fail(at, "sqrt2 divided by an M-dependent factor");
        r.const_q2 = a.const_q2 / *bc;
    }
    return r;
}

LinForm parse_sum(Lexer& lx, const std::function<bool(const std::string&)>& is_var,
                  const std::function<void(const Token&)>& undeclared);

LinForm parse_primary(Lexer& lx, const std::function<bool(const std::string&)>& is_var,
                      const std::function<void(const Token&)>& undeclared) {
    Token t = lx.next();
    switch (t.kind) {
        case Tok::Number: {
            LinForm f;
            f.const_m = ParamCoeff(Rat(Int(t.text)));
            return f;
        }
        case Tok::Ident: {
            if (t.text == "sqrt2") {
                LinForm f;
                f.const_q2 = Rat(1);
                return f;
            }
            if (t.text == "M") {
                LinForm f;
                f.const_m = ParamCoeff::m();
                return f;
            }
            if (t.text == "max") {
                lx.expect(Tok::LParen, "'(' after max");
                LinForm a = parse_sum(lx, is_var, undeclared);
                lx.expect(Tok::Comma, "',' in max");
                LinForm b = parse_sum(lx, is_var, undeclared);
                lx.expect(Tok::RParen, "')' closing max");
                if (!pure_mfunc(a) || !pure_mfunc(b))
                    fail(t, "max(...) arguments must be scalar coefficients");
                LinForm f;
                f.const_mx = MaxTerm{Rat(1), a.const_m, b.const_m};
                return f;
            }
            if (!is_var(t.text)) undeclared(t);
            LinForm f;
            f.coeffs.emplace(t.text, CoeffExpr(ParamCoeff(Rat(1))));
            return f;
        }
        case Tok::LParen: {
            LinForm f = parse_sum(lx, is_var, undeclared);
            lx.expect(Tok::RParen, "')'");
            return f;
        }
        case Tok::Minus:
            return neg(parse_primary(lx, is_var, undeclared));
        case Tok::Plus:
            return parse_primary(lx, is_var, undeclared);
        default:
            fail(t, "expected a number, identifier or '('");
    }
}

LinForm parse_product(Lexer& lx, const std::function<bool(const std::string&)>& is_var,
                      const std::function<void(const Token&)>& undeclared) {
    LinForm f = parse_primary(lx, is_var, undeclared);
    for (;;) {
        Token t = lx.peek();
        if (t.kind == Tok::Star) {
            lx.next();
            f = mul(std::move(f), parse_primary(lx, is_var, undeclared), t);
        } else if (t.kind == Tok::Slash) {
            lx.next();
            f = div(std::move(f), parse_primary(lx, is_var, undeclared), t);
        } else {
            return f;
        }
    }
}

LinForm parse_sum(Lexer& lx, const std::function<bool(const std::string&)>& is_var,
                  const std::function<void(const Token&)>& undeclared) {
    bool negate = false;
    while (lx.peek().kind == Tok::Plus || lx.peek().kind == Tok::Minus)
        negate ^= (lx.next().kind == Tok::Minus);
    LinForm f = parse_product(lx, is_var, undeclared);
    if (negate) f = neg(std::move(f));
    for (;;) {
        Token t = lx.peek();
        if (t.kind != Tok::Plus && t.kind != Tok::Minus) return f;
        lx.next();
        LinForm g = parse_product(lx, is_var, undeclared);
        if (t.kind == Tok::Minus) g = neg(std::move(g));
        f = add(std::move(f), std::move(g), t);
    }
}

}  // namespace

LinForm parse_expression(Lexer& lx, const std::function<bool(const std::string&)>& is_var,
                         const std::function<void(const Token&)>& undeclared) {
    return parse_sum(lx, is_var, undeclared);
}

}  // namespace dsl

ParamCoeff parse_param_coeff(const std::string& text) {
    dsl::Lexer lx(text);
    auto no_vars = [](const std::string&) { return false; };
    auto reject = [](const dsl::Token& t) {
        throw SyntaxError("unexpected identifier '" + t.text + "' in coefficient", t.line, t.col);
    };
    dsl::LinForm f = dsl::parse_expression(lx, no_vars, reject);
    lx.expect(dsl::Tok::End, "end of coefficient expression");
    if (!f.coeffs.empty() || f.const_mx || !f.const_q2.is_zero())
        throw Error("not a pure coefficient expression: " + text);
    return f.const_m;
}

QuadExt parse_quadext(const std::string& text) {
    dsl::Lexer lx(text);
    auto no_vars = [](const std::string&) { return false; };
    auto reject = [](const dsl::Token& t) {
        throw SyntaxError("unexpected identifier '" + t.text + "' in scalar", t.line, t.col);
    };
    dsl::LinForm f = dsl::parse_expression(lx, no_vars, reject);
    lx.expect(dsl::Tok::End, "end of scalar expression");
    auto c = f.const_m.as_constant();
    if (!f.coeffs.empty() || f.const_mx || !c) throw Error("not a scalar: " + text);
    return QuadExt(*c, f.const_q2);
}

}  // namespace rigver
