#include "rigver/sysmodel.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace rigver {

std::string relation_str(Relation r) {
    switch (r) {
        case Relation::LT: return "<";
        case Relation::LE: return "<=";
        case Relation::EQ: return "=";
        case Relation::GE: return ">=";
        case Relation::GT: return ">";
    }
    return "?";
}

bool is_strict(Relation r) { return r == Relation::LT || r == Relation::GT; }

Relation relaxed(Relation r) {
    if (r == Relation::LT) return Relation::LE;
    if (r == Relation::GT) return Relation::GE;
    return r;
}

const VarDecl* ParametricSystem::find_var(const std::string& v) const {
    for (const auto& d : variables)
        if (d.name == v) return &d;
    return nullptr;
}

bool LinearSystem::has_strict() const {
    for (const auto& c : constraints)
        if (is_strict(c.rel)) return true;
    return false;
}

namespace {

using dsl::Lexer;
using dsl::LinForm;
using dsl::Tok;
using dsl::Token;

Relation read_relation(Lexer& lx) {
    Token t = lx.next();
    switch (t.kind) {
        case Tok::Le: return Relation::LE;
        case Tok::Ge: return Relation::GE;
        case Tok::Lt: return Relation::LT;
        case Tok::Gt: return Relation::GT;
        case Tok::Eq: return Relation::EQ;
        default:
            throw SyntaxError("expected a relation (<=, >=, <, >, =)", t.line, t.col);
    }
}

}  // namespace

ParametricSystem parse_system(const std::string& text, const std::string& name) {
    ParametricSystem sys;
    sys.name = name;
    Lexer lx(text);
    std::set<std::string> declared;
    bool have_domain = false;
    int next_id = 1;

    auto is_var = [&](const std::string& v) { return declared.count(v) > 0; };
    auto undeclared = [](const Token& t) {
        throw UndeclaredVariable("undeclared variable '" + t.text + "' at line " +
                                 std::to_string(t.line));
    };

    while (lx.peek().kind != Tok::End) {
        Token t = lx.peek();
        if (t.kind == Tok::Ident && t.text == "param") {
            lx.next();
            Token m = lx.expect(Tok::Ident, "parameter name");
            if (m.text != "M") throw SyntaxError("the only supported parameter is M", m.line, m.col);
            Token kw = lx.expect(Tok::Ident, "'in'");
            if (kw.text != "in") throw SyntaxError("expected 'in'", kw.line, kw.col);
            lx.expect(Tok::LBracket, "'['");
            Token lo = lx.expect(Tok::Number, "domain lower bound");
            sys.m_domain.lo = Int(lo.text);
            lx.expect(Tok::Comma, "','");
            Token hi = lx.next();
            if (hi.kind == Tok::Number)
                sys.m_domain.hi = Int(hi.text);
            else if (hi.kind == Tok::Ident && hi.text == "inf")
                sys.m_domain.hi = std::nullopt;
            else
                throw SyntaxError("expected integer or 'inf'", hi.line, hi.col);
            if (!lx.accept(Tok::RParen)) lx.expect(Tok::RBracket, "')' or ']'");
            lx.expect(Tok::Semi, "';'");
            have_domain = true;
            continue;
        }
        if (t.kind == Tok::Ident && t.text == "var") {
            lx.next();
            Token v = lx.expect(Tok::Ident, "variable name");
            if (v.text == "M" || v.text == "sqrt2" || v.text == "max" || v.text == "inf" ||
                v.text == "var" || v.text == "param")
                throw SyntaxError("reserved word used as variable name", v.line, v.col);
            if (declared.count(v.text))
                throw SyntaxError("variable '" + v.text + "' declared twice", v.line, v.col);
            VarDecl d{v.text, false};
            if (lx.accept(Tok::Ge)) {
                Token z = lx.expect(Tok::Number, "0");
                if (z.text != "0")
                    throw SyntaxError("only '>= 0' is allowed in declarations", z.line, z.col);
                d.nonneg = true;
            }
            lx.expect(Tok::Semi, "';'");
            declared.insert(d.name);
            sys.variables.push_back(std::move(d));
            continue;
        }
        // Constraint line.
        LinForm lhs = dsl::parse_expression(lx, is_var, undeclared);
        Relation rel = read_relation(lx);
        LinForm rhs = dsl::parse_expression(lx, is_var, undeclared);
        Token semi = lx.expect(Tok::Semi, "';'");

        ParamConstraint c;
        c.id = "c" + std::to_string(next_id++);
        c.rel = rel;
        // Move variables left, constants right.
        for (auto& [v, ce] : lhs.coeffs) c.coeffs.emplace(v, std::move(ce));
        for (auto& [v, ce] : rhs.coeffs) {
            auto it = c.coeffs.find(v);
            if (it == c.coeffs.end())
                c.coeffs.emplace(v, -ce);
            else {
                it->second += -ce;
            }
        }
        if (lhs.const_mx || rhs.const_mx)
            throw SyntaxError("max(...) must multiply a variable", semi.line, semi.col);
        c.rhs_m = rhs.const_m - lhs.const_m;
        c.rhs_q2 = rhs.const_q2 - lhs.const_q2;
        for (auto it = c.coeffs.begin(); it != c.coeffs.end();)
            it = it->second.is_zero() ? c.coeffs.erase(it) : std::next(it);
        if (c.coeffs.empty())
            throw ZeroRowConstraint("constraint " + c.id + " has no variables (line " +
                                    std::to_string(semi.line) + ")");
        sys.constraints.push_back(std::move(c));
    }

    for (const auto& c : sys.constraints) {
        for (const auto& [v, ce] : c.coeffs)
            if (ce.is_m_dependent()) sys.uses_m = true;
        if (!c.rhs_m.is_constant()) sys.uses_m = true;
    }
    if (sys.uses_m && !have_domain)
        throw SyntaxError("system uses M but declares no 'param M in [..)' domain", 1, 1);
    // The domain carries meaning only when M occurs somewhere.
    if (!sys.uses_m) sys.m_domain = MDomain{Int(0), std::nullopt};
    return sys;
}

ParametricSystem parse_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open system file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string stem = path;
    if (auto p = stem.find_last_of('/'); p != std::string::npos) stem = stem.substr(p + 1);
    if (auto p = stem.find_last_of('.'); p != std::string::npos) stem = stem.substr(0, p);
    return parse_system(ss.str(), stem);
}

namespace {

std::string rhs_str(const ParamCoeff& m, const Rat& q2) {
    if (q2.is_zero()) return m.str();
    QuadExt q(Rat(0), q2);
    if (m.is_zero()) return q.str();
    auto c = m.as_constant();
    if (c) return QuadExt(*c, q2).str();
    return m.str() + " + " + q.str();
}

std::string term_str(const std::string& v, const CoeffExpr& ce, bool first) {
    // Renders "+ c*v" with the sign folded into the connective when the
    // coefficient is a plain constant.
    std::string s;
    if (auto k = ce.lin.as_constant(); k && !ce.mx) {
        Rat a = *k;
        std::string head = first ? (a.sign() < 0 ? "-" : "") : (a.sign() < 0 ? " - " : " + ");
        a = a.abs();
        s = head + (a == Rat(1) ? "" : a.str() + "*") + v;
        return s;
    }
    std::string coeff = ce.str();
    bool wrap = coeff.find(' ') != std::string::npos;
    s = first ? "" : " + ";
    s += (wrap ? "(" + coeff + ")" : coeff) + "*" + v;
    return s;
}

}  // namespace

std::string print_system(const ParametricSystem& s) {
    std::ostringstream os;
    if (s.uses_m) {
        os << "param M in [" << s.m_domain.lo.str() << ", "
           << (s.m_domain.hi ? s.m_domain.hi->str() : "inf") << ");\n";
    }
    for (const auto& d : s.variables)
        os << "var " << d.name << (d.nonneg ? " >= 0" : "") << ";\n";
    for (const auto& c : s.constraints) {
        bool first = true;
        for (const auto& d : s.variables) {
            auto it = c.coeffs.find(d.name);
            if (it == c.coeffs.end()) continue;
            os << term_str(d.name, it->second, first);
            first = false;
        }
        os << " " << relation_str(c.rel) << " " << rhs_str(c.rhs_m, c.rhs_q2) << ";\n";
    }
    return os.str();
}

LinearSystem instantiate(const ParametricSystem& s, const Int& m) {
    if (!s.m_domain.contains(m) && s.uses_m)
        throw DomainError("M = " + m.str() + " outside the domain of " + s.name);
    LinearSystem out;
    out.name = s.name;
    out.variables = s.variables;
    out.instantiated_at = "M=" + m.str();
    for (const auto& c : s.constraints) {
        LinConstraint lc;
        lc.id = c.id;
        lc.rel = c.rel;
        for (const auto& [v, ce] : c.coeffs) {
            if (ce.has_pole_at(m))
                throw DomainError("coefficient pole at M = " + m.str() + " in " + s.name + "/" +
                                  c.id);
            QuadExt q{ce.eval_at(m)};
            if (!q.is_zero()) lc.coeffs.emplace(v, std::move(q));
        }
        if (c.rhs_m.has_pole_at(m))
            throw DomainError("rhs pole at M = " + m.str() + " in " + s.name + "/" + c.id);
        lc.rhs = QuadExt(c.rhs_m.eval_at(m), c.rhs_q2);
        out.constraints.push_back(std::move(lc));
    }
    return out;
}

LinearSystem instantiate_limit(const ParametricSystem& s) {
    LinearSystem out;
    out.name = s.name;
    out.variables = s.variables;
    out.instantiated_at = "limit";
    for (const auto& c : s.constraints) {
        LinConstraint lc;
        lc.id = c.id;
        lc.rel = c.rel;
        for (const auto& [v, ce] : c.coeffs) {
            auto l = ce.limit_at_infinity();
            if (!l)
                throw DomainError("coefficient of " + v + " in " + s.name + "/" + c.id +
                                  " diverges as M -> inf");
            if (!l->is_zero()) lc.coeffs.emplace(v, QuadExt(*l));
        }
        auto lr = c.rhs_m.limit_at_infinity();
        if (!lr) throw DomainError("rhs of " + s.name + "/" + c.id + " diverges as M -> inf");
        lc.rhs = QuadExt(*lr, c.rhs_q2);
        out.constraints.push_back(std::move(lc));
    }
    return out;
}

LinearSystem relax_strict(LinearSystem s) {
    for (auto& c : s.constraints) c.rel = relaxed(c.rel);
    return s;
}

}  // namespace rigver
