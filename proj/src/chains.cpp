#include "rigver/chains.hpp"

#include <fstream>
#include <sstream>

namespace rigver {

namespace {

Rat telescope_value(const Telescope& t, const Int& m) {
    Rat a = t.start.eval_at(m), b = t.end.eval_at(m);
    if (!a.is_integer() || !b.is_integer())
        throw DomainError("telescope endpoints must be integers at M = " + m.str());
    if (b.num() < a.num() - 1) throw EmptyRange("telescope range empty at M = " + m.str());
    if (a.num() <= 0) throw DomainError("telescope start must be positive");
    // prod_{i=a}^{b} (i+1)/i = (b+1)/a; b == a-1 gives the empty product 1.
    return Rat(b.num() + 1, a.num());
}

}  // namespace

Rat chain_value(const ChainSpec& c, const Int& m) {
    if (!c.m_domain.contains(m))
        throw DomainError("M = " + m.str() + " outside the domain of chain " + c.name);
    Rat v = c.initial.eval_at(m);
    for (const auto& f : c.factors) {
        if (std::holds_alternative<ParamCoeff>(f))
            v *= std::get<ParamCoeff>(f).eval_at(m);
        else
            v *= telescope_value(std::get<Telescope>(f), m);
    }
    return v;
}

ParamCoeff chain_closed_form(const ChainSpec& c) {
    ParamCoeff prod = c.initial;
    for (const auto& f : c.factors) {
        if (std::holds_alternative<ParamCoeff>(f)) {
            prod = prod * std::get<ParamCoeff>(f);
        } else {
            const auto& t = std::get<Telescope>(f);
            ParamCoeff top = t.end + ParamCoeff(Rat(1));
            if (t.start.is_zero()) throw NotTelescoping("telescope start is zero");
            prod = prod * (top / t.start);
        }
    }
    // Audit: closed form equals the factored value at five in-domain samples.
    Int m = c.m_domain.lo;
    int checked = 0;
    while (checked < 5 && c.m_domain.contains(m)) {
        bool ok = true;
        Rat direct;
        try {
            direct = chain_value(c, m);
        } catch (const Error&) {
            ok = false;  // pole or empty range at this sample; skip
        }
        if (ok) {
            if (prod.eval_at(m) != direct)
                throw NotTelescoping("closed form disagrees with chain value at M = " + m.str());
            ++checked;
        }
        ++m;
    }
    if (c.expected_closed && !(prod == *c.expected_closed))
        throw NotTelescoping("closed form of " + c.name + " differs from the recorded one");
    return prod;
}

ChainThreshold threshold_m(const ChainSpec& c, const Int& scan_limit) {
    if (!c.bound) throw Error("chain " + c.name + " has no comparison bound");
    ChainThreshold out;
    const Rat& bound = *c.bound;
    Int hi = c.m_domain.hi ? *c.m_domain.hi : c.m_domain.lo + scan_limit;
    for (Int m = c.m_domain.lo; m <= hi; ++m) {
        Rat v;
        try {
            v = chain_value(c, m);
        } catch (const Error&) {
            continue;
        }
        if (!out.first_ge && v >= bound) out.first_ge = m;
        if (!out.first_gt && v > bound) out.first_gt = m;
        if (out.first_ge && out.first_gt) break;
    }
    if (!out.first_ge) return out;

    // Tail: a non-decreasing chain that has reached the bound stays there.
    bool monotone_ok = false;
    try {
        ParamCoeff closed = chain_closed_form(c);
        monotone_ok = monotone_flags(closed, *out.first_ge).nondecreasing;
    } catch (const Error&) {
        monotone_ok = false;
    }
    if (monotone_ok) {
        out.tail_certified = true;
        out.method = "monotone";
        return out;
    }
    // A finite scan can only certify a bounded domain.
    out.method = "finite-scan";
    out.tail_certified = c.m_domain.hi.has_value();
    for (Int m = *out.first_ge; out.tail_certified && m <= hi; ++m) {
        Rat v;
        try {
            v = chain_value(c, m);
        } catch (const Error&) {
            out.tail_certified = false;
            break;
        }
        if (v < bound) out.tail_certified = false;
    }
    return out;
}

Rat codim_nonreg(const Int& n) {
    if (n < 1) throw DomainError("codim_nonreg requires N >= 1");
    return Rat(n * (n + 1), Int(2)) + Rat(2);
}

namespace {

using dsl::Lexer;
using dsl::Tok;
using dsl::Token;

// Collects tokens until ';' or a given stop token and re-parses them as a
// coefficient expression.
std::string take_until(Lexer& lx, std::initializer_list<Tok> stops) {
    std::string text;
    for (;;) {
        const Token& t = lx.peek();
        for (Tok s : stops)
            if (t.kind == s) return text;
        if (t.kind == Tok::End) return text;
        if (!text.empty()) text += " ";
        text += t.text;
        lx.next();
    }
}

}  // namespace

ChainSpec parse_chain(const std::string& text, const std::string& fallback_name) {
    ChainSpec spec;
    spec.name = fallback_name;
    spec.m_domain = MDomain{Int(4), std::nullopt};
    Lexer lx(text);
    while (lx.peek().kind != Tok::End) {
        Token kw = lx.expect(Tok::Ident, "directive");
        if (kw.text == "name") {
            spec.name = lx.expect(Tok::Ident, "chain name").text;
        } else if (kw.text == "domain") {
            lx.expect(Tok::LBracket, "'['");
            spec.m_domain.lo = Int(lx.expect(Tok::Number, "lower bound").text);
            lx.expect(Tok::Comma, "','");
            Token hi = lx.next();
            if (hi.kind == Tok::Number)
                spec.m_domain.hi = Int(hi.text);
            else if (hi.kind == Tok::Ident && hi.text == "inf")
                spec.m_domain.hi = std::nullopt;
            else
                throw SyntaxError("expected integer or 'inf'", hi.line, hi.col);
            if (!lx.accept(Tok::RParen)) lx.expect(Tok::RBracket, "')' or ']'");
        } else if (kw.text == "initial") {
            spec.initial = parse_param_coeff(take_until(lx, {Tok::Semi}));
        } else if (kw.text == "factor") {
            if (lx.peek().kind == Tok::Ident && lx.peek().text == "telescope") {
                lx.next();
                lx.expect(Tok::LParen, "'('");
                Telescope t;
                t.start = parse_param_coeff(take_until(lx, {Tok::DotDot}));
                lx.expect(Tok::DotDot, "'..' in telescope");
                t.end = parse_param_coeff(take_until(lx, {Tok::RParen}));
                lx.expect(Tok::RParen, "')'");
                spec.factors.emplace_back(std::move(t));
            } else {
                spec.factors.emplace_back(parse_param_coeff(take_until(lx, {Tok::Semi})));
            }
        } else if (kw.text == "bound") {
            spec.bound = parse_param_coeff(take_until(lx, {Tok::Semi})).as_constant();
            if (!spec.bound) throw Error("chain bound must be a constant");
        } else if (kw.text == "closed") {
            spec.expected_closed = parse_param_coeff(take_until(lx, {Tok::Semi}));
        } else {
            throw SyntaxError("unknown chain directive '" + kw.text + "'", kw.line, kw.col);
        }
        lx.expect(Tok::Semi, "';'");
    }
    if (spec.initial.is_zero() && spec.factors.empty())
        throw Error("chain " + spec.name + " has no content");
    return spec;
}

ChainSpec parse_chain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open chain file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string stem = path;
    if (auto p = stem.find_last_of('/'); p != std::string::npos) stem = stem.substr(p + 1);
    if (auto p = stem.find_last_of('.'); p != std::string::npos) stem = stem.substr(0, p);
    return parse_chain(ss.str(), stem);
}

}  // namespace rigver
