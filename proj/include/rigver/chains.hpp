#ifndef RIGVER_CHAINS_HPP
#define RIGVER_CHAINS_HPP

#include "rigver/dsl.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rigver {

struct EmptyRange : Error {
    using Error::Error;
};
struct NotTelescoping : Error {
    using Error::Error;
};

/// Product of (i+1)/i for i = start..end; endpoints may depend on M.
/// Closed form (end+1)/start. end == start-1 denotes the empty product.
struct Telescope {
    ParamCoeff start, end;
};

using ChainFactor = std::variant<ParamCoeff, Telescope>;

/// One multiplicity/degree product chain: initial ratio times factors,
/// optionally compared against a contradiction bound.
struct ChainSpec {
    std::string name;
    ParamCoeff initial;
    std::vector<ChainFactor> factors;
    std::optional<Rat> bound;        // the "value >= bound is impossible" level
    std::optional<ParamCoeff> expected_closed;  // audited when present
    MDomain m_domain;
};

/// Exact product at integer M; telescoping ranges are evaluated in closed
/// form (end+1)/start, never by long multiplication.
/// Throws DomainError on a pole / out-of-domain M, EmptyRange when a
/// telescope has end < start - 1 at that M.
Rat chain_value(const ChainSpec& c, const Int& m);

/// Symbolic product as a rational function of M. Throws NotTelescoping if a
/// factor resists closed form (cannot happen with the shipped factor kinds).
/// The result is audited against chain_value at five sample points and
/// against the file's expected closed form when present.
ParamCoeff chain_closed_form(const ChainSpec& c);

struct ChainThreshold {
    std::optional<Int> first_ge;  // first M in the domain with value >= bound
    std::optional<Int> first_gt;  // first M with value > bound
    bool tail_certified = false;  // all M >= first_ge stay >= bound
    std::string method;           // "monotone" or "finite-scan"
};

/// Scans the domain for the first M at which the chain value meets the bound
/// and certifies the tail via monotonicity of the closed form when possible.
ChainThreshold threshold_m(const ChainSpec& c, const Int& scan_limit = Int(4000));

/// N(N+1)/2 + 2, the codimension count for non-regular tuples.
Rat codim_nonreg(const Int& n);

/// Chain file format:
///   name <ident>;  domain [a, b|inf);  initial <coeff>;
///   factor <coeff> | telescope(<expr> .. <expr>);  bound <rat>;  closed <coeff>;
ChainSpec parse_chain(const std::string& text, const std::string& fallback_name = "");
ChainSpec parse_chain_file(const std::string& path);

}  // namespace rigver

#endif
