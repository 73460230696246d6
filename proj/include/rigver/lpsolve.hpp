#ifndef RIGVER_LPSOLVE_HPP
#define RIGVER_LPSOLVE_HPP

#include "rigver/sysmodel.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rigver {

struct UnknownConstraintId : Error {
    using Error::Error;
};

/// Reserved: pivoting over Q(sqrt2) is closed, so this is never thrown by the
/// shipped solver. Declared because the result type advertises it.
struct ScalarFieldError : Error {
    using Error::Error;
};

enum class FeasStatus { Feasible, Infeasible };

/// Nonnegative multipliers (one per constraint, equalities signed) whose
/// weighted combination of the <=-oriented rows is a contradiction: the
/// combined row has nonnegative coefficients on every sign-restricted
/// variable, zero on free variables, and a negative right-hand side — or a
/// zero right-hand side while a strict row carries positive weight, which
/// contradicts the strict inequality instead.
struct FarkasCertificate {
    std::map<std::string, QuadExt> multipliers;
};

struct FeasibilityResult {
    FeasStatus status = FeasStatus::Feasible;
    std::map<std::string, QuadExt> point;  // satisfies every constraint exactly
    FarkasCertificate cert;                // passes verify_certificate
};

/// Exact feasibility decision by primal simplex (phase I, Bland's rule) over
/// the ordered field Q(sqrt2). Requires a relaxed system (no strict rows).
FeasibilityResult decide(const LinearSystem& s);

/// Feasibility of a system that may keep strict rows. Decides the relaxation
/// first; when that is feasible, a second phase maximizes a common slack
/// margin on the strict rows. sup margin = 0 yields a Motzkin-style
/// certificate (combination 0 <= 0 carrying positive weight on a strict
/// row), which verify_certificate accepts.
FeasibilityResult decide_strict(const LinearSystem& s);

/// Re-checks a certificate by plain exact linear algebra; shares no pivoting
/// code with decide(). Throws UnknownConstraintId on a stray id.
bool verify_certificate(const LinearSystem& s, const FarkasCertificate& cert);

/// Independent Fourier-Motzkin feasibility decision (exponential; intended
/// for cross-checks on systems with few variables). Handles strict rows.
bool fm_feasible(const LinearSystem& s, size_t row_limit = 200000);

/// Stable text form of a certificate, including the derived contradiction row.
std::string certificate_text(const LinearSystem& s, const FarkasCertificate& cert);

/// Reads the text form back. Returns the certificate plus the system name and
/// instantiation tag recorded in the header.
FarkasCertificate parse_certificate(const std::string& text, std::string* system_name = nullptr,
                                    std::string* instantiated_at = nullptr);

struct ScanEntry {
    Int m;
    FeasStatus status;
};

struct ThresholdReport {
    std::string system;
    std::vector<ScanEntry> entries;
    /// Smallest scanned M from which every later scanned M is infeasible.
    std::optional<Int> minimal_infeasible_m;
    bool tail_certified = false;
    std::string method = "finite-scan-only";  // or "limit+monotone"
};

/// Decides relax_strict(instantiate(s, M)) for every M in [lo, hi] and
/// appends a tail certification attempt at the detected threshold.
ThresholdReport scan_threshold(const ParametricSystem& s, const Int& lo, const Int& hi);

struct TailCert {
    bool certified = false;
    std::string reason;  // failing row / missing property when not certified
};

/// Certifies "infeasible for every M >= m0". Requirements:
///   (a) the limit system is infeasible, and
///   (b) the feasible region is non-increasing in M: after orienting each
///       row as <=, every M-dependent variable coefficient is certified
///       non-decreasing on [m0, inf) (equivalently, the human-facing bound
///       coefficient on the upper-bound side is non-increasing), the
///       variable it multiplies is sign-restricted, and M-dependent
///       right-hand sides are non-increasing; equalities must be M-free.
/// Together with infeasibility at m0 itself (checked), (b) alone already
/// implies the claim; (a) is kept as an independent witness.
TailCert certify_tail(const ParametricSystem& s, const Int& m0);

}  // namespace rigver

#endif
