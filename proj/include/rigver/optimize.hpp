#ifndef RIGVER_OPTIMIZE_HPP
#define RIGVER_OPTIMIZE_HPP

#include "rigver/arith.hpp"
#include "rigver/mpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rigver {

struct EmptyRegion : Error {
    using Error::Error;
};
struct UnboundedBelow : Error {
    using Error::Error;
};
struct DegenerateWeights : Error {
    using Error::Error;
};
struct UnknownPipeline : Error {
    using Error::Error;
};

/// The two counting-multiplicities objectives (n normalized to 1):
///   PlainNF(nu, theta)   = nu^2 + theta^2/(theta - 1)
///   ClampedNF(nu, theta) = max(nu^2, 8) + theta^2/(theta - 1)
enum class ObjectiveId { PlainNF, ClampedNF };

/// Convex planar region: the open lower bound theta > 1 plus rational
/// halfplanes a*nu + b*theta <= c.
struct TriangleRegion {
    struct Half {
        Rat a, b, c;
        std::string id;
    };
    std::vector<Half> halves;

    /// {theta > 1, nu <= 3, 5 theta <= 2 nu}
    static TriangleRegion region_5theta_2nu();  // minimum of PlainNF: 81/5 at (3, 6/5)
    /// {theta > 1, nu <= 3, 2 theta <= nu}
    static TriangleRegion region_2theta_nu();  // minimum of ClampedNF: 10+2*sqrt2
};

struct MinResult {
    QuadExt value;
    QuadExt argmin_nu, argmin_theta;
    bool verified = false;          // exact KKT at the argmin + interval witness
    std::vector<std::string> active;  // binding constraints at the argmin
    double interval_lower = 0.0;    // branch-and-bound lower bound over the region
    long boxes_explored = 0;
};

/// Exact global minimization of the objective over the closure of the region
/// intersected with {theta > 1}. The divergence theta^2/(theta-1) -> +inf as
/// theta -> 1+ keeps the problem well posed (theta^2/(theta-1) >= 4 for all
/// theta > 1, with equality exactly at theta = 2).
///
/// verified == true means: the returned argmin satisfies the exact
/// first-order (KKT) conditions of its smooth convex piece with nonnegative
/// multipliers in Q(sqrt2), and an outward-rounded interval branch-and-bound
/// pass confirmed no feasible point beats value - 1e-9.
MinResult min_on_triangle(ObjectiveId obj, const TriangleRegion& region);

struct QuadMinResult {
    Rat theta;
    Rat min_value;
};

/// Minimum of sum_i p_i nu_i^2 over the hyperplane sum_i p_i nu_i = C with
/// nu_1 fixed; attained at nu_2 = ... = nu_K = theta.
QuadMinResult min_quadratic_on_hyperplane(const std::vector<Rat>& weights, const Rat& C,
                                          const Rat& nu1);

enum class PhiCase { ThreeLevel, FourLevel };

struct PhiReport {
    bool ok = false;
    MPoly difference;  // lhs - rhs of the counting estimate at the substitution
    MPoly remainder;   // FourLevel: difference + (2s - t3)^2, negated
    std::string detail;
};

/// ThreeLevel: substituting m1 = 8, m2 = 4 into the three-level counting
/// estimate turns lhs - rhs into -Phi(s, t0, t1, t2) with
/// Phi = (s - t2)^2 + 6 s t0 + 5 t0^2 + 4 t0 t1 + 2 t0 t2.
/// FourLevel: substituting m1 = 12, m2 = 4 into the four-level estimate
/// leaves -(2s - t3)^2 minus a form with nonnegative coefficients.
bool check_phi_identity(PhiCase c, PhiReport* report = nullptr);

/// lhs - rhs of the counting estimate with free substitution values
/// (perturbation hook for tests).
MPoly phi_counting_difference(PhiCase c, const Rat& m1, const Rat& m2);

/// The displayed Phi form of the three-level case.
MPoly phi_three_level_form();

struct PipelineStep {
    std::string description;
    Rat lhs, rhs;
};

/// Shipped constant-propagation derivations; every step must be an exact
/// equality. Throws UnknownPipeline.
bool check_bound_pipeline(const std::string& id);
std::vector<std::string> pipeline_names();
std::vector<PipelineStep> pipeline_steps(const std::string& id);

}  // namespace rigver

#endif
