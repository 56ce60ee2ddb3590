#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opradius/matrix.hpp"
#include "opradius/norms.hpp"
#include "opradius/radius.hpp"
#include "opradius/sampling.hpp"

namespace opradius {

/// Relative to max(1, rhs).
inline constexpr double kViolationTol = 1e-6;
inline constexpr double kSharpTol = 1e-3;

enum class NormFlag { self_adjoint, algebra, unitarily_invariant };

/// Which inputs a check accepts. single_operator checks read T = B and
/// ignore C; hermitian_pair needs both B and C Hermitian; pair_with_adjoint
/// needs C = B*.
enum class InputTag { any, hermitian_pair, single_operator, pair_with_adjoint };

/// lower: lhs is a bound below a radius (rhs). upper: lhs is a radius below
/// a bound (rhs). identity: both sides should agree.
enum class CheckKind { lower, upper, identity };

/**
 * Quantities shared by the checks evaluated on one (B, C, N) input.
 * Radii are cached by key, so a suite run computes e.g. w_N(B) once per
 * norm. Not thread-safe.
 */
class EvalContext {
public:
    EvalContext(Matrix b, Matrix c, NormDescriptor norm, RadiusOptions opts, std::uint64_t seed = 0);

    const Matrix& b() const { return b_; }
    const Matrix& c() const { return c_; }
    const NormDescriptor& norm() const { return norm_; }
    const RadiusOptions& options() const { return opts_; }

    double n(const Matrix& t) const { return norm_evaluate(norm_, t); }
    double op(const Matrix& t) const { return norm_evaluate(NormDescriptor::op(), t); }

    /// w_N(t), cached under `key`.
    double w(const std::string& key, const Matrix& t);
    /// w_(N,e)(x, y), cached under `key`.
    double we(const std::string& key, const Matrix& x, const Matrix& y);
    /// w_(N,e)(x, y) via the alpha/beta form, cached under `key`.
    double we_alpha_beta(const std::string& key, const Matrix& x, const Matrix& y);

    /// Unitary drawn from the context seed (same U for every check).
    const Matrix& unitary();

private:
    Matrix b_;
    Matrix c_;
    NormDescriptor norm_;
    RadiusOptions opts_;
    std::uint64_t seed_;
    std::map<std::string, double, std::less<>> cache_;
    std::optional<Matrix> unitary_;
};

using Evaluator = std::function<double(EvalContext&)>;

struct InequalityCheck {
    std::string id;
    std::string description;
    std::vector<NormFlag> requires_flags;
    InputTag requires_inputs = InputTag::any;
    /// Empty: any norm. Otherwise the check only runs for this norm id.
    std::string fixed_norm;
    CheckKind kind = CheckKind::lower;
    Evaluator lhs;
    Evaluator rhs;
    std::string reference;
};

enum class Status { pass, violation, sharp, skipped, error };

std::string_view to_string(Status status) noexcept;

struct Verdict {
    std::string check_id;
    std::string norm;
    /// NaN when skipped or on error.
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    Status status = Status::pass;
    int escalations_used = 0;
    /// Reason for skipped / error verdicts.
    std::string note;
};

const std::vector<InequalityCheck>& registry();
const InequalityCheck* lookup(std::string_view id);

/// Empty when the check applies; otherwise the reason it is skipped.
std::string applicability(const InequalityCheck& check, const Matrix& b, const Matrix& c,
                          const NormDescriptor& norm);

/// Classification of already-evaluated sides (no escalation).
Status classify(CheckKind kind, double lhs, double rhs);

/**
 * Evaluates one check. An apparent violation is re-evaluated with all grids
 * doubled, up to opts.escalation_rounds times, before it is reported.
 * `seed` feeds the unitary used by the unitary-invariance check.
 */
Verdict run_check(const InequalityCheck& check, const Matrix& b, const Matrix& c, const NormDescriptor& norm,
                  const RadiusOptions& opts = {}, std::uint64_t seed = 0);

/// Every registry check against every norm, registry order x norm order.
std::vector<Verdict> run_suite(const Matrix& b, const Matrix& c, const std::vector<NormDescriptor>& norms,
                               const RadiusOptions& opts = {}, std::uint64_t seed = 0);

struct SharpnessResult {
    MatrixPair best;
    /// slack / max(1, rhs) of the best instance.
    double min_relative_slack = 0.0;
    Verdict verdict;
    /// Instances where the check applied.
    int evaluated = 0;
};

/**
 * Looks for inputs making `check_id` tight: fresh draws from `family`
 * interleaved with entrywise Gaussian perturbations of the best pair so far
 * (step halved after each failed perturbation). Finds an upper estimate of
 * the smallest slack, never a proof of optimality. Throws InvalidInput for
 * an unknown check or when the check never applies.
 */
SharpnessResult search_sharpness(std::string_view check_id, const NormDescriptor& norm, Family family, std::size_t n,
                                 int iters, std::uint64_t seed, const RadiusOptions& opts = {});

} // namespace opradius
