#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opradius/matrix.hpp"

namespace opradius {

enum class NormKind { op, hs, trace, schatten, wnum };

/// Largest Schatten exponent accepted; use "op" beyond this.
inline constexpr double kMaxSchattenP = 64.0;

/**
 * A norm on n x n matrices together with the structural properties the
 * radius inequalities need. Flags are fixed per kind and never inferred:
 *
 *   kind       self_adjoint  algebra  unitarily_invariant
 *   op         yes           yes      yes
 *   hs         yes           yes      yes
 *   trace      yes           yes      yes
 *   schatten   yes           yes      yes
 *   wnum       yes           no       yes
 */
class NormDescriptor {
public:
    static NormDescriptor op();
    static NormDescriptor hs();
    static NormDescriptor trace();
    /// Throws InvalidInput unless 1 <= p <= 64.
    static NormDescriptor schatten(double p);
    /// Numerical radius w(.) used as the norm.
    static NormDescriptor wnum();

    NormKind kind() const noexcept { return kind_; }
    /// Schatten exponent; 0 for the other kinds.
    double p() const noexcept { return p_; }
    /// Selector string, e.g. "op" or "schatten:3".
    const std::string& id() const noexcept { return id_; }

    bool self_adjoint() const noexcept { return self_adjoint_; }
    bool algebra() const noexcept { return algebra_; }
    bool unitarily_invariant() const noexcept { return unitarily_invariant_; }

    friend bool operator==(const NormDescriptor& a, const NormDescriptor& b) noexcept {
        return a.kind_ == b.kind_ && a.p_ == b.p_;
    }

private:
    NormDescriptor(NormKind kind, double p, std::string id, bool self_adjoint, bool algebra, bool unitarily_invariant);

    NormKind kind_;
    double p_;
    std::string id_;
    bool self_adjoint_;
    bool algebra_;
    bool unitarily_invariant_;
};

/// `op | hs | trace | schatten:<p> | wnum`; throws ParseError.
NormDescriptor parse_norm(std::string_view selector);

/// N(T) for an arbitrary square T. "wnum" runs the numerical radius
/// optimizer with default options.
double norm_evaluate(const NormDescriptor& norm, const Matrix& t);

/// N(H) for Hermitian H from its eigenvalues; throws InvalidInput if H is
/// not Hermitian.
double norm_evaluate_hermitian(const NormDescriptor& norm, const Matrix& h);

namespace detail {

/// N(H) for an exactly Hermitian row-major buffer, destroying the buffer.
/// Every norm here reduces to a function of |eigenvalues| on Hermitian
/// input (the numerical radius of a Hermitian matrix is its spectral norm).
double hermitian_norm_in_place(const NormDescriptor& norm, std::span<Complex> buffer, std::size_t n);

/// Norm of the absolute eigenvalues / singular values.
double norm_of_spectrum(const NormDescriptor& norm, std::span<const double> magnitudes);

/// norm_evaluate without the power-of-two rescaling of extreme inputs.
double norm_evaluate_unscaled(const NormDescriptor& norm, const Matrix& t);

} // namespace detail

struct FlagViolation {
    std::string property; // "self_adjoint", "algebra" or "unitarily_invariant"
    std::size_t sample = 0;
    std::uint64_t seed = 0; // reproduces the counterexample via derive_seed
    double lhs = 0.0;
    double rhs = 0.0;
};

struct FlagAudit {
    std::string norm;
    std::size_t samples = 0;
    bool self_adjoint_checked = false;
    bool algebra_checked = false;
    bool unitarily_invariant_checked = false;
    std::vector<FlagViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Randomized audit that every declared flag holds on `samples` draws.
/// Undeclared properties are not tested.
FlagAudit check_flags(const NormDescriptor& norm, std::size_t samples, std::uint64_t seed);

} // namespace opradius
