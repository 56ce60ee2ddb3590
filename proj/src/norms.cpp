#include "opradius/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "opradius/errors.hpp"
#include "opradius/radius.hpp"
#include "opradius/rng.hpp"
#include "opradius/sampling.hpp"

namespace opradius {

NormDescriptor::NormDescriptor(NormKind kind, double p, std::string id, bool self_adjoint, bool algebra,
                               bool unitarily_invariant)
    : kind_(kind),
      p_(p),
      id_(std::move(id)),
      self_adjoint_(self_adjoint),
      algebra_(algebra),
      unitarily_invariant_(unitarily_invariant) {}

NormDescriptor NormDescriptor::op() { return {NormKind::op, 0.0, "op", true, true, true}; }
NormDescriptor NormDescriptor::hs() { return {NormKind::hs, 0.0, "hs", true, true, true}; }
NormDescriptor NormDescriptor::trace() { return {NormKind::trace, 0.0, "trace", true, true, true}; }
NormDescriptor NormDescriptor::wnum() { return {NormKind::wnum, 0.0, "wnum", true, false, true}; }

NormDescriptor NormDescriptor::schatten(double p) {
    if (!(p >= 1.0) || p > kMaxSchattenP) {
        throw InvalidInput("schatten exponent must lie in [1, 64]");
    }
    std::ostringstream id;
    id << "schatten:" << p;
    return {NormKind::schatten, p, id.str(), true, true, true};
}

NormDescriptor parse_norm(std::string_view selector) {
    if (selector == "op") {
        return NormDescriptor::op();
    }
    if (selector == "hs") {
        return NormDescriptor::hs();
    }
    if (selector == "trace") {
        return NormDescriptor::trace();
    }
    if (selector == "wnum") {
        return NormDescriptor::wnum();
    }
    constexpr std::string_view prefix = "schatten:";
    if (selector.starts_with(prefix)) {
        const auto text = selector.substr(prefix.size());
        double p = 0.0;
        auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
        if (ec != std::errc{} || end != text.data() + text.size()) {
            throw ParseError("bad schatten exponent in '" + std::string(selector) + "'");
        }
        if (!(p >= 1.0) || p > kMaxSchattenP) {
            throw ParseError("schatten exponent must lie in [1, 64], got '" + std::string(text) + "'");
        }
        return NormDescriptor::schatten(p);
    }
    throw ParseError("unknown norm selector '" + std::string(selector) + "' (expected op | hs | trace | schatten:<p> | wnum)");
}

namespace detail {

double norm_of_spectrum(const NormDescriptor& norm, std::span<const double> magnitudes) {
    switch (norm.kind()) {
    case NormKind::op:
    case NormKind::wnum: {
        double m = 0.0;
        for (double s : magnitudes) {
            m = std::max(m, std::abs(s));
        }
        return m;
    }
    case NormKind::hs: {
        double sum = 0.0;
        for (double s : magnitudes) {
            sum += s * s;
        }
        return std::sqrt(sum);
    }
    case NormKind::trace: {
        double sum = 0.0;
        for (double s : magnitudes) {
            sum += std::abs(s);
        }
        return sum;
    }
    case NormKind::schatten: {
        double top = 0.0;
        for (double s : magnitudes) {
            top = std::max(top, std::abs(s));
        }
        if (top == 0.0) {
            return 0.0;
        }
        double sum = 0.0;
        for (double s : magnitudes) {
            sum += std::pow(std::abs(s) / top, norm.p());
        }
        return top * std::pow(sum, 1.0 / norm.p());
    }
    }
    return 0.0;
}

double hermitian_norm_in_place(const NormDescriptor& norm, std::span<Complex> buffer, std::size_t n) {
    if (norm.kind() == NormKind::hs) {
        double sum = 0.0;
        for (const Complex& z : buffer.first(n * n)) {
            sum += std::norm(z);
        }
        return std::sqrt(sum);
    }
    jacobi_hermitian(buffer.first(n * n), n);
    // Eigenvalues sit on the diagonal; at most kMaxDimension of them.
    double eig[kMaxDimension];
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = buffer[i * n + i].real();
    }
    return norm_of_spectrum(norm, std::span<const double>(eig, n));
}

} // namespace detail

namespace {

// Every norm is homogeneous, so tiny or huge inputs are rescaled by a power
// of two (exact) to keep the squared spectra away from under/overflow.
template <class F>
double evaluate_scaled(const Matrix& t, F&& f) {
    const double m = max_abs_entry(t);
    if (m == 0.0) {
        return 0.0;
    }
    if (m > 1e-100 && m < 1e100) {
        return f(t);
    }
    const int e = std::ilogb(m);
    return std::ldexp(f(Complex(std::ldexp(1.0, -e)) * t), e);
}

} // namespace

double norm_evaluate(const NormDescriptor& norm, const Matrix& t) {
    return evaluate_scaled(t, [&](const Matrix& s) { return detail::norm_evaluate_unscaled(norm, s); });
}

double detail::norm_evaluate_unscaled(const NormDescriptor& norm, const Matrix& t) {
    switch (norm.kind()) {
    case NormKind::hs:
        return frobenius_norm(t);
    case NormKind::wnum:
        return numerical_radius(t, NormDescriptor::op()).value;
    default:
        break;
    }
    const std::vector<double> sigma = singular_values(t);
    return detail::norm_of_spectrum(norm, sigma);
}

double norm_evaluate_hermitian(const NormDescriptor& norm, const Matrix& h) {
    if (norm.kind() == NormKind::hs) {
        if (!is_hermitian(h)) {
            throw InvalidInput("norm_evaluate_hermitian: argument is not Hermitian");
        }
        return frobenius_norm(h);
    }
    return evaluate_scaled(h, [&](const Matrix& s) { return detail::norm_of_spectrum(norm, hermitian_eigenvalues(s)); });
}

FlagAudit check_flags(const NormDescriptor& norm, std::size_t samples, std::uint64_t seed) {
    if (samples < 1) {
        throw InvalidInput("check_flags: samples must be >= 1");
    }
    FlagAudit audit;
    audit.norm = norm.id();
    audit.samples = samples;
    audit.self_adjoint_checked = norm.self_adjoint();
    audit.algebra_checked = norm.algebra();
    audit.unitarily_invariant_checked = norm.unitarily_invariant();

    for (std::size_t k = 0; k < samples; ++k) {
        const std::uint64_t sample_seed = derive_seed(seed, k);
        SplitMix64 rng(sample_seed);
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 3);
        const Matrix a = draw(Family::ginibre, n, rng);
        const Matrix b = draw(Family::ginibre, n, rng);
        const double na = norm_evaluate(norm, a);
        auto report = [&](const char* property, double lhs, double rhs) {
            audit.violations.push_back({property, k, sample_seed, lhs, rhs});
        };

        if (norm.self_adjoint()) {
            const double nas = norm_evaluate(norm, adjoint(a));
            if (std::abs(nas - na) > 1e-9 * std::max(1.0, na)) {
                report("self_adjoint", nas, na);
            }
        }
        if (norm.algebra()) {
            const double nab = norm_evaluate(norm, mul(a, b));
            const double bound = na * norm_evaluate(norm, b);
            if (nab > bound + 1e-9 * std::max(1.0, bound)) {
                report("algebra", nab, bound);
            }
        }
        if (norm.unitarily_invariant()) {
            const Matrix u = random_unitary(n, rng);
            const double nu = norm_evaluate(norm, mul(mul(adjoint(u), a), u));
            if (std::abs(nu - na) > 1e-9 * std::max(1.0, na)) {
                report("unitarily_invariant", nu, na);
            }
        }
    }
    return audit;
}

} // namespace opradius
