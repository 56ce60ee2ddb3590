#include "opradius/radius.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "angle_search.hpp"
#include "opradius/errors.hpp"
#include "opradius/rng.hpp"

namespace opradius {

namespace {

using detail::AngleAxis;
using detail::AngleSearchSettings;

constexpr double kPi = std::numbers::pi;
constexpr int kSingleCandidates = 3;
constexpr int kPairCandidates = 4;
constexpr std::size_t kOracleRestarts = 64;

/// N(sum_k c_k H_k) for a fixed list of Hermitian matrices, reusing one
/// scratch buffer. Not shareable between threads.
class HermitianCombinationNorm {
public:
    HermitianCombinationNorm(NormDescriptor norm, std::vector<Matrix> basis)
        : norm_(std::move(norm)), n_(basis.front().size()), basis_(std::move(basis)), scratch_(n_ * n_) {}

    double operator()(std::span<const double> coeffs) {
        std::fill(scratch_.begin(), scratch_.end(), Complex(0.0, 0.0));
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            const double ck = coeffs[k];
            if (ck == 0.0) {
                continue;
            }
            const auto h = basis_[k].data();
            for (std::size_t e = 0; e < scratch_.size(); ++e) {
                scratch_[e] += ck * h[e];
            }
        }
        return detail::hermitian_norm_in_place(norm_, scratch_, n_);
    }

private:
    NormDescriptor norm_;
    std::size_t n_;
    std::vector<Matrix> basis_;
    std::vector<Complex> scratch_;
};

double wrap(double angle, double period) {
    double r = std::fmod(angle, period);
    if (r < 0.0) {
        r += period;
    }
    if (r >= period) {
        r = 0.0;
    }
    return r;
}

/// Maps any (t, phi, theta) to the canonical chart describing the same
/// point of the sphere. (mu1, mu2) and -(mu1, mu2) give the same value
/// since N(-X) = N(X), so the sign is chosen to put the leading phase in
/// [0, pi).
Argmax canonical_pair_argmax(double t, double phi, double theta) {
    Complex mu1 = std::cos(t) * std::polar(1.0, theta);
    Complex mu2 = std::sin(t) * std::polar(1.0, theta + phi);
    constexpr double tiny = 1e-300;
    const bool has_first = std::abs(mu1) > tiny;
    const Complex lead = has_first ? mu1 : mu2;
    if (wrap(std::arg(lead), 2.0 * kPi) >= kPi) {
        mu1 = -mu1;
        mu2 = -mu2;
    }

    Argmax out;
    out.t = std::atan2(std::abs(mu2), std::abs(mu1));
    if (has_first) {
        out.theta = wrap(std::arg(mu1), kPi);
        out.phi = std::abs(mu2) > tiny ? wrap(std::arg(mu2) - std::arg(mu1), 2.0 * kPi) : 0.0;
    } else {
        out.theta = wrap(std::arg(mu2), kPi);
        out.phi = 0.0;
    }
    return out;
}

/// Search chart for pair radii: (t, psi, theta) with psi = theta + phi the
/// phase of the C coefficient. It covers the same set as (t, phi, theta)
/// but keeps the two phases decoupled near t = pi/2, where only theta + phi
/// matters and coordinate steps in (phi, theta) would zigzag.
std::array<AngleAxis, 3> pair_axes(const RadiusOptions& opts) {
    const int d = opts.pair_screen_divisor;
    return {{
        {0.0, kPi / 2.0, std::max(8, (opts.t_grid - 1) / d + 1), false},
        {0.0, 2.0 * kPi, std::max(8, opts.phi_grid / d), true},
        {0.0, kPi, std::max(8, opts.theta_grid / d), true},
    }};
}

AngleSearchSettings settings_for(const RadiusOptions& opts, int candidates) {
    AngleSearchSettings s;
    s.refine_passes = opts.refine_passes;
    s.refine_tol = opts.refine_tol;
    s.candidates = candidates;
    return s;
}

void check_pair(const Matrix& b, const Matrix& c) {
    if (b.size() != c.size()) {
        throw DimensionError("pair radius: B is " + std::to_string(b.size()) + "x" + std::to_string(b.size()) +
                             " but C is " + std::to_string(c.size()) + "x" + std::to_string(c.size()));
    }
}

Complex quadratic_form(const Matrix& a, std::span<const Complex> x) {
    const std::size_t n = a.size();
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        Complex row(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            row += a(i, j) * x[j];
        }
        s += std::conj(x[i]) * row;
    }
    return s;
}

void normalize(std::vector<Complex>& x) {
    double s = 0.0;
    for (const auto& z : x) {
        s += std::norm(z);
    }
    s = std::sqrt(s);
    if (s > 0.0) {
        for (auto& z : x) {
            z /= s;
        }
    }
}

} // namespace

void RadiusOptions::validate() const {
    if (theta_grid < 8 || t_grid < 8 || phi_grid < 8) {
        throw InvalidInput("radius options: every grid needs at least 8 points");
    }
    if (!(refine_tol > 0.0)) {
        throw InvalidInput("radius options: refine_tol must be positive");
    }
    if (refine_passes < 0 || escalation_rounds < 0) {
        throw InvalidInput("radius options: refine_passes and escalation_rounds must be non-negative");
    }
    if (pair_screen_divisor < 1) {
        throw InvalidInput("radius options: pair_screen_divisor must be >= 1");
    }
}

RadiusOptions RadiusOptions::doubled() const {
    RadiusOptions out = *this;
    out.theta_grid = 2 * theta_grid;
    out.t_grid = 2 * (t_grid - 1) + 1;
    out.phi_grid = 2 * phi_grid;
    return out;
}

RadiusResult numerical_radius(const Matrix& t, const NormDescriptor& norm, const RadiusOptions& opts) {
    opts.validate();
    CartesianParts parts = cartesian_parts(t);
    HermitianCombinationNorm objective(norm, {std::move(parts.re), std::move(parts.im)});
    auto f = [&](std::span<const double> x) {
        const std::array<double, 2> coeffs{std::cos(x[0]), -std::sin(x[0])};
        return objective(coeffs);
    };
    const std::array<AngleAxis, 1> axes{{{0.0, kPi, opts.theta_grid, true}}};
    const auto found = detail::maximize_over_angles(f, axes, settings_for(opts, kSingleCandidates));

    RadiusResult result;
    result.value = found.value;
    result.argmax.theta = wrap(found.x[0], kPi);
    result.refined = found.refined;
    return result;
}

RadiusResult euclidean_radius(const Matrix& b, const Matrix& c, const NormDescriptor& norm,
                              const RadiusOptions& opts) {
    check_pair(b, c);
    opts.validate();
    CartesianParts pb = cartesian_parts(b);
    CartesianParts pc = cartesian_parts(c);
    HermitianCombinationNorm objective(norm, {std::move(pb.re), std::move(pb.im), std::move(pc.re), std::move(pc.im)});

    // With psi = theta + phi,
    // Re(e^{i theta}(cos t B + sin t e^{i phi} C))
    //   = cos t (cos theta Re B - sin theta Im B)
    //   + sin t (cos psi Re C - sin psi Im C)
    auto f = [&](std::span<const double> x) {
        const double ct = std::cos(x[0]);
        const double st = std::sin(x[0]);
        const std::array<double, 4> coeffs{ct * std::cos(x[2]), -ct * std::sin(x[2]), st * std::cos(x[1]),
                                           -st * std::sin(x[1])};
        return objective(coeffs);
    };
    const auto axes = pair_axes(opts);
    const auto found = detail::maximize_over_angles(f, axes, settings_for(opts, kPairCandidates));

    RadiusResult result;
    result.value = found.value;
    result.argmax = canonical_pair_argmax(found.x[0], found.x[1] - found.x[2], found.x[2]);
    result.refined = found.refined;
    return result;
}

RadiusResult euclidean_radius_alpha_beta(const Matrix& b, const Matrix& c, const NormDescriptor& norm,
                                         const RadiusOptions& opts) {
    check_pair(b, c);
    opts.validate();
    const std::size_t n = b.size();
    std::vector<Complex> z(n * n);
    std::vector<Complex> h(n * n);
    const auto bd = b.data();
    const auto cd = c.data();

    auto f = [&](std::span<const double> x) {
        const double l1 = std::cos(x[0]);
        const Complex l2 = std::sin(x[0]) * std::polar(1.0, x[1] - x[2]);
        const double alpha = std::cos(x[2]);
        const double beta = -std::sin(x[2]);
        for (std::size_t e = 0; e < z.size(); ++e) {
            z[e] = l1 * bd[e] + l2 * cd[e];
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const Complex zij = z[i * n + j];
                const Complex zji = std::conj(z[j * n + i]);
                const Complex re = 0.5 * (zij + zji);
                const Complex d = 0.5 * (zij - zji);
                const Complex im(d.imag(), -d.real());
                h[i * n + j] = alpha * re + beta * im;
            }
        }
        return detail::hermitian_norm_in_place(norm, h, n);
    };
    const auto axes = pair_axes(opts);
    const auto found = detail::maximize_over_angles(f, axes, settings_for(opts, kPairCandidates));

    RadiusResult result;
    result.value = found.value;
    result.argmax = canonical_pair_argmax(found.x[0], found.x[1] - found.x[2], found.x[2]);
    result.refined = found.refined;
    return result;
}

double hs_radius_closed_form(const Matrix& t) {
    const double fro = frobenius_norm(t);
    const double tr2 = std::abs(trace(mul(t, t)));
    return std::sqrt(0.5 * fro * fro + 0.5 * tr2);
}

RadiusResult hs_euclidean_radius_reduced(const Matrix& b, const Matrix& c, const RadiusOptions& opts) {
    check_pair(b, c);
    opts.validate();
    auto combination = [&](double t, double phi) {
        return add(scale(std::cos(t), b), scale(std::sin(t) * std::polar(1.0, phi), c));
    };
    auto f = [&](std::span<const double> x) { return hs_radius_closed_form(combination(x[0], x[1])); };
    const std::array<AngleAxis, 2> axes{{
        {0.0, kPi / 2.0, opts.t_grid, false},
        {0.0, 2.0 * kPi, opts.phi_grid, true},
    }};
    const auto found = detail::maximize_over_angles(f, axes, settings_for(opts, kPairCandidates));

    // The theta supremum of Re(e^{2i theta} tr(Z^2)) sits at -arg(tr Z^2)/2.
    const Matrix z = combination(found.x[0], found.x[1]);
    const double theta = -0.5 * std::arg(trace(mul(z, z)));

    RadiusResult result;
    result.value = found.value;
    result.argmax = canonical_pair_argmax(found.x[0], found.x[1], theta);
    result.refined = found.refined;
    return result;
}

double euclidean_radius_vector_oracle(const Matrix& b, const Matrix& c, std::size_t samples, std::uint64_t seed,
                                      int polish_iters) {
    check_pair(b, c);
    if (samples < 1) {
        throw InvalidInput("vector oracle: samples must be >= 1");
    }
    if (polish_iters < 0) {
        throw InvalidInput("vector oracle: polish_iters must be >= 0");
    }
    const std::size_t n = b.size();
    SplitMix64 rng(seed);
    auto value = [&](std::span<const Complex> x) { return std::hypot(std::abs(quadratic_form(b, x)), std::abs(quadratic_form(c, x))); };
    auto random_unit = [&] {
        std::vector<Complex> x(n);
        for (auto& z : x) {
            z = rng.complex_gaussian();
        }
        normalize(x);
        return x;
    };

    // Min-heap of the best restarts seen so far; ties resolved by draw order.
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> keep;
    std::vector<std::vector<Complex>> pool;
    pool.reserve(samples);
    const std::size_t restarts = std::min(samples, kOracleRestarts);
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<Complex> x = random_unit();
        const double v = value(x);
        if (keep.size() < restarts) {
            keep.emplace(v, pool.size());
            pool.push_back(std::move(x));
        } else if (v > keep.top().first) {
            const std::size_t slot = keep.top().second;
            keep.pop();
            pool[slot] = std::move(x);
            keep.emplace(v, slot);
        }
    }

    std::vector<Entry> starts;
    while (!keep.empty()) {
        starts.push_back(keep.top());
        keep.pop();
    }
    std::sort(starts.begin(), starts.end(), [](const Entry& a, const Entry& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });

    double best = 0.0;
    std::vector<Complex> trial(n);
    for (const auto& [start_value, slot] : starts) {
        std::vector<Complex> x = pool[slot];
        double fx = start_value;
        double sigma = 0.5;
        for (int it = 0; it < polish_iters; ++it) {
            for (std::size_t i = 0; i < n; ++i) {
                trial[i] = x[i] + sigma * rng.complex_gaussian();
            }
            normalize(trial);
            const double ft = value(trial);
            if (ft > fx) {
                x = trial;
                fx = ft;
                sigma = std::min(2.0 * sigma, 1.0);
            } else {
                sigma *= 0.5;
            }
        }
        best = std::max(best, fx);
    }
    return best;
}

} // namespace opradius
