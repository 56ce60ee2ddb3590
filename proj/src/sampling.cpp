#include "opradius/sampling.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <vector>

#include "opradius/errors.hpp"

namespace opradius {

namespace {

constexpr int kMaxAttempts = 16;
constexpr double kBreakdownRatio = 1e-8;

struct FamilyEntry {
    Family family;
    std::string_view name;
};

constexpr std::array<FamilyEntry, 6> kFamilies{{
    {Family::ginibre, "ginibre"},
    {Family::hermitian, "hermitian"},
    {Family::nilpotent_sq_zero, "nilpotent-sq-zero"},
    {Family::normal, "normal"},
    {Family::unitary, "unitary"},
    {Family::nilpotent_pairs, "nilpotent-pairs"},
}};

std::vector<Complex> gaussian_vector(std::size_t n, SplitMix64& rng) {
    std::vector<Complex> v(n);
    for (auto& z : v) {
        z = rng.complex_gaussian();
    }
    return v;
}

double vector_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

/// <u, v> = u* v
Complex inner(const std::vector<Complex>& u, const std::vector<Complex>& v) {
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += std::conj(u[i]) * v[i];
    }
    return s;
}

Matrix ginibre(std::size_t n, SplitMix64& rng) {
    Matrix m(n);
    for (auto& z : m.data()) {
        z = rng.complex_gaussian();
    }
    return m;
}

Matrix nilpotent(std::size_t n, SplitMix64& rng) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const std::vector<Complex> x = gaussian_vector(n, rng);
        std::vector<Complex> y = gaussian_vector(n, rng);
        const double xx = std::norm(vector_norm(x));
        const double y0 = vector_norm(y);
        if (xx == 0.0 || y0 == 0.0) {
            continue;
        }
        for (int pass = 0; pass < 2; ++pass) {
            const Complex coeff = inner(x, y) / xx;
            for (std::size_t i = 0; i < n; ++i) {
                y[i] -= coeff * x[i];
            }
        }
        if (vector_norm(y) < kBreakdownRatio * y0) {
            continue;
        }
        Matrix t(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                t(i, j) = x[i] * std::conj(y[j]);
            }
        }
        return t;
    }
    throw NumericalError("nilpotent sampler: Gram-Schmidt broke down in " + std::to_string(kMaxAttempts) +
                             " attempts (n = " + std::to_string(n) + ")",
                         0.0);
}

} // namespace

std::string_view family_name(Family family) noexcept {
    for (const auto& entry : kFamilies) {
        if (entry.family == family) {
            return entry.name;
        }
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    if (name == "nilpotent") {
        return Family::nilpotent_sq_zero;
    }
    for (const auto& entry : kFamilies) {
        if (entry.name == name) {
            return entry.family;
        }
    }
    throw ParseError("unknown sampler family '" + std::string(name) + "'");
}

SamplerSpec parse_sampler_spec(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
        throw ParseError("sampler spec must be <family>:<n>:<seed>, got '" + std::string(text) + "'");
    }
    SamplerSpec spec;
    spec.family = parse_family(text.substr(0, first));

    const auto n_text = text.substr(first + 1, second - first - 1);
    const auto seed_text = text.substr(second + 1);
    auto [n_end, n_ec] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), spec.n);
    if (n_ec != std::errc{} || n_end != n_text.data() + n_text.size()) {
        throw ParseError("sampler spec: bad dimension '" + std::string(n_text) + "'");
    }
    auto [s_end, s_ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), spec.seed);
    if (s_ec != std::errc{} || s_end != seed_text.data() + seed_text.size()) {
        throw ParseError("sampler spec: bad seed '" + std::string(seed_text) + "'");
    }
    if (spec.n < 1 || spec.n > kMaxDimension) {
        throw ParseError("sampler spec: dimension " + std::to_string(spec.n) + " outside [1, 64]");
    }
    return spec;
}

std::string to_string(const SamplerSpec& spec) {
    return std::string(family_name(spec.family)) + ":" + std::to_string(spec.n) + ":" + std::to_string(spec.seed);
}

Matrix random_unitary(std::size_t n, SplitMix64& rng) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const Matrix g = ginibre(n, rng);
        std::vector<std::vector<Complex>> columns;
        columns.reserve(n);
        bool broke = false;
        for (std::size_t j = 0; j < n && !broke; ++j) {
            std::vector<Complex> v(n);
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = g(i, j);
            }
            const double v0 = vector_norm(v);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : columns) {
                    const Complex coeff = inner(q, v);
                    for (std::size_t i = 0; i < n; ++i) {
                        v[i] -= coeff * q[i];
                    }
                }
            }
            const double norm = vector_norm(v);
            if (v0 == 0.0 || norm < kBreakdownRatio * v0) {
                broke = true;
                break;
            }
            for (auto& z : v) {
                z /= norm;
            }
            columns.push_back(std::move(v));
        }
        if (broke) {
            continue;
        }
        Matrix u(n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                u(i, j) = columns[j][i];
            }
        }
        return u;
    }
    throw NumericalError("unitary sampler: Gram-Schmidt broke down in " + std::to_string(kMaxAttempts) + " attempts",
                         0.0);
}

Matrix draw(Family family, std::size_t n, SplitMix64& rng) {
    switch (family) {
    case Family::ginibre:
        return ginibre(n, rng);
    case Family::hermitian: {
        const Matrix g = ginibre(n, rng);
        return scale(0.5, add(g, adjoint(g)));
    }
    case Family::nilpotent_sq_zero:
    case Family::nilpotent_pairs:
        return nilpotent(n, rng);
    case Family::normal: {
        const Matrix u = random_unitary(n, rng);
        std::vector<Complex> d(n);
        for (auto& z : d) {
            z = rng.complex_gaussian();
        }
        return mul(mul(u, Matrix::diagonal(d)), adjoint(u));
    }
    case Family::unitary:
        return random_unitary(n, rng);
    }
    throw InvalidInput("unknown sampler family");
}

MatrixPair draw_pair(Family family, std::size_t n, SplitMix64& rng) {
    if (family == Family::nilpotent_pairs) {
        Matrix t = nilpotent(n, rng);
        Matrix ts = adjoint(t);
        return {std::move(t), std::move(ts)};
    }
    Matrix b = draw(family, n, rng);
    Matrix c = draw(family, n, rng);
    return {std::move(b), std::move(c)};
}

Sample sample(const SamplerSpec& spec) {
    SplitMix64 rng(spec.seed);
    if (spec.family == Family::nilpotent_pairs) {
        return draw_pair(spec.family, spec.n, rng);
    }
    return draw(spec.family, spec.n, rng);
}

MatrixPair sample_pair(const SamplerSpec& spec) {
    SplitMix64 rng(spec.seed);
    return draw_pair(spec.family, spec.n, rng);
}

} // namespace opradius
