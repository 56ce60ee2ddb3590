#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "opradius/matrix.hpp"
#include "opradius/rng.hpp"

namespace opradius {

enum class Family {
    ginibre,           // i.i.d. standard complex Gaussian entries
    hermitian,         // (G + G*)/2
    nilpotent_sq_zero, // x y* with y orthogonal to x, so T^2 = 0
    normal,            // U diag(z) U*
    unitary,           // Gram-Schmidt (twice) on Ginibre columns
    nilpotent_pairs,   // (T, T*) with T nilpotent_sq_zero
};

std::string_view family_name(Family family) noexcept;
/// Accepts the names above with '-' separators ("nilpotent-sq-zero"); the
/// short alias "nilpotent" means nilpotent-sq-zero.
Family parse_family(std::string_view name);

/// <family>:<n>:<seed>
struct SamplerSpec {
    Family family = Family::ginibre;
    std::size_t n = 2;
    std::uint64_t seed = 0;
};

SamplerSpec parse_sampler_spec(std::string_view text);
std::string to_string(const SamplerSpec& spec);

struct MatrixPair {
    Matrix b;
    Matrix c;
};

/// One matrix of a single-matrix family drawn from `rng`. For
/// nilpotent_pairs this is the T of (T, T*).
Matrix draw(Family family, std::size_t n, SplitMix64& rng);

/// (T, T*) for nilpotent_pairs; two consecutive draws otherwise.
MatrixPair draw_pair(Family family, std::size_t n, SplitMix64& rng);

using Sample = std::variant<Matrix, MatrixPair>;

/// Pure function of the spec: a pair for nilpotent_pairs, otherwise a matrix.
Sample sample(const SamplerSpec& spec);
MatrixPair sample_pair(const SamplerSpec& spec);

/// Draws used by the families; exposed for tests and the norm audit.
Matrix random_unitary(std::size_t n, SplitMix64& rng);

} // namespace opradius
