#pragma once

#include <cmath>
#include <numbers>

#include "opradius/matrix.hpp"
#include "opradius/rng.hpp"
#include "opradius/sampling.hpp"

namespace testing {

using opradius::Complex;
using opradius::Matrix;

inline const double kSqrt2 = std::numbers::sqrt2;

/// 2x2 Jordan block [[0,1],[0,0]].
inline Matrix jordan() { return Matrix::from_rows({{0, 1}, {0, 0}}); }

inline Matrix ginibre(std::size_t n, std::uint64_t seed) {
    opradius::SplitMix64 rng(seed);
    return opradius::draw(opradius::Family::ginibre, n, rng);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline double dist(const Matrix& a, const Matrix& b) { return opradius::frobenius_norm(a - b); }

} // namespace testing
