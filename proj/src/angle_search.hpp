#pragma once

// Grid-then-golden-section maximization over a box of angles. Private to
// the radius module.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace opradius::detail {

struct AngleAxis {
    double lo = 0.0;
    double span = 0.0;
    int points = 8;
    /// Periodic axes sample [lo, lo + span); others sample [lo, lo + span]
    /// inclusive.
    bool periodic = true;

    double spacing() const { return periodic ? span / points : span / (points - 1); }
    double at(int k) const { return lo + k * spacing(); }
};

struct AngleSearchSettings {
    int refine_passes = 3;
    double refine_tol = 1e-9;
    /// Distinct grid local maxima that get refined.
    int candidates = 4;
    /// Coordinate passes continue past refine_passes while they still gain
    /// more than this (relative), up to max_passes.
    double converge_rel = 1e-15;
    int max_passes = 64;
};

struct AngleSearchResult {
    std::vector<double> x;
    double value = 0.0;
    bool refined = false;
};

inline constexpr double kInvGolden = 0.6180339887498949;

/// Maximizes g on [a, b] by golden section until the bracket is below tol.
/// Returns the best interior point probed and its value.
template <class G>
std::pair<double, double> golden_section_max(G&& g, double a, double b, double tol) {
    if (!(b - a > tol)) {
        const double m = 0.5 * (a + b);
        return {m, g(m)};
    }
    double c = b - kInvGolden * (b - a);
    double d = a + kInvGolden * (b - a);
    double fc = g(c);
    double fd = g(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvGolden * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvGolden * (b - a);
            fd = g(d);
        }
    }
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

namespace search_internal {

inline std::vector<int> unravel(std::size_t index, std::span<const AngleAxis> axes) {
    std::vector<int> k(axes.size());
    for (std::size_t i = axes.size(); i-- > 0;) {
        k[i] = static_cast<int>(index % axes[i].points);
        index /= axes[i].points;
    }
    return k;
}

inline std::size_t ravel(const std::vector<int>& k, std::span<const AngleAxis> axes) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) {
        index = index * axes[i].points + static_cast<std::size_t>(k[i]);
    }
    return index;
}

/// Grid points whose value is >= every neighbour in the 3^d - 1 stencil,
/// best first (ties by grid index).
inline std::vector<std::size_t> grid_local_maxima(const std::vector<double>& values,
                                                  std::span<const AngleAxis> axes) {
    const std::size_t d = axes.size();
    std::size_t stencil = 1;
    for (std::size_t i = 0; i < d; ++i) {
        stencil *= 3;
    }
    std::vector<std::size_t> maxima;
    std::vector<int> neighbour(d);
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        const std::vector<int> k = unravel(idx, axes);
        bool is_max = true;
        for (std::size_t s = 0; s < stencil && is_max; ++s) {
            std::size_t code = s;
            bool self = true;
            bool inside = true;
            for (std::size_t i = d; i-- > 0;) {
                const int offset = static_cast<int>(code % 3) - 1;
                code /= 3;
                self = self && offset == 0;
                int ki = k[i] + offset;
                if (axes[i].periodic) {
                    ki = (ki + axes[i].points) % axes[i].points;
                } else if (ki < 0 || ki >= axes[i].points) {
                    inside = false;
                }
                neighbour[i] = ki;
            }
            if (self || !inside) {
                continue;
            }
            if (values[ravel(neighbour, axes)] > values[idx]) {
                is_max = false;
            }
        }
        if (is_max) {
            maxima.push_back(idx);
        }
    }
    std::stable_sort(maxima.begin(), maxima.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return maxima;
}

} // namespace search_internal

/**
 * Scans the product grid of `axes`, then refines the best `candidates`
 * grid local maxima by coordinate-wise golden section (bracket of one grid
 * spacing either side), followed each pass by a golden line search along
 * that pass's displacement. Refinement may leave the box; callers map the
 * argmax back to canonical ranges.
 */
template <class F>
AngleSearchResult maximize_over_angles(F&& f, std::span<const AngleAxis> axes, const AngleSearchSettings& settings) {
    using namespace search_internal;
    const std::size_t d = axes.size();

    std::size_t total = 1;
    for (const auto& axis : axes) {
        total *= static_cast<std::size_t>(axis.points);
    }
    std::vector<double> values(total);
    std::vector<double> x(d);
    for (std::size_t idx = 0; idx < total; ++idx) {
        const std::vector<int> k = unravel(idx, axes);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = axes[i].at(k[i]);
        }
        values[idx] = f(std::span<const double>(x));
    }

    std::vector<std::size_t> starts = grid_local_maxima(values, axes);
    if (starts.empty()) {
        starts.push_back(static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin()));
    }
    if (static_cast<int>(starts.size()) > settings.candidates) {
        starts.resize(static_cast<std::size_t>(std::max(settings.candidates, 1)));
    }

    AngleSearchResult best;
    best.value = -1.0;
    for (std::size_t start : starts) {
        const std::vector<int> k = unravel(start, axes);
        std::vector<double> pos(d);
        for (std::size_t i = 0; i < d; ++i) {
            pos[i] = axes[i].at(k[i]);
        }
        double value = values[start];
        bool refined = false;

        if (settings.refine_passes > 0) {
            refined = true;
            std::vector<double> probe(d);
            const int pass_cap = std::max(settings.refine_passes, settings.max_passes);
            for (int pass = 0; pass < pass_cap; ++pass) {
                const std::vector<double> pass_start = pos;
                const double value_start = value;

                for (std::size_t i = 0; i < d; ++i) {
                    const double h = axes[i].spacing();
                    probe = pos;
                    auto line = [&](double xi) {
                        probe[i] = xi;
                        return f(std::span<const double>(probe));
                    };
                    const auto [xi, gi] = golden_section_max(line, pos[i] - h, pos[i] + h, settings.refine_tol);
                    if (gi > value) {
                        pos[i] = xi;
                        value = gi;
                    }
                }

                if (d > 1) {
                    std::vector<double> step(d);
                    double step_len = 0.0;
                    for (std::size_t i = 0; i < d; ++i) {
                        step[i] = pos[i] - pass_start[i];
                        step_len = std::max(step_len, std::abs(step[i]));
                    }
                    if (step_len > settings.refine_tol) {
                        auto along = [&](double alpha) {
                            for (std::size_t i = 0; i < d; ++i) {
                                probe[i] = pass_start[i] + alpha * step[i];
                            }
                            return f(std::span<const double>(probe));
                        };
                        const auto [alpha, ga] = golden_section_max(along, 0.5, 4.0, settings.refine_tol / step_len);
                        if (ga > value) {
                            for (std::size_t i = 0; i < d; ++i) {
                                pos[i] = pass_start[i] + alpha * step[i];
                            }
                            value = ga;
                        }
                    }
                }

                const double gain = value - value_start;
                if (pass + 1 >= settings.refine_passes && gain <= settings.converge_rel * std::max(1.0, std::abs(value))) {
                    break;
                }
            }
        }

        if (value > best.value) {
            best.value = value;
            best.x = pos;
            best.refined = refined;
        }
    }
    return best;
}

} // namespace opradius::detail
