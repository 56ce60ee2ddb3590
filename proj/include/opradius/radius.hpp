#pragma once

#include <cstdint>

#include "opradius/matrix.hpp"
#include "opradius/norms.hpp"

namespace opradius {

/**
 * Resolution of the angle searches.
 *
 * Single-operator radii scan theta on theta_grid points of [0, pi). Pair
 * radii scan the joint (t, phi, theta) box with each axis coarsened by
 * pair_screen_divisor (t_grid/d, phi_grid/d, theta_grid/d points, at least
 * 8 each), then refine the best local maxima by coordinate-wise golden
 * section. The reduced Hilbert-Schmidt pair radius scans the full
 * t_grid x phi_grid box since it has no theta axis.
 */
struct RadiusOptions {
    int theta_grid = 512;
    int t_grid = 129;
    int phi_grid = 256;
    int refine_passes = 3;
    double refine_tol = 1e-9;
    int escalation_rounds = 2;
    int pair_screen_divisor = 16;

    /// Throws InvalidInput if a grid is below 8, refine_tol <= 0, or a count
    /// is negative.
    void validate() const;

    /// Every grid doubled (t_grid keeps its endpoint: 2(t-1)+1).
    RadiusOptions doubled() const;
};

/// Location of the supremum, canonicalized to theta in [0, pi),
/// t in [0, pi/2], phi in [0, 2 pi). Single-operator results use t = phi = 0.
struct Argmax {
    double theta = 0.0;
    double t = 0.0;
    double phi = 0.0;
};

/// Lower estimate of a supremum.
struct RadiusResult {
    double value = 0.0;
    Argmax argmax;
    bool refined = false;
    int escalations_used = 0;
};

/// Generalized numerical radius sup_theta N(Re(e^{i theta} T)).
RadiusResult numerical_radius(const Matrix& t, const NormDescriptor& norm, const RadiusOptions& opts = {});

/**
 * Generalized Euclidean operator radius of the pair (B, C):
 *
 *   sup over |l1|^2 + |l2|^2 <= 1 and theta of N(Re(e^{i theta}(l1 B + l2 C))).
 *
 * Searched on the sphere l1 = cos t, l2 = sin t e^{i phi} (homogeneity puts
 * the supremum on the boundary and a common phase of (l1, l2) is absorbed by
 * theta).
 */
RadiusResult euclidean_radius(const Matrix& b, const Matrix& c, const NormDescriptor& norm,
                              const RadiusOptions& opts = {});

/// Same supremum through N(alpha Re(Z) + beta Im(Z)), Z = l1 B + l2 C,
/// alpha = cos theta, beta = -sin theta. Independent evaluation route.
RadiusResult euclidean_radius_alpha_beta(const Matrix& b, const Matrix& c, const NormDescriptor& norm,
                                         const RadiusOptions& opts = {});

/// Hilbert-Schmidt numerical radius in closed form,
/// sqrt(||T||_2^2 / 2 + |tr(T^2)| / 2).
double hs_radius_closed_form(const Matrix& t);

/// Hilbert-Schmidt pair radius: the closed form maximized over (t, phi)
/// only, with no theta search.
RadiusResult hs_euclidean_radius_reduced(const Matrix& b, const Matrix& c, const RadiusOptions& opts = {});

/**
 * Euclidean operator radius from unit vectors,
 * sup over ||x|| = 1 of sqrt(|<Bx, x>|^2 + |<Cx, x>|^2).
 *
 * Draws `samples` normalized complex Gaussian vectors, then polishes the 64
 * best by random-perturbation hill climbing (x <- normalize(x + sigma g),
 * sigma halved whenever a step fails to improve and doubled, up to 1, when
 * it succeeds). Lower estimate; with C = 0 it is the classical numerical
 * radius.
 */
double euclidean_radius_vector_oracle(const Matrix& b, const Matrix& c, std::size_t samples, std::uint64_t seed,
                                      int polish_iters);

} // namespace opradius
