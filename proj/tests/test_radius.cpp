#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "opradius/errors.hpp"
#include "opradius/norms.hpp"
#include "opradius/radius.hpp"

using namespace opradius;
using namespace testing;

namespace {

constexpr double kPi = std::numbers::pi;

const NormDescriptor kOp = NormDescriptor::op();
const NormDescriptor kHs = NormDescriptor::hs();

Matrix hermitian(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return draw(Family::hermitian, n, rng);
}

// N(Re(e^{i theta}(cos t B + sin t e^{i phi} C))) at an argmax.
double value_at(const Matrix& b, const Matrix& c, const NormDescriptor& n, const Argmax& a) {
    const Matrix z = Complex(std::cos(a.t)) * b + (std::sin(a.t) * std::polar(1.0, a.phi)) * c;
    return norm_evaluate(n, cartesian_parts(std::polar(1.0, a.theta) * z).re);
}

// Fixed inputs shared with tools/reference_values.py.
Matrix ref_b() {
    return Matrix::from_rows({{Complex(1, 2), Complex(0, -0.5), 0.25},
                              {0.5, Complex(-1, 0.5), Complex(0, 2)},
                              {Complex(0, -1), 0.75, Complex(0.5, -1)}});
}

Matrix ref_c() {
    return Matrix::from_rows({{0.5, Complex(0, 1), -1},
                              {2, Complex(0, 0.25), Complex(0.5, -0.5)},
                              {0, Complex(-1, 1), 1.5}});
}

} // namespace

TEST_CASE("single-operator radius examples") {
    CHECK(numerical_radius(jordan(), kOp).value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(numerical_radius(Matrix::from_rows({{1, 0}, {0, Complex(0, 1)}}), kOp).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(numerical_radius(jordan(), kHs).value == doctest::Approx(1.0 / kSqrt2).epsilon(1e-12));
    CHECK(numerical_radius(Matrix(3), kOp).value == 0.0);
}

TEST_CASE("pair radius examples") {
    const Matrix j = jordan();
    CHECK(euclidean_radius(j, j, kOp).value == doctest::Approx(1.0 / kSqrt2).epsilon(1e-10));
    CHECK(euclidean_radius(j, adjoint(j), kHs).value == doctest::Approx(1.0).epsilon(1e-10));
    for (std::uint64_t s = 0; s < 5; ++s) {
        const Matrix b = ginibre(3, s);
        for (const auto& n : {kOp, kHs, NormDescriptor::trace()}) {
            CHECK(rel_diff(euclidean_radius(b, Matrix(3), n).value, numerical_radius(b, n).value) <= 1e-10);
        }
    }
}

TEST_CASE("alpha/beta route") {
    const Matrix j = jordan();
    CHECK(rel_diff(euclidean_radius_alpha_beta(j, adjoint(j), kOp).value,
                   euclidean_radius(j, adjoint(j), kOp).value) <= 1e-6);
    const Matrix h = hermitian(4, 3);
    CHECK(rel_diff(euclidean_radius_alpha_beta(h, Matrix(4), kOp).value, norm_evaluate(kOp, h)) <= 1e-10);
    CHECK(euclidean_radius_alpha_beta(j, j, kHs).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Hilbert-Schmidt closed form") {
    CHECK(hs_radius_closed_form(jordan()) == doctest::Approx(1.0 / kSqrt2));
    CHECK(hs_radius_closed_form(Matrix::identity(2)) == doctest::Approx(kSqrt2));
    const Matrix h = hermitian(5, 8);
    CHECK(hs_radius_closed_form(h) == doctest::Approx(frobenius_norm(h)).epsilon(1e-13));
    for (std::uint64_t s = 0; s < 60; ++s) {
        const Matrix t = ginibre(2 + s % 7, 40 + s);
        const double w = numerical_radius(t, kHs).value;
        const double cf = hs_radius_closed_form(t);
        CHECK(std::abs(w * w - cf * cf) <= 1e-8 * std::max(1.0, std::pow(frobenius_norm(t), 2)));
    }
}

TEST_CASE("reduced Hilbert-Schmidt pair radius") {
    const Matrix j = jordan();
    CHECK(hs_euclidean_radius_reduced(j, adjoint(j)).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(hs_euclidean_radius_reduced(Matrix::identity(2), Matrix(2)).value == doctest::Approx(kSqrt2).epsilon(1e-10));
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Matrix b = ginibre(2 + s % 3, 70 + s);
        const Matrix c = ginibre(2 + s % 3, 170 + s);
        CHECK(rel_diff(hs_euclidean_radius_reduced(b, b).value, kSqrt2 * hs_radius_closed_form(b)) <= 1e-8);
        CHECK(rel_diff(hs_euclidean_radius_reduced(b, c).value, euclidean_radius(b, c, kHs).value) <= 1e-6);
    }
}

TEST_CASE("unit-vector oracle examples") {
    const Matrix j = jordan();
    CHECK(euclidean_radius_vector_oracle(j, adjoint(j), 20000, 1, 200) == doctest::Approx(1.0 / kSqrt2).epsilon(1e-6));
    const Matrix h = hermitian(3, 4);
    CHECK(euclidean_radius_vector_oracle(h, Matrix(3), 20000, 2, 200) ==
          doctest::Approx(norm_evaluate(kOp, h)).epsilon(1e-6));
    const Matrix i2 = Matrix::identity(2);
    CHECK(euclidean_radius_vector_oracle(i2, Complex(0, 1) * i2, 100, 3, 10) == doctest::Approx(kSqrt2).epsilon(1e-12));
    CHECK_THROWS_AS(euclidean_radius_vector_oracle(i2, i2, 0, 1, 1), InvalidInput);
    CHECK_THROWS_AS(euclidean_radius_vector_oracle(i2, i2, 1, 1, -1), InvalidInput);
}

TEST_CASE("operator-norm pair radius matches the unit-vector oracle") {
    for (std::uint64_t s = 0; s < 12; ++s) {
        const std::size_t n = 2 + s % 3;
        const MatrixPair p = sample_pair({Family::ginibre, n, 300 + s});
        const double w = euclidean_radius(p.b, p.c, kOp).value;
        // The sphere grows with n; n = 4 needs a larger budget to converge.
        const std::size_t budget = n < 4 ? 1 : 10;
        const double o = euclidean_radius_vector_oracle(p.b, p.c, 20000 * budget, s, 200 * budget);
        CHECK(o <= w + 1e-9 * w);
        CHECK(std::abs(w - o) <= 1e-4 * std::max(1.0, w));
    }
}

TEST_CASE("independent reference values") {
    // From tools/reference_values.py (unit-sphere search in R^4 with scipy).
    struct Ref {
        NormDescriptor norm;
        double wb, wc, we;
    };
    const Ref refs[] = {
        {kOp, 2.36698374629771, 2.1579398002282, 2.5585426410634},
        {kHs, 3.05163890393343, 2.96131039530551, 3.22691827183944},
        {NormDescriptor::trace(), 4.99063105287287, 5.05605163908955, 5.19009256659755},
        {NormDescriptor::schatten(3), 2.66146545995525, 2.50145368769889, 2.87863994787794},
    };
    const Matrix b = ref_b();
    const Matrix c = ref_c();
    for (const auto& r : refs) {
        CAPTURE(r.norm.id());
        CHECK(rel_diff(numerical_radius(b, r.norm).value, r.wb) <= 1e-9);
        CHECK(rel_diff(numerical_radius(c, r.norm).value, r.wc) <= 1e-9);
        CHECK(rel_diff(euclidean_radius(b, c, r.norm).value, r.we) <= 1e-8);
    }
}

TEST_CASE("argmax is canonical and reproduces the value") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const MatrixPair p = sample_pair({Family::ginibre, 2 + s % 3, 900 + s});
        for (const auto& n : {kOp, kHs, NormDescriptor::trace(), NormDescriptor::schatten(3)}) {
            const RadiusResult r = euclidean_radius(p.b, p.c, n);
            CHECK(r.refined);
            CHECK(r.argmax.theta >= 0.0);
            CHECK(r.argmax.theta < kPi);
            CHECK(r.argmax.t >= 0.0);
            CHECK(r.argmax.t <= kPi / 2);
            CHECK(r.argmax.phi >= 0.0);
            CHECK(r.argmax.phi < 2 * kPi);
            CHECK(rel_diff(value_at(p.b, p.c, n, r.argmax), r.value) <= 1e-12);
        }
        const RadiusResult w = numerical_radius(p.b, kOp);
        CHECK(w.argmax.theta >= 0.0);
        CHECK(w.argmax.theta < kPi);
        CHECK(rel_diff(value_at(p.b, Matrix(p.b.size()), kOp, w.argmax), w.value) <= 1e-12);
    }
}

TEST_CASE("phase invariance and homogeneity") {
    SplitMix64 rng(55);
    for (int k = 0; k < 10; ++k) {
        const std::size_t n = 2 + k % 3;
        const Matrix b = draw(Family::ginibre, n, rng);
        const Matrix c = draw(Family::ginibre, n, rng);
        const Complex e1 = std::polar(1.0, 2 * kPi * rng.uniform());
        const Complex e2 = std::polar(1.0, 2 * kPi * rng.uniform());
        const Complex z = rng.complex_gaussian();
        for (const auto& nd : {kOp, NormDescriptor::trace()}) {
            const double w = numerical_radius(b, nd).value;
            CHECK(rel_diff(numerical_radius(e1 * b, nd).value, w) <= 1e-7);
            const double we = euclidean_radius(b, c, nd).value;
            CHECK(rel_diff(euclidean_radius(e1 * b, e2 * c, nd).value, we) <= 1e-7);
            CHECK(rel_diff(euclidean_radius(z * b, z * c, nd).value, std::abs(z) * we) <= 1e-7);
        }
    }
}

TEST_CASE("triangle inequality of the pair radius") {
    SplitMix64 rng(66);
    for (int k = 0; k < 10; ++k) {
        const std::size_t n = 2 + k % 2;
        const Matrix b1 = draw(Family::ginibre, n, rng);
        const Matrix c1 = draw(Family::ginibre, n, rng);
        const Matrix b2 = draw(Family::ginibre, n, rng);
        const Matrix c2 = draw(Family::ginibre, n, rng);
        for (const auto& nd : {kOp, kHs}) {
            const double lhs = euclidean_radius(b1 + b2, c1 + c2, nd).value;
            const double rhs = euclidean_radius(b1, c1, nd).value + euclidean_radius(b2, c2, nd).value;
            CHECK(lhs <= rhs + 1e-6 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("doubling the grids does not lower the value") {
    const RadiusOptions fine = RadiusOptions{}.doubled();
    CHECK(fine.theta_grid == 1024);
    CHECK(fine.t_grid == 257);
    CHECK(fine.phi_grid == 512);
    for (std::uint64_t s = 0; s < 8; ++s) {
        const MatrixPair p = sample_pair({Family::ginibre, 2 + s % 3, 400 + s});
        const double w0 = euclidean_radius(p.b, p.c, kOp).value;
        const double w1 = euclidean_radius(p.b, p.c, kOp, fine).value;
        CHECK(w1 >= w0 - 1e-9);
        CHECK(w1 - w0 <= 1e-4 * w0);
    }
}

TEST_CASE("options are validated") {
    RadiusOptions o;
    o.theta_grid = 7;
    CHECK_THROWS_AS(numerical_radius(jordan(), kOp, o), InvalidInput);
    o = {};
    o.refine_tol = 0.0;
    CHECK_THROWS_AS(euclidean_radius(jordan(), jordan(), kOp, o), InvalidInput);
    o = {};
    o.escalation_rounds = -1;
    CHECK_THROWS_AS(o.validate(), InvalidInput);
    CHECK_THROWS_AS(euclidean_radius(Matrix(2), Matrix(3), kOp), DimensionError);
}

TEST_CASE("coarse grids still find the supremum") {
    RadiusOptions o;
    o.theta_grid = 8;
    o.t_grid = 9;
    o.phi_grid = 8;
    o.pair_screen_divisor = 1;
    const Matrix j = jordan();
    CHECK(numerical_radius(j, kOp, o).value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(euclidean_radius(j, adjoint(j), kHs, o).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("wnum radius of a Hermitian matrix is its operator norm") {
    const Matrix h = hermitian(4, 12);
    CHECK(rel_diff(numerical_radius(h, NormDescriptor::wnum()).value, norm_evaluate(kOp, h)) <= 1e-10);
}
