#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "opradius/errors.hpp"
#include "opradius/rng.hpp"
#include "opradius/sampling.hpp"

using namespace opradius;
using namespace testing;

TEST_CASE("SplitMix64 reference outputs") {
    // Published first outputs of SplitMix64 seeded with 0 and 1234567.
    SplitMix64 zero(0);
    CHECK(zero.next() == 0xE220A8397B1DCDAFULL);
    CHECK(zero.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(zero.next() == 0x06C45D188009454FULL);
    SplitMix64 r(1234567);
    CHECK(r.next() == 6457827717110365317ULL);
    CHECK(r.next() == 3203168211198807973ULL);
}

TEST_CASE("uniform and gaussian streams") {
    SplitMix64 a(42);
    SplitMix64 b(42);
    const std::uint64_t raw = b.next();
    CHECK(a.uniform() == static_cast<double>(raw >> 11) * 0x1.0p-53);

    SplitMix64 g(7);
    double sum = 0.0;
    double sum2 = 0.0;
    constexpr int count = 200000;
    for (int k = 0; k < count; ++k) {
        const double x = g.gaussian();
        sum += x;
        sum2 += x * x;
    }
    CHECK(std::abs(sum / count) < 0.01);
    CHECK(std::abs(sum2 / count - 1.0) < 0.02);

    SplitMix64 c(9);
    double e = 0.0;
    for (int k = 0; k < count; ++k) {
        e += std::norm(c.complex_gaussian());
    }
    CHECK(std::abs(e / count - 1.0) < 0.02);
}

TEST_CASE("Box-Muller pairs share one uniform pair") {
    SplitMix64 u(3);
    const double u1 = 1.0 - u.uniform();
    const double u2 = u.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    SplitMix64 g(3);
    CHECK(g.gaussian() == r * std::cos(2.0 * std::numbers::pi * u2));
    CHECK(g.gaussian() == r * std::sin(2.0 * std::numbers::pi * u2));
}

TEST_CASE("derive_seed separates sub-streams") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(5, 3) == derive_seed(5, 3));
}

TEST_CASE("sampler spec parsing") {
    const SamplerSpec s = parse_sampler_spec("nilpotent-sq-zero:4:99");
    CHECK(s.family == Family::nilpotent_sq_zero);
    CHECK(s.n == 4);
    CHECK(s.seed == 99);
    CHECK(parse_sampler_spec("nilpotent:3:1").family == Family::nilpotent_sq_zero);
    CHECK(parse_sampler_spec("nilpotent-pairs:2:0").family == Family::nilpotent_pairs);
    CHECK(to_string(s) == "nilpotent-sq-zero:4:99");
    CHECK_THROWS_AS(parse_sampler_spec("ginibre:3"), ParseError);
    CHECK_THROWS_AS(parse_sampler_spec("ginibre:0:1"), ParseError);
    CHECK_THROWS_AS(parse_sampler_spec("ginibre:65:1"), ParseError);
    CHECK_THROWS_AS(parse_sampler_spec("ginibre:x:1"), ParseError);
    CHECK_THROWS_AS(parse_sampler_spec("ginibre:3:-1"), ParseError);
    CHECK_THROWS_AS(parse_sampler_spec("banded:3:1"), ParseError);
}

TEST_CASE("determinism") {
    for (const char* fam : {"ginibre", "hermitian", "nilpotent-sq-zero", "normal", "unitary"}) {
        const SamplerSpec spec = parse_sampler_spec(std::string(fam) + ":5:17");
        CHECK(std::get<Matrix>(sample(spec)) == std::get<Matrix>(sample(spec)));
    }
    const MatrixPair p = sample_pair(parse_sampler_spec("nilpotent-pairs:3:5"));
    const MatrixPair q = sample_pair(parse_sampler_spec("nilpotent-pairs:3:5"));
    CHECK(p.b == q.b);
    CHECK(p.c == q.c);
    CHECK(sample_pair({Family::ginibre, 3, 1}).b != sample_pair({Family::ginibre, 3, 2}).b);
}

TEST_CASE("family predicates over 1000 seeds") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const std::size_t n = 2 + seed % 7;
        const Matrix t = std::get<Matrix>(sample({Family::nilpotent_sq_zero, n, seed}));
        const double f = frobenius_norm(t);
        CHECK(frobenius_norm(t * t) <= 1e-10 * f * f);

        const Matrix u = std::get<Matrix>(sample({Family::unitary, n, seed}));
        CHECK(dist(adjoint(u) * u, Matrix::identity(n)) <= 1e-10);

        const Matrix m = std::get<Matrix>(sample({Family::normal, n, seed}));
        const double fm = frobenius_norm(m);
        CHECK(dist(m * adjoint(m), adjoint(m) * m) <= 1e-9 * fm * fm);

        const Matrix h = std::get<Matrix>(sample({Family::hermitian, n, seed}));
        CHECK(h == adjoint(h));

        const MatrixPair p = sample_pair({Family::nilpotent_pairs, n, seed});
        CHECK(p.c == adjoint(p.b));
        CHECK(frobenius_norm(p.b * p.b) <= 1e-10 * std::pow(frobenius_norm(p.b), 2));
    }
}

TEST_CASE("one-dimensional nilpotent sampling fails loudly") {
    // The only 1x1 matrix with T^2 = 0 is zero; Gram-Schmidt breaks down.
    CHECK_THROWS_AS(sample({Family::nilpotent_sq_zero, 1, 0}), NumericalError);
    CHECK_NOTHROW(sample({Family::ginibre, 1, 0}));
    CHECK_NOTHROW(sample({Family::unitary, 1, 0}));
}

TEST_CASE("pairs of single families are two consecutive draws") {
    SplitMix64 rng(21);
    const Matrix b = draw(Family::hermitian, 3, rng);
    const Matrix c = draw(Family::hermitian, 3, rng);
    const MatrixPair p = sample_pair({Family::hermitian, 3, 21});
    CHECK(p.b == b);
    CHECK(p.c == c);
}
