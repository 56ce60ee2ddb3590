#include "opradius/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

#include "opradius/errors.hpp"
#include "opradius/rng.hpp"

namespace opradius {

EvalContext::EvalContext(Matrix b, Matrix c, NormDescriptor norm, RadiusOptions opts, std::uint64_t seed)
    : b_(std::move(b)), c_(std::move(c)), norm_(std::move(norm)), opts_(opts), seed_(seed) {
    if (b_.size() != c_.size()) {
        throw DimensionError("pair operands must have equal dimensions");
    }
    opts_.validate();
}

double EvalContext::w(const std::string& key, const Matrix& t) {
    const std::string k = "w:" + key;
    if (auto it = cache_.find(k); it != cache_.end()) {
        return it->second;
    }
    const double v = numerical_radius(t, norm_, opts_).value;
    cache_.emplace(k, v);
    return v;
}

double EvalContext::we(const std::string& key, const Matrix& x, const Matrix& y) {
    const std::string k = "we:" + key;
    if (auto it = cache_.find(k); it != cache_.end()) {
        return it->second;
    }
    const double v = euclidean_radius(x, y, norm_, opts_).value;
    cache_.emplace(k, v);
    return v;
}

double EvalContext::we_alpha_beta(const std::string& key, const Matrix& x, const Matrix& y) {
    const std::string k = "ab:" + key;
    if (auto it = cache_.find(k); it != cache_.end()) {
        return it->second;
    }
    const double v = euclidean_radius_alpha_beta(x, y, norm_, opts_).value;
    cache_.emplace(k, v);
    return v;
}

const Matrix& EvalContext::unitary() {
    if (!unitary_) {
        SplitMix64 rng(seed_);
        unitary_ = random_unitary(b_.size(), rng);
    }
    return *unitary_;
}

std::string_view to_string(Status status) noexcept {
    switch (status) {
    case Status::pass:
        return "pass";
    case Status::violation:
        return "violation";
    case Status::sharp:
        return "sharp";
    case Status::skipped:
        return "skipped";
    case Status::error:
        return "error";
    }
    return "?";
}

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;
constexpr std::array<double, 4> kThetas{0.0, kPi / 4, kPi / 2, kPi};

Matrix star(const Matrix& a) { return adjoint(a); }
Matrix re(const Matrix& a) { return cartesian_parts(a).re; }
Matrix im(const Matrix& a) { return cartesian_parts(a).im; }
Complex phase(double theta) { return std::polar(1.0, theta); }
double sq(double x) { return x * x; }
double tr_abs(const Matrix& a) { return std::abs(trace(a)); }
double fro2(const Matrix& a) { return sq(frobenius_norm(a)); }

// Shorthands for the recurring radii. B is also T for single-operator checks.
double wB(EvalContext& x) { return x.w("B", x.b()); }
double wC(EvalContext& x) { return x.w("C", x.c()); }
double wBpC(EvalContext& x) { return x.w("B+C", x.b() + x.c()); }
double wBmC(EvalContext& x) { return x.w("B-C", x.b() - x.c()); }
double weBC(EvalContext& x) { return x.we("B,C", x.b(), x.c()); }

// (1/8) N(C*C + B*B) + (1/2) max{w(B), w(C)} |w(B+C) - w(B-C)|
double thm213_bound(EvalContext& x, const Matrix& gram) {
    return x.n(gram) / 8.0 + 0.5 * std::max(wB(x), wC(x)) * std::abs(wBpC(x) - wBmC(x));
}

InequalityCheck make(std::string id, std::string description, CheckKind kind, Evaluator lhs, Evaluator rhs,
                     std::string reference) {
    InequalityCheck c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.kind = kind;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.reference = std::move(reference);
    return c;
}

InequalityCheck with(InequalityCheck c, InputTag tag, std::vector<NormFlag> flags = {}, std::string fixed = {}) {
    c.requires_inputs = tag;
    c.requires_flags = std::move(flags);
    c.fixed_norm = std::move(fixed);
    return c;
}

std::vector<InequalityCheck> build_registry() {
    using K = CheckKind;
    using T = InputTag;
    const std::vector<NormFlag> sa{NormFlag::self_adjoint};
    const std::vector<NormFlag> alg_sa{NormFlag::algebra, NormFlag::self_adjoint};
    std::vector<InequalityCheck> r;

    // Classical operator-norm bounds.
    r.push_back(with(make("eq11.lower", "||T||/2 <= w(T)", K::lower,
                          [](EvalContext& x) { return 0.5 * x.op(x.b()); }, wB, "classical: w(T) >= ||T||/2"),
                     T::single_operator, {}, "op"));
    r.push_back(with(make("eq11.upper", "w(T) <= ||T||", K::upper, wB,
                          [](EvalContext& x) { return x.op(x.b()); }, "classical: w(T) <= ||T||"),
                     T::single_operator, {}, "op"));
    r.push_back(with(make(
                         "eq12.lower", "||T*T + TT*||/4 <= w(T)^2", K::lower,
                         [](EvalContext& x) { return 0.25 * x.op(star(x.b()) * x.b() + x.b() * star(x.b())); },
                         [](EvalContext& x) { return sq(wB(x)); }, "Kittaneh lower bound"),
                     T::single_operator, {}, "op"));
    r.push_back(with(make(
                         "eq12.upper", "w(T)^2 <= ||T*T + TT*||/2", K::upper, [](EvalContext& x) { return sq(wB(x)); },
                         [](EvalContext& x) { return 0.5 * x.op(star(x.b()) * x.b() + x.b() * star(x.b())); },
                         "Kittaneh upper bound"),
                     T::single_operator, {}, "op"));
    r.push_back(with(make(
                         "eq13.lower", "(sqrt2/4) ||B*B + C*C||^(1/2) <= w_e(B,C)", K::lower,
                         [](EvalContext& x) {
                             return kSqrt2 / 4.0 * std::sqrt(x.op(star(x.b()) * x.b() + star(x.c()) * x.c()));
                         },
                         weBC, "Popescu lower bound"),
                     T::any, {}, "op"));
    r.push_back(with(make(
                         "eq13.upper", "w_e(B,C) <= ||B*B + C*C||^(1/2)", K::upper, weBC,
                         [](EvalContext& x) { return std::sqrt(x.op(star(x.b()) * x.b() + star(x.c()) * x.c())); },
                         "Popescu upper bound"),
                     T::any, {}, "op"));
    r.push_back(with(make(
                         "eq15.lower", "w(B^2 + C^2)/2 <= w_e(B,C)^2", K::lower,
                         [](EvalContext& x) { return 0.5 * x.w("B2+C2", x.b() * x.b() + x.c() * x.c()); },
                         [](EvalContext& x) { return sq(weBC(x)); }, "Dragomir lower bound"),
                     T::any, {}, "op"));
    r.push_back(with(make(
                         "eq15.upper", "w_e(B,C)^2 <= ||B*B + C*C||", K::upper, [](EvalContext& x) { return sq(weBC(x)); },
                         [](EvalContext& x) { return x.op(star(x.b()) * x.b() + star(x.c()) * x.c()); },
                         "Dragomir upper bound"),
                     T::any, {}, "op"));

    // Basic properties of the pair radius.
    r.push_back(make(
        "prop.a", "w_Ne(B,C) = w_Ne(B+C, B-C)/sqrt2", K::identity, weBC,
        [](EvalContext& x) { return x.we("B+C,B-C", x.b() + x.c(), x.b() - x.c()) / kSqrt2; },
        "pair radius property (a)"));
    r.push_back(with(make(
                         "prop.b1", "w_Ne(Re B, Im B) = w_N(B)", K::identity,
                         [](EvalContext& x) { return x.we("ReB,ImB", re(x.b()), im(x.b())); }, wB,
                         "pair radius property (b), first equality"),
                     T::any, sa));
    r.push_back(with(make(
                         "prop.b2", "w_Ne(B, B*)/sqrt2 = w_N(B)", K::identity,
                         [](EvalContext& x) { return x.we("B,B*", x.b(), star(x.b())) / kSqrt2; }, wB,
                         "pair radius property (b), second equality"),
                     T::any, sa));
    r.push_back(make(
        "prop.c", "w_Ne(B,B) = sqrt2 w_N(B)", K::identity,
        [](EvalContext& x) { return x.we("B,B", x.b(), x.b()); }, [](EvalContext& x) { return kSqrt2 * wB(x); },
        "pair radius property (c)"));
    r.push_back(with(make(
                         "prop.d", "w_Ne(B*, C*) = w_Ne(B,C)", K::identity,
                         [](EvalContext& x) { return x.we("B*,C*", star(x.b()), star(x.c())); }, weBC,
                         "pair radius property (d): self-adjoint"),
                     T::any, sa));
    r.push_back(with(make(
                         "prop.e", "w_Ne(U*BU, U*CU) = w_Ne(B,C)", K::identity,
                         [](EvalContext& x) {
                             const Matrix& u = x.unitary();
                             return x.we("U*BU,U*CU", star(u) * x.b() * u, star(u) * x.c() * u);
                         },
                         weBC, "pair radius property (e): weak unitary invariance"),
                     T::any, {NormFlag::unitarily_invariant}));
    r.push_back(make(
        "prop.f", "alpha/beta form of w_Ne(B,C) = w_Ne(B,C)", K::identity,
        [](EvalContext& x) { return x.we_alpha_beta("B,C", x.b(), x.c()); }, weBC,
        "pair radius property (f)"));

    // Pair bounds for a general norm.
    r.push_back(make(
        "thm24.lower", "max{w_N(B), w_N(C)} <= w_Ne(B,C)", K::lower,
        [](EvalContext& x) { return std::max(wB(x), wC(x)); }, weBC, "pair bound: max of single radii"));
    r.push_back(make(
        "thm24.upper", "w_Ne(B,C) <= sqrt(w_N(B)^2 + w_N(C)^2)", K::upper, weBC,
        [](EvalContext& x) { return std::hypot(wB(x), wC(x)); }, "pair bound: root sum of squares"));
    r.push_back(make(
        "thm26.lower", "max{w_N(B+C), w_N(B-C)}/sqrt2 <= w_Ne(B,C)", K::lower,
        [](EvalContext& x) { return std::max(wBpC(x), wBmC(x)) / kSqrt2; }, weBC, "pair bound via B +- C"));
    r.push_back(make(
        "thm26.upper", "w_Ne(B,C) <= sqrt(w_N(B+C)^2 + w_N(B-C)^2)/sqrt2", K::upper, weBC,
        [](EvalContext& x) { return std::hypot(wBpC(x), wBmC(x)) / kSqrt2; }, "pair bound via B +- C"));
    r.push_back(with(make(
                         "cor28.lower", "max{w_N(T+T*), w_N(T-T*)}/2 <= w_N(T)", K::lower,
                         [](EvalContext& x) {
                             return 0.5 * std::max(x.w("T+T*", x.b() + star(x.b())), x.w("T-T*", x.b() - star(x.b())));
                         },
                         wB, "pair bound via B +- C at C = T*"),
                     T::single_operator));
    r.push_back(with(make(
                         "cor28.upper", "w_N(T) <= sqrt(w_N(T+T*)^2 + w_N(T-T*)^2)/2", K::upper, wB,
                         [](EvalContext& x) {
                             return 0.5 * std::hypot(x.w("T+T*", x.b() + star(x.b())), x.w("T-T*", x.b() - star(x.b())));
                         },
                         "pair bound via B +- C at C = T*"),
                     T::single_operator));
    r.push_back(make(
        "thm210", "w_N(B + e^{i theta} C)/2 + |w_N(B) - w_N(C)|/2 <= w_Ne(B,C), theta in {0, pi/4, pi/2, pi}",
        K::lower,
        [](EvalContext& x) {
            double worst = 0.0;
            for (std::size_t k = 0; k < kThetas.size(); ++k) {
                const double wk = x.w("B+e^ikC:" + std::to_string(k), x.b() + phase(kThetas[k]) * x.c());
                worst = std::max(worst, 0.5 * wk);
            }
            return worst + 0.5 * std::abs(wB(x) - wC(x));
        },
        weBC, "lower bound mixing B + e^{i theta} C"));
    r.push_back(with(make(
                         "eq214", "w_N(T + e^{i theta} T*)/(2 sqrt2) <= w_N(T), theta in {0, pi/4, pi/2, pi}",
                         K::lower,
                         [](EvalContext& x) {
                             double worst = 0.0;
                             for (std::size_t k = 0; k < kThetas.size(); ++k) {
                                 const double wk =
                                     x.w("T+e^ikT*:" + std::to_string(k), x.b() + phase(kThetas[k]) * star(x.b()));
                                 worst = std::max(worst, wk);
                             }
                             return worst / (2.0 * kSqrt2);
                         },
                         wB, "lower bound at C = T*"),
                     T::single_operator));

    // Algebra, self-adjoint norms.
    r.push_back(with(make(
                         "thm213", "N(C*C + B*B)/8 + max{w(B), w(C)} |w(B+C) - w(B-C)|/2 <= w_Ne(B,C)^2", K::lower,
                         [](EvalContext& x) { return thm213_bound(x, star(x.c()) * x.c() + star(x.b()) * x.b()); },
                         [](EvalContext& x) { return sq(weBC(x)); }, "algebra-norm lower bound, stated form"),
                     T::any, alg_sa));
    r.push_back(with(make(
                         "thm213.alt", "N(BB* + CC*)/8 + max{w(B), w(C)} |w(B+C) - w(B-C)|/2 <= w_Ne(B,C)^2",
                         K::lower,
                         [](EvalContext& x) { return thm213_bound(x, x.b() * star(x.b()) + x.c() * star(x.c())); },
                         [](EvalContext& x) { return sq(weBC(x)); }, "algebra-norm lower bound, as derived"),
                     T::any, alg_sa));
    r.push_back(with(make(
                         "cor214", "N(C^2 + B^2)/8 + max{N(B), N(C)} |N(B+C) - N(B-C)|/2 <= w_Ne(B,C)^2", K::lower,
                         [](EvalContext& x) {
                             const Matrix& b = x.b();
                             const Matrix& c = x.c();
                             return x.n(c * c + b * b) / 8.0 +
                                    0.5 * std::max(x.n(b), x.n(c)) * std::abs(x.n(b + c) - x.n(b - c));
                         },
                         [](EvalContext& x) { return sq(weBC(x)); }, "algebra-norm bound, Hermitian pair"),
                     T::hermitian_pair, alg_sa));
    r.push_back(with(make(
                         "cor215",
                         "N(T*T + TT*)/16 + max{N(Re T), N(Im T)} |N(Re T + Im T) - N(Re T - Im T)|/2 <= w_N(T)^2",
                         K::lower,
                         [](EvalContext& x) {
                             const auto [h, k] = cartesian_parts(x.b());
                             return x.n(star(x.b()) * x.b() + x.b() * star(x.b())) / 16.0 +
                                    0.5 * std::max(x.n(h), x.n(k)) * std::abs(x.n(h + k) - x.n(h - k));
                         },
                         [](EvalContext& x) { return sq(wB(x)); }, "algebra-norm bound through Re T, Im T"),
                     T::single_operator, alg_sa));
    r.push_back(with(make(
                         "cor216", "N(T*T + TT*)/16 + w_N(T) |N(Re T) - N(Im T)|/2 <= w_N(T)^2", K::lower,
                         [](EvalContext& x) {
                             const auto [h, k] = cartesian_parts(x.b());
                             return x.n(star(x.b()) * x.b() + x.b() * star(x.b())) / 16.0 +
                                    0.5 * wB(x) * std::abs(x.n(h) - x.n(k));
                         },
                         [](EvalContext& x) { return sq(wB(x)); }, "algebra-norm bound at C = T*"),
                     T::single_operator, alg_sa));
    r.push_back(with(make(
                         "cor217", "N(C*C + B*B)/8 + max{w(B+C), w(B-C)} |w(B) - w(C)|/2 <= w_Ne(B,C)^2",
                         K::lower,
                         [](EvalContext& x) {
                             return x.n(star(x.c()) * x.c() + star(x.b()) * x.b()) / 8.0 +
                                    0.5 * std::max(wBpC(x), wBmC(x)) * std::abs(wB(x) - wC(x));
                         },
                         [](EvalContext& x) { return sq(weBC(x)); }, "algebra-norm bound via B +- C"),
                     T::any, alg_sa));

    // Hilbert-Schmidt trace bounds.
    r.push_back(with(make(
                         "thm31",
                         "|tr B^2 + tr C^2 + 2 tr BC|/4 + (||B||_2^2 + ||C||_2^2 + 2 Re tr BC*)/4 <= w_2e(B,C)^2",
                         K::lower,
                         [](EvalContext& x) {
                             const Matrix& b = x.b();
                             const Matrix& c = x.c();
                             const Complex t = trace(b * b) + trace(c * c) + 2.0 * trace(b * c);
                             return 0.25 * std::abs(t) + 0.25 * (fro2(b) + fro2(c) + 2.0 * trace(b * star(c)).real());
                         },
                         [](EvalContext& x) { return sq(weBC(x)); }, "Hilbert-Schmidt trace lower bound"),
                     T::any, {}, "hs"));
    r.push_back(with(make(
                         "cor32p", "trace lower bound applied to (B+C, B-C)", K::lower,
                         [](EvalContext& x) {
                             const Matrix p = x.b() + x.c();
                             const Matrix m = x.b() - x.c();
                             const Complex t = trace(p * p) + trace(m * m) + 2.0 * trace(p * m);
                             return std::abs(t) / 8.0 + (fro2(p) + fro2(m)) / 8.0 + 0.25 * trace(p * star(m)).real();
                         },
                         [](EvalContext& x) { return sq(weBC(x)); }, "Hilbert-Schmidt trace lower bound via B +- C"),
                     T::any, {}, "hs"));
    r.push_back(with(make(
                         "thm34", "w_2e(B,C)^2 <= (max{|tr B^2|, |tr C^2|} + |tr BC| + max{||B||_2^2, ||C||_2^2} + |tr BC*|)/2",
                         K::upper, [](EvalContext& x) { return sq(weBC(x)); },
                         [](EvalContext& x) {
                             const Matrix& b = x.b();
                             const Matrix& c = x.c();
                             return 0.5 * (std::max(tr_abs(b * b), tr_abs(c * c)) + tr_abs(b * c) +
                                           std::max(fro2(b), fro2(c)) + tr_abs(b * star(c)));
                         },
                         "Hilbert-Schmidt trace upper bound"),
                     T::any, {}, "hs"));
    r.push_back(with(make(
                         "id.w2", "w_2(T)^2 = ||T||_2^2/2 + |tr T^2|/2", K::identity,
                         [](EvalContext& x) { return sq(wB(x)); },
                         [](EvalContext& x) { return 0.5 * fro2(x.b()) + 0.5 * tr_abs(x.b() * x.b()); },
                         "Hilbert-Schmidt numerical radius closed form"),
                     T::single_operator, {}, "hs"));

    // Cartesian-part remarks.
    r.push_back(with(make(
                         "remark24.lower", "max{N(Re T), N(Im T)} <= w_N(T)", K::lower,
                         [](EvalContext& x) {
                             const auto [h, k] = cartesian_parts(x.b());
                             return std::max(x.n(h), x.n(k));
                         },
                         wB, "Cartesian-part bounds"),
                     T::single_operator, sa));
    r.push_back(with(make(
                         "remark24.upper", "w_N(T) <= sqrt(N(Re T)^2 + N(Im T)^2)", K::upper, wB,
                         [](EvalContext& x) {
                             const auto [h, k] = cartesian_parts(x.b());
                             return std::hypot(x.n(h), x.n(k));
                         },
                         "Cartesian-part bounds"),
                     T::single_operator, sa));
    r.push_back(with(make(
                         "remark27.lower", "max{N(Re T + Im T), N(Re T - Im T)}/sqrt2 <= w_N(T)", K::lower,
                         [](EvalContext& x) {
                             const auto [h, k] = cartesian_parts(x.b());
                             return std::max(x.n(h + k), x.n(h - k)) / kSqrt2;
                         },
                         wB, "Cartesian-part bounds via Re T +- Im T"),
                     T::single_operator, sa));
    r.push_back(with(make(
                         "remark27.upper", "w_N(T) <= sqrt(N(Re T + Im T)^2 + N(Re T - Im T)^2)/sqrt2", K::upper, wB,
                         [](EvalContext& x) {
                             const auto [h, k] = cartesian_parts(x.b());
                             return std::hypot(x.n(h + k), x.n(h - k)) / kSqrt2;
                         },
                         "Cartesian-part bounds via Re T +- Im T"),
                     T::single_operator, sa));
    return r;
}

bool has_flag(const NormDescriptor& norm, NormFlag flag) {
    switch (flag) {
    case NormFlag::self_adjoint:
        return norm.self_adjoint();
    case NormFlag::algebra:
        return norm.algebra();
    case NormFlag::unitarily_invariant:
        return norm.unitarily_invariant();
    }
    return false;
}

std::string_view flag_name(NormFlag flag) {
    switch (flag) {
    case NormFlag::self_adjoint:
        return "self_adjoint";
    case NormFlag::algebra:
        return "algebra";
    case NormFlag::unitarily_invariant:
        return "unitarily_invariant";
    }
    return "?";
}

Verdict evaluate(const InequalityCheck& check, EvalContext& ctx) {
    Verdict v;
    v.check_id = check.id;
    v.norm = ctx.norm().id();
    try {
        v.lhs = check.lhs(ctx);
        v.rhs = check.rhs(ctx);
        v.slack = v.rhs - v.lhs;
        v.status = classify(check.kind, v.lhs, v.rhs);
    } catch (const std::exception& e) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        v.lhs = v.rhs = v.slack = nan;
        v.status = Status::error;
        v.note = e.what();
    }
    return v;
}

Verdict skipped(const InequalityCheck& check, const NormDescriptor& norm, std::string reason) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    Verdict v;
    v.check_id = check.id;
    v.norm = norm.id();
    v.lhs = v.rhs = v.slack = nan;
    v.status = Status::skipped;
    v.note = std::move(reason);
    return v;
}

// Re-runs an apparent violation on finer grids; keeps the last evaluation.
Verdict escalate(const InequalityCheck& check, Verdict v, const Matrix& b, const Matrix& c, const NormDescriptor& norm,
                 const RadiusOptions& opts, std::uint64_t seed) {
    RadiusOptions finer = opts;
    for (int round = 1; round <= opts.escalation_rounds && v.status == Status::violation; ++round) {
        finer = finer.doubled();
        EvalContext ctx(b, c, norm, finer, seed);
        v = evaluate(check, ctx);
        v.escalations_used = round;
    }
    return v;
}

void check_dimensions(const Matrix& b, const Matrix& c) {
    if (b.size() != c.size()) {
        throw DimensionError("pair operands must have equal dimensions");
    }
}

} // namespace

const std::vector<InequalityCheck>& registry() {
    static const std::vector<InequalityCheck> checks = build_registry();
    return checks;
}

const InequalityCheck* lookup(std::string_view id) {
    for (const auto& check : registry()) {
        if (check.id == id) {
            return &check;
        }
    }
    return nullptr;
}

std::string applicability(const InequalityCheck& check, const Matrix& b, const Matrix& c,
                          const NormDescriptor& norm) {
    if (!check.fixed_norm.empty() && check.fixed_norm != norm.id()) {
        return "only for norm " + check.fixed_norm;
    }
    for (NormFlag flag : check.requires_flags) {
        if (!has_flag(norm, flag)) {
            return "norm lacks " + std::string(flag_name(flag));
        }
    }
    switch (check.requires_inputs) {
    case InputTag::any:
    case InputTag::single_operator:
        break;
    case InputTag::hermitian_pair:
        if (!is_hermitian(b) || !is_hermitian(c)) {
            return "needs a Hermitian pair";
        }
        break;
    case InputTag::pair_with_adjoint: {
        const Matrix d = c - adjoint(b);
        if (frobenius_norm(d) > 1e-12 * std::max(1.0, frobenius_norm(b))) {
            return "needs C = B*";
        }
        break;
    }
    }
    return {};
}

Status classify(CheckKind kind, double lhs, double rhs) {
    const double scale = std::max(1.0, std::abs(rhs));
    const double slack = rhs - lhs;
    if (kind == CheckKind::identity) {
        return std::abs(slack) > kViolationTol * scale ? Status::violation : Status::sharp;
    }
    if (slack < -kViolationTol * scale) {
        return Status::violation;
    }
    return std::abs(slack) <= kSharpTol * scale ? Status::sharp : Status::pass;
}

Verdict run_check(const InequalityCheck& check, const Matrix& b, const Matrix& c, const NormDescriptor& norm,
                  const RadiusOptions& opts, std::uint64_t seed) {
    check_dimensions(b, c);
    opts.validate();
    if (std::string reason = applicability(check, b, c, norm); !reason.empty()) {
        return skipped(check, norm, std::move(reason));
    }
    EvalContext ctx(b, c, norm, opts, seed);
    return escalate(check, evaluate(check, ctx), b, c, norm, opts, seed);
}

std::vector<Verdict> run_suite(const Matrix& b, const Matrix& c, const std::vector<NormDescriptor>& norms,
                               const RadiusOptions& opts, std::uint64_t seed) {
    check_dimensions(b, c);
    opts.validate();
    const auto& checks = registry();
    std::vector<std::vector<Verdict>> per_norm;
    for (const auto& norm : norms) {
        EvalContext ctx(b, c, norm, opts, seed);
        std::vector<Verdict> column;
        for (const auto& check : checks) {
            if (std::string reason = applicability(check, b, c, norm); !reason.empty()) {
                column.push_back(skipped(check, norm, std::move(reason)));
            } else {
                column.push_back(escalate(check, evaluate(check, ctx), b, c, norm, opts, seed));
            }
        }
        per_norm.push_back(std::move(column));
    }
    std::vector<Verdict> out;
    out.reserve(checks.size() * norms.size());
    for (std::size_t i = 0; i < checks.size(); ++i) {
        for (auto& column : per_norm) {
            out.push_back(std::move(column[i]));
        }
    }
    return out;
}

namespace {

Matrix perturb(const Matrix& a, double sigma, bool hermitian, SplitMix64& rng) {
    const std::size_t n = a.size();
    const double step = sigma * std::max(frobenius_norm(a), 1e-3) / static_cast<double>(n);
    Matrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            g(i, j) = step * rng.complex_gaussian();
        }
    }
    if (hermitian) {
        g = Complex(0.5) * (g + adjoint(g));
    }
    return a + g;
}

} // namespace

SharpnessResult search_sharpness(std::string_view check_id, const NormDescriptor& norm, Family family, std::size_t n,
                                 int iters, std::uint64_t seed, const RadiusOptions& opts) {
    const InequalityCheck* check = lookup(check_id);
    if (check == nullptr) {
        throw InvalidInput("unknown check '" + std::string(check_id) + "'");
    }
    if (iters < 1) {
        throw InvalidInput("search_sharpness: iters must be >= 1");
    }
    opts.validate();

    // Identities are tight when |slack| is small; inequalities when slack is.
    auto measure = [&](const Verdict& v) {
        const double rel = v.slack / std::max(1.0, std::abs(v.rhs));
        return check->kind == CheckKind::identity ? std::abs(rel) : rel;
    };

    SplitMix64 rng(seed);
    std::optional<MatrixPair> best;
    Verdict best_verdict;
    double best_rel = 0.0;
    int evaluated = 0;
    double sigma = 0.25;
    for (int k = 0; k < iters; ++k) {
        const bool fresh = !best || k % 4 == 0;
        auto next_candidate = [&]() -> MatrixPair {
            if (fresh) {
                return draw_pair(family, n, rng);
            }
            if (family == Family::nilpotent_pairs) {
                Matrix t = perturb(best->b, sigma, false, rng);
                Matrix ts = adjoint(t);
                return {std::move(t), std::move(ts)};
            }
            const bool herm = family == Family::hermitian;
            Matrix b = perturb(best->b, sigma, herm, rng);
            Matrix c = perturb(best->c, sigma, herm, rng);
            return {std::move(b), std::move(c)};
        };
        MatrixPair candidate = next_candidate();

        const Verdict v = run_check(*check, candidate.b, candidate.c, norm, opts, derive_seed(seed, k));
        if (v.status == Status::skipped || v.status == Status::error) {
            continue;
        }
        ++evaluated;
        const double rel = measure(v);
        if (!best || rel < best_rel) {
            best = std::move(candidate);
            best_rel = rel;
            best_verdict = v;
            if (fresh) {
                sigma = 0.25;
            }
        } else if (!fresh) {
            sigma *= 0.5;
        }
    }
    if (!best) {
        throw InvalidInput("check '" + std::string(check_id) + "' never applied to family " +
                           std::string(family_name(family)) + " under norm " + norm.id());
    }
    return SharpnessResult{std::move(*best), best_rel, std::move(best_verdict), evaluated};
}

} // namespace opradius
