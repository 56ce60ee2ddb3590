#include "opradius/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "opradius/errors.hpp"
#include "opradius/inequalities.hpp"
#include "opradius/io.hpp"
#include "opradius/radius.hpp"
#include "opradius/sampling.hpp"

namespace opradius {

namespace {

using nlohmann::json;

struct Args {
    std::string verb;
    std::string single;
    std::vector<std::string> pair;
    std::vector<std::string> norms;
    std::optional<int> theta_grid;
    std::optional<int> t_grid;
    std::optional<int> phi_grid;
    std::optional<double> refine_tol;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::string out = "text";
    std::string family;
    std::string check;
    int polish_iters = 200;
    std::vector<std::string> outputs;
};

class Usage : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

RadiusOptions radius_options(const Args& a) {
    RadiusOptions o;
    if (a.theta_grid) {
        o.theta_grid = *a.theta_grid;
    }
    if (a.t_grid) {
        o.t_grid = *a.t_grid;
    }
    if (a.phi_grid) {
        o.phi_grid = *a.phi_grid;
    }
    if (a.refine_tol) {
        o.refine_tol = *a.refine_tol;
    }
    o.validate();
    return o;
}

std::vector<NormDescriptor> norms_of(const Args& a) {
    std::vector<NormDescriptor> norms;
    for (const auto& s : a.norms) {
        norms.push_back(parse_norm(s));
    }
    if (norms.empty()) {
        norms.push_back(NormDescriptor::op());
    }
    return norms;
}

// A matrix argument is a JSON file or, failing that, a sampler spec.
Matrix load_matrix(const std::string& arg) {
    if (std::filesystem::exists(arg)) {
        return read_matrix_file(arg);
    }
    if (std::count(arg.begin(), arg.end(), ':') == 2) {
        const Sample s = sample(parse_sampler_spec(arg));
        if (const auto* m = std::get_if<Matrix>(&s)) {
            return *m;
        }
        throw ParseError("sampler spec '" + arg + "' yields a pair; use it with --pair");
    }
    throw ParseError("no such file: " + arg);
}

MatrixPair load_pair(const Args& a) {
    if (!a.pair.empty()) {
        return {load_matrix(a.pair[0]), load_matrix(a.pair[1])};
    }
    if (!a.single.empty()) {
        Matrix t = load_matrix(a.single);
        Matrix zero(t.size());
        return {std::move(t), std::move(zero)};
    }
    throw Usage("give --single FILE or --pair FILE FILE");
}

// "<family>:<n>[:<seed>]"; a seed in the spec wins over --seed.
SamplerSpec family_spec(const Args& a) {
    if (a.family.empty()) {
        throw Usage("--family SPEC is required");
    }
    std::string text = a.family;
    if (std::count(text.begin(), text.end(), ':') == 1) {
        if (!a.seed) {
            throw Usage("--seed is required");
        }
        text += ":" + std::to_string(*a.seed);
    }
    return parse_sampler_spec(text);
}

std::uint64_t require_seed(const Args& a) {
    if (!a.seed) {
        throw Usage("--seed is required");
    }
    return *a.seed;
}

bool as_json(const Args& a) { return a.out == "json"; }

void print_radius(std::ostream& out, bool json_out, const std::string& norm, const std::string& quantity,
                  const RadiusResult& r, bool pair) {
    if (json_out) {
        json j = to_json(r);
        j["norm"] = norm;
        j["quantity"] = quantity;
        out << j.dump() << '\n';
        return;
    }
    out << quantity << " [" << norm << "] = " << format_number(r.value) << "  theta=" << format_number(r.argmax.theta);
    if (pair) {
        out << " t=" << format_number(r.argmax.t) << " phi=" << format_number(r.argmax.phi);
    }
    out << '\n';
}

int cmd_radius(const Args& a, std::ostream& out) {
    const RadiusOptions opts = radius_options(a);
    const auto norms = norms_of(a);
    if (!a.single.empty() && a.pair.empty()) {
        const Matrix t = load_matrix(a.single);
        for (const auto& n : norms) {
            print_radius(out, as_json(a), n.id(), "w_N(T)", numerical_radius(t, n, opts), false);
        }
        return kExitOk;
    }
    const MatrixPair p = load_pair(a);
    for (const auto& n : norms) {
        print_radius(out, as_json(a), n.id(), "w_N(B)", numerical_radius(p.b, n, opts), false);
        print_radius(out, as_json(a), n.id(), "w_N(C)", numerical_radius(p.c, n, opts), false);
        print_radius(out, as_json(a), n.id(), "w_Ne(B,C)", euclidean_radius(p.b, p.c, n, opts), true);
    }
    return kExitOk;
}

void print_verdict(std::ostream& out, bool json_out, const Verdict& v) {
    if (json_out) {
        out << to_json(v).dump() << '\n';
        return;
    }
    out << v.check_id << ' ' << v.norm << ' ' << to_string(v.status);
    if (v.status == Status::skipped || v.status == Status::error) {
        out << " (" << v.note << ")\n";
        return;
    }
    out << "  lhs=" << format_number(v.lhs) << " rhs=" << format_number(v.rhs) << " slack=" << format_number(v.slack);
    if (v.escalations_used > 0) {
        out << " escalations=" << v.escalations_used;
    }
    out << '\n';
}

int cmd_verify(const Args& a, std::ostream& out) {
    const RadiusOptions opts = radius_options(a);
    const MatrixPair p = load_pair(a);
    std::vector<Verdict> verdicts;
    if (!a.check.empty()) {
        const InequalityCheck* check = lookup(a.check);
        if (check == nullptr) {
            throw Usage("unknown check '" + a.check + "'");
        }
        for (const auto& n : norms_of(a)) {
            verdicts.push_back(run_check(*check, p.b, p.c, n, opts, a.seed.value_or(0)));
        }
    } else {
        verdicts = run_suite(p.b, p.c, norms_of(a), opts, a.seed.value_or(0));
    }
    bool violation = false;
    bool error = false;
    for (const auto& v : verdicts) {
        print_verdict(out, as_json(a), v);
        violation = violation || v.status == Status::violation;
        error = error || v.status == Status::error;
    }
    if (violation) {
        return kExitViolation;
    }
    return error ? kExitNumerical : kExitOk;
}

int cmd_search(const Args& a, std::ostream& out) {
    if (a.check.empty()) {
        throw Usage("--check ID is required");
    }
    const SamplerSpec spec = family_spec(a);
    const auto norms = norms_of(a);
    const int iters = static_cast<int>(a.samples.value_or(200));
    for (const auto& n : norms) {
        const SharpnessResult r = search_sharpness(a.check, n, spec.family, spec.n, iters, spec.seed, radius_options(a));
        if (as_json(a)) {
            json j{{"check", a.check},
                   {"norm", n.id()},
                   {"family", std::string(family_name(spec.family))},
                   {"n", spec.n},
                   {"seed", spec.seed},
                   {"iters", iters},
                   {"evaluated", r.evaluated},
                   {"min_relative_slack", round_significant(r.min_relative_slack)},
                   {"verdict", to_json(r.verdict)},
                   {"best", {{"B", matrix_to_json(r.best.b)}, {"C", matrix_to_json(r.best.c)}}}};
            out << j.dump() << '\n';
        } else {
            out << a.check << " [" << n.id() << "] family " << family_name(spec.family) << " n=" << spec.n
                << ": min relative slack " << format_number(r.min_relative_slack) << " over " << r.evaluated
                << " instances (best lhs=" << format_number(r.verdict.lhs) << " rhs=" << format_number(r.verdict.rhs)
                << ", " << to_string(r.verdict.status) << ")\n";
        }
    }
    return kExitOk;
}

int cmd_oracle(const Args& a, std::ostream& out) {
    const std::uint64_t seed = require_seed(a);
    const MatrixPair p = load_pair(a);
    const std::size_t samples = a.samples.value_or(20000);
    const double oracle = euclidean_radius_vector_oracle(p.b, p.c, samples, seed, a.polish_iters);
    const RadiusResult w = euclidean_radius(p.b, p.c, NormDescriptor::op(), radius_options(a));
    const double diff = w.value - oracle;
    if (as_json(a)) {
        json j{{"oracle", round_significant(oracle)},
               {"w_Ne", to_json(w)},
               {"difference", round_significant(diff)},
               {"relative_difference", round_significant(diff / std::max(1.0, w.value))},
               {"samples", samples},
               {"polish_iters", a.polish_iters},
               {"seed", seed}};
        out << j.dump() << '\n';
    } else {
        out << "vector oracle  " << format_number(oracle) << '\n'
            << "w_Ne [op]      " << format_number(w.value) << '\n'
            << "difference     " << format_number(diff) << '\n';
    }
    return kExitOk;
}

int cmd_gen(const Args& a, std::ostream& out) {
    const SamplerSpec spec = family_spec(a);
    if (a.outputs.empty() || a.outputs.size() > 2) {
        throw Usage("gen needs --output FILE or --output FILE FILE");
    }
    const bool pair = a.outputs.size() == 2;
    if (!pair && spec.family == Family::nilpotent_pairs) {
        throw Usage("nilpotent-pairs produces two matrices; give two --output files");
    }
    std::vector<Matrix> ms;
    if (pair) {
        MatrixPair p = sample_pair(spec);
        ms.push_back(std::move(p.b));
        ms.push_back(std::move(p.c));
    } else {
        ms.push_back(std::get<Matrix>(sample(spec)));
    }
    for (std::size_t k = 0; k < ms.size(); ++k) {
        write_matrix_file(a.outputs[k], ms[k]);
        if (as_json(a)) {
            out << json{{"file", a.outputs[k]}, {"spec", to_string(spec)}, {"n", spec.n}}.dump() << '\n';
        } else {
            out << "wrote " << a.outputs[k] << " (" << to_string(spec) << ")\n";
        }
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized numerical radius and Euclidean operator radius of complex matrices"};
    app.name("opradius");
    app.fallthrough();
    app.require_subcommand(1, 1);

    Args a;
    app.add_option("--single", a.single, "Matrix JSON file (or sampler spec family:n:seed)");
    app.add_option("--pair", a.pair, "Two matrix JSON files B C")->expected(2);
    app.add_option("--norm", a.norms, "op | hs | trace | schatten:<p> | wnum (repeatable)");
    app.add_option("--theta-grid", a.theta_grid, "Theta grid points");
    app.add_option("--t-grid", a.t_grid, "t grid points");
    app.add_option("--phi-grid", a.phi_grid, "phi grid points");
    app.add_option("--refine-tol", a.refine_tol, "Golden-section bracket tolerance");
    app.add_option("--samples", a.samples, "Oracle sample count / search iterations");
    app.add_option("--seed", a.seed, "Random seed");
    app.add_option("--out", a.out, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--family", a.family, "Sampler spec family:n[:seed]");
    app.add_option("--check", a.check, "Registry check id (search; restricts verify)");
    app.add_option("--polish-iters", a.polish_iters, "Oracle polishing steps")->check(CLI::NonNegativeNumber);
    app.add_option("--output", a.outputs, "Files written by gen")->expected(1, 2);

    for (const char* verb : {"radius", "verify", "search", "oracle", "gen"}) {
        app.add_subcommand(verb)->callback([&a, verb] { a.verb = verb; });
    }
    app.get_subcommand("radius")->description("Print w_N for a matrix, or w_N(B), w_N(C), w_Ne(B,C) for a pair");
    app.get_subcommand("verify")->description("Run the inequality registry; exit 2 on a violation");
    app.get_subcommand("search")->description("Search a family for inputs where a check is tight");
    app.get_subcommand("oracle")->description("Compare w_Ne(B,C) [op] with the unit-vector oracle");
    app.get_subcommand("gen")->description("Write sampled matrices to JSON files");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "opradius: " << e.what() << '\n';
        return kExitUsage;
    }
    if (!a.single.empty() && !a.pair.empty()) {
        err << "opradius: give either --single or --pair, not both\n";
        return kExitUsage;
    }

    try {
        if (a.verb == "radius") {
            return cmd_radius(a, out);
        }
        if (a.verb == "verify") {
            return cmd_verify(a, out);
        }
        if (a.verb == "search") {
            return cmd_search(a, out);
        }
        if (a.verb == "oracle") {
            return cmd_oracle(a, out);
        }
        return cmd_gen(a, out);
    } catch (const NumericalError& e) {
        err << "opradius: numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitNumerical;
    } catch (const Usage& e) {
        err << "opradius: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "opradius: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "opradius: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace opradius
