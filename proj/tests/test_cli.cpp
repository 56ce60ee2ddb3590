#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "opradius/cli.hpp"
#include "opradius/io.hpp"

using namespace opradius;
using namespace testing;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
    std::vector<nlohmann::json> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(nlohmann::json::parse(line));
    }
    return lines;
}

class TempDir {
public:
    TempDir() : path_(std::filesystem::temp_directory_path() / "opradius_cli_test") {
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

} // namespace

TEST_CASE("radius") {
    TempDir dir;
    write_matrix_file(dir.file("B.json"), jordan());
    write_matrix_file(dir.file("C.json"), adjoint(jordan()));
    write_matrix_file(dir.file("T.json"), Matrix::from_rows({{1, 0}, {0, Complex(0, 1)}}));

    const Run pair = cli({"radius", "--pair", dir.file("B.json"), dir.file("C.json"), "--norm", "hs", "--out", "json"});
    REQUIRE(pair.code == kExitOk);
    const auto lines = json_lines(pair.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[2].at("quantity") == "w_Ne(B,C)");
    CHECK(lines[2].at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(lines[2].at("argmax").contains("phi"));
    CHECK(lines[0].at("value").get<double>() == doctest::Approx(1.0 / kSqrt2).epsilon(1e-9));

    const Run single = cli({"radius", "--single", dir.file("T.json"), "--norm", "op", "--out", "json"});
    REQUIRE(single.code == kExitOk);
    CHECK(json_lines(single.out).at(0).at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    const Run text = cli({"radius", "--single", dir.file("T.json")});
    CHECK(text.code == kExitOk);
    CHECK(text.out.find("w_N(T) [op] = 1") != std::string::npos);

    const Run grids = cli({"radius", "--single", dir.file("T.json"), "--theta-grid", "16", "--refine-tol", "1e-10"});
    CHECK(grids.code == kExitOk);
}

TEST_CASE("verify") {
    TempDir dir;
    write_matrix_file(dir.file("B.json"), jordan());
    write_matrix_file(dir.file("C.json"), adjoint(jordan()));
    const Run r =
        cli({"verify", "--pair", dir.file("B.json"), dir.file("C.json"), "--norm", "op", "--norm", "hs", "--out", "json"});
    CHECK(r.code == kExitOk);
    const auto lines = json_lines(r.out);
    CHECK(lines.size() == registry().size() * 2);
    int sharp = 0;
    for (const auto& j : lines) {
        for (const char* key : {"check", "norm", "lhs", "rhs", "slack", "status"}) {
            CHECK(j.contains(key));
        }
        sharp += j.at("status") == "sharp" ? 1 : 0;
    }
    CHECK(sharp >= 2);

    const Run one = cli({"verify", "--pair", dir.file("B.json"), dir.file("C.json"), "--check", "thm24.upper"});
    CHECK(one.code == kExitOk);
    CHECK(one.out.find("thm24.upper op sharp") != std::string::npos);
}

TEST_CASE("search, oracle and gen need a seed") {
    TempDir dir;
    write_matrix_file(dir.file("B.json"), jordan());
    write_matrix_file(dir.file("C.json"), adjoint(jordan()));
    CHECK(cli({"oracle", "--pair", dir.file("B.json"), dir.file("C.json")}).code == kExitUsage);
    CHECK(cli({"search", "--check", "thm24.upper", "--family", "nilpotent-pairs:2"}).code == kExitUsage);
    CHECK(cli({"gen", "--family", "ginibre:3", "--output", dir.file("G.json")}).code == kExitUsage);
}

TEST_CASE("oracle") {
    TempDir dir;
    write_matrix_file(dir.file("B.json"), jordan());
    write_matrix_file(dir.file("C.json"), adjoint(jordan()));
    const Run r = cli({"oracle", "--pair", dir.file("B.json"), dir.file("C.json"), "--seed", "3", "--samples", "2000",
                       "--out", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = json_lines(r.out).at(0);
    CHECK(j.at("oracle").get<double>() == doctest::Approx(1.0 / kSqrt2).epsilon(1e-6));
    CHECK(j.at("w_Ne").at("value").get<double>() == doctest::Approx(1.0 / kSqrt2).epsilon(1e-9));
}

TEST_CASE("search") {
    const Run r = cli({"search", "--check", "thm24.upper", "--norm", "op", "--family", "nilpotent-pairs:2", "--seed",
                       "1", "--samples", "8", "--out", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = json_lines(r.out).at(0);
    CHECK(j.at("min_relative_slack").get<double>() <= 1e-6);
    CHECK(j.at("evaluated") == 8);
    CHECK(cli({"search", "--check", "bogus", "--family", "ginibre:2", "--seed", "1"}).code == kExitUsage);
}

TEST_CASE("gen round-trips") {
    TempDir dir;
    const Run r = cli({"gen", "--family", "ginibre:4", "--seed", "12", "--output", dir.file("G.json")});
    REQUIRE(r.code == kExitOk);
    CHECK(read_matrix_file(dir.file("G.json")) == std::get<Matrix>(sample({Family::ginibre, 4, 12})));

    const Run p =
        cli({"gen", "--family", "nilpotent-pairs:3:5", "--output", dir.file("P1.json"), dir.file("P2.json")});
    REQUIRE(p.code == kExitOk);
    const MatrixPair pair = sample_pair({Family::nilpotent_pairs, 3, 5});
    CHECK(read_matrix_file(dir.file("P1.json")) == pair.b);
    CHECK(read_matrix_file(dir.file("P2.json")) == pair.c);
    CHECK(cli({"gen", "--family", "nilpotent-pairs:3:5", "--output", dir.file("P1.json")}).code == kExitUsage);
}

TEST_CASE("usage and parse errors exit 64") {
    TempDir dir;
    {
        std::ofstream bad(dir.file("bad.json"));
        bad << R"({"n": 2, "data": [[0, 0]]})";
    }
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"radius", "--single", dir.file("missing.json")}).code == kExitUsage);
    CHECK(cli({"radius", "--single", dir.file("bad.json")}).code == kExitUsage);
    CHECK(cli({"radius", "--single", "ginibre:3:1", "--norm", "schatten:0.5"}).code == kExitUsage);
    CHECK(cli({"radius", "--single", "ginibre:3:1", "--theta-grid", "4"}).code == kExitUsage);
    CHECK(cli({"radius", "--single", "ginibre:3:1", "--out", "xml"}).code == kExitUsage);
    CHECK(cli({"radius"}).code == kExitUsage);
    CHECK(cli({"radius", "--help"}).code == kExitOk);
}

TEST_CASE("sampler specs as inputs") {
    const Run r = cli({"radius", "--single", "ginibre:3:1", "--out", "json"});
    CHECK(r.code == kExitOk);
    const Run v = cli({"verify", "--pair", "hermitian:2:1", "hermitian:2:2", "--norm", "op"});
    CHECK(v.code == kExitOk);
}
