#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "opradius/errors.hpp"
#include "opradius/io.hpp"

using namespace opradius;
using namespace testing;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("opradius_io_" + name);
}

} // namespace

TEST_CASE("parse the documented format") {
    const Matrix m = parse_matrix(R"({"n": 2, "data": [[0,0],[1,0],[0,0],[0,0]]})");
    CHECK(m == jordan());
    const Matrix c = parse_matrix(R"({"n":1,"data":[[1.5,-2e-3]]})");
    CHECK(c(0, 0) == Complex(1.5, -2e-3));
}

TEST_CASE("malformed input is a parse error") {
    const char* bad[] = {
        "",
        "[1, 2]",
        R"({"n": 2})",
        R"({"data": []})",
        R"({"n": 2.5, "data": []})",
        R"({"n": 0, "data": []})",
        R"({"n": 65, "data": []})",
        R"({"n": 2, "data": [[0,0],[1,0],[0,0]]})",
        R"({"n": 1, "data": [[0]]})",
        R"({"n": 1, "data": [["a", 0]]})",
        R"({"n": 1, "data": [0, 0]})",
        R"({"n": 1, "data": [[1e400, 0]]})",
        R"({"n": 1, "data": [[NaN, 0]]})",
        R"({"n": 1, "data": [[0, 0]]} trailing)",
    };
    for (const char* text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS(parse_matrix(text), ParseError);
    }
    CHECK_THROWS_AS(read_matrix_file(temp_file("does_not_exist.json")), ParseError);
}

TEST_CASE("files round-trip bit for bit") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        SplitMix64 rng(s);
        Matrix m = draw(Family::ginibre, 1 + s % 6, rng);
        m(0, 0) *= 1e-300;
        const auto path = temp_file("rt.json");
        write_matrix_file(path, m);
        CHECK(read_matrix_file(path) == m);
        std::filesystem::remove(path);
    }
}

TEST_CASE("report numbers use 12 significant digits") {
    CHECK(round_significant(1.0 / 3.0) == 0.333333333333);
    CHECK(round_significant(0.0) == 0.0);
    CHECK(format_number(std::sqrt(2.0)) == "1.41421356237");
    CHECK(format_number(std::nan("")) == "nan");

    RadiusResult r;
    r.value = 1.0 / 3.0;
    r.argmax.theta = 0.1;
    r.escalations_used = 1;
    const auto j = to_json(r);
    CHECK(j.at("value").get<double>() == 0.333333333333);
    CHECK(j.at("argmax").at("theta").get<double>() == 0.1);
    CHECK(j.at("escalations_used") == 1);

    Verdict v;
    v.check_id = "prop.a";
    v.norm = "op";
    v.lhs = std::nan("");
    v.status = Status::skipped;
    const auto jv = to_json(v);
    CHECK(jv.at("lhs").is_null());
    CHECK(jv.at("status") == "skipped");
    CHECK(jv.at("check") == "prop.a");
}
