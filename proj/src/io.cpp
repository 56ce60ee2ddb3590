#include "opradius/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "opradius/errors.hpp"

namespace opradius {

using nlohmann::json;

Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("data")) {
        throw ParseError("matrix JSON must be an object with \"n\" and \"data\"");
    }
    const json& jn = j.at("n");
    if (!jn.is_number_integer()) {
        throw ParseError("\"n\" must be an integer");
    }
    const auto n = jn.get<long long>();
    if (n < 1 || n > static_cast<long long>(kMaxDimension)) {
        throw ParseError("\"n\" must lie in [1, 64], got " + std::to_string(n));
    }
    const json& data = j.at("data");
    const auto count = static_cast<std::size_t>(n * n);
    if (!data.is_array() || data.size() != count) {
        throw ParseError("\"data\" must be an array of n*n = " + std::to_string(count) + " entries");
    }
    std::vector<Complex> entries;
    entries.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const json& e = data[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw ParseError("entry " + std::to_string(k) + " must be [re, im]");
        }
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw ParseError("entry " + std::to_string(k) + " is not finite");
        }
        entries.emplace_back(re, im);
    }
    return Matrix(static_cast<std::size_t>(n), std::move(entries));
}

Matrix parse_matrix(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return matrix_from_json(j);
}

Matrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_matrix(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

json matrix_to_json(const Matrix& m) {
    json data = json::array();
    for (const Complex& z : m.data()) {
        data.push_back(json::array({z.real(), z.imag()}));
    }
    return json{{"n", m.size()}, {"data", std::move(data)}};
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path.string());
    }
    out << matrix_to_json(m).dump() << '\n';
    if (!out) {
        throw ParseError("write failed for " + path.string());
    }
}

double round_significant(double x, int digits) {
    if (!std::isfinite(x) || x == 0.0) {
        return x;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

json number(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return round_significant(x);
}

} // namespace

json to_json(const RadiusResult& r) {
    return json{{"value", number(r.value)},
                {"argmax", {{"theta", number(r.argmax.theta)}, {"t", number(r.argmax.t)}, {"phi", number(r.argmax.phi)}}},
                {"escalations_used", r.escalations_used}};
}

json to_json(const Verdict& v) {
    json j{{"check", v.check_id},         {"norm", v.norm},
           {"lhs", number(v.lhs)},        {"rhs", number(v.rhs)},
           {"slack", number(v.slack)},    {"status", std::string(to_string(v.status))},
           {"escalations_used", v.escalations_used}};
    if (!v.note.empty()) {
        j["note"] = v.note;
    }
    return j;
}

} // namespace opradius
