#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "opradius/inequalities.hpp"
#include "opradius/matrix.hpp"
#include "opradius/radius.hpp"

namespace opradius {

/// {"n": 2, "data": [[re, im], ...]}, row-major, n*n entries, n <= 64.
/// Throws ParseError on anything else.
Matrix matrix_from_json(const nlohmann::json& j);
Matrix parse_matrix(std::string_view text);
Matrix read_matrix_file(const std::filesystem::path& path);

/// Shortest round-trip decimal form, so a written file re-reads to the
/// same bits.
nlohmann::json matrix_to_json(const Matrix& m);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

/// x rounded to `digits` significant decimal digits (reports use 12).
double round_significant(double x, int digits = 12);

/// Report forms; every float rounded to 12 significant digits, NaN as null.
nlohmann::json to_json(const RadiusResult& r);
nlohmann::json to_json(const Verdict& v);

/// "%.12g" with "nan" for NaN.
std::string format_number(double x);

} // namespace opradius
