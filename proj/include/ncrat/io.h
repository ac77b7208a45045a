#pragma once

#include <filesystem>
#include <vector>

#include "json.hpp"
#include "ncrat/hankel.h"
#include "ncrat/linalg.h"
#include "ncrat/rational.h"
#include "ncrat/series.h"
#include "ncrat/wfa.h"

namespace ncrat {

using Json = nlohmann::ordered_json;

/// {"num": "3", "den": "8"}
Json rational_to_json(const Rational& q);
/// Accepts {"num", "den"} objects, "a/b" strings and JSON integers.
Rational rational_from_json(const Json& j);

/// {"d": 2, "L": 4, "terms": [{"word": "1 2", "num": "1", "den": "8"}, ...]}
/// Terms are listed in length-lex order.
Json series_to_json(const SeriesTable& z);
SeriesTable series_from_json(const Json& j);

/// {"d", "m", "lambda": [rat], "gamma": [rat], "mu": {"1": [[rat]]}}
Json representation_to_json(const LinearRepresentation& r);
LinearRepresentation representation_from_json(const Json& j);

/// A bare array of rationals, or {"coeffs": [...]}.
std::vector<Rational> coefficients_from_json(const Json& j);

/// {"mode", "ranks", "status", "rank", "at_depth"}
Json certificate_to_json(const RankCertificate& cert);

Json matrix_to_json(const QMatrix& m);

/// Throws Error(kParse) on unreadable or malformed files.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace ncrat
