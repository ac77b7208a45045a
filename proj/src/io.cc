#include "ncrat/io.h"

#include <fstream>

#include "ncrat/error.h"

namespace ncrat {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::kParse, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    malformed(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) malformed(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

QVector vector_from_json(const Json& j, std::size_t size, const char* what) {
  if (!j.is_array() || j.size() != size) {
    malformed(std::string(what) + " must be an array of " + std::to_string(size) + " rationals");
  }
  QVector out;
  for (const Json& x : j) out.push_back(rational_from_json(x));
  return out;
}

}  // namespace

Json rational_to_json(const Rational& q) {
  return Json{{"num", numerator_string(q)}, {"den", denominator_string(q)}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_object()) {
    const Json& num = field(j, "num");
    const Json& den = field(j, "den");
    auto text = [](const Json& x) {
      if (x.is_string()) return x.get<std::string>();
      if (x.is_number_integer()) return x.dump();
      malformed("rational parts must be strings or integers");
    };
    return make_rational(text(num), text(den));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.dump());
  malformed("expected a rational, got " + j.dump());
}

Json series_to_json(const SeriesTable& z) {
  Json terms = Json::array();
  for (const auto& [v, a] : z.terms()) {
    terms.push_back(Json{{"word", format_word(v)},
                         {"num", numerator_string(a)},
                         {"den", denominator_string(a)}});
  }
  return Json{{"d", z.d()}, {"L", z.degree_bound()}, {"terms", std::move(terms)}};
}

SeriesTable series_from_json(const Json& j) {
  SeriesTable out(int_field(j, "d"), int_field(j, "L"));
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) malformed("\"terms\" must be an array");
  for (const Json& t : terms) {
    const Json& word = field(t, "word");
    if (!word.is_string()) malformed("\"word\" must be a string");
    out.add(parse_word(word.get<std::string>()), rational_from_json(t));
  }
  return out;
}

Json matrix_to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json representation_to_json(const LinearRepresentation& r) {
  Json lambda = Json::array();
  Json gamma = Json::array();
  for (const auto& x : r.lambda) lambda.push_back(rational_to_json(x));
  for (const auto& x : r.gamma) gamma.push_back(rational_to_json(x));
  Json mu = Json::object();
  for (int a = 1; a <= r.d; ++a) mu[std::to_string(a)] = matrix_to_json(r.mu_of(a));
  return Json{{"d", r.d},
              {"m", r.dim()},
              {"lambda", std::move(lambda)},
              {"gamma", std::move(gamma)},
              {"mu", std::move(mu)}};
}

LinearRepresentation representation_from_json(const Json& j) {
  LinearRepresentation r;
  r.d = int_field(j, "d");
  const int m = int_field(j, "m");
  if (r.d < 1 || m < 0) malformed("need d >= 1 and m >= 0");
  r.lambda = vector_from_json(field(j, "lambda"), m, "lambda");
  r.gamma = vector_from_json(field(j, "gamma"), m, "gamma");
  const Json& mu = field(j, "mu");
  for (int a = 1; a <= r.d; ++a) {
    const Json& rows = field(mu, std::to_string(a).c_str());
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(m)) {
      malformed("mu[" + std::to_string(a) + "] must have " + std::to_string(m) + " rows");
    }
    QMatrix ma(m, m);
    for (int i = 0; i < m; ++i) {
      QVector row = vector_from_json(rows[i], m, "mu row");
      for (int k = 0; k < m; ++k) ma(i, k) = row[k];
    }
    r.mu.push_back(std::move(ma));
  }
  return r;
}

std::vector<Rational> coefficients_from_json(const Json& j) {
  const Json& list = j.is_object() ? field(j, "coeffs") : j;
  if (!list.is_array()) malformed("coefficients must be an array");
  std::vector<Rational> out;
  for (const Json& x : list) out.push_back(rational_from_json(x));
  return out;
}

Json certificate_to_json(const RankCertificate& cert) {
  return Json{{"mode", cert.mode == RankMode::kExact ? "exact" : "numeric"},
              {"ranks", cert.ranks},
              {"status", cert.stabilized ? "stabilized" : "growing"},
              {"rank", cert.rank},
              {"at_depth", cert.at_depth}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    malformed(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::kInvalidArgument, "cannot write " + path.string());
  }
  out << j.dump(2) << '\n';
}

}  // namespace ncrat
