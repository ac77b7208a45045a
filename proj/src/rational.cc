#include "ncrat/rational.h"

#include <cctype>
#include <cmath>
#include <utility>

#include "ncrat/error.h"

namespace ncrat {
namespace {

bool is_integer_text(std::string_view text) {
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  if (pos == text.size()) return false;
  for (; pos < text.size(); ++pos) {
    if (text[pos] < '0' || text[pos] > '9') return false;
  }
  return true;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  return text;
}

Integer parse_integer(std::string_view text) {
  text = trim(text);
  if (!is_integer_text(text)) {
    throw Error(ErrorKind::kParse, "not an integer: \"" + std::string(text) + "\"");
  }
  if (text.front() == '+') text.remove_prefix(1);
  return Integer(std::string(text), 10);
}

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// Simplest rational in [lo, hi] for 0 <= lo <= hi.
Rational simplest_nonnegative(const Rational& lo, const Rational& hi) {
  Integer fl = floor_of(lo);
  if (Rational(fl) == lo) return Rational(fl);
  if (fl + 1 <= hi) return Rational(fl + 1);
  // lo and hi share the integer part; recurse on reciprocals of the
  // fractional parts (order flips).
  Rational lo_frac = lo - fl;
  Rational hi_frac = hi - fl;
  Rational inner = simplest_nonnegative(1 / hi_frac, 1 / lo_frac);
  Rational out = fl + 1 / inner;
  out.canonicalize();
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw Error(ErrorKind::kParse, "empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return make_rational(text.substr(0, slash), text.substr(slash + 1));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string whole(text.substr(0, dot));
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += '0';
    if (frac.empty() || frac.front() == '-' || frac.front() == '+') {
      throw Error(ErrorKind::kParse, "bad decimal \"" + std::string(text) + "\"");
    }
    Integer num = parse_integer(whole + std::string(frac));
    Integer den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational out(num, den);
    out.canonicalize();
    return out;
  }
  return Rational(parse_integer(text));
}

Rational make_rational(std::string_view num, std::string_view den) {
  Integer n = parse_integer(num);
  Integer d = parse_integer(den);
  if (d == 0) throw Error(ErrorKind::kParse, "zero denominator");
  Rational out(n, d);
  out.canonicalize();
  return out;
}

std::string numerator_string(const Rational& q) {
  return q.get_num().get_str(10);
}

std::string denominator_string(const Rational& q) {
  return q.get_den().get_str(10);
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return numerator_string(q);
  return numerator_string(q) + "/" + denominator_string(q);
}

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorKind::kInvalidArgument, "non-finite double");
  }
  Rational out(x);
  out.canonicalize();
  return out;
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) return simplest_rational_between(hi, lo);
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_nonnegative(-hi, -lo);
  return simplest_nonnegative(lo, hi);
}

}  // namespace ncrat
