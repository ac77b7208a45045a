#include "ncrat/expr.h"

#include <algorithm>
#include <cctype>

#include "ncrat/error.h"

namespace ncrat {

RationalExpr::RationalExpr() : node_(std::make_shared<const Node>()) {}

RationalExpr RationalExpr::constant(const Rational& value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kConstant;
  node->value = value;
  return RationalExpr(std::move(node));
}

RationalExpr RationalExpr::generator(int letter) {
  if (letter < 1) {
    throw Error(ErrorKind::kInvalidArgument, "generator index must be >= 1");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::kGenerator;
  node->letter = letter;
  return RationalExpr(std::move(node));
}

RationalExpr RationalExpr::make(Kind kind, std::vector<RationalExpr> children) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->children = std::move(children);
  return RationalExpr(std::move(node));
}

RationalExpr RationalExpr::inverse() const { return make(Kind::kInverse, {*this}); }

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
  return RationalExpr::make(RationalExpr::Kind::kSum, {a, b});
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) {
  return a + (-b);
}

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
  return RationalExpr::make(RationalExpr::Kind::kProduct, {a, b});
}

RationalExpr operator-(const RationalExpr& a) {
  return RationalExpr::make(RationalExpr::Kind::kNegation, {a});
}

bool RationalExpr::has_inverse() const {
  if (kind() == Kind::kInverse) return true;
  return std::any_of(children().begin(), children().end(),
                     [](const RationalExpr& c) { return c.has_inverse(); });
}

int RationalExpr::degree() const {
  switch (kind()) {
    case Kind::kConstant:
      return 0;
    case Kind::kGenerator:
      return 1;
    case Kind::kSum:
      return std::max(children()[0].degree(), children()[1].degree());
    case Kind::kProduct:
      return children()[0].degree() + children()[1].degree();
    case Kind::kNegation:
      return children()[0].degree();
    case Kind::kInverse:
      break;
  }
  throw Error(ErrorKind::kInvalidArgument, "degree of an expression with an inverse");
}

int RationalExpr::max_letter() const {
  int out = kind() == Kind::kGenerator ? letter() : 0;
  for (const auto& c : children()) out = std::max(out, c.max_letter());
  return out;
}

std::string RationalExpr::to_string() const {
  switch (kind()) {
    case Kind::kConstant:
      return format_rational(value());
    case Kind::kGenerator:
      return "s" + std::to_string(letter());
    case Kind::kSum:
      return "(" + children()[0].to_string() + " + " + children()[1].to_string() + ")";
    case Kind::kProduct:
      return "(" + children()[0].to_string() + " * " + children()[1].to_string() + ")";
    case Kind::kNegation:
      return "(-" + children()[0].to_string() + ")";
    case Kind::kInverse:
      return "(" + children()[0].to_string() + ")^-1";
  }
  return {};
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RationalExpr parse() {
    RationalExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kParse,
                what + " at offset " + std::to_string(pos_) + " in '" +
                    std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalExpr expr() {
    RationalExpr e = term();
    for (;;) {
      if (accept('+')) {
        e = e + term();
      } else if (accept('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  RationalExpr term() {
    RationalExpr e = unary();
    while (accept('*')) e = e * unary();
    return e;
  }

  RationalExpr unary() {
    if (accept('-')) return -unary();
    return postfix();
  }

  RationalExpr postfix() {
    RationalExpr e = primary();
    while (accept('^')) {
      if (!accept('-') || !accept('1')) fail("only ^-1 is supported");
      e = e.inverse();
    }
    return e;
  }

  RationalExpr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalExpr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (c == 's') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected generator index after 's'");
      }
      const int letter = text_[pos_++] - '0';
      if (letter < 1) fail("generator index must be 1..9");
      return RationalExpr::generator(letter);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      auto digits = [&] {
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
          ++pos_;
        }
      };
      digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        digits();
      }
      try {
        return RationalExpr::constant(parse_rational(text_.substr(start, pos_ - start)));
      } catch (const Error&) {
        fail("malformed number");
      }
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace ncrat
