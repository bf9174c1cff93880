#include "nilvf/parse.hpp"

#include <cctype>
#include <limits>
#include <variant>

#include "nilvf/error.hpp"

namespace nilvf {

namespace {

// Intermediate values: a scalar in K(x) or a vector field.
using Value = std::variant<RatFunc, Derivation>;

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  Value parse() {
    skip_space();
    if (at_end()) fail(pos_, "empty expression");
    Value v = expr();
    skip_space();
    if (!at_end()) fail(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& what) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column,
                     "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  Integer uint_literal() {
    skip_space();
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail(start, "expected an unsigned integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::size_t index_literal(const char* what) {
    const std::size_t start = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(start, std::string("expected an index after '") + what + "'");
    const Integer i = uint_literal();
    if (i < 1 || i > Integer(nvars_)) {
      fail(start, std::string("unknown variable ") + what + i.get_str() + " (nvars = " + std::to_string(nvars_) + ")");
    }
    return i.get_ui() - 1;
  }

  Value add(Value a, Value b, bool subtract, std::size_t at) {
    if (a.index() != b.index()) fail(at, "cannot add a scalar and a vector field");
    if (auto* s = std::get_if<RatFunc>(&a)) {
      const auto& t = std::get<RatFunc>(b);
      return subtract ? *s - t : *s + t;
    }
    auto& d = std::get<Derivation>(a);
    const auto& e = std::get<Derivation>(b);
    return subtract ? d - e : d + e;
  }

  Value multiply(Value a, Value b, bool divide, std::size_t at) {
    auto* sa = std::get_if<RatFunc>(&a);
    auto* sb = std::get_if<RatFunc>(&b);
    if (divide) {
      if (!sb) fail(at, "cannot divide by a vector field");
      if (sb->is_zero()) fail(at, "division by zero");
      if (sa) return *sa / *sb;
      return scale(RatFunc::constant(nvars_, 1) / *sb, std::get<Derivation>(a));
    }
    if (sa && sb) return *sa * *sb;
    if (sa) return scale(*sa, std::get<Derivation>(b));
    if (sb) return scale(*sb, std::get<Derivation>(a));
    fail(at, "cannot multiply two vector fields");
  }

  Value expr() {
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    Value v = term();
    if (negate) v = multiply(RatFunc::constant(nvars_, -1), std::move(v), false, pos_);
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) {
        v = add(std::move(v), term(), false, at);
      } else if (accept('-')) {
        v = add(std::move(v), term(), true, at);
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = factor();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        v = multiply(std::move(v), factor(), false, at);
      } else if (accept('/')) {
        v = multiply(std::move(v), factor(), true, at);
      } else {
        return v;
      }
    }
  }

  Value factor() {
    Value v = primary();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (!accept('^')) return v;
      const Integer e = uint_literal();
      if (e > std::numeric_limits<std::uint32_t>::max()) fail(at, "exponent too large");
      auto* s = std::get_if<RatFunc>(&v);
      if (!s) fail(at, "cannot raise a vector field to a power");
      v = s->pow(static_cast<std::uint32_t>(e.get_ui()));
    }
  }

  Value primary() {
    skip_space();
    const std::size_t at = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail(pos_, "expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RatFunc::constant(nvars_, Rational(uint_literal()));
    if (c == 'x') {
      ++pos_;
      return RatFunc::variable(nvars_, index_literal("x"));
    }
    if (c == 'd') {
      ++pos_;
      return Derivation::partial(nvars_, index_literal("d"));
    }
    if (at_end()) fail(at, "unexpected end of input");
    fail(at, std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Derivation parse_vector_field(std::string_view text, std::size_t nvars) {
  if (nvars == 0) throw Error(ErrorCode::Precondition, "nvars must be positive");
  Value v = Parser(text, nvars).parse();
  if (auto* d = std::get_if<Derivation>(&v)) return std::move(*d);
  const auto& s = std::get<RatFunc>(v);
  if (s.is_zero()) return Derivation(nvars);
  throw ParseError(1, 1, "expression is a scalar, not a vector field");
}

RatFunc parse_scalar(std::string_view text, std::size_t nvars) {
  Value v = Parser(text, nvars).parse();
  if (auto* s = std::get_if<RatFunc>(&v)) return std::move(*s);
  throw ParseError(1, 1, "expression is a vector field, not a scalar");
}

}  // namespace nilvf
