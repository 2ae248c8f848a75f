#include <cctype>

#include "tomlink/algebra.hpp"

namespace tomlink {

namespace {

std::string strip_underscores(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (ch != '_') out.push_back(ch);
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, RingPtr ring) : text_(text), ring_(std::move(ring)) {
    for (int i = 0; i < ring_->nvars(); ++i) stripped_.push_back(strip_underscores(ring_->name(i)));
  }

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw AlgebraError("parse error at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at(char ch) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == ch;
  }

  bool starts_factor() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    unsigned char ch = static_cast<unsigned char>(text_[pos_]);
    return std::isalnum(ch) || ch == '_' || ch == '(';
  }

  Polynomial expr() {
    Polynomial sum(ring_);
    bool first = true;
    while (true) {
      skip_space();
      int sign = 1;
      if (at('+') || at('-')) {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      if (sign < 0) t = -t;
      sum += t;
      first = false;
      if (!(at('+') || at('-'))) break;
    }
    return sum;
  }

  Polynomial term() {
    Polynomial prod = factor();
    while (true) {
      if (at('*')) {
        ++pos_;
        prod *= factor();
      } else if (starts_factor()) {
        prod *= factor();
      } else {
        break;
      }
    }
    return prod;
  }

  unsigned long read_unsigned(const char* what) {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    std::string digits = text_.substr(start, pos_ - start);
    if (digits.size() > 6) fail(std::string(what) + " too large");
    return std::stoul(digits);
  }

  unsigned exponent() {
    if (!at('^')) return 1;
    ++pos_;
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("malformed exponent");
    unsigned long e = read_unsigned("exponent");
    if (e > 60000) fail("malformed exponent");
    return static_cast<unsigned>(e);
  }

  Polynomial factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!at(')')) fail("expected ')'");
      ++pos_;
      return inner.pow(exponent());
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Integer num(text_.substr(start, pos_ - start));
      Integer den = 1;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t s2 = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (s2 == pos_) fail("malformed rational coefficient");
        den = Integer(text_.substr(s2, pos_ - s2));
        if (den == 0) fail("zero denominator");
      }
      Rational c(num, den);
      c.canonicalize();
      Polynomial p = Polynomial::constant(ring_, c);
      if (at('^')) {
        unsigned e = exponent();
        p = p.pow(e);
      }
      return p;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string run = strip_underscores(text_.substr(start, pos_ - start));
      std::vector<int> vars = split_run(run, start);
      Monomial m;
      for (int v : vars) m.e[static_cast<std::size_t>(v)]++;
      unsigned e = exponent();
      // The exponent binds to the last variable of a juxtaposed run.
      if (e != 1) m.e[static_cast<std::size_t>(vars.back())] = static_cast<std::uint16_t>(m.e[static_cast<std::size_t>(vars.back())] + e - 1);
      return Polynomial::monomial(ring_, m, 1);
    }
    fail("unexpected character '" + std::string(1, ch) + "'");
  }

  std::vector<int> split_run(const std::string& run, std::size_t column) {
    std::vector<int> vars;
    std::size_t i = 0;
    while (i < run.size()) {
      int best = -1;
      std::size_t best_len = 0;
      for (int v = 0; v < ring_->nvars(); ++v) {
        const std::string& name = stripped_[static_cast<std::size_t>(v)];
        if (name.size() > best_len && run.compare(i, name.size(), name) == 0) {
          best = v;
          best_len = name.size();
        }
      }
      if (best < 0) {
        pos_ = column;
        fail("unknown variable name in '" + run + "'");
      }
      vars.push_back(best);
      i += best_len;
    }
    return vars;
  }

  const std::string& text_;
  RingPtr ring_;
  std::vector<std::string> stripped_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const RingPtr& ring) {
  Parser parser(text, ring);
  return parser.parse();
}

}  // namespace tomlink
