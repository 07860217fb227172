#include "toric/binomial.hpp"

#include "toric/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace toric {

MonomialOrder::MonomialOrder(Index variables) : permutation_(static_cast<std::size_t>(variables)) {
  std::iota(permutation_.begin(), permutation_.end(), Index{0});
}

MonomialOrder::MonomialOrder(std::vector<Index> permutation) : permutation_(std::move(permutation)) {
  std::vector<Index> sorted = permutation_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<Index>(i))
      throw Error(ErrorCode::DimensionMismatch, "monomial order is not a permutation");
}

MonomialOrder MonomialOrder::cheapest_last(Index variables, Index variable) {
  std::vector<Index> p;
  for (Index i = 0; i < variables; ++i)
    if (i != variable) p.push_back(i);
  p.push_back(variable);
  return MonomialOrder(std::move(p));
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const Count da = a.sum(), db = b.sum();
  if (da != db) return da < db ? -1 : 1;
  for (auto it = permutation_.rbegin(); it != permutation_.rend(); ++it) {
    const Count x = a(*it), y = b(*it);
    if (x != y) return x < y ? 1 : -1;
  }
  return 0;
}

std::vector<Index> Binomial::support() const {
  std::vector<Index> s;
  for (Index i = 0; i < variables(); ++i)
    if (plus(i) != 0 || minus(i) != 0) s.push_back(i);
  return s;
}

Binomial Binomial::oriented(const MonomialOrder& order) const {
  return order.compare(plus, minus) >= 0 ? *this : negated();
}

Binomial binomial_of(const CountVector& u) {
  return {u.cwiseMax(Count{0}), (-u).cwiseMax(Count{0})};
}

Binomial binomial_of(const IntVector& u) { return binomial_of(to_count(u)); }

bool canonical_less(const Binomial& a, const Binomial& b, const MonomialOrder& order) {
  if (const int c = order.compare(a.plus, b.plus); c != 0) return c < 0;
  return order.compare(a.minus, b.minus) < 0;
}

IntVector evaluate(const Configuration& a, const Monomial& m) {
  if (m.size() != a.size())
    throw Error(ErrorCode::DimensionMismatch,
                "monomial has " + std::to_string(m.size()) + " exponents for " + std::to_string(a.size()) + " points");
  return a.matrix() * to_integer(m);
}

bool in_toric_ideal(const Configuration& a, const Binomial& f) {
  return evaluate(a, f.plus) == evaluate(a, f.minus);
}

bool is_squarefree(const Monomial& m) { return (m.array() <= 1).all(); }

bool divides(const Monomial& a, const Monomial& b) { return (a.array() <= b.array()).all(); }

std::string to_text(const Monomial& m, const Configuration& a) {
  std::string s;
  for (Index i = 0; i < m.size(); ++i) {
    if (m(i) == 0) continue;
    if (!s.empty()) s += '*';
    s += a.variable_name(i);
    if (m(i) > 1) s += '^' + std::to_string(m(i));
  }
  return s.empty() ? "1" : s;
}

std::string to_text(const Binomial& f, const Configuration& a) {
  return to_text(f.plus, a) + " - " + to_text(f.minus, a);
}

namespace {

class MonomialParser {
 public:
  MonomialParser(const std::string& text, const Configuration& a) : text_(text), a_(a) {}

  Monomial monomial() {
    Monomial m = Monomial::Zero(a_.size());
    skip();
    if (peek() == '1') {
      ++pos_;
      return m;
    }
    bool any = false;
    while (true) {
      skip();
      if (peek() != 'x') break;
      ++pos_;
      const Index var = variable();
      skip();
      Count e = 1;
      if (peek() == '^') {
        ++pos_;
        skip();
        const bool braced = peek() == '{';
        if (braced) ++pos_;
        e = number();
        if (braced) expect('}');
      }
      m(var) += e;
      any = true;
      skip();
      if (peek() == '*') ++pos_;
    }
    if (!any) fail("expected a monomial");
    return m;
  }

  // sentence punctuation after a displayed formula is tolerated
  bool done() {
    skip();
    if (peek() == '.' || peek() == ',') ++pos_;
    skip();
    return pos_ == text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Parse, what + " at offset " + std::to_string(pos_) + " in \"" + text_ + "\"");
  }

 private:
  // whitespace, TeX line breaks and math delimiters
  void skip() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '\\' || text_[pos_] == '$'))
      ++pos_;
  }

  Count number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 12) fail("number too large");
    return std::stoll(text_.substr(start, pos_ - start));
  }

  Index variable() {
    skip();
    if (peek() == '[') {
      ++pos_;
      std::vector<int> entries{static_cast<int>(number())};
      skip();
      while (peek() == ',') {
        ++pos_;
        entries.push_back(static_cast<int>(number()));
        skip();
      }
      expect(']');
      return resolve(entries, true);
    }
    if (peek() != '_') fail("expected '[' or '_' after x");
    ++pos_;
    skip();
    std::vector<int> digits;
    if (peek() == '{') {
      ++pos_;
      while (true) {
        skip();
        const char c = peek();
        if (c == '}') break;
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a digit");
        digits.push_back(c - '0');
        ++pos_;
      }
      ++pos_;
    } else {
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a digit");
      digits.push_back(peek() - '0');
      ++pos_;
    }
    if (digits.empty()) fail("empty subscript");
    if (a_.has_labels() && digits.size() == a_.labels().front().size()) return resolve(digits, false);
    int value = 0;
    for (int d : digits) value = value * 10 + d;
    return resolve({value}, true);
  }

  Index resolve(const std::vector<int>& entries, bool allow_plain) {
    if (a_.has_labels() && entries.size() == a_.labels().front().size()) {
      if (auto i = a_.find_label(entries)) return *i;
      fail("unknown label");
    }
    if (allow_plain && entries.size() == 1) {
      if (entries[0] < 1 || entries[0] > a_.size()) fail("variable index out of range");
      return entries[0] - 1;
    }
    fail("label does not match the configuration");
  }

  const std::string& text_;
  const Configuration& a_;
  std::size_t pos_ = 0;
};

}  // namespace

Monomial parse_monomial(const std::string& text, const Configuration& a) {
  MonomialParser p(text, a);
  Monomial m = p.monomial();
  if (!p.done()) p.fail("trailing input");
  return m;
}

Binomial parse_binomial(const std::string& text, const Configuration& a) {
  MonomialParser p(text, a);
  Binomial f;
  f.plus = p.monomial();
  p.expect('-');
  f.minus = p.monomial();
  if (!p.done()) p.fail("trailing input");
  return f;
}

}  // namespace toric
