#include "toric/scalar.hpp"

#include "toric/error.hpp"

#include <limits>

namespace toric {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::NonterminationGuard: return "NONTERMINATION_GUARD";
    case ErrorCode::NotAConfiguration: return "NOT_A_CONFIGURATION";
    case ErrorCode::NegativeEntry: return "NEGATIVE_ENTRY";
    case ErrorCode::DuplicatePoint: return "DUPLICATE_POINT";
    case ErrorCode::InvalidShape: return "INVALID_SHAPE";
    case ErrorCode::Mismatch: return "MISMATCH";
    case ErrorCode::NotInIdeal: return "NOT_IN_IDEAL";
    case ErrorCode::NotApplicable: return "NOT_APPLICABLE";
    case ErrorCode::Parse: return "PARSE_ERROR";
  }
  return "UNKNOWN_ERROR";
}

Count to_count(const Integer& x) {
  static const Integer lo(std::numeric_limits<Count>::min());
  static const Integer hi(std::numeric_limits<Count>::max());
  if (x < lo || x > hi)
    throw Error(ErrorCode::CapExceeded, "integer " + x.str() + " exceeds 64-bit search range");
  return x.convert_to<Count>();
}

CountVector to_count(const IntVector& v) {
  CountVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = to_count(v(i));
  return out;
}

IntVector to_integer(const CountVector& v) {
  IntVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = Integer(v(i));
  return out;
}

IntVector int_vector(const std::vector<long long>& entries) {
  IntVector v(static_cast<Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Index>(i)) = Integer(entries[i]);
  return v;
}

IntMatrix int_matrix(const std::vector<std::vector<long long>>& rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.front().size());
  IntMatrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    if (static_cast<Index>(rows[i].size()) != c)
      throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (Index j = 0; j < c; ++j) m(i, j) = Integer(rows[i][j]);
  }
  return m;
}

IntMatrix columns_matrix(const std::vector<IntVector>& columns) {
  const Index c = static_cast<Index>(columns.size());
  const Index r = c == 0 ? 0 : columns.front().size();
  IntMatrix m(r, c);
  for (Index j = 0; j < c; ++j) {
    if (columns[j].size() != r)
      throw Error(ErrorCode::DimensionMismatch, "columns of different lengths");
    m.col(j) = columns[j];
  }
  return m;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot product");
  Rational s(0);
  for (Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

Rational dot(const RatVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot product");
  Rational s(0);
  for (Index i = 0; i < a.size(); ++i)
    if (b(i) != 0) s += a(i) * Rational(b(i));
  return s;
}

bool is_integral(const Rational& q) { return denominator(q) == 1; }

Integer floor(const Rational& q) {
  Integer n = numerator(q);
  Integer d = denominator(q);
  Integer f = n / d;
  if (n % d != 0 && n < 0) f -= 1;
  return f;
}

Integer ceil(const Rational& q) {
  Integer f = floor(q);
  return Rational(f) == q ? f : f + 1;
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer content(const IntVector& v) {
  Integer g(0);
  for (Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return g;
}

IntVector primitive(const RatVector& v) {
  Integer l(1);
  for (Index i = 0; i < v.size(); ++i) {
    const Integer d = denominator(v(i));
    l = l / gcd(l, d) * d;
  }
  IntVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = numerator(v(i) * Rational(l));
  const Integer g = content(out);
  if (g > 1)
    for (Index i = 0; i < out.size(); ++i) out(i) /= g;
  return out;
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    const Integer d(text.substr(slash + 1));
    if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + text + "'");
    return Rational(Integer(text.substr(0, slash)), d);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorCode::Parse, "bad rational '" + text + "'");
  }
}

}  // namespace toric
