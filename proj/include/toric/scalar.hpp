#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace toric {

// Exact scalars. Expression templates are disabled so that Eigen sees plain
// value types in its kernels.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

// Small machine-word vectors for combinatorial search (exponents, fiber
// elements, semigroup residuals). Conversions from Integer are checked.
using Count = std::int64_t;
using CountVector = Vector<Count>;

Count to_count(const Integer& x);
CountVector to_count(const IntVector& v);
IntVector to_integer(const CountVector& v);

IntVector int_vector(const std::vector<long long>& entries);
IntMatrix int_matrix(const std::vector<std::vector<long long>>& rows);

// Integer matrix whose columns are the given vectors; all must share a length.
IntMatrix columns_matrix(const std::vector<IntVector>& columns);

Rational dot(const RatVector& a, const RatVector& b);
Rational dot(const RatVector& a, const IntVector& b);

bool is_integral(const Rational& q);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);
Integer gcd(const Integer& a, const Integer& b);

// gcd of all entries, 0 for the zero vector.
Integer content(const IntVector& v);

// Reduces a rational vector to the primitive integer vector on the same ray.
IntVector primitive(const RatVector& v);

std::string to_string(const Integer& x);
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace toric
