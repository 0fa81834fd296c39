#pragma once

// Exact scalar types shared by every module. Both are GMP-backed and usable
// as Eigen scalars; expression templates are off so that arithmetic returns
// plain values.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace hamgeom {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ExactMatrix = Matrix<Rational>;
using ExactVector = Vector<Rational>;
using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;

/// "num/den", or "num" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.str(); }
inline std::string to_string(const Integer& z) { return z.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "3", "-3/4" or a terminating decimal such as "0.125" exactly.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Element-wise conversion of an exact matrix to doubles.
template <class Derived>
Eigen::MatrixXd to_double(const Eigen::MatrixBase<Derived>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(i, j) = m(i, j).template convert_to<double>();
  return out;
}

}  // namespace hamgeom
