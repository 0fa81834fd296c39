#pragma once

#include "hamgeom/errors.hpp"
#include "hamgeom/expr/polynomial.hpp"

#include <span>
#include <string>

namespace hamgeom {

/// Quotient of two polynomials over the same variables.
///
/// Representations are not reduced to lowest terms; equality is decided by
/// cross-multiplication. Arithmetic cancels exact polynomial divisors when
/// it is cheap to notice them (equal or dividing denominators, constant
/// denominators), which keeps typical expressions small.
class RationalFunction {
 public:
  explicit RationalFunction(std::size_t num_variables = 0);
  RationalFunction(Polynomial numerator);
  /// Throws std::domain_error when the denominator is the zero polynomial.
  RationalFunction(Polynomial numerator, Polynomial denominator);

  static RationalFunction constant(std::size_t num_variables, const Rational& c);
  static RationalFunction variable(std::size_t num_variables, std::size_t var);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  std::size_t num_variables() const { return num_.num_variables(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const;
  /// Value of a constant function. Throws std::logic_error otherwise.
  Rational constant_value() const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  /// Throws std::domain_error when b is zero.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const Rational& c);
  friend RationalFunction operator*(const Rational& c, const RationalFunction& a) { return a * c; }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  /// Cross-multiplication equality.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  RationalFunction pow(unsigned n) const;
  /// Quotient-rule partial derivative with respect to polynomial variable `var`.
  RationalFunction derivative(std::size_t var) const;

  /// Exact value for rational points, floating value for double points.
  /// Throws PoleError when the denominator vanishes at the point.
  template <class T>
  T evaluate(std::span<const T> point) const {
    const T d = den_.evaluate(point);
    if (d == T(0)) throw PoleError("denominator vanishes at evaluation point");
    return num_.evaluate(point) / d;
  }

 private:
  void normalize();

  Polynomial num_, den_;
};

/// "num" for polynomials, "(num)/(den)" otherwise; re-parses to an equal value.
std::string to_string(const RationalFunction& f, const Chart& chart);

}  // namespace hamgeom
