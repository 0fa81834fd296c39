#pragma once

#include "hamgeom/expr/chart.hpp"
#include "hamgeom/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamgeom {

/// One exponent per polynomial variable.
using Exponent = std::vector<std::uint32_t>;

/// Largest exponent a single variable may carry.
inline constexpr std::uint32_t kMaxExponent = 1u << 16;

/// Total degree descending, ties broken lexicographically descending.
struct GradedLexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Canonical: no zero coefficient is ever stored, so structural equality is
/// mathematical equality. Terms iterate in graded-lex descending order.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational, GradedLexGreater>;

  explicit Polynomial(std::size_t num_variables = 0) : nvars_(num_variables) {}

  static Polynomial constant(std::size_t num_variables, const Rational& c);
  static Polynomial variable(std::size_t num_variables, std::size_t var);

  std::size_t num_variables() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the zero exponent.
  Rational constant_term() const;
  unsigned total_degree() const;
  /// Highest term in graded-lex order. Throws std::logic_error on zero.
  const TermMap::value_type& leading_term() const;

  /// Adds c·x^e in place (merging and dropping zeros).
  void add_term(const Exponent& e, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  Polynomial pow(unsigned n) const;
  Polynomial derivative(std::size_t var) const;

  /// Quotient when `divisor` divides this exactly, otherwise nullopt.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  template <class T>
  T evaluate(std::span<const T> point) const;

 private:
  void check_compatible(const Polynomial& o) const;

  std::size_t nvars_;
  TermMap terms_;
};

/// Canonical text: terms in graded-lex descending order, coefficients as
/// "num/den", monomials as "x^2*y".
std::string to_string(const Polynomial& p, const Chart& chart);

namespace detail {
template <class T>
T from_rational(const Rational& r) {
  if constexpr (std::is_same_v<T, Rational>) return r;
  else return r.template convert_to<T>();
}
template <class T>
T ipow(T base, std::uint32_t e) {
  T result(1);
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}
}  // namespace detail

template <class T>
T Polynomial::evaluate(std::span<const T> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
  T sum(0);
  for (const auto& [e, c] : terms_) {
    T term = detail::from_rational<T>(c);
    for (std::size_t v = 0; v < nvars_; ++v)
      if (e[v]) term *= detail::ipow(point[v], e[v]);
    sum += term;
  }
  return sum;
}

}  // namespace hamgeom
