#include "hamgeom/expr/rational_function.hpp"

#include <stdexcept>

namespace hamgeom {

RationalFunction::RationalFunction(std::size_t num_variables)
    : num_(num_variables), den_(Polynomial::constant(num_variables, Rational(1))) {}

RationalFunction::RationalFunction(Polynomial numerator)
    : num_(std::move(numerator)), den_(Polynomial::constant(num_.num_variables(), Rational(1))) {}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (num_.num_variables() != den_.num_variables())
    throw std::invalid_argument("numerator and denominator over different variables");
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

RationalFunction RationalFunction::constant(std::size_t num_variables, const Rational& c) {
  return RationalFunction(Polynomial::constant(num_variables, c));
}

RationalFunction RationalFunction::variable(std::size_t num_variables, std::size_t var) {
  return RationalFunction(Polynomial::variable(num_variables, var));
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.num_variables(), Rational(1));
    return;
  }
  if (den_.is_constant()) {
    const Rational c = den_.constant_term();
    if (c != 1) {
      num_ *= Rational(1) / c;
      den_ = Polynomial::constant(num_.num_variables(), Rational(1));
    }
    return;
  }
  if (auto q = num_.divide_exact(den_)) {
    num_ = std::move(*q);
    den_ = Polynomial::constant(num_.num_variables(), Rational(1));
    return;
  }
  const Rational lc = den_.leading_term().second;
  if (lc != 1) {
    const Rational inv = Rational(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

bool RationalFunction::is_constant() const { return num_.is_constant() && den_.is_constant(); }

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw std::logic_error("rational function is not constant");
  return num_.constant_term() / den_.constant_term();
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {

// Shared denominator for a ± b, exploiting equal or dividing denominators.
RationalFunction add_impl(const RationalFunction& a, const RationalFunction& b, bool subtract) {
  const auto& an = a.numerator();
  const auto& ad = a.denominator();
  const Polynomial bn = subtract ? -b.numerator() : b.numerator();
  const auto& bd = b.denominator();
  if (ad == bd) return RationalFunction(an + bn, ad);
  if (bd.is_constant() && bd.constant_term() == 1) return RationalFunction(an + bn * ad, ad);
  if (ad.is_constant() && ad.constant_term() == 1) return RationalFunction(an * bd + bn, bd);
  if (auto q = bd.divide_exact(ad)) return RationalFunction(an * *q + bn, bd);
  if (auto q = ad.divide_exact(bd)) return RationalFunction(an + bn * *q, ad);
  return RationalFunction(an * bd + bn * ad, ad * bd);
}

// Removes other_den from n when it divides exactly.
Polynomial product_cancel(const Polynomial& n, Polynomial& other_den) {
  if (!other_den.is_constant()) {
    if (auto q = n.divide_exact(other_den)) {
      other_den = Polynomial::constant(n.num_variables(), Rational(1));
      return *q;
    }
  }
  return n;
}

}  // namespace

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return add_impl(a, b, false);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return add_impl(a, b, true);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction(a.num_variables());
  Polynomial ad = a.den_, bd = b.den_;
  Polynomial an = product_cancel(a.num_, bd);
  Polynomial bn = product_cancel(b.num_, ad);
  return RationalFunction(an * bn, ad * bd);
}

RationalFunction operator*(const RationalFunction& a, const Rational& c) {
  RationalFunction r = a;
  r.num_ *= c;
  if (r.num_.is_zero()) r.normalize();
  return r;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("division by zero rational function");
  RationalFunction inv;
  inv.num_ = b.den_;
  inv.den_ = b.num_;
  inv.normalize();
  return a * inv;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  if (a.num_ == b.num_ && a.den_ == b.den_) return true;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalFunction RationalFunction::pow(unsigned n) const {
  RationalFunction r;
  r.num_ = num_.pow(n);
  r.den_ = den_.pow(n);
  return r;
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  if (den_.is_constant()) return RationalFunction(num_.derivative(var) * (Rational(1) / den_.constant_term()));
  Polynomial dn = num_.derivative(var);
  Polynomial dd = den_.derivative(var);
  if (dd.is_zero()) return RationalFunction(dn, den_);
  return RationalFunction(dn * den_ - num_ * dd, den_ * den_);
}

std::string to_string(const RationalFunction& f, const Chart& chart) {
  if (f.is_polynomial()) return to_string(f.numerator() * (Rational(1) / f.denominator().constant_term()), chart);
  return "(" + to_string(f.numerator(), chart) + ")/(" + to_string(f.denominator(), chart) + ")";
}

}  // namespace hamgeom
