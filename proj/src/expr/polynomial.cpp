#include "hamgeom/expr/polynomial.hpp"

#include <numeric>
#include <sstream>

namespace hamgeom {

namespace {

std::uint64_t degree_of(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

}  // namespace

bool GradedLexGreater::operator()(const Exponent& a, const Exponent& b) const {
  const auto da = degree_of(a), db = degree_of(b);
  if (da != db) return da > db;
  return a > b;
}

Polynomial Polynomial::constant(std::size_t num_variables, const Rational& c) {
  Polynomial p(num_variables);
  p.add_term(Exponent(num_variables, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_variables, std::size_t var) {
  if (var >= num_variables) throw std::out_of_range("polynomial variable out of range");
  Polynomial p(num_variables);
  Exponent e(num_variables, 0);
  e[var] = 1;
  p.add_term(e, Rational(1));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponent(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0u : static_cast<unsigned>(degree_of(terms_.begin()->first));
}

const Polynomial::TermMap::value_type& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return *terms_.begin();
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent has wrong number of variables");
  for (auto x : e)
    if (x > kMaxExponent) throw std::domain_error("exponent exceeds 2^16");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials over different variable sets");
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial r(a.nvars_);
  if (a.is_zero() || b.is_zero()) return r;
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < a.nvars_; ++v) e[v] = ea[v] + eb[v];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("derivative variable out of range");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    --d[var];
    r.add_term(d, c * e[var]);
  }
  return r;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  check_compatible(divisor);
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  Polynomial quotient(nvars_);
  Polynomial rem = *this;
  const auto& [le, lc] = divisor.leading_term();
  // Greedy leading-term division decides exact divisibility: if divisor | rem
  // then lt(rem) is a multiple of lt(divisor) at every step.
  while (!rem.is_zero()) {
    const auto& [re, rc] = rem.leading_term();
    Exponent q(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (re[v] < le[v]) return std::nullopt;
      q[v] = re[v] - le[v];
    }
    Polynomial step(nvars_);
    step.add_term(q, rc / lc);
    quotient += step;
    rem -= step * divisor;
  }
  return quotient;
}

std::string to_string(const Polynomial& p, const Chart& chart) {
  if (p.num_variables() != chart.num_variables())
    throw std::invalid_argument("polynomial does not live on this chart");
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (!e[v]) continue;
      if (!mono.empty()) mono += '*';
      mono += chart.variable_name(v);
      if (e[v] > 1) mono += '^' + std::to_string(e[v]);
    }
    if (mono.empty()) {
      os << to_string(mag);
    } else if (mag == 1) {
      os << mono;
    } else {
      os << to_string(mag) << '*' << mono;
    }
  }
  return os.str();
}

}  // namespace hamgeom
