#include "hamgeom/geom/objects.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hamgeom::geom {

namespace {

void require_same_chart(const Chart& a, const Chart& b) {
  if (!(a == b)) throw std::invalid_argument("objects live on different charts");
}

// Sorts indices in place; returns the permutation sign, or 0 on a repeat.
int sort_with_sign(std::vector<std::size_t>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

}  // namespace

// ---------------------------------------------------------------- VectorField

VectorField::VectorField(Chart chart, std::vector<RationalFunction> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_.dimension())
    throw std::invalid_argument("vector field needs one component per coordinate");
  for (const auto& c : components_)
    if (c.num_variables() != chart_.num_variables())
      throw std::invalid_argument("vector field component not defined on this chart");
}

VectorField VectorField::zero(const Chart& chart) {
  return VectorField(chart, std::vector<RationalFunction>(chart.dimension(),
                                                          RationalFunction(chart.num_variables())));
}

VectorField VectorField::coordinate(const Chart& chart, std::size_t i) {
  auto comps = std::vector<RationalFunction>(chart.dimension(), RationalFunction(chart.num_variables()));
  comps.at(i) = RationalFunction::constant(chart.num_variables(), Rational(1));
  return VectorField(chart, std::move(comps));
}

bool VectorField::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_zero(); });
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart_, b.chart_);
  auto c = a.components_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.components_[i];
  return VectorField(a.chart_, std::move(c));
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart_, b.chart_);
  auto c = a.components_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.components_[i];
  return VectorField(a.chart_, std::move(c));
}

VectorField operator*(const RationalFunction& f, const VectorField& x) {
  auto c = x.components_;
  for (auto& ci : c) ci = f * ci;
  return VectorField(x.chart_, std::move(c));
}

bool operator==(const VectorField& a, const VectorField& b) {
  return a.chart_ == b.chart_ && a.components_ == b.components_;
}

// ----------------------------------------------------------- DifferentialForm

DifferentialForm::DifferentialForm(Chart chart, std::size_t degree)
    : chart_(std::move(chart)), degree_(degree) {}

DifferentialForm DifferentialForm::function(const Chart& chart, const RationalFunction& f) {
  DifferentialForm a(chart, 0);
  a.add({}, f);
  return a;
}

DifferentialForm DifferentialForm::differential(const Chart& chart, std::size_t i) {
  DifferentialForm a(chart, 1);
  a.add({i}, RationalFunction::constant(chart.num_variables(), Rational(1)));
  return a;
}

RationalFunction DifferentialForm::component(std::vector<std::size_t> indices) const {
  const int sign = sort_with_sign(indices);
  auto it = sign ? coeffs_.find(indices) : coeffs_.end();
  if (it == coeffs_.end()) return RationalFunction(chart_.num_variables());
  return sign > 0 ? it->second : -it->second;
}

void DifferentialForm::add(std::vector<std::size_t> indices, const RationalFunction& f) {
  if (indices.size() != degree_) throw std::invalid_argument("basis form has wrong degree");
  if (f.num_variables() != chart_.num_variables())
    throw std::invalid_argument("form coefficient not defined on this chart");
  for (auto i : indices)
    if (i >= chart_.dimension()) throw std::out_of_range("form index outside chart");
  const int sign = sort_with_sign(indices);
  if (sign == 0 || f.is_zero()) return;
  auto it = coeffs_.find(indices);
  if (it == coeffs_.end()) {
    coeffs_.emplace(std::move(indices), sign > 0 ? f : -f);
    return;
  }
  it->second = sign > 0 ? it->second + f : it->second - f;
  if (it->second.is_zero()) coeffs_.erase(it);
}

DifferentialForm DifferentialForm::operator-() const {
  DifferentialForm r = *this;
  for (auto& [k, v] : r.coeffs_) v = -v;
  return r;
}

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
  require_same_chart(a.chart_, b.chart_);
  if (a.degree_ != b.degree_) throw std::invalid_argument("adding forms of different degree");
  DifferentialForm r = a;
  for (const auto& [k, v] : b.coeffs_) r.add(k, v);
  return r;
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) { return a + (-b); }

DifferentialForm operator*(const RationalFunction& f, const DifferentialForm& a) {
  DifferentialForm r(a.chart_, a.degree_);
  for (const auto& [k, v] : a.coeffs_) r.add(k, f * v);
  return r;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
  if (!(a.chart_ == b.chart_) || a.degree_ != b.degree_) return false;
  return (a - b).is_zero();
}

RationalFunction DifferentialForm::as_function() const {
  if (degree_ != 0) throw std::logic_error("form is not a function");
  return component({});
}

// ------------------------------------------------------------------ Tensor11

Tensor11::Tensor11(Chart chart, std::vector<RationalFunction> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  const auto n = chart_.dimension();
  if (components_.size() != n * n) throw std::invalid_argument("tensor must be dim x dim");
  for (const auto& c : components_)
    if (c.num_variables() != chart_.num_variables())
      throw std::invalid_argument("tensor component not defined on this chart");
}

Tensor11 Tensor11::zero(const Chart& chart) {
  const auto n = chart.dimension();
  return Tensor11(chart, std::vector<RationalFunction>(n * n, RationalFunction(chart.num_variables())));
}

Tensor11 Tensor11::identity(const Chart& chart) {
  const auto n = chart.dimension();
  auto comps = std::vector<RationalFunction>(n * n, RationalFunction(chart.num_variables()));
  for (std::size_t i = 0; i < n; ++i)
    comps[i * n + i] = RationalFunction::constant(chart.num_variables(), Rational(1));
  return Tensor11(chart, std::move(comps));
}

const RationalFunction& Tensor11::operator()(std::size_t out, std::size_t in) const {
  return components_.at(out * dimension() + in);
}

bool Tensor11::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_zero(); });
}

bool Tensor11::is_constant() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_constant(); });
}

VectorField Tensor11::apply(const VectorField& x) const {
  require_same_chart(chart_, x.chart());
  const auto n = dimension();
  std::vector<RationalFunction> out(n, RationalFunction(chart_.num_variables()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(*this)(i, j).is_zero() && !x[j].is_zero()) out[i] += (*this)(i, j) * x[j];
  return VectorField(chart_, std::move(out));
}

Tensor11 Tensor11::compose(const Tensor11& other) const {
  require_same_chart(chart_, other.chart_);
  const auto n = dimension();
  std::vector<RationalFunction> out(n * n, RationalFunction(chart_.num_variables()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!(*this)(i, k).is_zero() && !other(k, j).is_zero()) out[i * n + j] += (*this)(i, k) * other(k, j);
  return Tensor11(chart_, std::move(out));
}

bool operator==(const Tensor11& a, const Tensor11& b) {
  return a.chart_ == b.chart_ && a.components_ == b.components_;
}

// ---------------------------------------------------------------- text format

std::string to_string(const DifferentialForm& a) {
  std::ostringstream os;
  os << a.degree() << "-form: ";
  if (a.is_zero()) {
    os << '0';
    return os.str();
  }
  bool first = true;
  for (const auto& [idx, f] : a.coefficients()) {
    if (!first) os << " + ";
    first = false;
    os << '(' << to_string(f, a.chart()) << ')';
    for (std::size_t k = 0; k < idx.size(); ++k)
      os << (k == 0 ? " d" : "^d") << a.chart().coordinates()[idx[k]];
  }
  return os.str();
}

std::string to_string(const VectorField& x) {
  std::string s = "field: [";
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    if (i) s += ", ";
    s += to_string(x[i], x.chart());
  }
  return s + "]";
}

std::string to_string(const Tensor11& t) {
  std::string s = "tensor: [";
  for (std::size_t i = 0; i < t.dimension(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < t.dimension(); ++j) {
      if (j) s += ", ";
      s += to_string(t(i, j), t.chart());
    }
    s += "]";
  }
  return s + "]";
}

namespace syntax_detail {

using syntax::Token;
using syntax::TokenKind;

namespace {

bool is_sym(const Token& t, std::string_view s) { return t.kind == TokenKind::symbol && t.text == s; }

void expect(const std::vector<Token>& t, std::size_t& pos, std::string_view s) {
  if (!is_sym(t[pos], s)) syntax::fail(t[pos], "expected '" + std::string(s) + "'");
  ++pos;
}

void skip_prefix(const std::vector<Token>& t, std::size_t& pos, std::string_view word) {
  if (pos + 1 < t.size() && t[pos].kind == TokenKind::identifier && t[pos].text == word &&
      is_sym(t[pos + 1], ":"))
    pos += 2;
}

std::optional<std::size_t> differential_index(const Token& tok, const Chart& chart) {
  if (tok.kind != TokenKind::identifier || tok.text.size() < 2 || tok.text[0] != 'd') return std::nullopt;
  return chart.coordinate_index(std::string_view(tok.text).substr(1));
}

}  // namespace

DifferentialForm parse_form(const std::vector<Token>& t, std::size_t& pos, const Chart& chart) {
  std::optional<std::size_t> degree;
  if (pos + 3 < t.size() && t[pos].kind == TokenKind::number && is_sym(t[pos + 1], "-") &&
      t[pos + 2].kind == TokenKind::identifier && t[pos + 2].text == "form" && is_sym(t[pos + 3], ":")) {
    degree = std::stoul(t[pos].text);
    pos += 4;
    if (t[pos].kind == TokenKind::number && t[pos].text == "0") {
      ++pos;
      return DifferentialForm(chart, *degree);
    }
  }
  std::optional<DifferentialForm> result;
  bool first = true;
  while (true) {
    bool negate = false;
    if (is_sym(t[pos], "+") || is_sym(t[pos], "-")) {
      negate = t[pos].text == "-";
      ++pos;
    } else if (!first) {
      break;
    }
    const Token& start = t[pos];
    expect(t, pos, "(");
    RationalFunction coeff = syntax::parse_expression(t, pos, chart);
    expect(t, pos, ")");
    std::vector<std::size_t> idx;
    if (auto i = differential_index(t[pos], chart)) {
      idx.push_back(*i);
      ++pos;
      while (is_sym(t[pos], "^")) {
        ++pos;
        auto j = differential_index(t[pos], chart);
        if (!j) syntax::fail(t[pos], "expected a coordinate differential such as 'd" + chart.coordinates()[0] + "'");
        idx.push_back(*j);
        ++pos;
      }
    }
    if (!degree) degree = idx.size();
    if (idx.size() != *degree) syntax::fail(start, "form term has degree " + std::to_string(idx.size()) +
                                                       ", expected " + std::to_string(*degree));
    if (!result) result.emplace(chart, *degree);
    result->add(idx, negate ? -coeff : coeff);
    first = false;
  }
  return *result;
}

VectorField parse_field(const std::vector<Token>& t, std::size_t& pos, const Chart& chart) {
  skip_prefix(t, pos, "field");
  const Token& start = t[pos];
  expect(t, pos, "[");
  std::vector<RationalFunction> comps;
  comps.push_back(syntax::parse_expression(t, pos, chart));
  while (is_sym(t[pos], ",")) {
    ++pos;
    comps.push_back(syntax::parse_expression(t, pos, chart));
  }
  expect(t, pos, "]");
  if (comps.size() != chart.dimension())
    syntax::fail(start, "vector field needs " + std::to_string(chart.dimension()) + " components");
  return VectorField(chart, std::move(comps));
}

std::vector<std::vector<RationalFunction>> parse_matrix(const std::vector<Token>& t, std::size_t& pos,
                                                        const Chart& chart) {
  skip_prefix(t, pos, "tensor");
  skip_prefix(t, pos, "matrix");
  std::vector<std::vector<RationalFunction>> rows;
  const Token& start = t[pos];
  expect(t, pos, "[");
  do {
    if (!rows.empty()) ++pos;
    expect(t, pos, "[");
    std::vector<RationalFunction> row;
    row.push_back(syntax::parse_expression(t, pos, chart));
    while (is_sym(t[pos], ",")) {
      ++pos;
      row.push_back(syntax::parse_expression(t, pos, chart));
    }
    expect(t, pos, "]");
    rows.push_back(std::move(row));
  } while (is_sym(t[pos], ","));
  expect(t, pos, "]");
  for (const auto& r : rows)
    if (r.size() != rows.size()) syntax::fail(start, "matrix must be square");
  return rows;
}

}  // namespace syntax_detail

namespace {

template <class F>
auto parse_whole(std::string_view text, F&& f) {
  const auto tokens = syntax::tokenize(text);
  std::size_t pos = 0;
  auto value = f(tokens, pos);
  if (tokens[pos].kind != syntax::TokenKind::end) syntax::fail(tokens[pos], "unexpected '" + tokens[pos].text + "'");
  return value;
}

}  // namespace

DifferentialForm parse_form(std::string_view text, const Chart& chart) {
  return parse_whole(text, [&](const auto& t, std::size_t& p) { return syntax_detail::parse_form(t, p, chart); });
}

VectorField parse_field(std::string_view text, const Chart& chart) {
  return parse_whole(text, [&](const auto& t, std::size_t& p) { return syntax_detail::parse_field(t, p, chart); });
}

Tensor11 parse_tensor(std::string_view text, const Chart& chart) {
  return parse_whole(text, [&](const auto& t, std::size_t& p) {
    auto rows = syntax_detail::parse_matrix(t, p, chart);
    if (rows.size() != chart.dimension())
      syntax::fail(t[0], "tensor must be " + std::to_string(chart.dimension()) + " x " +
                             std::to_string(chart.dimension()));
    std::vector<RationalFunction> flat;
    for (auto& r : rows)
      for (auto& c : r) flat.push_back(std::move(c));
    return Tensor11(chart, std::move(flat));
  });
}

}  // namespace hamgeom::geom
