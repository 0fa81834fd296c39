#include "hamgeom/cli/system_file.hpp"

#include "hamgeom/errors.hpp"

#include <algorithm>
#include <set>

namespace hamgeom::cli {

using syntax::Token;
using syntax::TokenKind;

const Value* Request::find(std::string_view key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : t_(syntax::tokenize(text)) {}

  SystemFile read() {
    while (peek().kind != TokenKind::end) statement();
    if (!chart_ready_) {
      if (coords_.empty()) syntax::fail(peek(), "missing chart declaration");
      build_chart();
    }
    return std::move(out_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return t_[std::min(pos_ + ahead, t_.size() - 1)]; }
  bool is_sym(std::string_view s, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::symbol && peek(ahead).text == s;
  }
  void expect(std::string_view s) {
    if (!is_sym(s)) syntax::fail(peek(), "expected '" + std::string(s) + "'");
    ++pos_;
  }
  const Token& identifier(const std::string& what) {
    if (peek().kind != TokenKind::identifier) syntax::fail(peek(), "expected " + what);
    return t_[pos_++];
  }

  void build_chart() {
    try {
      out_.chart = Chart(coords_, constant_names_);
    } catch (const std::invalid_argument& e) {
      syntax::fail(chart_token_, e.what());
    }
    chart_ready_ = true;
  }
  const Chart& chart(const Token& at) {
    if (coords_.empty()) syntax::fail(at, "chart must be declared before use");
    if (!chart_ready_) build_chart();
    return out_.chart;
  }

  Rational constant_expression() {
    const Token& at = peek();
    static const Chart empty;
    const RationalFunction f = syntax::parse_expression(t_, pos_, empty);
    if (!f.is_constant()) syntax::fail(at, "expected a constant");
    return f.constant_value();
  }

  void declare(const Token& name) {
    if (!names_.insert(name.text).second) syntax::fail(name, "'" + name.text + "' is already defined");
  }

  void statement() {
    const Token& kw = identifier("a statement keyword");
    const std::string& k = kw.text;
    if (k == "chart") {
      if (!coords_.empty()) syntax::fail(kw, "only one chart per file");
      chart_token_ = kw;
      do {
        coords_.push_back(identifier("a coordinate name").text);
      } while (is_sym(",") && ++pos_);
      expect(";");
    } else if (k == "constants") {
      if (coords_.empty()) syntax::fail(kw, "chart must be declared before constants");
      if (chart_ready_ || !constant_names_.empty()) syntax::fail(kw, "constants must follow the chart declaration");
      do {
        constant_names_.push_back(identifier("a constant name").text);
        std::optional<Rational> value;
        if (is_sym("=")) {
          ++pos_;
          value = constant_expression();
        }
        out_.constant_values.push_back(value);
      } while (is_sym(",") && ++pos_);
      expect(";");
      build_chart();
    } else if (k == "function" || k == "hamiltonian") {
      const Chart& c = chart(kw);
      const Token& name = identifier("a name");
      declare(name);
      expect("=");
      out_.functions.emplace(name.text, syntax::parse_expression(t_, pos_, c));
      expect(";");
    } else if (k == "field") {
      const Chart& c = chart(kw);
      const Token& name = identifier("a name");
      declare(name);
      expect("=");
      out_.fields.emplace(name.text, geom::syntax_detail::parse_field(t_, pos_, c));
      expect(";");
    } else if (k == "form") {
      const Chart& c = chart(kw);
      const Token& name = identifier("a name");
      declare(name);
      expect("=");
      out_.forms.emplace(name.text, geom::syntax_detail::parse_form(t_, pos_, c));
      expect(";");
    } else if (k == "tensor") {
      const Chart& c = chart(kw);
      const Token& name = identifier("a name");
      declare(name);
      expect("=");
      const Token& at = peek();
      auto rows = geom::syntax_detail::parse_matrix(t_, pos_, c);
      if (rows.size() != c.dimension())
        syntax::fail(at, "tensor must be " + std::to_string(c.dimension()) + " x " + std::to_string(c.dimension()));
      std::vector<RationalFunction> flat;
      for (auto& r : rows)
        for (auto& e : r) flat.push_back(std::move(e));
      out_.tensors.emplace(name.text, geom::Tensor11(c, std::move(flat)));
      expect(";");
    } else if (k == "matrix") {
      chart(kw);
      const Token& name = identifier("a name");
      declare(name);
      expect("=");
      const Token& at = peek();
      ExactMatrix m = rows();
      if (m.rows() != m.cols()) syntax::fail(at, "matrix must be square");
      out_.matrices.emplace(name.text, std::move(m));
      expect(";");
    } else if (k == "frequencies") {
      chart(kw);
      const Token& name = identifier("a name");
      declare(name);
      frequencies(name);
    } else if (k == "request") {
      chart(kw);
      request(kw);
    } else {
      syntax::fail(kw, "unknown statement '" + k + "'");
    }
  }

  ExactMatrix rows() {
    expect("[");
    std::vector<std::vector<Rational>> data;
    const Token& start = peek();
    do {
      if (!data.empty()) ++pos_;
      expect("[");
      std::vector<Rational> row{constant_expression()};
      while (is_sym(",")) {
        ++pos_;
        row.push_back(constant_expression());
      }
      expect("]");
      data.push_back(std::move(row));
    } while (is_sym(","));
    expect("]");
    ExactMatrix m(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(data[0].size()));
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data[i].size() != data[0].size()) syntax::fail(start, "matrix rows differ in length");
      for (std::size_t j = 0; j < data[i].size(); ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data[i][j];
    }
    return m;
  }

  void frequencies(const Token& name) {
    expect("{");
    torus::FrequencySpec spec;
    bool have_basis = false, have_omega = false;
    while (!is_sym("}")) {
      const Token& key = identifier("'basis' or 'omega'");
      expect(":");
      if (key.text == "basis") {
        expect("[");
        do {
          if (peek().kind != TokenKind::identifier && peek().kind != TokenKind::number)
            syntax::fail(peek(), "expected a basis symbol");
          spec.basis.push_back(t_[pos_++].text);
        } while (is_sym(",") && ++pos_);
        expect("]");
        have_basis = true;
      } else if (key.text == "omega") {
        spec.coeffs = rows();
        have_omega = true;
      } else {
        syntax::fail(key, "unknown frequency key '" + key.text + "'");
      }
      expect(";");
    }
    if (!have_basis || !have_omega) syntax::fail(name, "frequencies need both 'basis' and 'omega'");
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      syntax::fail(name, e.what());
    }
    expect("}");
    out_.frequencies.emplace(name.text, std::move(spec));
  }

  Value value() {
    Value v;
    v.at = peek();
    if (is_sym("[")) {
      ++pos_;
      v.kind = Value::Kind::list;
      if (!is_sym("]")) {
        do {
          v.items.push_back(value());
        } while (is_sym(",") && ++pos_);
      }
      expect("]");
    } else if (peek().kind == TokenKind::identifier && (is_sym(";", 1) || is_sym(",", 1) || is_sym("]", 1))) {
      v.kind = Value::Kind::name;
      v.name = t_[pos_++].text;
    } else {
      v.kind = Value::Kind::number;
      v.number = constant_expression();
    }
    return v;
  }

  void request(const Token& kw) {
    Request r;
    r.at = kw;
    const Token& kind = identifier("a request kind");
    if (std::find(std::begin(kRequestKinds), std::end(kRequestKinds), kind.text) == std::end(kRequestKinds))
      syntax::fail(kind, "unknown request kind '" + kind.text + "'");
    r.kind = kind.text;
    const Token& name = identifier("a request name");
    r.name = name.text;
    for (const auto& other : out_.requests)
      if (other.name == r.name) syntax::fail(name, "request '" + r.name + "' is already defined");
    expect("{");
    while (!is_sym("}")) {
      const Token& key = identifier("a request key");
      if (r.find(key.text)) syntax::fail(key, "duplicate key '" + key.text + "'");
      expect(":");
      r.entries.emplace_back(key.text, value());
      expect(";");
    }
    expect("}");
    out_.requests.push_back(std::move(r));
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  SystemFile out_;
  std::vector<std::string> coords_, constant_names_;
  Token chart_token_{};
  bool chart_ready_ = false;
  std::set<std::string> names_;
};

}  // namespace

SystemFile parse_system(std::string_view text) { return Reader(text).read(); }

}  // namespace hamgeom::cli
