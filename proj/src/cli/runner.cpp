#include "hamgeom/cli/runner.hpp"

#include "hamgeom/cli/system_file.hpp"
#include "hamgeom/errors.hpp"
#include "hamgeom/geom/checks.hpp"
#include "hamgeom/linfact/factorization.hpp"
#include "hamgeom/period/period.hpp"
#include "hamgeom/torus/lattice.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hamgeom::cli {

using json = nlohmann::ordered_json;

namespace {

class AnalysisFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input error already prefixed with its file name.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string hex_digest(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

json exact_rows(const ExactMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json float_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json int_rows(const IntMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).convert_to<long long>());
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json points_json(const std::vector<geom::Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) {
    json row = json::array();
    for (const auto& x : p) row.push_back(to_string(x));
    a.push_back(std::move(row));
  }
  return a;
}

// Resolution of request entries against the objects of one system file.
class Context {
 public:
  Context(const SystemFile& sys, const Request& req) : sys_(sys), req_(req) {}

  const Value& require(std::string_view key) const {
    if (const Value* v = req_.find(key)) return *v;
    syntax::fail(req_.at, "request '" + req_.name + "' needs key '" + std::string(key) + "'");
  }
  bool has(std::string_view key) const { return req_.find(key) != nullptr; }

  template <class T>
  const T& lookup(const std::map<std::string, T>& objects, const Value& v, const std::string& what) const {
    if (v.kind != Value::Kind::name) syntax::fail(v.at, "expected the name of a " + what);
    auto it = objects.find(v.name);
    if (it == objects.end()) syntax::fail(v.at, "unknown " + what + " '" + v.name + "'");
    return it->second;
  }
  template <class T>
  const T& get(const std::map<std::string, T>& objects, std::string_view key, const std::string& what) const {
    return lookup(objects, require(key), what);
  }
  template <class T>
  std::vector<T> get_list(const std::map<std::string, T>& objects, std::string_view key, const std::string& what) const {
    const Value& v = require(key);
    if (v.kind != Value::Kind::list) syntax::fail(v.at, "expected a list of " + what + " names");
    std::vector<T> out;
    for (const auto& item : v.items) out.push_back(lookup(objects, item, what));
    return out;
  }
  const std::string& name_of(std::string_view key) const {
    const Value& v = require(key);
    if (v.kind != Value::Kind::name) syntax::fail(v.at, "expected a name");
    return v.name;
  }
  Rational number(std::string_view key) const {
    const Value& v = require(key);
    if (v.kind != Value::Kind::number) syntax::fail(v.at, "expected a number");
    return v.number;
  }
  double real(std::string_view key, double fallback) const { return has(key) ? to_double(number(key)) : fallback; }
  long long integer(std::string_view key, long long fallback) const {
    if (!has(key)) return fallback;
    const Rational r = number(key);
    if (boost::multiprecision::denominator(r) != 1) syntax::fail(require(key).at, "expected an integer");
    return boost::multiprecision::numerator(r).convert_to<long long>();
  }
  std::vector<double> reals(std::string_view key) const {
    const Value& v = require(key);
    if (v.kind != Value::Kind::list) syntax::fail(v.at, "expected a list of numbers");
    std::vector<double> out;
    for (const auto& item : v.items) {
      if (item.kind != Value::Kind::number) syntax::fail(item.at, "expected a number");
      out.push_back(to_double(item.number));
    }
    return out;
  }
  std::vector<Eigen::VectorXd> vectors(std::string_view key) const {
    const Value& v = require(key);
    if (v.kind != Value::Kind::list) syntax::fail(v.at, "expected a list of vectors");
    std::vector<Eigen::VectorXd> out;
    for (const auto& row : v.items) {
      if (row.kind != Value::Kind::list) syntax::fail(row.at, "expected a vector");
      Eigen::VectorXd x(static_cast<Eigen::Index>(row.items.size()));
      for (std::size_t i = 0; i < row.items.size(); ++i) {
        if (row.items[i].kind != Value::Kind::number) syntax::fail(row.items[i].at, "expected a number");
        x(static_cast<Eigen::Index>(i)) = to_double(row.items[i].number);
      }
      if (static_cast<std::size_t>(x.size()) != sys_.chart.dimension())
        syntax::fail(row.at, "vector needs " + std::to_string(sys_.chart.dimension()) + " entries");
      out.push_back(std::move(x));
    }
    return out;
  }
  std::vector<double> constant_values() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < sys_.constant_values.size(); ++i) {
      if (!sys_.constant_values[i])
        syntax::fail(req_.at, "constant '" + sys_.chart.constants()[i] + "' needs a value for numeric work");
      out.push_back(to_double(*sys_.constant_values[i]));
    }
    return out;
  }

  const SystemFile& system() const { return sys_; }
  const Request& request() const { return req_; }

 private:
  const SystemFile& sys_;
  const Request& req_;
};

class Runner {
 public:
  explicit Runner(const RunOptions& opt) : opt_(opt), rng_(opt.seed) {}

  void run_request(const SystemFile& sys, const Request& req, const SystemFile* other, const Request* other_req,
                   json& r) {
    Context ctx(sys, req);
    const std::string& cmd = opt_.command;
    if (cmd == "verify") verify(ctx, r);
    else if (cmd == "factorize") factorize(ctx, r);
    else if (cmd == "altgen") altgen(ctx, r);
    else if (cmd == "resonance") resonance(ctx, r);
    else if (cmd == "period") period(ctx, r, other, other_req);
    else if (cmd == "normalform") normalform(ctx, r);
    else if (cmd == "validate") validate(ctx, r);
  }

  void assume(const std::string& note) {
    if (std::find(assumptions_.begin(), assumptions_.end(), note) == assumptions_.end()) assumptions_.push_back(note);
  }
  const std::vector<std::string>& assumptions() const { return assumptions_; }

 private:
  geom::SampleOptions samples() const { return {8, opt_.seed}; }

  static json hamiltonian_json(const geom::HamiltonianReport& h) {
    json r;
    r["holds"] = h.holds;
    r["closed"] = h.closed;
    r["nondegenerate"] = geom::to_string(h.nondegenerate);
    r["residual"] = geom::to_string(h.residual);
    r["determinant"] = to_string(h.determinant, h.residual.chart());
    r["degenerate_samples"] = points_json(h.degenerate_samples);
    return r;
  }

  void verify(const Context& ctx, json& r) {
    const auto& sys = ctx.system();
    const auto& gamma = ctx.get(sys.fields, "field", "field");
    const auto& w = ctx.get(sys.forms, "form", "form");
    const auto& h = ctx.get(sys.functions, "hamiltonian", "function");
    if (w.degree() != 2) syntax::fail(ctx.require("form").at, "expected a 2-form");
    r["field"] = geom::to_string(gamma);
    r["form"] = geom::to_string(w);
    r["hamiltonian"] = to_string(h, sys.chart);
    r.update(hamiltonian_json(geom::is_hamiltonian_description(gamma, w, h, samples())));
  }

  static json odd_trace_json(const linfact::OddTraceResult& t) {
    json r;
    r["pass"] = t.pass;
    if (!t.pass) {
      r["k"] = t.k;
      r["value"] = to_string(t.value);
    }
    r["note"] = linfact::OddTraceResult::note;
    return r;
  }

  // Returns the factorization or records the failure in r and throws.
  linfact::Factorization factor(const ExactMatrix& a, json& r) {
    r["odd_trace"] = odd_trace_json(linfact::odd_trace_test(a));
    auto result = linfact::hamiltonian_factorize(a, rng_);
    if (auto* nd = std::get_if<linfact::NotDecomposable>(&result)) {
      r["status"] = "not_decomposable";
      r["reason"] = nd->reason;
      if (nd->trace_witness) r["trace_witness"] = odd_trace_json(*nd->trace_witness);
      throw AnalysisFailure("matrix is not decomposable: " + nd->reason);
    }
    auto f = std::get<linfact::Factorization>(std::move(result));
    r["status"] = "decomposed";
    r["lambda"] = exact_rows(f.lambda);
    r["ham"] = exact_rows(f.ham);
    return f;
  }

  void factorize(const Context& ctx, json& r) {
    const auto& a = ctx.get(ctx.system().matrices, "matrix", "matrix");
    r["matrix"] = exact_rows(a);
    factor(a, r);
  }

  void altgen(const Context& ctx, json& r) {
    const auto& sys = ctx.system();
    bool any = false;
    if (ctx.has("matrix")) {
      any = true;
      const auto& a = ctx.get(sys.matrices, "matrix", "matrix");
      const long long k = ctx.integer("k", 1);
      const Rational lam = ctx.has("lambda") ? ctx.number("lambda") : Rational(1);
      json lin;
      lin["matrix"] = exact_rows(a);
      lin["k"] = k;
      lin["lambda"] = to_string(lam);
      r["linear"] = lin;
      const auto f = factor(a, r["linear"]);
      const auto t = linfact::noncanonical_symmetry(a, static_cast<int>(k), lam);
      json sym;
      if (const auto* m = t.exact()) {
        sym["kind"] = "exact";
        sym["matrix"] = exact_rows(*m);
      } else if (const auto* s = t.scaled_identity()) {
        sym["kind"] = "scaled_identity";
        sym["log_scale"] = to_string(s->log_scale);
      } else {
        sym["kind"] = "float";
        sym["matrix"] = float_rows(t.to_double());
        assume("floating-point symmetry checked to tolerance");
      }
      sym["canonical"] = linfact::is_canonical(t, f.lambda);
      r["linear"]["symmetry"] = sym;
      const auto d = linfact::transform_description(f, t);
      json desc;
      if (const auto* g = std::get_if<linfact::Factorization>(&d.value)) {
        desc["kind"] = "exact";
        desc["lambda"] = exact_rows(g->lambda);
        desc["ham"] = exact_rows(g->ham);
      } else if (const auto* s = std::get_if<linfact::TransformedDescription::Scaled>(&d.value)) {
        desc["kind"] = "scaled";
        desc["lambda"] = exact_rows(s->base.lambda);
        desc["lambda_log_scale"] = to_string(s->lambda_log_scale);
        desc["ham"] = exact_rows(s->base.ham);
        desc["ham_log_scale"] = to_string(s->ham_log_scale);
      } else {
        const auto& fl = std::get<linfact::TransformedDescription::Float>(d.value);
        desc["kind"] = "float";
        desc["lambda"] = float_rows(fl.lambda);
        desc["ham"] = float_rows(fl.ham);
      }
      desc["differs"] = d.differs;
      r["linear"]["description"] = desc;
    }
    if (ctx.has("tensor") || ctx.has("function")) {
      any = true;
      const auto& gamma = ctx.get(sys.fields, "field", "field");
      const auto& t = ctx.get(sys.tensors, "tensor", "tensor");
      const auto& f = ctx.get(sys.functions, "function", "function");
      const auto rep = geom::twisted_description(gamma, t, f, samples());
      json tw;
      tw["tensor_invariant"] = rep.tensor_invariant;
      tw["conserved"] = rep.conserved;
      tw["omega"] = geom::to_string(rep.omega);
      tw["hamiltonian"] = to_string(rep.hamiltonian, sys.chart);
      tw["description"] = hamiltonian_json(rep.description);
      if (ctx.has("display")) {
        const auto& shown = ctx.get(sys.forms, "display", "form");
        tw["matches_display"] = rep.omega == shown;
        tw["display_closed"] = geom::exterior_derivative(shown).is_zero();
      }
      r["twisted"] = tw;
    }
    if (!any) syntax::fail(ctx.request().at, "altgen needs 'matrix' or 'field', 'tensor' and 'function'");
  }

  void resonance(const Context& ctx, json& r) {
    const auto& spec = ctx.get(ctx.system().frequencies, "frequencies", "frequency spec");
    const auto lattice = torus::resonance_lattice(spec);
    const auto c = torus::classify(spec);
    r["basis"] = spec.basis;
    r["omega"] = exact_rows(spec.coeffs);
    r["lattice"] = int_rows(lattice.basis);
    r["rank"] = lattice.rank();
    r["closure_dimension"] = c.closure_dimension;
    r["classification"] = torus::to_string(c);
    r["extra_integrals"] = c.extra;
    assume(torus::kIndependenceAssumption);
  }

  period::PeriodOptions period_options() const {
    period::PeriodOptions p;
    p.integrator.rtol = opt_.rtol;
    p.integrator.atol = opt_.atol;
    p.eps = opt_.eps;
    p.t_max = opt_.tmax;
    return p;
  }

  struct Scan {
    std::optional<period::FlowSystem> sys;
    period::PeriodTable table;
    double rel_tol = 1e-6;
  };

  Scan scan(const Context& ctx) {
    const auto& file = ctx.system();
    const auto& h = ctx.get(file.functions, "hamiltonian", "function");
    Scan s;
    s.rel_tol = ctx.real("rel_tol", 1e-6);
    try {
      s.sys = ctx.has("field") ? period::FlowSystem::with_field(ctx.get(file.fields, "field", "field"), h,
                                                                ctx.constant_values())
                               : period::FlowSystem::hamiltonian(file.chart, h, ctx.constant_values());
    } catch (const std::invalid_argument& e) {
      throw AnalysisFailure(e.what());
    } catch (const std::logic_error& e) {
      throw AnalysisFailure(e.what());
    }
    const auto energies = ctx.reals("energies");
    if (ctx.has("directions"))
      s.table = period::period_direction_scan(*s.sys, energies, ctx.vectors("directions"), period_options());
    else
      s.table = period::period_energy_scan(*s.sys, energies, static_cast<std::size_t>(ctx.integer("seeds", 3)),
                                           opt_.seed, period_options());
    return s;
  }

  json table_json(const period::PeriodTable& t) const {
    json records = json::array();
    for (const auto& rec : t.records) {
      json j;
      j["level"] = rec.level;
      j["seed_index"] = rec.seed_index;
      j["target_energy"] = rec.target_energy;
      j["seed"] = vector_json(rec.seed);
      j["energy"] = rec.energy;
      j["period"] = rec.period ? json(*rec.period) : json(nullptr);
      j["converged"] = rec.converged;
      j["ambiguous"] = rec.ambiguous;
      j["drift"] = rec.energy_drift;
      if (!rec.note.empty()) j["note"] = rec.note;
      records.push_back(std::move(j));
    }
    return records;
  }

  json dependence_json(const period::PeriodTable& t, double rel_tol, bool& ok) const {
    json d;
    try {
      const auto dep = period::dependence_test(t, rel_tol);
      ok = dep.dependent;
      d["dependent"] = dep.dependent;
      d["insufficient_sampling"] = dep.insufficient_sampling;
      json v = json::array();
      for (const auto& ls : dep.violations) v.push_back({{"level", ls.level}, {"target_energy", ls.target_energy},
                                                        {"spread", ls.spread}, {"records", ls.records}});
      d["violations"] = v;
    } catch (const period::InsufficientData& e) {
      ok = false;
      d["error"] = e.what();
    }
    return d;
  }

  void write_table_csv(const period::PeriodTable& t, const Chart& chart, const std::string& stem) const {
    if (!opt_.csv_dir) return;
    std::filesystem::create_directories(*opt_.csv_dir);
    std::ofstream out(std::filesystem::path(*opt_.csv_dir) / (stem + ".csv"));
    for (const auto& c : chart.coordinates()) out << "seed_" << c << ',';
    out << "energy,period,converged,drift\n";
    out.precision(17);
    for (const auto& rec : t.records) {
      for (Eigen::Index i = 0; i < rec.seed.size(); ++i) out << rec.seed(i) << ',';
      out << rec.energy << ',';
      if (rec.period) out << *rec.period;
      out << ',' << (rec.converged ? "true" : "false") << ',' << rec.energy_drift << '\n';
    }
  }

  void write_trajectories(const period::FlowSystem& sys, const period::PeriodTable& t, const std::string& stem) const {
    if (!opt_.csv_dir || !opt_.dump_trajectories) return;
    period::IntegratorOptions io{opt_.rtol, opt_.atol};
    for (const auto& rec : t.records) {
      const double t_end = rec.period ? *rec.period : std::min(opt_.tmax, 10.0);
      period::Trajectory tr;
      try {
        tr = period::integrate(sys, rec.seed, t_end, io);
      } catch (const std::exception&) {
        continue;
      }
      std::ofstream out(std::filesystem::path(*opt_.csv_dir) /
                        (stem + ".traj." + std::to_string(rec.level) + "." + std::to_string(rec.seed_index) + ".csv"));
      out << 't';
      for (const auto& c : sys.chart().coordinates()) out << ',' << c;
      out << '\n';
      out.precision(17);
      for (std::size_t i = 0; i < tr.times.size(); ++i) {
        out << tr.times[i];
        for (Eigen::Index k = 0; k < tr.states[i].size(); ++k) out << ',' << tr.states[i](k);
        out << '\n';
      }
    }
  }

  void period(const Context& ctx, json& r, const SystemFile* other, const Request* other_req) {
    Scan a = scan(ctx);
    r["hamiltonian"] = to_string(a.sys->hamiltonian(), ctx.system().chart);
    r["rel_tol"] = a.rel_tol;
    r["records"] = table_json(a.table);
    r["empty_energies"] = a.table.empty_energies;
    bool a_ok = false;
    r["dependence"] = dependence_json(a.table, a.rel_tol, a_ok);
    write_table_csv(a.table, ctx.system().chart, ctx.request().name);
    write_trajectories(*a.sys, a.table, ctx.request().name);
    if (!other) return;
    Context octx(*other, *other_req);
    Scan b;
    try {
      b = scan(octx);
    } catch (const ParseError& e) {
      throw InputError(*opt_.compare + ": " + e.what());
    }
    json c;
    c["request"] = other_req->name;
    c["hamiltonian"] = to_string(b.sys->hamiltonian(), other->chart);
    c["records"] = table_json(b.table);
    c["empty_energies"] = b.table.empty_energies;
    bool b_ok = false;
    c["dependence"] = dependence_json(b.table, b.rel_tol, b_ok);
    write_table_csv(b.table, other->chart, ctx.request().name + ".compare");
    if (!a_ok || !b_ok) {
      c["verdict"] = "not_applicable";
      c["reason"] = "a table fails the dependence test";
      r["comparison"] = c;
      throw AnalysisFailure("obstruction test needs two tables passing the dependence test");
    }
    const auto o = period::equivalence_obstruction(a.table, b.table, a.rel_tol);
    c["verdict"] = o.obstructed ? "obstructed" : "inconclusive";
    if (o.obstructed) c["reason"] = o.reason;
    r["comparison"] = c;
    assume("the obstruction is one-sided: inconclusive never certifies equivalence");
  }

  void normalform(const Context& ctx, json& r) {
    const auto& sys = ctx.system();
    const auto& gamma = ctx.get(sys.fields, "field", "field");
    const auto integrals = ctx.get_list(sys.functions, "integrals", "function");
    const auto fields = ctx.get_list(sys.fields, "fields", "field");
    std::optional<std::vector<RationalFunction>> nu;
    if (ctx.has("nu")) nu = ctx.get_list(sys.functions, "nu", "function");
    geom::NormalFormReport rep;
    try {
      rep = geom::check_normal_form(gamma, integrals, fields, nu, samples());
    } catch (const std::invalid_argument& e) {
      throw AnalysisFailure(e.what());
    }
    r["condition_i"] = {{"holds", rep.condition_i},
                        {"independent", rep.integrals_independent},
                        {"conserved", rep.integrals_conserved},
                        {"rank_deficient_samples", rep.integral_rank_deficient_samples}};
    json nc = json::array();
    for (auto [a, b] : rep.noncommuting) nc.push_back({a, b});
    r["condition_ii"] = {{"holds", rep.condition_ii},
                         {"noncommuting", nc},
                         {"dependent_samples", rep.field_dependent_samples},
                         {"completeness_assumed", rep.completeness_assumed}};
    json iv = json::array();
    for (auto [a, b] : rep.invariance_violations) iv.push_back({a, b});
    r["condition_iii"] = {{"holds", rep.condition_iii}, {"violations", iv}};
    if (rep.decomposition_exact) r["decomposition_exact"] = *rep.decomposition_exact;
    if (rep.decomposition_residual) r["decomposition_residual"] = *rep.decomposition_residual;
    r["samples"] = rep.samples;
    r["passes"] = rep.passes();
    if (rep.completeness_assumed) assume("completeness of the commuting fields assumed");
  }

  void validate(const Context& ctx, json& r) {
    const auto& sys = ctx.system();
    const std::string& kind = ctx.name_of("kind");
    r["kind"] = kind;
    if (kind == "tangent") {
      const auto rep = geom::validate_tangent(ctx.get(sys.tensors, "tensor", "tensor"),
                                              ctx.get(sys.fields, "field", "field"));
      r["square_zero"] = rep.square_zero;
      r["annihilates_delta"] = rep.annihilates_delta;
      r["kernel_equals_image"] = geom::to_string(rep.kernel_equals_image);
      r["twisted_square_zero"] = rep.twisted_square_zero;
      r["valid"] = geom::to_string(rep.valid());
    } else if (kind == "cotangent") {
      const auto rep = geom::validate_cotangent(ctx.get(sys.forms, "form", "form"),
                                                ctx.get(sys.fields, "field", "field"));
      r["liouville"] = rep.liouville;
      r["nondegenerate"] = geom::to_string(rep.nondegenerate);
      r["valid"] = geom::to_string(rep.valid());
    } else if (kind == "linear") {
      const auto rep = geom::validate_linear(ctx.get(sys.fields, "field", "field"), samples());
      r["euler_coordinates"] = rep.euler_coordinates;
      r["vanishes_at_origin"] = rep.vanishes_at_origin;
      r["zero_samples"] = rep.zero_samples;
      r["unique_zero"] = geom::to_string(rep.unique_zero);
      r["valid"] = geom::to_string(rep.valid());
    } else {
      syntax::fail(ctx.require("kind").at, "kind must be tangent, cotangent or linear");
    }
  }

  const RunOptions& opt_;
  std::mt19937_64 rng_;
  std::vector<std::string> assumptions_;
};

bool known_command(const std::string& c) {
  return std::find(std::begin(kRequestKinds), std::end(kRequestKinds), c) != std::end(kRequestKinds);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunOutcome run(const RunOptions& opt) {
  RunOutcome outcome;
  if (!known_command(opt.command)) {
    outcome.exit_code = 1;
    outcome.message = "unknown command '" + opt.command + "'";
    return outcome;
  }
  if (opt.compare && opt.command != "period") {
    outcome.exit_code = 1;
    outcome.message = "--compare applies to the period command only";
    return outcome;
  }
  std::string text, other_text;
  SystemFile sys, other;
  std::string current = opt.file;
  try {
    text = read_file(opt.file);
    sys = parse_system(text);
    if (opt.compare) {
      current = *opt.compare;
      other_text = read_file(*opt.compare);
      other = parse_system(other_text);
    }
  } catch (const std::exception& e) {
    outcome.exit_code = 1;
    outcome.message = current + ": " + e.what();
    return outcome;
  }

  json report;
  report["schema"] = kSchemaVersion;
  report["tool"] = "hamgeom";
  report["version"] = HAMGEOM_VERSION;
  report["command"] = opt.command;
  report["input"] = {{"file", opt.file}, {"digest", hex_digest(text)}};
  if (opt.compare) report["compare"] = {{"file", *opt.compare}, {"digest", hex_digest(other_text)}};
  report["seed"] = opt.seed;
  if (opt.command == "period")
    report["options"] = {{"rtol", opt.rtol}, {"atol", opt.atol}, {"eps", opt.eps}, {"tmax", opt.tmax}};

  std::vector<const Request*> mine, theirs;
  for (const auto& r : sys.requests)
    if (r.kind == opt.command) mine.push_back(&r);
  for (const auto& r : other.requests)
    if (r.kind == opt.command) theirs.push_back(&r);

  Runner runner(opt);
  json results = json::array();
  json errors = json::array();
  auto fail = [&](const std::string& message) {
    errors.push_back(message);
    outcome.exit_code = 2;
    if (outcome.message.empty()) outcome.message = message;
  };
  if (mine.empty()) fail("no '" + opt.command + "' request in " + opt.file);
  else if (opt.compare && theirs.size() != mine.size()) fail("--compare needs as many period requests in both files");
  else
    for (std::size_t i = 0; i < mine.size(); ++i) {
      json r;
      r["request"] = mine[i]->name;
      try {
        runner.run_request(sys, *mine[i], opt.compare ? &other : nullptr, opt.compare ? theirs[i] : nullptr, r);
      } catch (const ParseError& e) {
        return RunOutcome{1, std::nullopt, opt.file + ": " + e.what()};
      } catch (const InputError& e) {
        return RunOutcome{1, std::nullopt, e.what()};
      } catch (const std::exception& e) {
        r["error"] = e.what();
        fail(mine[i]->name + ": " + e.what());
      }
      results.push_back(std::move(r));
    }
  report["results"] = results;
  if (!errors.empty()) report["errors"] = errors;
  report["assumptions"] = runner.assumptions();
  outcome.report = std::move(report);
  return outcome;
}

int run_main(const RunOptions& options, std::ostream& out, std::ostream& err) {
  const RunOutcome o = run(options);
  if (!o.message.empty()) err << "hamgeom: " << o.message << '\n';
  if (o.report) {
    const std::string text = o.report->dump(2) + "\n";
    if (options.out) {
      std::ofstream f(*options.out, std::ios::binary);
      if (!f) {
        err << "hamgeom: cannot write " << *options.out << '\n';
        return 1;
      }
      f << text;
    } else {
      out << text;
    }
  }
  return o.exit_code;
}

}  // namespace hamgeom::cli
