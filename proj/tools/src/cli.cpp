#include "mpsd/tools/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mpsd/catalog.hpp"
#include "mpsd/errors.hpp"
#include "mpsd/grid.hpp"
#include "mpsd/io.hpp"
#include "mpsd/matcore.hpp"
#include "mpsd/measures.hpp"
#include "mpsd/oplab.hpp"
#include "mpsd/psdfun.hpp"
#include "mpsd/report.hpp"
#include "mpsd/tools/suite.hpp"

namespace mpsd::cli {

using nlohmann::json;

namespace {

struct Outcome {
  json body;
  int code = 0;
  std::string csv;  // scan table when the subcommand has one
};

int exit_code(const Report& r) { return r.status() == Status::fail ? 1 : 0; }

json load(const std::string& value, const char* flag) {
  if (value.empty()) throw InputError(std::string("missing required --") + flag);
  if (std::filesystem::is_regular_file(value)) return read_json_file(value);
  const auto first = value.find_first_not_of(" \t\n");
  if (first != std::string::npos && (value[first] == '{' || value[first] == '[' || value[first] == '"')) {
    try {
      return json::parse(value);
    } catch (const json::exception& e) {
      throw InputError(std::string("invalid JSON for --") + flag + ": " + e.what());
    }
  }
  return json(value);
}

CMatrix load_matrix(const RunConfig& c) { return matrix_from_json(load(c.matrix, "matrix")); }
MatrixFunction load_function(const RunConfig& c) { return catalog::function_from_json(load(c.function, "function")); }
MatrixMeasure load_measure(const RunConfig& c) { return catalog::measure_from_json(load(c.measure, "measure")); }

PointSet load_points(const RunConfig& c, int n, std::mt19937_64& rng) {
  if (c.points.empty()) return PointSet::random(n, 5, 2.0, rng());
  PointSet X = points_from_json(load(c.points, "points"));
  if (X.n() != n) throw InputError("point dimension does not match the function");
  return X;
}

GridSpec grid_for(const RunConfig& c, int n_default, double L_default = 40.0, int K_default = 0) {
  const int n = c.n.value_or(n_default);
  const int K = c.K.value_or(K_default > 0 ? K_default : (n == 1 ? 4096 : n == 2 ? 128 : 32));
  try {
    return GridSpec(n, c.L.value_or(L_default), K);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

json grid_json(const GridSpec& s) { return {{"n", s.n()}, {"L", s.L()}, {"K", s.K()}}; }

std::vector<double> ts_or(const RunConfig& c, std::vector<double> fallback) { return c.t.empty() ? fallback : c.t; }

GridField probe_field(const RunConfig& c, const GridSpec& spec, int m) {
  if (!c.field.empty()) {
    GridField f = read_field_file(c.field);
    if (f.spec() != spec || f.m() != m) throw InputError("field grid or matrix size does not match the run");
    return f;
  }
  return bump_field(spec, m, 1.0, c.eps.value_or(0.25), CMatrix::Identity(m, m));
}

std::string scan_csv(const GridField& f) {
  std::ostringstream os;
  os.precision(17);
  for (int a = 0; a < f.spec().n(); ++a) os << "x" << a + 1 << ",";
  os << "min_eigenvalue,defect\n";
  const auto scan = eigen_scan(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = f.location(i);
    for (int a = 0; a < x.size(); ++a) os << x(a) << ",";
    os << scan[i].min_eigenvalue << "," << scan[i].defect << "\n";
  }
  return os.str();
}

std::string checks_csv(const json& report) {
  std::ostringstream os;
  os.precision(17);
  os << "name,passed,value,bound\n";
  auto cell = [](const json& v) { return v.is_null() ? std::string() : v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& c : report.at("checks")) {
    os << '"' << c.at("name").get<std::string>() << "\"," << (c.at("passed").get<bool>() ? "true" : "false") << ","
       << cell(c.at("value")) << "," << cell(c.at("bound")) << "\n";
  }
  return os.str();
}

Outcome from_report(const Report& r) { return {to_json(r), exit_code(r), {}}; }

Outcome verdict_outcome(const PsdVerdict& v) {
  std::ostringstream os;
  os.precision(17);
  os << "verdict,min_eig,defect,tol\n"
     << (v.verdict ? "true" : "false") << "," << v.min_eigenvalue << "," << v.hermiticity_defect << "," << v.tol << "\n";
  return {verdict_json(v), v.verdict ? 0 : 1, os.str()};
}

std::vector<GridField> default_probes(const GridSpec& spec, int m, double eps) {
  CMatrix D = CMatrix::Zero(m, m);
  for (int j = 0; j < m; ++j) D(j, j) = j + 1;
  std::vector<GridField> p;
  p.push_back(bump_field(spec, m, 1.0, eps, CMatrix::Identity(m, m)));
  p.push_back(bump_field(spec, m, 1.0, eps, D));
  p.push_back(bump_field(spec, m, 1.0, eps, CMatrix::Ones(m, m)));
  p.push_back(gaussian_field(spec, Point::Zero(spec.n()), 1.0, CMatrix::Ones(m, m)));
  return p;
}

std::vector<GridField> psd_gaussian_probes(const GridSpec& spec, int m, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> centre(-3.0, 3.0), width(0.4, 1.0);
  std::normal_distribution<double> g;
  std::vector<GridField> probes;
  probes.push_back(gaussian_field(spec, Point::Zero(spec.n()), 0.5, CMatrix::Ones(m, m)));
  while (static_cast<int>(probes.size()) < count) {
    CMatrix G(m, m);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) G(j, k) = cplx(g(rng), g(rng));
    CMatrix P = G * G.adjoint();
    P /= P.trace().real();
    Point c(spec.n());
    for (int a = 0; a < spec.n(); ++a) c(a) = centre(rng);
    probes.push_back(gaussian_field(spec, c, width(rng), P));
  }
  return probes;
}

MultiplierSymbol symbol_of(const RunConfig& c, const MatrixFunction& F) {
  if (c.t.empty()) return MultiplierSymbol(F);
  return MultiplierSymbol(hadamard_exp_function(F, c.t.front()));
}

void maybe_write_field(const RunConfig& c, const GridField& f) {
  if (!c.field_out.empty()) write_field_file(c.field_out, f);
}

using Handler = std::function<Outcome(const RunConfig&, std::mt19937_64&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"psd", [](const RunConfig& c, std::mt19937_64&) { return verdict_outcome(psd_check(load_matrix(c), c.tol)); }},
      {"cpsd", [](const RunConfig& c, std::mt19937_64&) { return verdict_outcome(cpsd_check(load_matrix(c), c.tol)); }},
      {"gram",
       [](const RunConfig& c, std::mt19937_64& rng) {
         const MatrixFunction F = load_function(c);
         const PointSet X = load_points(c, F.n(), rng);
         const BlockGram G = gram(F, X);
         return Outcome{{{"points", points_json(X)}, {"gram", matrix_json(G.matrix)},
                         {"hermiticity_defect", hermiticity_defect(G.matrix)}}, 0, {}};
       }},
      {"schoenberg",
       [](const RunConfig& c, std::mt19937_64& rng) {
         const MatrixFunction F = load_function(c);
         const PointSet X = load_points(c, F.n(), rng);
         return from_report(schoenberg_equivalence_report(F, X, ts_or(c, {0.01, 0.1, 1.0, 10.0}), c.tol));
       }},
      {"weak-cpsd",
       [](const RunConfig& c, std::mt19937_64& rng) {
         const MatrixFunction F = load_function(c);
         const PointSet X = load_points(c, F.n(), rng);
         return from_report(weak_cpsd_check(F, X, default_directions(F.m(), c.probes, rng()), c.tol));
       }},
      {"measure-fourier",
       [](const RunConfig& c, std::mt19937_64& rng) {
         const MatrixMeasure mu = load_measure(c);
         const PointSet X = load_points(c, mu.n(), rng);
         json values = json::array();
         for (const auto& x : X.points()) values.push_back({{"x", point_json(x)}, {"value", matrix_json(fourier_transform(mu, x))}});
         return Outcome{{{"atoms", mu.atoms().size()}, {"values", std::move(values)}}, 0, {}};
       }},
      {"bochner",
       [](const RunConfig& c, std::mt19937_64& rng) {
         const MatrixMeasure mu = load_measure(c);
         return from_report(bochner_forward_check(mu, load_points(c, mu.n(), rng), c.tol));
       }},
      {"convolve",
       [](const RunConfig& c, std::mt19937_64&) {
         const MatrixMeasure mu = load_measure(c);
         const GridSpec spec = grid_for(c, mu.n());
         const GridField f = probe_field(c, spec, mu.m());
         const ConvolveResult res = convolve(mu, f);
         maybe_write_field(c, res.field);
         Report r("convolve");
         const double lhs = hs_norm(res.field), rhs = variation(mu) * hs_norm(f);
         r.add("hs_bound", lhs <= rhs * (1 + 1e-12), lhs, rhs);
         r.data["out_of_range"] = res.out_of_range;
         r.data["variation"] = variation(mu);
         r.data["grid"] = grid_json(spec);
         return Outcome{to_json(r), exit_code(r), scan_csv(res.field)};
       }},
      {"multiplier-apply",
       [](const RunConfig& c, std::mt19937_64&) {
         const MatrixFunction F = load_function(c);
         const MultiplierSymbol S = symbol_of(c, F);
         const GridSpec spec = grid_for(c, F.n());
         const GridField f = probe_field(c, spec, F.m());
         const GridField y = apply_multiplier(S, f);
         maybe_write_field(c, y);
         Report r("multiplier_apply");
         const double sup = sup_norm(S.sample(spec), NormKind::op);
         const double lhs = hs_norm(y), rhs = sup * hs_norm(f);
         r.add("hs_bound", lhs <= rhs * (1 + 1e-9) + 1e-12, lhs, rhs);
         r.data["symbol_sup"] = sup;
         r.data["grid"] = grid_json(spec);
         return Outcome{to_json(r), exit_code(r), scan_csv(y)};
       }},
      {"positivity-probe",
       [](const RunConfig& c, std::mt19937_64&) {
         const MatrixFunction F = load_function(c);
         const MultiplierSymbol S = symbol_of(c, F);
         const GridSpec spec = grid_for(c, F.n());
         std::vector<GridField> probes;
         if (!c.field.empty()) probes.push_back(probe_field(c, spec, F.m()));
         else probes = default_probes(spec, F.m(), c.eps.value_or(0.25));
         const Report r = positivity_probe(S, probes, c.tol.value_or(1e-9));
         const std::size_t worst = r.data.at("worst_probe").get<std::size_t>();
         return Outcome{to_json(r), exit_code(r), scan_csv(apply_multiplier(S, probes[worst]))};
       }},
      {"l1-bounds",
       [](const RunConfig& c, std::mt19937_64& rng) {
         const MatrixMeasure mu = load_measure(c);
         return from_report(l1_norm_bounds_check(mu, grid_for(c, mu.n(), 40.0, 512), c.probes, rng()));
       }},
      {"l2-norm",
       [](const RunConfig& c, std::mt19937_64& rng) {
         const MatrixFunction F = load_function(c);
         const GridSpec spec = grid_for(c, F.n(), 40.0, 512);
         const auto [sup, power] = l2_multiplier_norm(symbol_of(c, F), spec, rng());
         Report r("l2_norm");
         const double rel = sup.value > 0 ? std::abs(power.value - sup.value) / sup.value : 0.0;
         r.add("estimates_agree", rel <= 0.02, rel, 0.02);
         r.data["supremum"] = sup.value;
         r.data["power_iteration"] = {{"value", power.value}, {"iterations", power.iterations}, {"residual", power.residual}};
         r.data["grid"] = grid_json(spec);
         return from_report(r);
       }},
      {"counterexample",
       [](const RunConfig& c, std::mt19937_64&) {
         const GridSpec spec = grid_for(c, 1);
         const Report r = right_multiplier_counterexample(spec, c.eps.value_or(0.05),
                                                          c.matrix.empty() ? std::nullopt : std::optional(load_matrix(c)));
         // The expected outcome is a positivity failure: exit 1 with the witness.
         Outcome o = from_report(r);
         o.code = r.find("output_not_psd")->passed ? 1 : 0;
         return o;
       }},
      {"bump-witness",
       [](const RunConfig& c, std::mt19937_64&) {
         const MatrixFunction F = c.function.empty() ? catalog::point_mass_log(2, 1, 2, Point::Ones(1)) : load_function(c);
         const GridSpec spec = grid_for(c, F.n(), 40.0, F.n() == 1 ? 1024 : 0);
         std::optional<CMatrix> D;
         if (!c.matrix.empty()) D = load_matrix(c);
         return from_report(bump_probe_witness(F, ts_or(c, {1.0}).front(), spec, c.eps.value_or(0.25), D,
                                               c.tol.value_or(1e-9)));
       }},
      {"trace-check",
       [](const RunConfig& c, std::mt19937_64& rng) {
         const MatrixFunction F = load_function(c);
         const GridSpec spec = grid_for(c, F.n(), 40.0, F.n() == 1 ? 1024 : 0);
         const auto probes = psd_gaussian_probes(spec, F.m(), std::max(1, c.probes), rng);
         return from_report(trace_positivity_check(F, ts_or(c, {0.5, 1.0, 2.0}), probes, c.tol.value_or(1e-8)));
       }},
      {"growth-bound",
       [](const RunConfig& c, std::mt19937_64& rng) {
         const MatrixFunction F = load_function(c);
         return from_report(growth_bound_estimate(F, {0.5, 1, 2, 5, 10, 50, 100, 500, 1000}, c.probes, rng()));
       }},
      {"cpsd-inequalities",
       [](const RunConfig& c, std::mt19937_64& rng) {
         const MatrixFunction F = load_function(c);
         std::uniform_real_distribution<double> u(-5.0, 5.0);
         std::vector<std::pair<Point, Point>> pairs;
         for (int k = 0; k < 200; ++k) {
           Point x(F.n()), y(F.n());
           for (int a = 0; a < F.n(); ++a) x(a) = u(rng);
           for (int a = 0; a < F.n(); ++a) y(a) = u(rng);
           pairs.emplace_back(std::move(x), std::move(y));
         }
         return from_report(cpsd_inequalities_check(F, pairs, c.tol.value_or(1e-8)));
       }},
      {"right-mult-norm",
       [](const RunConfig& c, std::mt19937_64&) {
         const CMatrix A = load_matrix(c);
         const double k = right_mult_norm(A), op = matrix_norm(A, NormKind::op);
         const double tol = c.tol.value_or(1e-10);
         Report r("right_mult_norm");
         r.add("equals_operator_norm", std::abs(k - op) <= tol * std::max(1.0, op), k, op);
         r.data["right_mult_norm"] = k;
         r.data["operator_norm"] = op;
         return from_report(r);
       }},
      {"k-a-bound",
       [](const RunConfig& c, std::mt19937_64&) {
         const MatrixFunction F = c.function.empty() ? catalog::constant(CMatrix::Identity(2, 2)) : load_function(c);
         return from_report(exponential_kernel_bound_check(c.a.value_or(1.0), symbol_of(c, F), grid_for(c, F.n(), 80.0)));
       }},
      {"reference-suite",
       [](const RunConfig& c, std::mt19937_64&) {
         suite::SuiteResult s = suite::run_all(c.seed);
         return Outcome{std::move(s.json), s.all_match ? 0 : 1, {}};
       }},
      {"catalog", [](const RunConfig&, std::mt19937_64&) { return Outcome{catalog::listing(), 0, {}}; }},
  };
  return h;
}

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> d{
      {"psd", "positive semidefiniteness of a matrix"},
      {"cpsd", "conditional positive semidefiniteness of a Hermitian matrix"},
      {"gram", "block Gram matrix of a function on a point set"},
      {"schoenberg", "cpsd of F versus positivity of exp_H(tF)"},
      {"weak-cpsd", "scalar cpsd of (f, F f) for sampled directions f"},
      {"measure-fourier", "Fourier transform of an atomic measure at points"},
      {"bochner", "positivity and boundedness of a measure transform"},
      {"convolve", "convolution of a field with a measure"},
      {"multiplier-apply", "apply F(-i grad), or exp_H(tF)(-i grad) with --t"},
      {"positivity-probe", "scan multiplier outputs of PSD probes for non PSD values"},
      {"l1-bounds", "L1 operator norm of a measure convolution against its bounds"},
      {"l2-norm", "L2 multiplier norm by supremum and power iteration"},
      {"counterexample", "Gaussian times diag(1, 2) multiplier on a bump probe"},
      {"bump-witness", "search bump probes for a positivity witness"},
      {"trace-check", "nonnegativity of the trace of exp_H(tF)(-i grad) f"},
      {"growth-bound", "quadratic growth of a cpsd function"},
      {"cpsd-inequalities", "necessary pointwise inequalities for cpsd functions"},
      {"right-mult-norm", "operator norm of X -> X A"},
      {"k-a-bound", "exp(-a|x|) kernel transform norm and sup bound"},
      {"reference-suite", "run every reference experiment"},
      {"catalog", "list catalog functions and measures"}};
  return d;
}

json config_json(const RunConfig& c) {
  json j{{"subcommand", c.subcommand}, {"seed", c.seed}};
  j["tol"] = c.tol ? json(*c.tol) : json("default");
  auto put = [&j](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  put("matrix", c.matrix);
  put("function", c.function);
  put("measure", c.measure);
  put("points", c.points);
  put("field", c.field);
  if (!c.t.empty()) j["t"] = c.t;
  if (c.eps) j["eps"] = *c.eps;
  if (c.a) j["a"] = *c.a;
  if (c.n) j["n"] = *c.n;
  if (c.L) j["L"] = *c.L;
  if (c.K) j["K"] = *c.K;
  j["probes"] = c.probes;
  return j;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, _] : handlers()) v.push_back(name);
    return v;
  }();
  return names;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto it = handlers().find(config.subcommand);
  if (it == handlers().end()) {
    err << "error: unknown subcommand '" << config.subcommand << "'\n";
    return 2;
  }
  Outcome o;
  try {
    std::mt19937_64 rng(config.seed);
    o = it->second(config, rng);
  } catch (const json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string text;
  if (config.format == Format::csv) {
    text = !o.csv.empty() ? o.csv : o.body.contains("checks") ? checks_csv(o.body) : o.body.dump(2) + "\n";
  } else {
    const json doc{{"config", config_json(config)}, {"result", o.body}};
    text = doc.dump(2) + "\n";
  }
  if (config.out.empty()) {
    out << text;
  } else {
    std::ofstream os(config.out, std::ios::binary);
    if (!os) {
      err << "error: cannot write " << config.out << "\n";
      return 2;
    }
    os << text;
  }
  return o.code;
}

std::optional<int> parse(int argc, const char* const* argv, RunConfig& config, std::ostream& out,
                         std::ostream& err) {
  CLI::App app{"Matrix-valued positive definite functions and Fourier multipliers"};
  app.require_subcommand(1);
  std::string format = "json";
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, descriptions().at(name));
    sub->add_option("--matrix", config.matrix, "matrix JSON (path or inline)");
    sub->add_option("--function", config.function, "function spec: catalog id, inline JSON or path");
    sub->add_option("--measure", config.measure, "measure spec: catalog id, inline JSON or path");
    sub->add_option("--points", config.points, "point set JSON (path or inline)");
    sub->add_option("--field", config.field, "binary field file used as probe");
    sub->add_option("--field-out", config.field_out, "write the output field here");
    sub->add_option("--t", config.t, "Hadamard exponential parameters")->delimiter(',');
    sub->add_option("--eps", config.eps, "mollifier or bump transition width");
    sub->add_option("--a", config.a, "exponential kernel rate");
    sub->add_option("--n", config.n, "grid dimension");
    sub->add_option("--L", config.L, "torus side length");
    sub->add_option("--K", config.K, "samples per axis (power of two)");
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--tol", config.tol, "tolerance");
    sub->add_option("--probes", config.probes, "random probe or sample count");
    sub->add_option("--out", config.out, "output path (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  config.format = format == "csv" ? Format::csv : Format::json;
  return std::nullopt;
}

}  // namespace mpsd::cli
