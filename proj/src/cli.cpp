#include "tvsyn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvsyn/dual_program.hpp"
#include "tvsyn/factorization.hpp"
#include "tvsyn/mixed_sensitivity.hpp"
#include "tvsyn/nest_distance.hpp"
#include "tvsyn/plant_lab.hpp"
#include "tvsyn/tv_hankel.hpp"

namespace tvsyn::cli {

namespace {

using json = nlohmann::json;

const char kSchema[] = "tvsyn-report v1";

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
    case ErrorKind::kParse:
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kCausalityViolation:
    case ErrorKind::kIo:
    case ErrorKind::kFeedbackIllPosed:
      return kExitValidation;
    case ErrorKind::kNotPositiveDefinite:
    case ErrorKind::kAssumptionViolation:
      return kExitAssumption;
    case ErrorKind::kCompletionInfeasible:
    case ErrorKind::kUndefinedCertificate:
    case ErrorKind::kMaxIterations:
    case ErrorKind::kIdentityViolation:
    case ErrorKind::kMethodDisagreement:
      return kExitSolver;
  }
  return kExitInternal;
}

class Session {
 public:
  explicit Session(const RunConfig& c) : c_(c), format_(parse_format(c.format)) {
    validate();
    std::filesystem::create_directories(c_.out);
  }

  int dispatch() {
    const std::string& cmd = c_.command;
    if (cmd == "factor") return factor();
    if (cmd == "synth") return synth();
    if (cmd == "dual") return dual();
    if (cmd == "bounds") return bounds();
    if (cmd == "hankel") return hankel();
    if (cmd == "mixsens") return mixsens();
    if (cmd == "simulate") return simulate();
    if (cmd == "gen") return gen();
    throw InvalidInputError("unknown command '" + cmd + "'");
  }

 private:
  struct Problem {
    Matrix symbol;
    std::optional<FactoredPlant> plant;
    int input_dim = 0;
    int ambient = 0;
    int n = 0;
  };

  void validate() const {
    if (!(c_.tol > 0)) throw InvalidInputError("--tol must be positive");
    if (!(c_.assumption_tol > 0)) throw InvalidInputError("--assumption-tol must be positive");
    if (c_.n < 0) throw InvalidInputError("--n must be >= 1");
    if (c_.ambient < 0) throw InvalidInputError("--ambient must be >= 1");
    if (c_.n > 0 && c_.ambient > 0 && c_.n > c_.ambient) {
      throw InvalidInputError("--n must not exceed --ambient");
    }
  }

  std::string ext() const { return format_ == MatrixFormat::kCsv ? ".csv" : ".json"; }
  std::string path(const std::string& name) const {
    return (std::filesystem::path(c_.out) / name).string();
  }

  std::string save(const Matrix& m, const std::string& stem) const {
    const std::string file = stem + ext();
    save_operator(m, path(file), format_);
    return file;
  }

  void write_text(const std::string& name, const std::string& text) const {
    std::ofstream out(path(name), std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path(name) + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path(name) + "' failed");
  }

  json config_json() const {
    return {{"command", c_.command},
            {"t1", c_.t1},
            {"t2", c_.t2},
            {"t3", c_.t3},
            {"w", c_.w},
            {"v", c_.v},
            {"p", c_.p},
            {"symbol", c_.symbol},
            {"q", c_.q},
            {"n", c_.n},
            {"ambient", c_.ambient},
            {"n_list", c_.n_list},
            {"seed", c_.seed},
            {"format", c_.format},
            {"disturbance", c_.disturbance},
            {"gen", {{"kind", c_.kind},
                     {"dim", c_.dim},
                     {"decay", c_.decay},
                     {"period", c_.period},
                     {"impulse", c_.impulse},
                     {"shift", c_.shift}}}};
  }

  json report(std::vector<std::string> tags) const {
    return {{"schema", kSchema},
            {"command", c_.command},
            {"config", config_json()},
            {"tolerances", {{"tol", c_.tol},
                            {"assumption_tol", c_.assumption_tol},
                            {"sdp_tol", c_.sdp_tol},
                            {"sdp_max_iter", c_.sdp_max_iter},
                            {"bisection_iterations", c_.bisection_iterations}}},
            {"method_tags", std::move(tags)}};
  }

  void write_report(const std::string& name, const json& j) const {
    write_text(name, j.dump(2) + "\n");
  }

  int resolve_ambient(int input_dim) const {
    const int m = c_.ambient == 0 ? input_dim : c_.ambient;
    if (m > input_dim) {
      throw InvalidInputError("--ambient " + std::to_string(m) + " exceeds the input dimension " +
                              std::to_string(input_dim));
    }
    return m;
  }

  CausalOperator load_causal(const std::string& file, const char* flag, int ambient = 0) const {
    if (file.empty()) throw InvalidInputError(std::string("missing required input ") + flag);
    CausalOperator op = load_operator(file);
    if (ambient > 0 && ambient < op.dim()) {
      return CausalOperator(Matrix(op.matrix().topLeftCorner(ambient, ambient)));
    }
    return op;
  }

  Problem load_problem() const {
    Problem pr;
    if (!c_.symbol.empty()) {
      if (!c_.t1.empty() || !c_.t2.empty() || !c_.t3.empty()) {
        throw InvalidInputError("--symbol cannot be combined with --t1/--t2/--t3");
      }
      const Matrix b = load_matrix(c_.symbol);
      pr.input_dim = static_cast<int>(b.rows());
      pr.ambient = resolve_ambient(pr.input_dim);
      pr.symbol = b.topLeftCorner(pr.ambient, pr.ambient);
    } else {
      const CausalOperator t1 = load_causal(c_.t1, "--t1");
      pr.input_dim = t1.dim();
      pr.ambient = resolve_ambient(pr.input_dim);
      const CausalOperator t2 = load_causal(c_.t2, "--t2", pr.ambient);
      const CausalOperator t3 = load_causal(c_.t3, "--t3", pr.ambient);
      const CausalOperator t1m(Matrix(t1.matrix().topLeftCorner(pr.ambient, pr.ambient)));
      pr.plant = reduce_to_distance(t1m, t2, t3, c_.assumption_tol);
      pr.symbol = pr.plant->symbol;
    }
    pr.n = c_.n == 0 ? pr.ambient : c_.n;
    if (pr.n > pr.ambient) {
      throw InvalidInputError("--n " + std::to_string(pr.n) + " exceeds the ambient dimension " +
                              std::to_string(pr.ambient));
    }
    return pr;
  }

  SynthesisOptions synthesis_options(int n) const {
    SynthesisOptions o;
    o.n = n;
    o.tol = c_.tol;
    o.gap_tol = c_.tol;
    o.sdp_max_iter = c_.sdp_max_iter;
    o.sdp_tol = c_.sdp_tol;
    return o;
  }

  int factor() {
    const CausalOperator t1 = load_causal(c_.t1, "--t1");
    const int m = resolve_ambient(t1.dim());
    const CausalOperator t2 = load_causal(c_.t2, "--t2", m);
    const CausalOperator t3 = load_causal(c_.t3, "--t3", m);
    const CausalOperator t1m(Matrix(t1.matrix().topLeftCorner(m, m)));
    const FactoredPlant fp = reduce_to_distance(t1m, t2, t3, c_.assumption_tol);
    const A1Report a1 = check_A1(t2, t3, c_.assumption_tol);

    auto rel = [](const Matrix& a, const Matrix& b) {
      return (a - b).norm() / std::max(b.norm(), 1e-300);
    };
    json j = report({"factor:householder-ql", "symbol:inner-adjoint-sandwich"});
    j["dim"] = m;
    j["a1"] = {{"passed", a1.passed},
               {"t2_outer_condition", a1.t2_outer_condition},
               {"t3_outer_condition", a1.t3_outer_condition},
               {"message", a1.message}};
    j["reconstruction"] = {
        {"t2", rel(fp.t2_factors.inner.matrix() * fp.t2_factors.outer.matrix(), t2.matrix())},
        {"t3", rel(fp.t3_factors.outer.matrix() * fp.t3_factors.inner.matrix(), t3.matrix())}};
    j["symbol_anticausal_norm"] =
        spectral_norm(Matrix(fp.symbol.triangularView<Eigen::StrictlyUpper>()));
    j["files"] = {{"symbol", save(fp.symbol, "symbol")},
                  {"t2_inner", save(fp.t2_factors.inner.matrix(), "t2_inner")},
                  {"t2_outer", save(fp.t2_factors.outer.matrix(), "t2_outer")},
                  {"t3_outer", save(fp.t3_factors.outer.matrix(), "t3_outer")},
                  {"t3_inner", save(fp.t3_factors.inner.matrix(), "t3_inner")}};
    write_report("factor_report.json", j);
    return kExitOk;
  }

  int synth() {
    const Problem pr = load_problem();
    const SynthesisOptions opts = synthesis_options(pr.n);
    const SynthesisResult r =
        pr.plant ? synthesize(*pr.plant, opts) : synthesize_symbol(pr.symbol, opts);
    json j = report(r.method_tags);
    j["n"] = r.n;
    j["ambient"] = r.ambient;
    j["mu_primal"] = r.mu_primal;
    j["mu_dual"] = r.mu_dual;
    j["gap"] = r.gap;
    j["gap_warning"] = r.gap_warning;
    j["argmax_level"] = r.argmax_level;
    j["allpass_defect"] = r.allpass_defect;
    j["alignment_residual"] = r.alignment_residual;
    j["dominance_margin"] = r.dominance_margin;
    j["certificate_source"] = r.certificate_source;
    j["sdp"] = {{"value", r.sdp_value},
                {"converged", r.sdp_converged},
                {"iterations", r.sdp_iterations}};
    j["files"] = {{"Q", save(r.Q_youla.matrix(), "Q")},
                  {"Q_absorbed", save(r.Q.matrix(), "Q_absorbed")},
                  {"T", save(r.T_dual.matrix(), "T")}};
    write_report("synth_report.json", j);
    if (r.gap_warning) {
      std::ostringstream os;
      os << "warning: duality gap " << r.gap << " exceeds tolerance at n = " << r.n;
      warnings_.push_back(os.str());
    }
    return kExitOk;
  }

  int dual() {
    const Problem pr = load_problem();
    const Matrix leading = pr.symbol.topLeftCorner(pr.n, pr.n);
    const double closed = dual_value_closed_form(leading);
    const DualCertificate corner = corner_witness(leading);
    const DualCertificate cert = dual_solve(leading, c_.sdp_max_iter, c_.sdp_tol);
    json j = report({"dual:sdp-admm", "dual:closed-form-corner-blocks"});
    j["n"] = pr.n;
    j["value"] = cert.value;
    j["closed_form"] = closed;
    j["relative_gap"] = closed > 0 ? (closed - cert.value) / closed : 0.0;
    j["converged"] = cert.converged;
    j["iterations"] = cert.iterations;
    j["primal_residual"] = cert.primal_residual;
    j["dual_residual"] = cert.dual_residual;
    j["alignment_residual"] = cert.alignment_residual;
    j["corner_witness_value"] = corner.value;
    j["files"] = {{"T", save(cert.T.matrix(), "T")},
                  {"T_corner", save(corner.T.matrix(), "T_corner")}};
    write_report("dual_report.json", j);
    return kExitOk;
  }

  int bounds() {
    const Problem pr = load_problem();
    std::vector<int> list = c_.n_list;
    if (list.empty()) {
      for (int k = 1; k < pr.ambient; k *= 2) list.push_back(k);
      list.push_back(pr.ambient);
    }
    const std::vector<BoundsRow> rows = bounds_sweep(pr.symbol, list);
    std::string csv = "N,mu_dual,mu_primal,gap\n";
    json table = json::array();
    bool dual_up = true;
    bool primal_down = true;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const BoundsRow& r = rows[k];
      char line[160];
      std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", r.n, r.mu_dual, r.mu_primal,
                    r.gap);
      csv += line;
      table.push_back({{"N", r.n},
                       {"mu_dual", r.mu_dual},
                       {"mu_primal", r.mu_primal},
                       {"gap", r.gap},
                       {"witness_drift", r.witness_drift}});
      if (k > 0) {
        dual_up = dual_up && r.mu_dual >= rows[k - 1].mu_dual;
        primal_down = primal_down && r.mu_primal <= rows[k - 1].mu_primal;
      }
    }
    write_text("bounds.csv", csv);
    json j = report({"lower:leading-block-corner-norms", "upper:restricted-staircase"});
    j["ambient"] = pr.ambient;
    j["rows"] = table;
    j["mu_dual_nondecreasing"] = dual_up;
    j["mu_primal_nonincreasing"] = primal_down;
    j["final_gap"] = rows.back().gap;
    j["files"] = {{"table", "bounds.csv"}};
    write_report("bounds_report.json", j);
    return kExitOk;
  }

  int hankel() {
    const Problem pr = load_problem();
    const Matrix b = pr.symbol.topLeftCorner(pr.n, pr.n);
    const HankelNorm h = hankel_norm(b);
    const QFromMaximizer qm = q_from_maximizing_vector(b, h.maximizer, c_.tol);
    json j = report({"hankel:" + h.method, "Q:operator-identity",
                     qm.completed ? "Q:null-directions-parrott" : "Q:identity-determined"});
    j["n"] = pr.n;
    j["norm"] = h.norm;
    j["iterations"] = h.iterations;
    j["arveson_distance"] = arveson_distance(b).mu;
    j["identity"] = {{"determined", qm.determined},
                     {"unknowns", qm.unknowns},
                     {"completed", qm.completed},
                     {"residual", qm.identity_residual}};
    j["residual_norm"] = spectral_norm(Matrix(b - qm.Q.matrix()));
    j["files"] = {{"maximizer", save(h.maximizer.matrix(), "maximizer")},
                  {"Q", save(qm.Q.matrix(), "Q")}};
    write_report("hankel_report.json", j);
    return kExitOk;
  }

  int mixsens() {
    const CausalOperator w = load_causal(c_.w, "--w");
    const int m = resolve_ambient(w.dim());
    const CausalOperator wm(Matrix(w.matrix().topLeftCorner(m, m)));
    const CausalOperator v = load_causal(c_.v, "--v", m);
    const CausalOperator p = load_causal(c_.p, "--p", m);
    const MixedPlant mp = build_mixed_plant(wm, v, p, c_.assumption_tol);
    MixedOptions opts;
    opts.tol = c_.tol;
    opts.bisection_iterations = c_.bisection_iterations;
    const MixedResult r = mixed_synthesize(mp, opts);
    json j = report(r.method_tags);
    j["dim"] = m;
    j["mu_o"] = r.mu_o;
    j["method_values"] = {{"hankel_toeplitz", r.method_values.hankel_toeplitz},
                          {"gamma_projection", r.method_values.gamma_projection},
                          {"direct_convex", r.method_values.direct_convex}};
    j["allpass_defect"] = r.allpass_defect;
    j["partial_isometry_defect"] = r.partial_isometry_defect;
    j["argmax_level"] = r.argmax_level;
    j["bisection_steps"] = r.bisection_steps;
    j["files"] = {{"Q", save(r.Q.matrix(), "Q")},
                  {"Q_absorbed", save(r.Q_absorbed.matrix(), "Q_absorbed")}};
    write_report("mixsens_report.json", j);
    return kExitOk;
  }

  Vector load_vector(const std::string& file, int dim) const {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open '" + file + "' for reading");
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      std::string token;
      while (ls >> token) {
        char* end = nullptr;
        const double x = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || !std::isfinite(x)) {
          throw ParseError(file + ": line " + std::to_string(lineno) + ": bad number '" + token +
                               "'",
                           lineno, 0);
        }
        values.push_back(x);
      }
    }
    if (static_cast<int>(values.size()) < dim) {
      throw DimensionMismatchError(file + ": disturbance has " + std::to_string(values.size()) +
                                   " samples, need " + std::to_string(dim));
    }
    return Eigen::Map<Vector>(values.data(), dim);
  }

  int simulate() {
    const CausalOperator t1 = load_causal(c_.t1, "--t1");
    const int m = resolve_ambient(t1.dim());
    const CausalOperator t1m(Matrix(t1.matrix().topLeftCorner(m, m)));
    const CausalOperator t2 = load_causal(c_.t2, "--t2", m);
    const CausalOperator t3 = load_causal(c_.t3, "--t3", m);
    const CausalOperator q = load_causal(c_.q, "--q", m);
    Vector w;
    bool degenerate = false;
    if (c_.disturbance == "worst") {
      const WorstCaseDisturbance wc = worst_case_disturbance(t1m, t2, t3, q);
      w = wc.w;
      degenerate = wc.degenerate;
    } else if (c_.disturbance == "random") {
      std::mt19937_64 rng(c_.seed);
      std::normal_distribution<double> normal(0.0, 1.0);
      w.resize(m);
      for (int k = 0; k < m; ++k) w(k) = normal(rng);
    } else {
      w = load_vector(c_.disturbance, m);
    }
    const SimulationResult s = simulate_closed_loop(t1m, t2, t3, q, w);
    const Matrix tzw = t1m.matrix() - t2.matrix() * q.matrix() * t3.matrix();
    json j = report({"simulate:dense-closed-loop", "disturbance:" + (c_.disturbance == "worst" ||
                                                                      c_.disturbance == "random"
                                                                  ? c_.disturbance
                                                                  : std::string("file"))});
    j["dim"] = m;
    j["gain"] = s.gain;
    j["closed_loop_norm"] = spectral_norm(tzw);
    j["degenerate"] = degenerate;
    j["w"] = std::vector<double>(w.data(), w.data() + w.size());
    j["z"] = std::vector<double>(s.z.data(), s.z.data() + s.z.size());
    write_report("simulate_report.json", j);
    return kExitOk;
  }

  int gen() {
    if (c_.dim < 1) throw InvalidInputError("gen: --dim must be >= 1");
    Matrix m;
    std::vector<std::string> tags;
    if (c_.kind == "symbol") {
      m = generate_symbol(c_.dim, c_.seed, c_.decay);
      tags.push_back("gen:dense-symbol");
    } else {
      PlantSpec spec;
      spec.kind = parse_plant_kind(c_.kind);
      if (spec.kind == PlantKind::kExplicit) {
        throw InvalidInputError("gen: kind 'explicit' has nothing to generate");
      }
      spec.dim = c_.dim;
      spec.seed = c_.seed;
      spec.decay = c_.decay;
      spec.period = c_.period;
      spec.impulse_response = c_.impulse;
      spec.diagonal_shift = c_.shift;
      m = generate(spec).matrix();
      tags.push_back("gen:" + c_.kind);
    }
    const std::string stem = c_.name.empty() ? (c_.kind == "symbol" ? "symbol" : "plant") : c_.name;
    json j = report(tags);
    j["dim"] = c_.dim;
    j["files"] = {{"matrix", save(m, stem)}};
    write_report(stem + "_report.json", j);
    return kExitOk;
  }

 public:
  std::vector<std::string> warnings_;

 private:
  const RunConfig& c_;
  MatrixFormat format_;
};

}  // namespace

int run(const RunConfig& config, std::ostream& err) {
  try {
    Session session(config);
    const int code = session.dispatch();
    for (const auto& w : session.warnings_) err << "tvsyn: " << w << "\n";
    return code;
  } catch (const Error& e) {
    err << "tvsyn: error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "tvsyn: error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "tvsyn: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, int& exit_code) {
  CLI::App app{"tvsyn: optimal disturbance rejection for finite-horizon time-varying systems"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", c.n, "truncation order (default: ambient)")->check(CLI::PositiveNumber);
    sub->add_option("--ambient", c.ambient, "work in the leading MxM block of the inputs")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", c.tol, "numerical tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--assumption-tol", c.assumption_tol,
                    "invertibility threshold: condition number must stay below 1/value")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--format", c.format, "matrix output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto plant = [&](CLI::App* sub) {
    sub->add_option("--t1", c.t1, "T1 matrix file (.csv or .json)");
    sub->add_option("--t2", c.t2, "T2 matrix file");
    sub->add_option("--t3", c.t3, "T3 matrix file");
    sub->add_option("--symbol", c.symbol, "dense distance-problem symbol B instead of T1/T2/T3");
  };
  auto sdp = [&](CLI::App* sub) {
    sub->add_option("--sdp-max-iter", c.sdp_max_iter, "ADMM iteration cap")
        ->check(CLI::PositiveNumber);
    sub->add_option("--sdp-tol", c.sdp_tol, "ADMM relative tolerance")->check(CLI::PositiveNumber);
  };

  auto* factor = app.add_subcommand("factor", "inner-outer factorizations and the symbol B");
  common(factor);
  plant(factor);
  auto* synth = app.add_subcommand("synth", "optimal Q with primal/dual certificates");
  common(synth);
  plant(synth);
  sdp(synth);
  auto* dual = app.add_subcommand("dual", "dual program by ADMM");
  common(dual);
  plant(dual);
  sdp(dual);
  auto* bounds = app.add_subcommand("bounds", "truncation sweep of lower/upper bounds");
  common(bounds);
  plant(bounds);
  bounds->add_option("--n-list", c.n_list, "comma-separated truncation orders")->delimiter(',');
  auto* hankel = app.add_subcommand("hankel", "Hankel norm, maximizer and Q from the identity");
  common(hankel);
  plant(hankel);
  auto* mixsens = app.add_subcommand("mixsens", "mixed sensitivity optimum");
  common(mixsens);
  mixsens->add_option("--w", c.w, "weight W")->required();
  mixsens->add_option("--v", c.v, "weight V")->required();
  mixsens->add_option("--p", c.p, "plant P")->required();
  mixsens->add_option("--bisection-iterations", c.bisection_iterations, "bisection steps")
      ->check(CLI::NonNegativeNumber);
  auto* simulate = app.add_subcommand("simulate", "closed-loop response to a disturbance");
  common(simulate);
  plant(simulate);
  simulate->add_option("--q", c.q, "Youla parameter Q")->required();
  simulate->add_option("--disturbance", c.disturbance, "worst | random | path to samples");
  auto* gen = app.add_subcommand("gen", "generate a test plant or symbol");
  common(gen);
  gen->add_option("--kind", c.kind, "plant kind")
      ->check(CLI::IsMember({"random_causal", "periodic", "lti_toeplitz", "symbol"}));
  gen->add_option("--dim", c.dim, "dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--decay", c.decay, "off-diagonal geometric decay in (0, 1]");
  gen->add_option("--period", c.period, "period for the periodic kind");
  gen->add_option("--impulse", c.impulse, "impulse response for lti_toeplitz")->delimiter(',');
  gen->add_option("--shift", c.shift, "diagonal shift");
  gen->add_option("--name", c.name, "output file stem");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    exit_code = app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    exit_code = kExitValidation;
    return std::nullopt;
  }
  c.command = app.get_subcommands().front()->get_name();
  exit_code = kExitOk;
  return c;
}

}  // namespace tvsyn::cli
