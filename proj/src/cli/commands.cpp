#include "powerlim/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "powerlim/cli/matrix_io.hpp"
#include "powerlim/cli/report.hpp"
#include "powerlim/expflow.hpp"
#include "powerlim/jordan.hpp"
#include "powerlim/oracle.hpp"
#include "powerlim/yamamoto.hpp"

namespace powerlim::cli {

using nlohmann::json;

namespace {

double cluster_tol_for(const ComplexMatrix& a, const Options& options) {
  return options.tol_cluster < 0.0 ? default_cluster_tol(a) : options.tol_cluster;
}

json input_section(const ComplexMatrix& a) {
  return {{"digest", matrix_digest(a)}, {"dim", a.rows()}, {"matrix", matrix_to_json(a)}};
}

json flag_json(const NestedFlag& flag, const char* level_name) {
  json j = to_json(flag);
  j[level_name] = j["levels"];
  j.erase("levels");
  return j;
}

json vector_error(std::size_t index, const std::string& what) {
  return {{"index", index}, {"error", what}};
}

void validate(const Options& options) {
  if (options.k > 60) throw UsageError("--K must be at most 60");
  if (!(options.mem_tol > 0.0)) throw UsageError("--mem-tol must be positive");
  for (double p : options.p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw UsageError("--p values must be positive");
  }
  if (options.dim < 1) throw UsageError("--dim must be positive");
}

json growth_section(const ComplexMatrix& a, const ModulusFlag& flag,
                    const std::vector<ComplexVector>& vectors, const Options& options,
                    std::vector<std::vector<SeriesPoint>>& columns, bool& any_error) {
  json out = json::array();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const ComplexVector& x = vectors[i];
    if (x.size() != a.rows()) {
      out.push_back(vector_error(i, "dimension mismatch"));
      any_error = true;
      continue;
    }
    if (x.norm() == 0.0) {
      out.push_back(vector_error(i, "zero vector has no growth exponent"));
      any_error = true;
      continue;
    }
    const GrowthReport report = growth_report(a, flag, x, std::max(1u, options.k), options.mem_tol);
    json entry = to_json(report);
    entry["index"] = i;
    entry["invariance"] = to_json(shell_invariance_check(a, flag, x, 5, options.mem_tol));
    columns.push_back(report.series);
    out.push_back(std::move(entry));
  }
  return out;
}

json exp_section(const ComplexMatrix& a, const Options& options,
                 const std::vector<ComplexVector>& vectors) {
  const double tol = cluster_tol_for(a, options);
  const RealPartFlag flag = realpart_flag(a, tol);
  const PsdMatrix closed = flag.weighted_sum([](double h) { return std::exp(h); });
  const PsdMatrix iterative = exp_iterate_limit(a, options.k);
  json out = {{"flag", flag_json(flag, "realparts")},
              {"limit",
               {{"closed_form", matrix_to_json(closed.matrix())},
                {"iterative", matrix_to_json(iterative.matrix())},
                {"K", options.k},
                {"difference", real_json(op_norm(closed.matrix() - iterative.matrix()))}}}};
  if (!vectors.empty()) {
    json trajectories = json::array();
    TrajectoryOptions topts;
    topts.cluster_tol = tol;
    topts.mem_tol = options.mem_tol;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const ComplexVector& x = vectors[i];
      if (x.size() != a.rows() || x.norm() == 0.0) {
        trajectories.push_back(vector_error(i, x.size() != a.rows() ? "dimension mismatch" : "zero vector"));
        continue;
      }
      json entry = to_json(trajectory_growth(a, x, topts));
      entry["index"] = i;
      entry["invariance"] =
          to_json(trajectory_shell_invariance(a, x, {0.5, 1.0, 2.0, 4.0}, tol, options.mem_tol));
      trajectories.push_back(std::move(entry));
    }
    out["trajectories"] = std::move(trajectories);
  }
  return out;
}

}  // namespace

CommandResult cmd_analyze(const ComplexMatrix& a, const Options& options,
                          const std::vector<ComplexVector>& vectors) {
  validate(options);
  require_square_finite(a, "analyze");
  const double tol = cluster_tol_for(a, options);
  CommandResult result;
  json& r = result.report;
  r["command"] = "analyze";
  r["input"] = input_section(a);
  r["cluster_tol"] = real_json(tol);

  const SchurForm form = schur(a);
  json eigs = json::array();
  for (Index i = 0; i < form.triangular.rows(); ++i) eigs.push_back(complex_json(form.triangular(i, i)));
  r["eigenvalues"] = std::move(eigs);

  const JCDecomp jc = jordan_chevalley(a, tol);
  r["clusters"] = to_json(jc.clusters);
  r["jordan_chevalley"] = to_json(jc);

  const AsymptoticLimit limit = limit_matrix(a, tol);
  const PsdMatrix iterative = iterate_limit(a, options.k);
  r["flag"] = flag_json(limit.flag, "moduli");
  r["limit"] = {{"closed_form", matrix_to_json(limit.h.matrix())},
                {"iterative", matrix_to_json(iterative.matrix())},
                {"K", options.k},
                {"difference", real_json(op_norm(limit.h.matrix() - iterative.matrix()))}};

  const SingularValueLimits sv = singular_value_limits(a, tol, std::max(1u, options.k));
  json finals = json::array();
  for (const auto& s : sv.series) finals.push_back(real_json(s.back().value));
  r["singular_value_limits"] = {{"limits", sv.limits}, {"final", std::move(finals)}};
  result.csv = series_csv(sv.series, "s");

  if (!vectors.empty()) {
    std::vector<std::vector<SeriesPoint>> columns;
    bool any_error = false;
    r["growth"] = growth_section(a, limit.flag, vectors, options, columns, any_error);
  }
  if (options.exp) r["exp"] = exp_section(a, options, vectors);
  return result;
}

CommandResult cmd_verify(const std::optional<ComplexMatrix>& a, const Options& options) {
  validate(options);
  SuiteConfig config;
  config.seed = options.seed;
  config.instances = options.instances;
  config.min_dim = options.dim;
  config.max_dim = options.dim;
  config.p_values = options.p;
  config.inject_violation = options.inject_violation;
  SuiteResult suite = run_inequality_suite(config);

  if (a) {
    require_square_finite(*a, "verify");
    for (double p : options.p) {
      for (CheckResult c : {check_eig_trace_dominance(*a, p), check_power_trace_monotone(*a, p, 2),
                            check_power_trace_monotone(*a, p, 4), check_power_trace_monotone(*a, p, 8)}) {
        c.context = "input matrix; " + c.context;
        if (!c.passed) ++suite.failures;
        suite.results.push_back(std::move(c));
      }
    }
  }

  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
  std::map<std::string, double> min_slack;
  json failed = json::array();
  for (const auto& c : suite.results) {
    auto& t = tally[c.name];
    ++t.first;
    if (!c.passed) {
      ++t.second;
      failed.push_back(to_json(c));
    }
    auto it = min_slack.find(c.name);
    const double rel = c.slack / c.scale;
    if (it == min_slack.end() || rel < it->second) min_slack[c.name] = rel;
  }
  json by_name = json::object();
  for (const auto& [name, t] : tally) {
    by_name[name] = {{"count", t.first}, {"failures", t.second}, {"min_relative_slack", real_json(min_slack[name])}};
  }

  CommandResult result;
  result.report = {{"command", "verify"},
                   {"seed", options.seed},
                   {"instances", options.instances},
                   {"dim", options.dim},
                   {"checks", {{"total", suite.results.size()},
                               {"failures", suite.failures},
                               {"by_name", std::move(by_name)},
                               {"failed", std::move(failed)}}}};
  if (a) result.report["input"] = input_section(*a);
  result.exit_code = suite.all_passed() ? kExitOk : kExitVerification;
  return result;
}

CommandResult cmd_growth(const ComplexMatrix& a, const std::vector<ComplexVector>& vectors,
                         const Options& options) {
  validate(options);
  require_square_finite(a, "growth");
  if (vectors.empty()) throw UsageError("growth needs at least one vector");
  const double tol = cluster_tol_for(a, options);
  const ModulusFlag flag = modulus_flag(a, tol);
  CommandResult result;
  std::vector<std::vector<SeriesPoint>> columns;
  bool any_error = false;
  json growth = growth_section(a, flag, vectors, options, columns, any_error);
  result.report = {{"command", "growth"},
                   {"input", input_section(a)},
                   {"cluster_tol", real_json(tol)},
                   {"flag", flag_json(flag, "moduli")},
                   {"partial", any_error},
                   {"growth", std::move(growth)}};
  result.csv = series_csv(columns, "x");
  return result;
}

CommandResult cmd_exp(const ComplexMatrix& a, const Options& options,
                      const std::vector<ComplexVector>& vectors) {
  validate(options);
  require_square_finite(a, "exp");
  CommandResult result;
  result.report = {{"command", "exp"},
                   {"input", input_section(a)},
                   {"cluster_tol", real_json(cluster_tol_for(a, options))},
                   {"exp", exp_section(a, options, vectors)}};
  const SingularValueLimits sv = singular_value_limits(expm(a), cluster_tol_for(expm(a), options),
                                                       std::max(1u, options.k));
  result.csv = series_csv(sv.series, "s");
  return result;
}

namespace {

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol-cluster", o.tol_cluster, "eigenvalue clustering tolerance");
  cmd->add_option("--K", o.k, "evaluate limits at n = 2^K")->capture_default_str();
  cmd->add_option("--mem-tol", o.mem_tol, "relative shell membership tolerance")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd->add_option("--series", o.series_path, "write convergence series as CSV to this path");
  cmd->add_flag("--exp", o.exp, "include the exponential-flow section");
  cmd->add_option("--vectors", o.vectors_path, "JSON list of vectors");
}

void write_csv(const std::string& path, const std::string& csv) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << csv)) throw LoadError("cannot write " + path);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limits of |A^n|^{1/n} and |e^{tA}|^{1/t}"};
  app.require_subcommand(1);
  Options o;
  std::string matrix_path;

  CLI::App* analyze = app.add_subcommand("analyze", "closed-form and iterative limits of |A^n|^{1/n}");
  analyze->add_option("matrix", matrix_path, "matrix file (JSON or text)")->required();
  add_common(analyze, o);

  CLI::App* verify = app.add_subcommand("verify", "run the inequality check suite");
  verify->add_option("matrix", matrix_path, "optional matrix to check as well");
  add_common(verify, o);
  verify->add_option("--dim", o.dim, "dimension of random instances")->capture_default_str();
  verify->add_option("--instances", o.instances, "random instances per check")->capture_default_str();
  verify->add_option("--p", o.p, "trace exponents")->delimiter(',');
  verify->add_flag("--inject-violation", o.inject_violation, "append a failing check (harness test)");

  CLI::App* growth = app.add_subcommand("growth", "per-vector growth exponents");
  growth->add_option("matrix", matrix_path, "matrix file")->required();
  add_common(growth, o);

  CLI::App* exp = app.add_subcommand("exp", "limits of |e^{tA}|^{1/t}");
  exp->add_option("matrix", matrix_path, "matrix file")->required();
  add_common(exp, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CommandResult result;
    if (*verify) {
      std::optional<ComplexMatrix> a;
      if (!matrix_path.empty()) a = load_matrix(matrix_path);
      result = cmd_verify(a, o);
    } else {
      const ComplexMatrix a = load_matrix(matrix_path);
      std::vector<ComplexVector> vectors;
      if (!o.vectors_path.empty()) vectors = load_vectors(o.vectors_path);
      if (*analyze) {
        result = cmd_analyze(a, o, vectors);
      } else if (*growth) {
        if (o.vectors_path.empty()) throw UsageError("growth requires --vectors");
        result = cmd_growth(a, vectors, o);
      } else {
        result = cmd_exp(a, o, vectors);
      }
    }
    write_csv(o.series_path, result.csv);
    out << dump_report(result.report);
    return result.exit_code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LoadError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace powerlim::cli
