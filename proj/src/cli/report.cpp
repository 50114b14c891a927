#include "powerlim/cli/report.hpp"

#include <cmath>
#include <sstream>

#include "powerlim/cli/matrix_io.hpp"

namespace powerlim::cli {

using nlohmann::json;

json real_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json complex_json(Complex z) { return json::array({real_json(z.real()), real_json(z.imag())}); }

json to_json(const std::vector<EigCluster>& clusters) {
  json out = json::array();
  for (const auto& c : clusters) {
    json members = json::array();
    for (const auto& m : c.members) {
      members.push_back({{"value", complex_json(m.value)}, {"position", m.position}});
    }
    out.push_back({{"center", complex_json(c.center)},
                   {"multiplicity", c.multiplicity()},
                   {"members", std::move(members)}});
  }
  return out;
}

json to_json(const JCDecomp& jc) {
  json projectors = json::array();
  for (const auto& p : jc.projectors) projectors.push_back(matrix_to_json(p));
  return {{"d", matrix_to_json(jc.d)},
          {"n", matrix_to_json(jc.n)},
          {"projectors", std::move(projectors)},
          {"residuals",
           {{"commutator", real_json(jc.commutator_residual())},
            {"nilpotency", real_json(jc.nilpotency_residual())},
            {"partition", real_json(jc.partition_residual())},
            {"idempotency", real_json(jc.idempotency_residual())},
            {"diagonalizability", real_json(diagonalizability_residual(jc))}}}};
}

json to_json(const NestedFlag& flag) {
  json levels = json::array();
  for (double v : flag.levels) levels.push_back(real_json(v));
  json projections = json::array();
  for (const auto& p : flag.projections) projections.push_back(matrix_to_json(p.matrix()));
  return {{"levels", std::move(levels)},
          {"multiplicities", flag.multiplicities},
          {"projections", std::move(projections)}};
}

json to_json(const std::vector<SeriesPoint>& series) {
  json out = json::array();
  for (const auto& p : series) out.push_back({{"n", real_json(p.n)}, {"value", real_json(p.value)}});
  return out;
}

json to_json(const GrowthReport& report) {
  return {{"vector", vector_to_json(report.vector)["data"]},
          {"shell_index", report.shell_index},
          {"exponent", real_json(report.exponent)},
          {"series", to_json(report.series)}};
}

json to_json(const InvarianceTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"step", s.step},
                     {"log_norm", real_json(s.log_norm)},
                     {"shell", s.shell ? json(*s.shell) : json(nullptr)}});
  }
  return {{"initial_shell", trace.initial_shell},
          {"invariant", trace.invariant},
          {"degenerate", trace.degenerate},
          {"steps", std::move(steps)}};
}

json to_json(const TrajectoryReport& report) {
  json samples = json::array();
  for (const auto& s : report.witness.samples) {
    samples.push_back({{"t", real_json(s.t)}, {"log_norm", real_json(s.log_norm)}, {"rate", real_json(s.rate)}});
  }
  return {{"initial", vector_to_json(report.initial)["data"]},
          {"shell_index", report.shell_index},
          {"realpart", real_json(report.realpart)},
          {"growth_base", real_json(report.growth_base)},
          {"witness",
           {{"rho", real_json(report.witness.rho)},
            {"omega", real_json(report.witness.omega)},
            {"check_from", real_json(report.witness.check_from)},
            {"holds", report.witness.holds},
            {"samples", std::move(samples)}}}};
}

json to_json(const FlowInvarianceTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) steps.push_back({{"s", real_json(s.s)}, {"shell", s.shell}});
  return {{"initial_shell", trace.initial_shell}, {"invariant", trace.invariant}, {"steps", std::move(steps)}};
}

json to_json(const CheckResult& check) {
  return {{"name", check.name},       {"lhs", real_json(check.lhs)},
          {"rhs", real_json(check.rhs)}, {"slack", real_json(check.slack)},
          {"passed", check.passed},   {"scale", real_json(check.scale)},
          {"context", check.context}};
}

std::string series_csv(const std::vector<std::vector<SeriesPoint>>& columns, const std::string& label) {
  std::ostringstream os;
  os.precision(17);
  os << "n";
  for (std::size_t j = 0; j < columns.size(); ++j) os << ',' << label << (j + 1);
  os << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    os << columns.front()[i].n;
    for (const auto& col : columns) os << ',' << col[i].value;
    os << '\n';
  }
  return os.str();
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace powerlim::cli
