#pragma once

// JSON views of library results. Numbers are written in the shortest form that parses
// back to the same double; non-finite values become the strings "inf", "-inf", "nan".

#include <string>
#include <vector>

#include "json.hpp"
#include "powerlim/expflow.hpp"
#include "powerlim/jordan.hpp"
#include "powerlim/oracle.hpp"
#include "powerlim/yamamoto.hpp"

namespace powerlim::cli {

nlohmann::json real_json(double x);
nlohmann::json complex_json(Complex z);

nlohmann::json to_json(const std::vector<EigCluster>& clusters);
nlohmann::json to_json(const JCDecomp& jc);
nlohmann::json to_json(const NestedFlag& flag);
nlohmann::json to_json(const std::vector<SeriesPoint>& series);
nlohmann::json to_json(const GrowthReport& report);
nlohmann::json to_json(const InvarianceTrace& trace);
nlohmann::json to_json(const TrajectoryReport& report);
nlohmann::json to_json(const FlowInvarianceTrace& trace);
nlohmann::json to_json(const CheckResult& check);

/// CSV with header "n,<label>1,<label>2,..."; columns[j][i] is the value of column j at
/// row i, rows keyed by the n of the first column.
std::string series_csv(const std::vector<std::vector<SeriesPoint>>& columns, const std::string& label);

std::string dump_report(const nlohmann::json& report);

}  // namespace powerlim::cli
