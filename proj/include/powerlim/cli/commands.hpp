#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "powerlim/matcore.hpp"

namespace powerlim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitNumerical = 2,
  kExitVerification = 3,
  kExitUsage = 64,
};

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  double tol_cluster = -1.0;  // negative: 1e-8 * max(1, ||A||)
  unsigned k = 20;
  double mem_tol = 1e-6;
  std::uint64_t seed = 42;
  std::string series_path;
  bool exp = false;
  std::string vectors_path;
  // verify
  Index dim = 4;
  std::size_t instances = 200;
  std::vector<double> p{0.5, 1.0, 2.0};
  bool inject_violation = false;
};

struct CommandResult {
  nlohmann::json report;
  int exit_code = kExitOk;
  std::string csv;  // written to Options::series_path when that is set
};

CommandResult cmd_analyze(const ComplexMatrix& a, const Options& options,
                          const std::vector<ComplexVector>& vectors = {});
CommandResult cmd_verify(const std::optional<ComplexMatrix>& a, const Options& options);
CommandResult cmd_growth(const ComplexMatrix& a, const std::vector<ComplexVector>& vectors,
                         const Options& options);
CommandResult cmd_exp(const ComplexMatrix& a, const Options& options,
                      const std::vector<ComplexVector>& vectors = {});

/// Full command line: parses arguments, runs one command, prints the report to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace powerlim::cli
