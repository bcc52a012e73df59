#ifndef FYK_CLI_HPP
#define FYK_CLI_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fyk/constants_certificate.hpp"

namespace fyk {

enum class OutputFormat { Json, Csv };

/// Exit codes shared by every command.
enum ExitCode {
    kExitPass = 0,
    kExitUsage = 1,
    kExitVerificationFailure = 2,
    kExitNonConvergence = 3,
};

struct RunConfig {
    std::string command;
    double n = 7.0;
    double gamma = 0.3;
    std::vector<double> gamma_grid;
    std::vector<double> n_grid;
    int n_min = 6;
    int n_max = 30;
    double tol = 0.0;  // 0 selects the command's own default
    OutputFormat format = OutputFormat::Json;
    std::string output_path;  // empty writes to stdout
    std::uint64_t seed = 20240901;
    std::string input_path;  // curvature JSON for certify
    double zeta_min = 0.1;
    double zeta_max = 10.0;
    int zeta_count = 25;
    std::vector<double> betas;  // minimizer basis (empty = default 3-element)
};

struct CommandResult {
    int exit_code = kExitPass;
    std::string json;
    std::string csv;

    const std::string& payload(OutputFormat f) const {
        return f == OutputFormat::Json ? json : csv;
    }
};

class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// "lo:hi:step" -> inclusive grid; throws on malformed or empty grids.
std::vector<double> parse_grid(const std::string& text);

/// Strict parser for the curvature input schema:
/// {"umbilic": bool, "H": number, "F_trace_zero": bool,
///  "F_rho_derivative_zero": bool, "F_third_derivative_zero": bool,
///  "ric_rho_rho_rho": number, "weyl_norm_sq": number,
///  "trace_h3": number|null}
/// Unknown fields are rejected; errors carry the offending field name.
CurvatureData parse_curvature_json(const std::string& text);

/// Dispatches on config.command and builds both serializations. Writes the
/// selected format to config.output_path when set.
CommandResult run_command(const RunConfig& config);

}  // namespace fyk

#endif
