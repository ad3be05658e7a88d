#ifndef APPINT_CLI_HPP
#define APPINT_CLI_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "appint/appint.hpp"
#include "appint/spectra.hpp"
#include "appint/subdivision.hpp"

namespace appint::cli {

struct Tolerances {
    double interpolation = 1e-9;
    double reproduction = 1e-9;
    double bezout = 1e-10;
    double coprimality = 1e-8;
};

struct SchemeConfig {
    SymbolProgram program;
    std::vector<InterpolatorySelection> selections;  // empty = centered default
    int levels = 5;
    std::optional<SpectrumSpec> spectrum;  // verification spectrum override
    Tolerances tolerances;
    SolverChoice solver = SolverChoice::Both;
    std::map<std::string, std::string> output;  // optional default paths
};

/// Parses and validates a config file; unknown fields are rejected.
SchemeConfig load_config(const std::string& path);

/// Verification spectrum: explicit override, else derived from the program.
SpectrumSpec resolve_spectrum(const SchemeConfig& config);

// Exit codes: 0 ok, 2 validation, 3 coprimality, 4 tolerance exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCoprimality = 3;
inline constexpr int kExitTolerance = 4;

int cmd_convert(const SchemeConfig& config, const std::string& out_path);
int cmd_subdivide(const SchemeConfig& config, const std::string& points_path, int levels,
                  const std::string& out_path, bool valid_column);
int cmd_verify(const SchemeConfig& config, int levels, std::optional<double> tol_override,
               const std::string& report_path);
int cmd_plot(const std::string& csv_path, const std::string& svg_path, int width, int height);

/// Full argument-vector entry point (argv[0] excluded). The APPINT_SOLVER
/// environment variable overrides the configured solver.
int run_cli(const std::vector<std::string>& args);

} // namespace appint::cli

#endif
