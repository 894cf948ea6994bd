#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hicache/basis.hpp"
#include "hicache/sim.hpp"
#include "hicache/trace_io.hpp"

namespace hicache::cli {

enum class OutputFormat { Csv, Json };

inline constexpr int kSchemaVersion = 1;

/// Generator flags shared by simulate, compare, gauss-test and ablate-sigma.
struct GeneratorOptions {
    std::string kind = "gp-se";
    std::size_t dim = 16;
    std::int64_t steps = 50;
    std::uint64_t seed = 0;
    double length_scale = 8.0;
    double amplitude = 1.0;
    double theta = 0.5;
    /// Defaults to 1 for ou and 0 for poly.
    std::optional<double> noise;
    std::optional<double> x0;
    int degree = 1;
    double coeff_scale = 1.0;

    GeneratorSpec to_spec(std::uint64_t seed_override) const;
    GeneratorSpec to_spec() const { return to_spec(seed); }
};

struct SimulateOptions {
    GeneratorOptions gen;
    std::filesystem::path out;
    TraceFormat format = TraceFormat::Binary;
};

struct PredictOptions {
    std::filesystem::path trace;
    int interval = 6;
    int order = 2;
    BasisKind basis = BasisKind::ScaledHermite;
    double sigma = 0.5;
    std::uint64_t busy_work = 0;
    std::optional<std::filesystem::path> steps_out;
    std::optional<std::filesystem::path> summary_out;
};

struct CompareOptions {
    GeneratorOptions gen;
    /// Evaluate a single recorded trace instead of a generated campaign.
    std::optional<std::filesystem::path> trace;
    std::size_t seeds = 100;
    int interval = 6;
    std::vector<int> orders = {1, 2, 3, 4, 5};
    double sigma = 0.5;
    /// Reference (numerator) basis; "hermite" with reference_sigma is only
    /// useful for self-ratio checks.
    BasisKind reference = BasisKind::TaylorMonomial;
    double reference_sigma = 0.5;
    bool cumulative = false;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::filesystem::path> out;
};

struct GaussTestOptions {
    GeneratorOptions gen;
    std::optional<std::filesystem::path> trace;
    int interval = 6;
    int max_order = 5;
    std::size_t n_mc_reference = 2048;
    std::size_t replicates = 199;
    std::uint64_t test_seed = 0;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::filesystem::path> out;
};

struct AblateOptions {
    GeneratorOptions gen;
    std::size_t seeds = 100;
    int interval = 7;
    int order = 2;
    std::vector<double> sigmas = {0.4, 0.5, 0.7, 1.0};
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::filesystem::path> out;
};

/// One row of the compare table: mean error ratio over seeds for one
/// (order, horizon) cell.
struct RatioCell {
    int order = 0;
    int horizon = 0;
    std::size_t n = 0;
    std::size_t undefined = 0;
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double cum_mean = 0.0;
    double cum_ci_low = 0.0;
    double cum_ci_high = 0.0;
    double reference_mse = 0.0;
    double candidate_mse = 0.0;
};

struct AblationRow {
    BasisKind basis = BasisKind::TaylorMonomial;
    double sigma = 1.0;
    double mse = 0.0;
    std::optional<double> ratio_vs_taylor;
};

// Each cmd_* returns the rendered output (what is written to --out or stdout)
// and throws hicache::Error on failure.

std::string cmd_simulate(const SimulateOptions& options);

struct PredictOutput {
    std::string steps_csv;
    std::string summary_json;
};
PredictOutput cmd_predict(const PredictOptions& options);

std::vector<RatioCell> compare_campaign(const CompareOptions& options);
std::string cmd_compare(const CompareOptions& options);

std::string cmd_gauss_test(const GaussTestOptions& options);

std::vector<AblationRow> ablation_campaign(const AblateOptions& options);
std::string cmd_ablate_sigma(const AblateOptions& options);

/// Parses flags and dispatches. Returns the process exit code; diagnostics
/// go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hicache::cli
