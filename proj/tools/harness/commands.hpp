#pragma once

#include "harness/corpus.hpp"
#include "harness/table.hpp"

#include "lmmroot/solvers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lmmroot::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitSolverFailure = 2;
inline constexpr int kExitBadArguments = 3;

enum class Command { rates, bench, pathology, robust };

struct RunConfig {
    Command command = Command::rates;
    unsigned digits = 300;  ///< significant decimal digits for bench
    int eta = 250;          ///< bench stops when |x_{l+1} - x_l| <= 10^-eta
    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> out;
    unsigned long long seed = 20180101;
    int s_max = 5;
    int d_max = 4;
    std::optional<double> delta;  ///< robust tolerance; empty means 2 eps
    int random_polynomials = 500;

    /// Throws Error(invalid_argument) on out-of-range values.
    void validate() const;
};

struct CommandOutput {
    int exit_code = kExitOk;
    std::string text;
    std::vector<std::string> diagnostics;
};

// rates

enum class RateTableKind { full, derivative_free, adams_bashforth };

struct RateRow {
    RateTableKind table;
    int s;
    int d;
    std::optional<double> value;
    std::string rounded;  ///< "n/a" where the method does not exist
    std::optional<std::string> published;
    bool matches = true;  ///< true when there is nothing to compare
};

std::vector<RateRow> compute_rates(int s_max, int d_max);
CommandOutput cmd_rates(const RunConfig& config);

// bench

struct MethodRun {
    std::string method;  ///< "newton", "s2", "s3"
    SolveStatus status = SolveStatus::max_iters;
    int iterations = 0;
    std::optional<double> rate;  ///< last usable order estimate
    bool rate_settled = false;
    std::string final_x;
};

struct BenchRow {
    const CorpusEntry* entry = nullptr;
    std::vector<MethodRun> runs;  ///< newton, s2, s3

    const MethodRun& run(const std::string& method) const;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    int totals[3] = {0, 0, 0};
    int published_totals[3] = {0, 0, 0};
    bool all_converged = true;
    bool rows_within_one = true;
    bool totals_within_five = true;
    int rate_rows_ok = 0;  ///< rows with p2 and p3 within 0.05 (x^3-x-1 s3 exempt)
};

BenchResult run_bench(unsigned digits, int eta);
CommandOutput cmd_bench(const RunConfig& config);

// pathology

struct TranscriptRun {
    std::string method;
    SolveStatus status = SolveStatus::max_iters;
    std::vector<double> xs;
    bool diverged = false;          ///< non-finite or escaping iterate
    bool false_convergence = false; ///< stopped on the increment away from the root
    bool reached_root = false;      ///< converged with |x| below eps
};

struct PathologyCase {
    const CorpusEntry* entry = nullptr;
    std::vector<TranscriptRun> runs;  ///< newton, s2, s3

    const TranscriptRun& run(const std::string& method) const;
};

struct PathologyResult {
    PathologyCase tanh_case;
    PathologyCase h_case;
    std::vector<std::string> failed_checks;
};

PathologyResult run_pathology();
CommandOutput cmd_pathology(const RunConfig& config);

/// Four significant digits, exponent without padding (e.g. -4.583e4).
std::string format_transcript(double x);

// robust

struct RobustRow {
    const CorpusEntry* entry = nullptr;
    SolveStatus status = SolveStatus::max_iters;
    int iterations = 0;
    long loop_evaluations = 0;
    double root = 0;
    double a = 0, b = 0;
    std::vector<std::string> methods;  ///< per-iteration variant or bisection/tolerance
};

struct RandomSweep {
    int count = 0;
    int converged = 0;
    int satisfied_criterion = 0;
    int max_iterations = 0;
};

struct RobustResult {
    std::vector<RobustRow> rows;
    int total_iterations = 0;
    long total_evaluations = 0;
    int published_total_lmm = 0;
    int published_total_brent = 0;
    bool all_converged = true;
    bool rows_within_two = true;
    RandomSweep sweep;
};

RobustResult run_robust(double delta, unsigned long long seed, int random_count);
CommandOutput cmd_robust(const RunConfig& config);

CommandOutput dispatch(const RunConfig& config);

}  // namespace lmmroot::harness
