#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace commbound::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchema = 1;

enum class Command {
    analyze_matrix,
    approx_degree,
    compose,
    lower_bound,
    group_check,
    search_balanced,
    verify_suite,
};

std::string to_string(Command c);

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInapplicable = 1;
inline constexpr int kUsage = 2;
inline constexpr int kResource = 3;
inline constexpr int kSolver = 4;

struct RunConfig {
    Command command = Command::verify_suite;
    std::optional<std::string> help;  // set for --help; nothing else is valid

    // Matrices are a path or one of S4, S6, XOR2, H2; functions a path or NAME:arity.
    std::string input;
    std::string function;
    std::string inner;
    std::string mu;
    std::string pattern = "S4";
    std::string forbidden;
    std::vector<std::string> gmaps;
    std::string table;
    std::string values;
    std::vector<std::size_t> hard;
    std::string theorem;
    std::string output;
    std::string matrix_out;
    std::vector<std::string> suites;

    double epsilon = 1.0 / 3;
    double epsilon0 = 1.0 / 3;
    double tolerance = 1e-9;
    std::size_t enumeration_cap = 24;
    std::size_t entry_cap = std::size_t{1} << 24;
    std::optional<std::size_t> blocks;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t min_rank = 0;
    std::size_t max_results = 1000;
    std::size_t search_modulus = 0;
    std::size_t trials = 200;
    std::uint64_t seed = 0;

    bool dual = false;
    bool verify_rank = false;
    bool witness = false;
};

/// argv[0] is the program name. Throws ArgumentError naming the offending
/// flag for unknown flags, missing files and out-of-range values.
RunConfig parse_args(const std::vector<std::string>& argv);

/// Writes the JSON report to config.output, or to `out` when that is empty,
/// and returns the exit code. Library errors are reported in the JSON.
int run(const RunConfig& config, std::ostream& out);

/// parse_args + run, with usage errors on `err`.
int main(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace commbound::cli
