#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cknlab/params.hpp"

namespace cknlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

// Environment variable holding the default worker count for sweeps and multi-start runs.
inline constexpr const char* kWorkersEnv = "CKNLAB_WORKERS";

struct Range {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;
    double at(int k) const { return steps == 1 ? min : min + (max - min) * k / (steps - 1); }
};

enum class BRule { Absolute, OffsetFromFs };
enum class Format { Csv, Json };

struct SweepSpec {
    int N = 4;
    Range a;
    Range b;
    BRule b_rule = BRule::Absolute;
    std::vector<std::string> tasks;  // subset of region, spectrum, gap, bounds, zhat, minimize
    std::string output;              // empty or "-" writes to standard output
    Format format = Format::Csv;
    std::uint64_t seed = 1;
    int starts = 2;    // random starts per point for the minimize task
    int workers = 0;   // 0: environment, then hardware concurrency

    static SweepSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// Single-point reports, as emitted by the subcommands.
nlohmann::json region_json(int N, double a, double b);
nlohmann::json spectrum_json(const CknParams& P, int imax, int jmax);
nlohmann::json gap_json(const CknParams& P);
nlohmann::json bounds_json(const CknParams& P);
nlohmann::json energy_json(const CknParams& P, double s, double eps);
nlohmann::json zhat_json(const CknParams& P);
nlohmann::json minimize_json(const CknParams& P, int starts, std::uint64_t seed, int workers);

// CSV header and rows (17 significant digits); rows follow the (a, b) grid order, a outer.
std::vector<std::string> sweep_columns(const SweepSpec& spec);
void run_sweep(const SweepSpec& spec, std::ostream& out);

int default_workers();

// args excludes the program name. Reports go to out, error documents to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cknlab::cli
