#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrf/energy.hpp"
#include "mrf/message_passing.hpp"
#include "mrf/metrics.hpp"
#include "mrf/move_solvers.hpp"
#include "mrf/noise.hpp"

namespace mrf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitSolver = 3;

// Listed in report-row order.
enum class Method { Icm, Swap, BpS, Trws, BpM, Expansion };

std::optional<Method> parse_method(const std::string& name);  // icm, swap, bps, trws, bpm, expansion
std::string method_name(Method method);                       // the CLI token
std::string method_label(Method method);                      // the report row label
std::vector<Method> all_methods();

enum class InitMode {
    Observed,        // snap the observed image onto the label set
    MidGray,         // constant 128 (snapped)
    NeighborMedian,  // masked pixels take the median of nearby intact pixels
};
std::optional<InitMode> parse_init_mode(const std::string& name);

struct SolverOptions {
    std::int64_t lambda = 5;
    int k = 2;
    std::int64_t v_max = 5;
    int label_stride = 1;
    int move_cycles = 10;  // cycle cap for the move-making solvers
    int pass_cycles = 50;  // pass cap for the message-passing solvers
    InitMode init = InitMode::Observed;
    LabelOrder label_order = LabelOrder::Ascending;
    std::uint64_t order_seed = 0;
};

MrfModel model_for(const ImageGrid& observed, const PixelMask& mask, const SolverOptions& options);
Labeling initial_labeling(const MrfModel& model, InitMode mode);

struct DenoiseOutcome {
    ImageGrid restored;
    ConvergenceTrace trace;
    LowerBoundTrace bound;  // empty unless the method produces one
    std::int64_t initial_energy = 0;
    std::int64_t final_energy = 0;
};

DenoiseOutcome solve_with(const MrfModel& model, Method method, const SolverOptions& options);

std::string trace_csv(const ConvergenceTrace& trace);
std::string bound_csv(const LowerBoundTrace& trace);

struct BenchRequest {
    std::vector<std::string> images;
    std::vector<double> levels;   // corruption rates in (0, 1], split evenly between the two extremes
    std::vector<Method> methods;  // reordered into report order; duplicates dropped
    SolverOptions solver;
    std::uint64_t seed = 1;
    SsimMode ssim_mode = SsimMode::Global;
    std::string out_dir = ".";
};

/// The quality table for one image: one "Initial" row plus a row per method,
/// one column per corruption level, each cell "PSNR,SSIM" against the clean
/// source. Timing never enters, so the bytes are reproducible end to end.
std::string bench_table_csv(const ImageGrid& clean, const std::string& stem, const BenchRequest& request,
                            const std::string& out_dir_for_traces);

int cmd_corrupt(const std::string& input, double rate, std::uint64_t seed, const std::string& out_dir);
int cmd_denoise(const std::string& input, Method method, const SolverOptions& options, SsimMode ssim_mode,
                const std::string& truth_path, const std::string& out_dir);
int cmd_bench(const BenchRequest& request);
int cmd_superres(const std::string& low_path, int factor, Method method, const SolverOptions& options,
                 const std::string& truth_path, const std::string& out_dir);
int cmd_eval(const std::string& restored_path, const std::string& truth_path);

}  // namespace mrf
