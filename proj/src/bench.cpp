#include "mrf/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace mrf {

namespace {

const char* kMethodNames[] = {"icm", "swap", "bps", "trws", "bpm", "expansion"};
const char* kMethodLabels[] = {"ICM", "Swap", "BP-S", "TRW-S", "BP-M", "Expansion"};

std::string path_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::string join(const std::string& dir, const std::string& name) {
    if (dir.empty()) return name;
    return (std::filesystem::path(dir) / name).string();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("short write to " + path);
}

// splitmix-style mixer deriving per-image / per-level corruption seeds from
// the benchmark seed, so every cell is reproducible in isolation.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::string format_percent(double level) {
    const double p = level * 100.0;
    const long long r = std::llround(p);
    char buf[32];
    if (std::abs(p - static_cast<double>(r)) < 1e-6)
        std::snprintf(buf, sizeof(buf), "%lld%%", r);
    else
        std::snprintf(buf, sizeof(buf), "%.1f%%", p);
    return buf;
}

std::string quality_cell(const MetricReport& report) {
    return format_metric(report.psnr) + "," + format_metric(report.ssim);
}

std::string init_mode_name(InitMode mode) {
    switch (mode) {
        case InitMode::Observed: return "observed";
        case InitMode::MidGray: return "midgray";
        default: return "median";
    }
}

}  // namespace

std::optional<Method> parse_method(const std::string& name) {
    for (int i = 0; i < 6; ++i)
        if (name == kMethodNames[i]) return static_cast<Method>(i);
    return std::nullopt;
}

std::string method_name(Method method) { return kMethodNames[static_cast<int>(method)]; }
std::string method_label(Method method) { return kMethodLabels[static_cast<int>(method)]; }

std::vector<Method> all_methods() {
    return {Method::Icm, Method::Swap, Method::BpS, Method::Trws, Method::BpM, Method::Expansion};
}

std::optional<InitMode> parse_init_mode(const std::string& name) {
    if (name == "observed") return InitMode::Observed;
    if (name == "midgray") return InitMode::MidGray;
    if (name == "median") return InitMode::NeighborMedian;
    return std::nullopt;
}

MrfModel model_for(const ImageGrid& observed, const PixelMask& mask, const SolverOptions& options) {
    std::vector<std::uint8_t> labels;
    if (options.label_stride != 1) labels = strided_label_range(options.label_stride);
    return build_model(observed, mask, options.lambda, options.k, options.v_max, std::move(labels));
}

Labeling initial_labeling(const MrfModel& model, InitMode mode) {
    if (mode == InitMode::Observed) return labeling_from_image(model, model.observed);
    if (mode == InitMode::MidGray)
        return labeling_from_image(model, ImageGrid(model.width, model.height, 128));

    // masked pixels borrow the median of intact pixels nearby, widening the
    // window until one is found
    ImageGrid filled = model.observed;
    std::vector<int> window;
    for (int r = 0; r < model.height; ++r) {
        for (int c = 0; c < model.width; ++c) {
            const std::size_t i = model.index(r, c);
            if (!model.missing(i)) continue;
            window.clear();
            for (int radius = 1; radius <= 7 && window.empty(); ++radius) {
                for (int dr = -radius; dr <= radius; ++dr) {
                    for (int dc = -radius; dc <= radius; ++dc) {
                        const int rr = r + dr, cc = c + dc;
                        if (rr < 0 || rr >= model.height || cc < 0 || cc >= model.width) continue;
                        if (!model.missing(model.index(rr, cc))) window.push_back(model.observed.at(rr, cc));
                    }
                }
            }
            if (window.empty()) {
                filled.pixels[i] = 128;
            } else {
                std::sort(window.begin(), window.end());
                filled.pixels[i] = static_cast<std::uint8_t>(window[(window.size() - 1) / 2]);
            }
        }
    }
    return labeling_from_image(model, filled);
}

DenoiseOutcome solve_with(const MrfModel& model, Method method, const SolverOptions& options) {
    SolverConfig config;
    config.label_order = options.label_order;
    config.order_seed = options.order_seed;

    DenoiseOutcome outcome;
    SolveResult result;
    switch (method) {
        case Method::Icm:
            config.max_cycles = options.move_cycles;
            result = run_icm(model, initial_labeling(model, options.init), config);
            break;
        case Method::Swap:
            config.max_cycles = options.move_cycles;
            result = run_swap(model, initial_labeling(model, options.init), config);
            break;
        case Method::Expansion:
            config.max_cycles = options.move_cycles;
            result = run_expansion(model, initial_labeling(model, options.init), config);
            break;
        case Method::BpS:
            config.max_cycles = options.pass_cycles;
            result = run_bp(model, initial_labeling(model, options.init), config, BpSchedule::Sequential);
            break;
        case Method::BpM:
            config.max_cycles = options.pass_cycles;
            result = run_bp(model, initial_labeling(model, options.init), config, BpSchedule::Synchronous);
            break;
        case Method::Trws: {
            config.max_cycles = options.pass_cycles;
            TrwsResult trws = run_trws(model, initial_labeling(model, options.init), config);
            outcome.bound = std::move(trws.bound);
            result.labeling = std::move(trws.labeling);
            result.trace = std::move(trws.trace);
            break;
        }
    }
    outcome.restored = labeling_to_image(result.labeling);
    outcome.trace = std::move(result.trace);
    outcome.initial_energy = outcome.trace.samples.front().energy;
    outcome.final_energy = outcome.trace.samples.back().energy;
    return outcome;
}

std::string trace_csv(const ConvergenceTrace& trace) {
    std::string out = "cycle,energy,seconds\n";
    char buf[96];
    for (const TraceSample& s : trace.samples) {
        std::snprintf(buf, sizeof(buf), "%d,%lld,%.3f\n", s.cycle, static_cast<long long>(s.energy), s.seconds);
        out += buf;
    }
    return out;
}

std::string bound_csv(const LowerBoundTrace& trace) {
    std::string out = "pass,lower_bound\n";
    char buf[64];
    for (const LowerBoundSample& s : trace.samples) {
        std::snprintf(buf, sizeof(buf), "%d,%.1f\n", s.pass, s.lower_bound);
        out += buf;
    }
    return out;
}

std::string bench_table_csv(const ImageGrid& clean, const std::string& stem, const BenchRequest& request,
                            const std::string& out_dir_for_traces) {
    if (request.levels.empty()) throw std::invalid_argument("bench needs at least one corruption level");
    for (double level : request.levels)
        if (!(level > 0.0) || level > 1.0) throw std::invalid_argument("corruption levels must lie in (0, 1]");

    // canonical report order, duplicates dropped
    std::vector<Method> methods;
    for (Method m : all_methods())
        if (std::find(request.methods.begin(), request.methods.end(), m) != request.methods.end())
            methods.push_back(m);
    if (methods.empty()) throw std::invalid_argument("bench needs at least one method");

    std::vector<std::vector<std::string>> cells(1 + methods.size());
    for (std::size_t li = 0; li < request.levels.size(); ++li) {
        const double level = request.levels[li];
        NoiseSpec spec{level / 2.0, level / 2.0, mix_seed(request.seed, li)};
        const ImageGrid noisy = corrupt(clean, spec);
        const PixelMask mask = detect_min_max(noisy);
        const MrfModel model = model_for(noisy, mask, request.solver);

        cells[0].push_back(quality_cell(evaluate(noisy, clean, request.ssim_mode)));
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            // a failed cell is recorded as such and the grid keeps going
            try {
                const DenoiseOutcome outcome = solve_with(model, methods[mi], request.solver);
                cells[1 + mi].push_back(quality_cell(evaluate(outcome.restored, clean, request.ssim_mode)));
                if (!out_dir_for_traces.empty()) {
                    const std::string base = stem + "_" + method_name(methods[mi]) + "_" + format_percent(level);
                    const std::string trace_name = base.substr(0, base.size() - 1) + "_trace.csv";  // drop '%'
                    write_text_file(join(out_dir_for_traces, trace_name), trace_csv(outcome.trace));
                    if (!outcome.bound.samples.empty()) {
                        const std::string bound_name = base.substr(0, base.size() - 1) + "_bound.csv";
                        write_text_file(join(out_dir_for_traces, bound_name), bound_csv(outcome.bound));
                    }
                }
            } catch (const std::exception& e) {
                std::fprintf(stderr, "%s %s at %s: %s\n", stem.c_str(), method_name(methods[mi]).c_str(),
                             format_percent(level).c_str(), e.what());
                cells[1 + mi].push_back("error");
            }
        }
    }

    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "# cells are \"PSNR,SSIM\" vs the clean source; corruption split evenly between black and white; "
                  "seed=%llu lambda=%lld k=%d v_max=%lld stride=%d cycles=%d passes=%d init=%s ssim=%s\n",
                  static_cast<unsigned long long>(request.seed), static_cast<long long>(request.solver.lambda),
                  request.solver.k, static_cast<long long>(request.solver.v_max), request.solver.label_stride,
                  request.solver.move_cycles, request.solver.pass_cycles, init_mode_name(request.solver.init).c_str(),
                  request.ssim_mode == SsimMode::Global ? "global" : "windowed");
    std::string out = buf;
    out += "method";
    for (double level : request.levels) out += "," + format_percent(level);
    out += '\n';
    for (std::size_t row = 0; row < cells.size(); ++row) {
        out += row == 0 ? "Initial" : method_label(methods[row - 1]);
        for (const std::string& cell : cells[row]) out += ",\"" + cell + "\"";
        out += '\n';
    }
    return out;
}

int cmd_corrupt(const std::string& input, double rate, std::uint64_t seed, const std::string& out_dir) {
    if (rate < 0.0 || rate > 1.0) {
        std::fprintf(stderr, "corruption rate must lie in [0, 1]\n");
        return kExitUsage;
    }
    ImageGrid image;
    try {
        image = load_pgm(input);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitIo;
    }
    const ImageGrid noisy = corrupt(image, NoiseSpec{rate / 2.0, rate / 2.0, seed});
    const PixelMask mask = detect_min_max(noisy);
    const std::string stem = path_stem(input);
    try {
        save_pgm(noisy, join(out_dir, stem + "_noisy.pgm"));
        save_pgm(mask_to_image(mask), join(out_dir, stem + "_mask.pgm"));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitIo;
    }
    std::printf("%s: corrupted %zu of %zu pixels (rate %.3f, seed %llu)\n", stem.c_str(), mask.missing_count(),
                noisy.size(), rate, static_cast<unsigned long long>(seed));
    return kExitOk;
}

int cmd_denoise(const std::string& input, Method method, const SolverOptions& options, SsimMode ssim_mode,
                const std::string& truth_path, const std::string& out_dir) {
    ImageGrid noisy, truth;
    bool have_truth = false;
    try {
        noisy = load_pgm(input);
        if (!truth_path.empty()) {
            truth = load_pgm(truth_path);
            have_truth = true;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitIo;
    }

    DenoiseOutcome outcome;
    try {
        const MrfModel model = model_for(noisy, detect_min_max(noisy), options);
        outcome = solve_with(model, method, options);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver failed: %s\n", e.what());
        return kExitSolver;
    }

    const std::string stem = path_stem(input);
    const std::string tag = method_name(method);
    try {
        save_pgm(outcome.restored, join(out_dir, stem + "_" + tag + ".pgm"));
        write_text_file(join(out_dir, stem + "_" + tag + "_trace.csv"), trace_csv(outcome.trace));
        if (!outcome.bound.samples.empty())
            write_text_file(join(out_dir, stem + "_" + tag + "_bound.csv"), bound_csv(outcome.bound));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitIo;
    }

    std::printf("%s %s: energy %lld -> %lld in %d cycles\n", stem.c_str(), tag.c_str(),
                static_cast<long long>(outcome.initial_energy), static_cast<long long>(outcome.final_energy),
                outcome.trace.samples.back().cycle);
    if (have_truth) {
        try {
            const MetricReport report = evaluate(outcome.restored, truth, ssim_mode);
            std::printf("PSNR %s SSIM %s\n", format_metric(report.psnr).c_str(), format_metric(report.ssim).c_str());
        } catch (const std::exception& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitIo;
        }
    }
    return kExitOk;
}

int cmd_bench(const BenchRequest& request) {
    for (std::size_t ii = 0; ii < request.images.size(); ++ii) {
        const std::string& path = request.images[ii];
        ImageGrid clean;
        try {
            clean = load_pgm(path);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitIo;
        }
        const std::string stem = path_stem(path);
        BenchRequest per_image = request;
        per_image.seed = mix_seed(request.seed, 1000 + ii);
        std::string table;
        try {
            table = bench_table_csv(clean, stem, per_image, request.out_dir);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitUsage;
        }
        const std::string table_path = join(request.out_dir, stem + "_table.csv");
        try {
            write_text_file(table_path, table);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitIo;
        }
        std::printf("wrote %s\n", table_path.c_str());
    }
    return kExitOk;
}

int cmd_superres(const std::string& low_path, int factor, Method method, const SolverOptions& options,
                 const std::string& truth_path, const std::string& out_dir) {
    ImageGrid low, truth;
    bool have_truth = false;
    try {
        low = load_pgm(low_path);
        if (!truth_path.empty()) {
            truth = load_pgm(truth_path);
            have_truth = true;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitIo;
    }

    DenoiseOutcome outcome;
    try {
        const SuperresProblem problem = build_superres_problem(low, factor);
        const MrfModel model = model_for(problem.grid, problem.mask, options);
        outcome = solve_with(model, method, options);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver failed: %s\n", e.what());
        return kExitSolver;
    }

    const std::string stem = path_stem(low_path);
    const std::string tag = method_name(method);
    try {
        save_pgm(outcome.restored, join(out_dir, stem + "_x" + std::to_string(factor) + "_" + tag + ".pgm"));
        write_text_file(join(out_dir, stem + "_x" + std::to_string(factor) + "_" + tag + "_trace.csv"),
                        trace_csv(outcome.trace));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitIo;
    }

    std::printf("%s x%d %s: energy %lld -> %lld\n", stem.c_str(), factor, tag.c_str(),
                static_cast<long long>(outcome.initial_energy), static_cast<long long>(outcome.final_energy));
    if (have_truth) {
        try {
            const MetricReport report = evaluate(outcome.restored, truth, SsimMode::Global);
            std::printf("PSNR %s SSIM %s\n", format_metric(report.psnr).c_str(), format_metric(report.ssim).c_str());
        } catch (const std::exception& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitIo;
        }
    }
    return kExitOk;
}

int cmd_eval(const std::string& restored_path, const std::string& truth_path) {
    try {
        const ImageGrid restored = load_pgm(restored_path);
        const ImageGrid truth = load_pgm(truth_path);
        std::printf("MSE %s PSNR %s SSIM(global) %s SSIM(windowed) %s\n", format_metric(mse(restored, truth)).c_str(),
                    format_metric(psnr(restored, truth)).c_str(),
                    format_metric(ssim(restored, truth, SsimMode::Global)).c_str(),
                    format_metric(ssim(restored, truth, SsimMode::Windowed)).c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace mrf
