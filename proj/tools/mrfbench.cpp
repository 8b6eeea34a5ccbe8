#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mrf/bench.hpp"

namespace {

struct SolverFlags {
    mrf::SolverOptions options;
    std::string init = "observed";
    std::string order = "ascending";
};

void add_solver_flags(CLI::App* cmd, SolverFlags* flags) {
    cmd->add_option("--lambda", flags->options.lambda, "smoothness weight")
        ->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 20))
        ->capture_default_str();
    cmd->add_option("--k", flags->options.k, "pair cost exponent")->check(CLI::IsMember({1, 2}))->capture_default_str();
    cmd->add_option("--vmax", flags->options.v_max, "pair cost truncation ceiling")
        ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 20))
        ->capture_default_str();
    cmd->add_option("--label-stride", flags->options.label_stride, "keep every n-th intensity as a label (255 always kept)")
        ->check(CLI::Range(1, 255))
        ->capture_default_str();
    cmd->add_option("--max-cycles", flags->options.move_cycles, "cycle cap for icm/swap/expansion")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    cmd->add_option("--max-passes", flags->options.pass_cycles, "pass cap for bps/bpm/trws")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    cmd->add_option("--init", flags->init, "starting labeling for the move solvers")
        ->check(CLI::IsMember({"observed", "midgray", "median"}))
        ->capture_default_str();
    cmd->add_option("--order", flags->order, "label visit order for the move solvers")
        ->check(CLI::IsMember({"ascending", "random"}))
        ->capture_default_str();
    cmd->add_option("--order-seed", flags->options.order_seed, "shuffle seed for --order random")->capture_default_str();
}

mrf::SolverOptions resolve(const SolverFlags& flags) {
    mrf::SolverOptions options = flags.options;
    options.init = *mrf::parse_init_mode(flags.init);
    options.label_order = flags.order == "random" ? mrf::LabelOrder::SeededRandom : mrf::LabelOrder::Ascending;
    return options;
}

mrf::SsimMode resolve_ssim(const std::string& name) {
    return name == "windowed" ? mrf::SsimMode::Windowed : mrf::SsimMode::Global;
}

const std::vector<std::string>& method_tokens() {
    static const std::vector<std::string> tokens{"icm", "swap", "bps", "trws", "bpm", "expansion"};
    return tokens;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"salt-and-pepper denoising by grid MRF energy minimization"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an ini or toml file");

    std::string corrupt_input, corrupt_out = ".";
    double corrupt_rate = 0.0;
    std::uint64_t corrupt_seed = 1;
    CLI::App* corrupt = app.add_subcommand("corrupt", "shoot impulse noise into an image and emit the extreme-value mask");
    corrupt->add_option("input", corrupt_input, "clean pgm")->required();
    corrupt->add_option("--noise", corrupt_rate, "fraction of pixels to corrupt, split evenly between 0 and 255")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    corrupt->add_option("--seed", corrupt_seed, "rng seed")->capture_default_str();
    corrupt->add_option("--out", corrupt_out, "output directory")->capture_default_str();

    std::string den_input, den_method = "expansion", den_truth, den_out = ".", den_ssim = "global";
    SolverFlags den_flags;
    CLI::App* denoise = app.add_subcommand("denoise", "restore a corrupted image");
    denoise->add_option("input", den_input, "noisy pgm (pixels at 0 or 255 are treated as missing)")->required();
    denoise->add_option("--method", den_method, "solver")->check(CLI::IsMember(method_tokens()))->capture_default_str();
    denoise->add_option("--truth", den_truth, "clean pgm for quality metrics");
    denoise->add_option("--ssim", den_ssim, "ssim variant")->check(CLI::IsMember({"global", "windowed"}))->capture_default_str();
    denoise->add_option("--out", den_out, "output directory")->capture_default_str();
    add_solver_flags(denoise, &den_flags);

    std::vector<std::string> bench_images, bench_methods = method_tokens();
    std::vector<double> bench_levels{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::uint64_t bench_seed = 1;
    std::string bench_out = ".", bench_ssim = "global";
    SolverFlags bench_flags;
    CLI::App* bench = app.add_subcommand("bench", "corrupt at several rates, restore with several solvers, tabulate quality");
    bench->add_option("--images", bench_images, "clean pgm files")->required()->expected(-1);
    bench->add_option("--levels", bench_levels, "corruption rates in (0, 1]")->expected(-1)->capture_default_str();
    bench->add_option("--methods", bench_methods, "solvers to run")
        ->expected(-1)
        ->check(CLI::IsMember(method_tokens()))
        ->capture_default_str();
    bench->add_option("--seed", bench_seed, "base rng seed; per image and level seeds derive from it")->capture_default_str();
    bench->add_option("--ssim", bench_ssim, "ssim variant")->check(CLI::IsMember({"global", "windowed"}))->capture_default_str();
    bench->add_option("--out", bench_out, "output directory")->capture_default_str();
    add_solver_flags(bench, &bench_flags);

    std::string sr_input, sr_method = "expansion", sr_truth, sr_out = ".";
    int sr_factor = 2;
    SolverFlags sr_flags;
    CLI::App* superres = app.add_subcommand("superres", "upscale by treating the missing grid positions as masked pixels");
    superres->add_option("input", sr_input, "low resolution pgm")->required();
    superres->add_option("--factor", sr_factor, "upscaling factor")->check(CLI::Range(2, 16))->capture_default_str();
    superres->add_option("--method", sr_method, "solver")->check(CLI::IsMember(method_tokens()))->capture_default_str();
    superres->add_option("--truth", sr_truth, "full resolution pgm for quality metrics");
    superres->add_option("--out", sr_out, "output directory")->capture_default_str();
    add_solver_flags(superres, &sr_flags);

    std::string eval_restored, eval_truth;
    CLI::App* eval = app.add_subcommand("eval", "print mse / psnr and both ssim variants between two images");
    eval->add_option("restored", eval_restored, "pgm under test")->required();
    eval->add_option("truth", eval_truth, "reference pgm")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return mrf::kExitUsage;
    }

    if (app.got_subcommand(corrupt)) return mrf::cmd_corrupt(corrupt_input, corrupt_rate, corrupt_seed, corrupt_out);

    if (app.got_subcommand(denoise))
        return mrf::cmd_denoise(den_input, *mrf::parse_method(den_method), resolve(den_flags), resolve_ssim(den_ssim),
                                den_truth, den_out);

    if (app.got_subcommand(bench)) {
        mrf::BenchRequest request;
        request.images = bench_images;
        request.levels = bench_levels;
        for (const std::string& name : bench_methods) request.methods.push_back(*mrf::parse_method(name));
        request.solver = resolve(bench_flags);
        request.seed = bench_seed;
        request.ssim_mode = resolve_ssim(bench_ssim);
        request.out_dir = bench_out;
        for (double level : request.levels) {
            if (!(level > 0.0) || level > 1.0) {
                std::fprintf(stderr, "corruption levels must lie in (0, 1]\n");
                return mrf::kExitUsage;
            }
        }
        return mrf::cmd_bench(request);
    }

    if (app.got_subcommand(superres))
        return mrf::cmd_superres(sr_input, sr_factor, *mrf::parse_method(sr_method), resolve(sr_flags), sr_truth, sr_out);

    return mrf::cmd_eval(eval_restored, eval_truth);
}
