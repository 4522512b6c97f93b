#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <Eigen/Core>
#include "CLI11.hpp"

#include "freqbin/errors.hpp"
#include "freqbin/kernels.hpp"
#include "freqbin/pipelines.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw freqbin::ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"freqbin: frequency-bin biphoton synthesis and measurement simulator"};
    app.footer("pipelines: jsi jta schmidt hom tof netsim\n"
               "environment: FREQBIN_THREADS (linear-algebra threads), "
               "FREQBIN_KERNELS (scalar|avx2)");

    std::string pipeline, config_path, out_dir, preset;
    std::uint64_t seed = 0;
    bool have_seed = false, list_presets = false;
    app.add_option("pipeline", pipeline, "pipeline to run (may also come from the config)");
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--preset", preset, "named parameter preset");
    auto* seed_opt = app.add_option("--seed", seed, "master random seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--list-presets", list_presets, "list available presets and exit");

    CLI11_PARSE(app, argc, argv);
    have_seed = seed_opt->count() > 0;

    if (list_presets) {
        for (const auto& name : freqbin::preset_names())
            std::cout << name << "  -  " << freqbin::preset_description(name) << '\n';
        return 0;
    }

    if (const char* threads = std::getenv("FREQBIN_THREADS")) {
        const int n = std::atoi(threads);
        if (n > 0) Eigen::setNbThreads(n);
    }

    try {
        std::string text;
        if (!config_path.empty()) text = read_file(config_path);
        if (!preset.empty()) text = "preset = " + preset + "\n" + text;
        if (!pipeline.empty()) text += "\npipeline = " + pipeline + "\n";

        freqbin::RunConfig cfg = freqbin::parse_config(text);
        if (have_seed) cfg.seed = seed;
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        const freqbin::Manifest man = freqbin::run_pipeline(cfg);
        for (const auto& w : man.warnings) std::cerr << "warning: " << w << '\n';
        std::cout << "pipeline " << man.pipeline << " done; outputs in " << cfg.out_dir << '\n';
        std::cout << man.metrics.dump(2) << '\n';
        return 0;
    } catch (const freqbin::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
