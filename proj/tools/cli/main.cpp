#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "commands.hpp"
#include "config.hpp"

namespace {

int default_workers() {
    if (const char* env = std::getenv("QUENCH_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "quench - damped-oscillator equilibrium, stationary entanglement, "
        "and sideband-cooling optimization"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int workers = default_workers();
    long seed = 0;
    std::vector<std::string> overrides;

    const char* names[] = {"equilibrium", "negativity", "cooling-limits",
                           "cool",        "optimize",   "maintain"};
    const char* descs[] = {
        "equilibrium observables over a (gamma, T, omega_d) grid",
        "logarithmic negativity over a (c0, gamma, T, omega_d) grid",
        "minimum phonon number vs cutoff for flat/Lorentzian/exponential kernels",
        "integrate the 16-moment dynamics under a fixed pulse",
        "steepest-descent pulse optimization of the terminal phonon number",
        "cooling followed by plateau-value search for the maintenance pulse"};
    for (int i = 0; i < 6; ++i) {
        auto* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--workers", workers, "worker thread count");
        sub->add_option("--seed", seed, "run seed (recorded in the manifest)");
        sub->add_option("--set", overrides,
                        "override a config key (key=value, repeatable)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    quench::cli::RunOptions opt;
    opt.out_dir = out_dir;
    opt.workers = workers;
    opt.seed = seed;

    try {
        const quench::cli::Json config =
            quench::cli::resolve_config(command, config_path, overrides);
        quench::cli::run_command(command, config, opt);
    } catch (const quench::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
