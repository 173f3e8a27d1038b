#include "commands.hpp"

#include <cmath>
#include <cstdio>

#include "output.hpp"
#include "parallel.hpp"
#include "quench/control.hpp"
#include "quench/entanglement.hpp"
#include "quench/equilibrium.hpp"
#include "quench/moments.hpp"
#include "quench/sideband.hpp"
#include "quench/spectral.hpp"

namespace quench::cli {

namespace {

std::string task_name(const char* prefix, std::size_t i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu", prefix, i);
    return buf;
}

Json result_json(const OptimizationResult& r) {
    Json j;
    j["segments"] = r.segments;
    j["segment_duration"] = r.segment_duration;
    j["objective_value"] = r.objective_value;
    j["gradient_norm_history"] = r.gradient_norm_history;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    return j;
}

std::string trajectory_csv(const Trajectory& tr) {
    CsvBuilder csv({"t", "nbar", "pulse"});
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        csv.add_row({tr.t[i], tr.nbar(i), tr.pulse[i]});
    }
    return csv.bytes();
}

void cmd_equilibrium(const Json& config, const RunOptions& opt) {
    const double omega0 = as_number(config, "omega0");
    const auto gammas = expand_axis(config.at("gamma"), "gamma");
    const auto temps = expand_axis(config.at("temperature"), "temperature");
    const auto cutoffs = expand_axis(config.at("omega_d"), "omega_d");

    struct Cell {
        double t, wd, g;
    };
    std::vector<Cell> cells;
    for (double g : gammas)
        for (double t : temps)
            for (double wd : cutoffs) cells.push_back({t, wd, g});

    std::vector<EquilibriumReport> rows(cells.size());
    const OscillatorParams osc{1.0, omega0};
    parallel_for(cells.size(), opt.workers, [&](std::size_t i) {
        const BathParams bath(cells[i].t,
                              SpectralDensity::drude(cells[i].g, cells[i].wd));
        rows[i] = equilibrium_report(osc, bath);
    });

    CsvBuilder csv({"T", "omega_d", "gamma", "q2", "p2", "omega_eff", "z_ratio",
                    "log_z_ratio", "s_ratio", "delta"});
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& r = rows[i];
        csv.add_row({cells[i].t, cells[i].wd, cells[i].g, r.q2, r.p2,
                     r.omega_eff, r.z_ratio, std::log(r.z_ratio), r.s_ratio,
                     r.delta});
    }
    write_outputs(opt.out_dir, "equilibrium", config, opt.seed,
                  {{"equilibrium.csv", csv.bytes()}},
                  {{"grid", "ok"}});
}

void cmd_negativity(const Json& config, const RunOptions& opt) {
    const double omega0 = as_number(config, "omega0");
    const auto c0s = expand_axis(config.at("c0"), "c0");
    const auto gammas = expand_axis(config.at("gamma"), "gamma");
    const auto temps = expand_axis(config.at("temperature"), "temperature");
    const auto cutoffs = expand_axis(config.at("omega_d"), "omega_d");

    struct Cell {
        double t, wd, g, c0;
    };
    std::vector<Cell> cells;
    for (double c0 : c0s)
        for (double g : gammas)
            for (double t : temps)
                for (double wd : cutoffs) cells.push_back({t, wd, g, c0});

    std::vector<double> en(cells.size());
    const OscillatorParams osc{1.0, omega0};
    parallel_for(cells.size(), opt.workers, [&](std::size_t i) {
        const TwoModeSystem sys{
            osc, cells[i].c0,
            BathParams(cells[i].t,
                       SpectralDensity::drude(cells[i].g, cells[i].wd))};
        en[i] = log_negativity(equilibrium_covariance(sys));
    });

    CsvBuilder csv({"T", "omega_d", "gamma", "c0", "e_n", "separable"});
    for (std::size_t i = 0; i < cells.size(); ++i) {
        csv.add_row({cells[i].t, cells[i].wd, cells[i].g, cells[i].c0, en[i],
                     en[i] == 0.0 ? 1.0 : 0.0});
    }
    write_outputs(opt.out_dir, "negativity", config, opt.seed,
                  {{"negativity.csv", csv.bytes()}}, {{"grid", "ok"}});
}

void cmd_cooling_limits(const Json& config, const RunOptions& opt) {
    const double omega_m = as_number(config, "omega_m");
    const double kappa = as_number(config, "kappa");
    const auto cutoffs = expand_axis(config.at("omega_c"), "omega_c");

    const double n_m = n_m_langevin(kappa, omega_m);
    CsvBuilder csv({"omega_c", "n_m", "n_nml", "n_nme", "ratio_nml",
                    "ratio_nme"});
    for (double wc : cutoffs) {
        const double nml =
            n_min_nonmarkovian(SpectralDensity::drude(kappa, wc), omega_m);
        const double nme =
            n_min_nonmarkovian(SpectralDensity::ohmic_exp(kappa, wc), omega_m);
        csv.add_row({wc, n_m, nml, nme, nml / n_m, nme / n_m});
    }
    write_outputs(opt.out_dir, "cooling-limits", config, opt.seed,
                  {{"cooling_limits.csv", csv.bytes()}}, {{"sweep", "ok"}});
}

void cmd_cool(const Json& config, const RunOptions& opt) {
    const double omega_m = as_number(config, "omega_m");
    const auto gammas = expand_axis(config.at("gamma"), "gamma");
    const double kappa = as_number(config, "kappa");
    const double n_t = as_number(config, "n_t");
    const double n_cav = as_number(config, "n_cav");
    const double period = 2.0 * M_PI / omega_m;
    const double t_f = as_number(config, "t_f_periods") * period;
    const double dt = period / static_cast<double>(as_integer(config, "dt_per_period"));
    const int stride = static_cast<int>(as_integer(config, "output_stride"));

    const Json& pspec = config.at("pulse");
    auto make_pulse = [&]() {
        const std::string kind = pspec.at("kind");
        if (kind == "constant") {
            return ControlPulse::constant(pspec.at("value").get<double>());
        }
        const auto vals = pspec.at("values").get<std::vector<double>>();
        return ControlPulse::sampled(t_f / static_cast<double>(vals.size()),
                                     vals);
    };

    std::vector<std::string> csvs(gammas.size());
    parallel_for(gammas.size(), opt.workers, [&](std::size_t i) {
        const DynParams p{omega_m, gammas[i], kappa, n_t, n_cav};
        const Trajectory tr = integrate(thermal_initial(n_t, n_cav), p,
                                        make_pulse(), t_f, dt, stride);
        csvs[i] = trajectory_csv(tr);
    });

    std::vector<OutputFile> files;
    std::vector<TaskStatus> tasks;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        const std::string name = task_name("cool", i);
        files.push_back({name + ".csv", csvs[i]});
        tasks.push_back({name + " gamma=" + fmt17(gammas[i]), "ok"});
    }
    write_outputs(opt.out_dir, "cool", config, opt.seed, files, tasks);
}

OptimizerConfig optimizer_config(const Json& config, double omega_m) {
    OptimizerConfig cfg;
    cfg.n_segments = static_cast<int>(as_integer(config, "n_segments"));
    cfg.t_f = as_number(config, "t_f");
    cfg.tau = as_number(config, "tau");
    cfg.epsilon = as_number(config, "epsilon");
    cfg.max_iters = static_cast<int>(as_integer(config, "max_iters"));
    cfg.dt_target = 2.0 * M_PI / omega_m /
                    static_cast<double>(as_integer(config, "dt_per_period"));
    cfg.g_max = as_number(config, "g_max");
    return cfg;
}

void cmd_optimize(const Json& config, const RunOptions& opt) {
    const double omega_m = as_number(config, "omega_m");
    const auto gammas = expand_axis(config.at("gamma"), "gamma");
    const double kappa_cfg = as_number(config, "kappa");
    const double n_t = as_number(config, "n_t");
    const double n_cav = as_number(config, "n_cav");
    const double initial_g = as_number(config, "initial_g");
    const int stride = static_cast<int>(as_integer(config, "output_stride"));
    const OptimizerConfig cfg = optimizer_config(config, omega_m);

    std::vector<Json> results(gammas.size());
    std::vector<std::string> csvs(gammas.size());
    parallel_for(gammas.size(), opt.workers, [&](std::size_t i) {
        const double kappa = kappa_cfg > 0.0 ? kappa_cfg : gammas[i];
        const DynParams p{omega_m, gammas[i], kappa, n_t, n_cav};
        const std::vector<double> seed(
            static_cast<std::size_t>(cfg.n_segments), initial_g);
        const OptimizationResult r =
            steepest_descent(seed, p, cfg, thermal_initial(n_t, n_cav));
        Json j = result_json(r);
        j["gamma"] = gammas[i];
        j["kappa"] = kappa;
        results[i] = std::move(j);
        const Trajectory tr =
            integrate(thermal_initial(n_t, n_cav), p, r.pulse(), cfg.t_f,
                      cfg.dt_target, stride);
        csvs[i] = trajectory_csv(tr);
    });

    std::vector<OutputFile> files;
    std::vector<TaskStatus> tasks;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        const std::string name = task_name("optimize", i);
        files.push_back({name + ".json", results[i].dump(2) + "\n"});
        files.push_back({name + ".csv", csvs[i]});
        tasks.push_back({name + " gamma=" + fmt17(gammas[i]), "ok"});
    }
    write_outputs(opt.out_dir, "optimize", config, opt.seed, files, tasks);
}

void cmd_maintain(const Json& config, const RunOptions& opt) {
    const double omega_m = as_number(config, "omega_m");
    const auto gammas = expand_axis(config.at("gamma"), "gamma");
    const double kappa = as_number(config, "kappa");
    const double n_t = as_number(config, "n_t");
    const double n_cav = as_number(config, "n_cav");
    const int stride = static_cast<int>(as_integer(config, "output_stride"));

    MaintenanceOptions mo;
    mo.cooling = optimizer_config(config, omega_m);
    mo.k_grid = config.at("k_grid").get<std::vector<double>>();
    mo.window_periods = as_number(config, "window_periods");
    mo.segments_per_period =
        static_cast<int>(as_integer(config, "segments_per_period"));
    mo.maint_max_iters = static_cast<int>(as_integer(config, "maint_max_iters"));
    mo.maint_dt_target =
        2.0 * M_PI / omega_m /
        static_cast<double>(as_integer(config, "maint_dt_per_period"));
    mo.refine_rounds = static_cast<int>(as_integer(config, "refine_rounds"));
    mo.initial_g = as_number(config, "initial_g");

    std::vector<Json> results(gammas.size());
    std::vector<std::string> csvs(gammas.size());
    parallel_for(gammas.size(), opt.workers, [&](std::size_t i) {
        const DynParams p{omega_m, gammas[i], kappa, n_t, n_cav};
        const MaintenanceResult r = optimize_maintenance(p, mo);
        Json j;
        j["gamma"] = gammas[i];
        j["kappa"] = kappa;
        j["t_switch"] = r.t_switch;
        j["best_k"] = r.best_k;
        j["best_mean_nbar"] = r.best_mean;
        Json grid = Json::array();
        for (const auto& [k, mean] : r.k_means) {
            grid.push_back({{"k", k}, {"mean_nbar", mean}});
        }
        j["k_grid"] = grid;
        j["cooling"] = result_json(r.cooling);
        j["window"] = result_json(r.best_window);
        results[i] = std::move(j);

        const double period = 2.0 * M_PI / omega_m;
        const double total = r.t_switch + mo.window_periods * period;
        const Trajectory tr =
            integrate(thermal_initial(n_t, n_cav), p, r.combined, total,
                      period / 2000.0, stride);
        csvs[i] = trajectory_csv(tr);
    });

    std::vector<OutputFile> files;
    std::vector<TaskStatus> tasks;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        const std::string name = task_name("maintain", i);
        files.push_back({name + ".json", results[i].dump(2) + "\n"});
        files.push_back({name + ".csv", csvs[i]});
        tasks.push_back({name + " gamma=" + fmt17(gammas[i]), "ok"});
    }
    write_outputs(opt.out_dir, "maintain", config, opt.seed, files, tasks);
}

}  // namespace

void run_command(const std::string& command, const Json& config,
                 const RunOptions& opt) {
    if (command == "equilibrium") {
        cmd_equilibrium(config, opt);
    } else if (command == "negativity") {
        cmd_negativity(config, opt);
    } else if (command == "cooling-limits") {
        cmd_cooling_limits(config, opt);
    } else if (command == "cool") {
        cmd_cool(config, opt);
    } else if (command == "optimize") {
        cmd_optimize(config, opt);
    } else if (command == "maintain") {
        cmd_maintain(config, opt);
    } else {
        throw ConfigError("unknown command: " + command);
    }
}

}  // namespace quench::cli
