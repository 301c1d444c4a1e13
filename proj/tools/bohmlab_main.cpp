// bohmlab: pilot-wave trajectory laboratory for the two-detector photon
// experiment, in the standard (instantaneous) and delayed-coupling variants.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bohm/cli.hpp"
#include "bohm/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Pilot-wave detector-pair simulator"};

    std::string mode;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<long> n;
    std::optional<double> a, p, m, dt, t_final, T, l, c, d, lambda, hbar;
    std::vector<double> t_list;
    std::string out_path;
    bool emit_samples = false;
    bool emit_trajectories = false;
    std::optional<int> parallel;

    app.add_option("--mode", mode,
                   "equivariance | nonretarded | retarded | sweep | oracle_check | "
                   "physical_units");
    app.add_option("--config", config_path, "JSON config file (flags override)");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--n", n, "sample count");
    app.add_option("--a", a, "packet width parameter");
    app.add_option("--p", p, "transferred momentum (code units)");
    app.add_option("--m", m, "detector mass (code units, or kg in physical mode)");
    app.add_option("--dt", dt, "integrator step");
    app.add_option("--t-final", t_final, "classification time");
    app.add_option("--T", T, "retardation delay (code units)");
    app.add_option("--T-list", t_list, "delays for sweep mode")->expected(-1);
    app.add_option("--l", l, "detector half-separation (code units, or m in physical mode)");
    app.add_option("--c", c, "signal speed (code units, or m/s in physical mode)");
    app.add_option("--d", d, "detector confinement length (m, physical mode)");
    app.add_option("--lambda", lambda, "photon wavelength (m, physical mode)");
    app.add_option("--hbar", hbar, "hbar (J s, physical mode)");
    app.add_option("--out", out_path, "output JSON path (stdout if omitted)");
    app.add_flag("--emit-samples", emit_samples, "write per-sample CSV");
    app.add_flag("--emit-trajectories", emit_trajectories,
                 "write trajectory CSV (single runs)");
    app.add_option("--parallel", parallel, "worker threads (0 = all cores)");

    CLI11_PARSE(app, argc, argv);

    bohm::cli::RunConfig cfg;
    try {
        if (!config_path.empty()) {
            cfg = bohm::cli::config_from_file(config_path);
        }
        if (!mode.empty()) {
            cfg.mode = bohm::cli::mode_from_string(mode);
        } else if (config_path.empty()) {
            throw bohm::ConfigError("--mode is required (or give --config)");
        }
        if (seed) cfg.seed = *seed;
        if (n) cfg.n = *n;
        if (a) cfg.a = *a;
        if (p) cfg.p = *p;
        if (m) cfg.m = *m;
        if (dt) cfg.dt = *dt;
        if (t_final) cfg.t_final = *t_final;
        if (T) cfg.T = *T;
        if (!t_list.empty()) cfg.t_list = t_list;
        if (l) cfg.l = *l;
        if (c) cfg.c = *c;
        if (d) cfg.d = *d;
        if (lambda) cfg.lambda = *lambda;
        if (hbar) cfg.hbar = *hbar;
        if (!out_path.empty()) cfg.out_path = out_path;
        if (emit_samples) cfg.emit_samples = true;
        if (emit_trajectories) cfg.emit_trajectories = true;
        if (parallel) cfg.parallel = *parallel;
    } catch (const bohm::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    return bohm::cli::execute(cfg, std::cout, std::cerr);
}
