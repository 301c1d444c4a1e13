#include "bohm/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bohm/ensemble.hpp"
#include "bohm/equivariance.hpp"
#include "bohm/errors.hpp"
#include "bohm/retarded.hpp"

namespace bohm::cli {

namespace {

using nlohmann::json;

// CODATA SI values used by physical-units screening.
constexpr double kHbarSi = 1.054571817e-34;
constexpr double kCLightSi = 2.99792458e8;

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        if (!f) {
            throw IoError("cannot open output path: " + tmp.string());
        }
        f << content;
        f.flush();
        if (!f) {
            throw IoError("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        throw IoError("rename failed for " + target.string() + ": " + ec.message());
    }
}

std::string sibling_path(const std::string& base, const std::string& suffix) {
    namespace fs = std::filesystem;
    fs::path p(base);
    fs::path out = p.parent_path() / (p.stem().string() + suffix);
    return out.string();
}

json stats_to_json(const EnsembleStats& s) {
    return json{{"n", s.n},
                {"frac_left", s.frac_left},
                {"frac_right", s.frac_right},
                {"frac_both", s.frac_both},
                {"frac_neither", s.frac_neither},
                {"frac_ambiguous", s.frac_ambiguous},
                {"wrong_fraction", s.wrong_fraction},
                {"rng_seed", s.rng_seed}};
}

std::string samples_csv(const std::vector<OutcomeRecord>& records) {
    std::ostringstream os;
    os.precision(17);
    os << "u0,v0,outcome,final_u_dot,final_v_dot\n";
    for (const auto& r : records) {
        os << r.u0 << ',' << r.v0 << ',' << to_string(r.outcome) << ','
           << r.final_u_dot << ',' << r.final_v_dot << '\n';
    }
    return os.str();
}

std::string trajectory_csv(const TrajectoryHistory& hist) {
    std::ostringstream os;
    os.precision(17);
    os << "t,u,v,u_dot,v_dot\n";
    for (size_t i = 0; i < hist.size(); ++i) {
        os << hist.times()[i] << ',' << hist.u()[i] << ',' << hist.v()[i] << ','
           << hist.u_dot()[i] << ',' << hist.v_dot()[i] << '\n';
    }
    return os.str();
}

std::string sweep_csv(const std::vector<std::pair<double, EnsembleStats>>& curve) {
    std::ostringstream os;
    os.precision(17);
    os << "T,wrong_fraction,frac_left,frac_right,frac_both,frac_neither,n\n";
    for (const auto& [t_delay, s] : curve) {
        os << t_delay << ',' << s.wrong_fraction << ',' << s.frac_left << ','
           << s.frac_right << ',' << s.frac_both << ',' << s.frac_neither << ','
           << s.n << '\n';
    }
    return os.str();
}

}  // namespace

Mode mode_from_string(const std::string& s) {
    if (s == "equivariance") return Mode::Equivariance;
    if (s == "nonretarded") return Mode::NonRetarded;
    if (s == "retarded") return Mode::Retarded;
    if (s == "sweep") return Mode::Sweep;
    if (s == "oracle_check") return Mode::OracleCheck;
    if (s == "physical_units") return Mode::PhysicalUnits;
    throw ConfigError("unknown mode: " + s);
}

std::string to_string(Mode m) {
    switch (m) {
        case Mode::Equivariance: return "equivariance";
        case Mode::NonRetarded: return "nonretarded";
        case Mode::Retarded: return "retarded";
        case Mode::Sweep: return "sweep";
        case Mode::OracleCheck: return "oracle_check";
        case Mode::PhysicalUnits: return "physical_units";
    }
    return "?";
}

long RunConfig::n_or_default() const {
    if (n) {
        return *n;
    }
    return mode == Mode::OracleCheck ? 100 : 10000;
}

double RunConfig::resolved_delay() const {
    if (T) {
        return *T;
    }
    if (l && c) {
        if (!(*c > 0.0)) {
            throw ConfigError("field c: signal speed must be positive");
        }
        return 2.0 * *l / *c;
    }
    throw ConfigError("retarded mode needs T, or l together with c");
}

std::vector<double> RunConfig::resolved_delay_list() const {
    if (t_list && !t_list->empty()) {
        return *t_list;
    }
    return {0.0, 0.5, 1.0, 2.0, 4.0};
}

void RunConfig::validate() const {
    auto reject = [&](bool set, const std::string& field, const std::string& why) {
        if (set) {
            throw ConfigError("field " + field + ": " + why);
        }
    };
    auto require_positive = [&](const std::optional<double>& v, const std::string& field) {
        if (v && !(*v > 0.0 && std::isfinite(*v))) {
            throw ConfigError("field " + field + ": must be positive and finite");
        }
    };
    require_positive(a, "a");
    require_positive(p, "p");
    require_positive(m, "m");
    require_positive(dt, "dt");
    require_positive(t_final, "t_final");
    require_positive(l, "l");
    require_positive(c, "c");
    require_positive(d, "d");
    require_positive(lambda, "lambda");
    require_positive(hbar, "hbar");
    if (T && (*T < 0.0 || !std::isfinite(*T))) {
        throw ConfigError("field T: must be nonnegative and finite");
    }
    if (n && *n < 1) {
        throw ConfigError("field n: must be at least 1");
    }
    if (parallel < 0) {
        throw ConfigError("field parallel: must be nonnegative");
    }

    const bool physical = mode == Mode::PhysicalUnits;
    if (physical) {
        reject(T.has_value(), "T", "code-unit delay not valid in physical-units mode");
        reject(t_list.has_value(), "T_list", "not valid in physical-units mode");
        reject(a.has_value(), "a", "code-unit parameter not valid in physical-units mode");
        reject(p.has_value(), "p", "code-unit parameter not valid in physical-units mode");
        reject(dt.has_value(), "dt", "not valid in physical-units mode");
        reject(t_final.has_value(), "t_final", "not valid in physical-units mode");
        if (!l || !m || !d || !lambda) {
            throw ConfigError("physical-units mode needs l, m, d and lambda (SI)");
        }
    } else {
        reject(d.has_value(), "d", "physical-units parameter outside physical-units mode");
        reject(lambda.has_value(), "lambda",
               "physical-units parameter outside physical-units mode");
        reject(hbar.has_value(), "hbar",
               "physical-units parameter outside physical-units mode");
        if (T && (l || c)) {
            throw ConfigError("give either T directly or l with c, not both");
        }
        if ((l && !c && !T) || (c && !l)) {
            throw ConfigError("deriving T needs both l and c");
        }
    }
    if (emit_trajectories && mode != Mode::NonRetarded && mode != Mode::Retarded) {
        throw ConfigError("emit_trajectories applies to nonretarded or retarded mode");
    }
    if (emit_trajectories && n_or_default() != 1) {
        throw ConfigError("emit_trajectories needs n = 1 (single run)");
    }
    if ((emit_samples || emit_trajectories) && out_path.empty()) {
        throw ConfigError("emitting CSV artifacts needs an output path");
    }
}

RunConfig config_from_json(const json& j) {
    static const std::vector<std::string> known = {
        "mode", "seed", "n", "a", "p", "m", "dt", "t_final", "T", "T_list",
        "l", "c", "d", "lambda", "hbar", "out", "emit_samples",
        "emit_trajectories", "parallel"};
    std::string unknown;
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            unknown += unknown.empty() ? key : ", " + key;
        }
    }
    if (!unknown.empty()) {
        throw ConfigError("unknown config keys: " + unknown);
    }

    RunConfig cfg;
    if (!j.contains("mode")) {
        throw ConfigError("config needs a mode");
    }
    cfg.mode = mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("n")) cfg.n = j.at("n").get<long>();
    auto opt = [&](const char* key) -> std::optional<double> {
        if (j.contains(key)) return j.at(key).get<double>();
        return std::nullopt;
    };
    cfg.a = opt("a");
    cfg.p = opt("p");
    cfg.m = opt("m");
    cfg.dt = opt("dt");
    cfg.t_final = opt("t_final");
    cfg.T = opt("T");
    if (j.contains("T_list")) cfg.t_list = j.at("T_list").get<std::vector<double>>();
    cfg.l = opt("l");
    cfg.c = opt("c");
    cfg.d = opt("d");
    cfg.lambda = opt("lambda");
    cfg.hbar = opt("hbar");
    if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
    if (j.contains("emit_samples")) cfg.emit_samples = j.at("emit_samples").get<bool>();
    if (j.contains("emit_trajectories"))
        cfg.emit_trajectories = j.at("emit_trajectories").get<bool>();
    if (j.contains("parallel")) cfg.parallel = j.at("parallel").get<int>();
    cfg.validate();
    return cfg;
}

RunConfig config_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw IoError("cannot read config file: " + path);
    }
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    return config_from_json(j);
}

json config_to_json(const RunConfig& cfg) {
    json j{{"mode", to_string(cfg.mode)}, {"seed", cfg.seed}};
    if (cfg.mode == Mode::PhysicalUnits) {
        j["l"] = *cfg.l;
        j["m"] = *cfg.m;
        j["d"] = *cfg.d;
        j["lambda"] = *cfg.lambda;
        j["hbar"] = cfg.hbar.value_or(kHbarSi);
        j["c"] = cfg.c.value_or(kCLightSi);
        return j;
    }
    j["n"] = cfg.n_or_default();
    j["a"] = cfg.a_or_default();
    j["p"] = cfg.p_or_default();
    j["m"] = cfg.m_or_default();
    j["dt"] = cfg.dt_or_default();
    j["t_final"] = cfg.t_final_or_default();
    j["parallel"] = cfg.parallel;
    if (cfg.mode == Mode::Retarded) {
        j["T"] = cfg.resolved_delay();
    } else if (cfg.mode == Mode::Sweep) {
        j["T_list"] = cfg.resolved_delay_list();
    }
    return j;
}

namespace {

ExperimentConfig experiment_config(const RunConfig& cfg) {
    ExperimentConfig e;
    e.a = cfg.a_or_default();
    e.p = cfg.p_or_default();
    e.m = cfg.m_or_default();
    e.dt = cfg.dt_or_default();
    e.t_final = cfg.t_final_or_default();
    if (cfg.l) e.l = *cfg.l;
    e.validate();
    return e;
}

json run_mode(const RunConfig& cfg, std::vector<std::pair<std::string, std::string>>& files) {
    switch (cfg.mode) {
        case Mode::Equivariance: {
            EquivariancePlan plan;
            plan.n = cfg.n_or_default();
            plan.seed = cfg.seed;
            plan.width_a = cfg.a_or_default();
            plan.dt = cfg.dt_or_default();
            plan.t_final = cfg.t_final.value_or(plan.t_final);
            const EquivarianceResult r = run_equivariance(plan);
            // 0.025 is the pinned bound at n = 1e4; smaller ensembles carry
            // proportionally more sampling noise (95% KS quantile 1.36/sqrt(n),
            // doubled for transport error)
            const double threshold =
                std::max(kKsThreshold, 2.72 / std::sqrt(static_cast<double>(plan.n)));
            const bool pass = r.ks_distance < threshold;
            if (!pass) {
                throw NumericalError("equivariance check failed: KS distance " +
                                     std::to_string(r.ks_distance));
            }
            return json{{"ks_distance", r.ks_distance},
                        {"threshold", threshold},
                        {"n", r.n},
                        {"t_final", r.t_final},
                        {"pass", pass}};
        }
        case Mode::NonRetarded: {
            const ExperimentConfig e = experiment_config(cfg);
            std::vector<OutcomeRecord> records;
            const EnsembleStats s = run_nonretarded_ensemble(
                cfg.n_or_default(), cfg.seed, e, cfg.parallel, &records);
            if (cfg.emit_samples) {
                files.emplace_back(sibling_path(cfg.out_path, "_samples.csv"),
                                   samples_csv(records));
            }
            if (cfg.emit_trajectories) {
                files.emplace_back(
                    sibling_path(cfg.out_path, "_trajectory.csv"),
                    trajectory_csv(integrate_pair(records[0].u0, records[0].v0, e)));
            }
            return json{{"stats", stats_to_json(s)}};
        }
        case Mode::Retarded: {
            const ExperimentConfig e = experiment_config(cfg);
            const RetardedConfig rc = RetardedConfig::with_delay(e, cfg.resolved_delay());
            std::vector<OutcomeRecord> records;
            const EnsembleStats s = run_retarded_ensemble(cfg.n_or_default(), cfg.seed,
                                                          rc, cfg.parallel, &records);
            if (cfg.emit_samples) {
                files.emplace_back(sibling_path(cfg.out_path, "_samples.csv"),
                                   samples_csv(records));
            }
            if (cfg.emit_trajectories) {
                RetardedConfig rc_run = rc;
                rc_run.base.t_final = retarded_t_final(e.t_final, rc.T);
                files.emplace_back(
                    sibling_path(cfg.out_path, "_trajectory.csv"),
                    trajectory_csv(integrate_retarded(records[0].u0, records[0].v0, rc_run)));
            }
            return json{{"T", rc.T}, {"stats", stats_to_json(s)}};
        }
        case Mode::Sweep: {
            const ExperimentConfig e = experiment_config(cfg);
            const auto curve = sweep_delay(cfg.resolved_delay_list(), cfg.n_or_default(),
                                           cfg.seed, e, cfg.parallel);
            if (!cfg.out_path.empty()) {
                files.emplace_back(sibling_path(cfg.out_path, "_sweep.csv"),
                                   sweep_csv(curve));
            }
            json entries = json::array();
            for (const auto& [t_delay, s] : curve) {
                json entry = stats_to_json(s);
                entry["T"] = t_delay;
                entries.push_back(entry);
            }
            return json{{"entries", entries}};
        }
        case Mode::OracleCheck: {
            const ExperimentConfig e = experiment_config(cfg);
            const auto initial = sample_initial(cfg.seed, cfg.n_or_default(), e.a);
            double max_residual = 0.0;
            for (const auto& [u0, v0] : initial) {
                const TrajectoryHistory hist = integrate_pair(u0, v0, e);
                for (size_t i = 0; i < hist.size(); ++i) {
                    max_residual = std::max(
                        max_residual, std::abs(implicit_solution_residual(
                                          hist.u()[i], hist.times()[i], u0, v0)));
                }
            }
            const bool pass = max_residual < kOracleThreshold;
            if (!pass) {
                throw NumericalError("oracle check failed: max residual " +
                                     std::to_string(max_residual));
            }
            return json{{"max_residual", max_residual},
                        {"threshold", kOracleThreshold},
                        {"n_trajectories", cfg.n_or_default()},
                        {"pass", pass}};
        }
        case Mode::PhysicalUnits: {
            const double value =
                wrongness_parameter(*cfg.l, *cfg.m, *cfg.d, *cfg.lambda,
                                    cfg.hbar.value_or(kHbarSi), cfg.c.value_or(kCLightSi));
            return json{{"wrongness_parameter", value},
                        {"wrong_result_regime", value >= 1.0}};
        }
    }
    throw ConfigError("unhandled mode");
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        const auto start = std::chrono::steady_clock::now();
        std::vector<std::pair<std::string, std::string>> files;
        json results = run_mode(cfg, files);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        const json summary{{"schema_version", 1},
                           {"mode", to_string(cfg.mode)},
                           {"seed", cfg.seed},
                           {"config", config_to_json(cfg)},
                           {"results", results},
                           {"timing_seconds", seconds}};
        const std::string text = summary.dump(2) + "\n";
        for (const auto& [path, content] : files) {
            atomic_write(path, content);
        }
        if (cfg.out_path.empty()) {
            out << text;
        } else {
            atomic_write(cfg.out_path, text);
            out << "wrote " << cfg.out_path << "\n";
        }
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return 4;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace bohm::cli
