// Command-line front end: evaluates the analytical model, runs the Monte
// Carlo estimators, optimizes the threshold triple, and sweeps any of them
// over a parameter axis, emitting a fixed-schema CSV (plus a JSON trace
// sidecar for optimizer runs).  Exit codes: 0 success, 1 bad config/usage,
// 2 numerical failure, 3 infeasible secrecy target.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hetsec/analytic.hpp"
#include "hetsec/config_io.hpp"
#include "hetsec/errors.hpp"
#include "hetsec/optimizer.hpp"
#include "hetsec/presets.hpp"
#include "hetsec/report.hpp"
#include "hetsec/selfcheck.hpp"
#include "hetsec/simulator.hpp"

namespace {

using namespace hetsec;

struct Options {
    std::string config_path;
    std::string preset_name;
    std::string out_path = "-";
    std::string sweep_variable;
    std::string range_text;
    double theta_c_db = 0.0;
    double theta_s_db = 0.0;
    double target_secrecy = 0.9;
    double target_rate = 1.0;
    double delta_m = 5.0;
    double region_km = 0.0;  // 0 = config/default
    long n = -1;             // -1 = command/preset default
    long verify_n = 100;
    std::uint64_t seed = 1;
    int threads = 0;
    int max_iterations = 60;
    bool optimize_sweep = false;
};

// The optimizer evaluates hundreds of objective points; quadrature at 1e-4
// is far below its bisection tolerance and several times faster than the
// library default.
constexpr QuadratureSettings kSearchQuadrature{1e-4, 1e-12, 4000};

struct Resolved {
    LoadedConfig loaded;
    const Preset* preset = nullptr;
};

Resolved resolve_config(const Options& opt) {
    Resolved r;
    if (!opt.config_path.empty() && !opt.preset_name.empty())
        throw ConfigError("give either --config or --preset, not both");
    if (!opt.preset_name.empty()) {
        r.preset = find_preset(opt.preset_name);
        if (!r.preset) {
            std::string names;
            for (const Preset& p : presets()) names += " " + p.name;
            throw ConfigError("unknown preset '" + opt.preset_name + "'; available:" +
                              names);
        }
        r.loaded.network = r.preset->config;
    } else if (!opt.config_path.empty()) {
        r.loaded = load_config(opt.config_path);
    } else {
        r.loaded.network = baseline_config();
    }
    if (opt.region_km != 0.0) {
        if (!(opt.region_km > 0.0)) throw ConfigError("--region-km must be > 0");
        r.loaded.region_radius_m = 1000.0 * opt.region_km;
    }
    return r;
}

class Output {
public:
    explicit Output(const std::string& path, int tier_count) {
        if (path == "-")
            reporter_ = std::make_unique<CsvReporter>(std::cout, tier_count);
        else
            reporter_ = std::make_unique<CsvReporter>(path, tier_count);
    }
    CsvReporter& csv() { return *reporter_; }

private:
    std::unique_ptr<CsvReporter> reporter_;
};

nlohmann::json trace_json(const OptimizationResult& res) {
    nlohmann::json entries = nlohmann::json::array();
    for (const TraceEntry& e : res.trace)
        entries.push_back({{"r_tau_m", e.r_tau},
                           {"theta_s", e.theta_s},
                           {"theta_c", e.theta_c},
                           {"pc", e.pc}});
    nlohmann::json j{{"r_tau_m", res.r_tau_star},
                     {"theta_c", res.theta_c_star},
                     {"theta_s", res.theta_s_star},
                     {"achieved_pc", res.achieved_pc},
                     {"achieved_ps", res.achieved_ps},
                     {"iterations", res.iterations},
                     {"trace", entries}};
    if (std::isfinite(res.tau_star)) j["tau_dbw"] = to_db(res.tau_star);
    return j;
}

void write_sidecar(const std::string& out_path, const nlohmann::json& body) {
    if (out_path == "-") return;  // no stable place for a sidecar
    const std::string path = out_path + ".trace.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open trace sidecar '" + path + "'");
    out << body.dump(2) << '\n';
}

void fill_optimizer_columns(ResultRow& row, const OptimizationResult& res) {
    row.opt_theta_c_db = to_db(res.theta_c_star);
    row.opt_theta_s_db = to_db(res.theta_s_star);
    row.opt_r_tau_m = res.r_tau_star;
    row.opt_pc = res.achieved_pc;
}

int run_analytic(const Options& opt) {
    const Resolved r = resolve_config(opt);
    const AnalyticContext ctx(r.loaded.network);
    const double theta_c = from_db(opt.theta_c_db);
    const double theta_s = from_db(opt.theta_s_db);

    Output out(opt.out_path, ctx.tier_count());
    ResultRow row;
    row.analytic_pc = connection_probability(ctx, theta_c);
    row.analytic_ps = secrecy_probability(ctx, theta_s);
    for (int k = 0; k < ctx.tier_count(); ++k) {
        row.pc_tier.push_back(connection_probability_given_tier(ctx, k, theta_c));
        row.ps_tier.push_back(secrecy_probability_given_tier(ctx, k, theta_s));
    }
    out.csv().write(row);
    return 0;
}

int run_simulate(const Options& opt) {
    const Resolved r = resolve_config(opt);
    const NetworkConfig& cfg = r.loaded.network;
    const SimulationRegion region{r.loaded.region_radius_m};
    const long n = opt.n < 0 ? 5000 : opt.n;
    if (n < 100) throw ConfigError("simulate: need --n >= 100");

    const SinrBatch batch = run_batch(cfg, region, n, opt.seed, true, opt.threads);
    const double theta_c = from_db(opt.theta_c_db);
    const double theta_s = from_db(opt.theta_s_db);
    const TierwiseEstimate pc = batch_connection(batch, theta_c);
    const TierwiseEstimate ps = batch_secrecy(batch, theta_s);

    Output out(opt.out_path, batch.tier_count);
    ResultRow row;
    row.sim_pc = pc.overall.mean;
    row.sim_pc_ci = pc.overall.ci_half_width;
    row.sim_ps = ps.overall.mean;
    row.sim_ps_ci = ps.overall.ci_half_width;
    for (int k = 0; k < batch.tier_count; ++k) {
        row.pc_tier.push_back(pc.per_tier[static_cast<std::size_t>(k)].mean);
        row.ps_tier.push_back(ps.per_tier[static_cast<std::size_t>(k)].mean);
    }
    out.csv().write(row);
    return 0;
}

int run_optimize(const Options& opt) {
    const Resolved r = resolve_config(opt);
    const AnalyticContext ctx(r.loaded.network, kSearchQuadrature);
    QosRequirements qos;
    qos.target_secrecy = opt.target_secrecy;
    qos.target_rate = opt.target_rate;
    OptimizerSettings settings;
    settings.step_m = opt.delta_m;
    settings.max_iterations = opt.max_iterations;

    const OptimizationResult res = optimize_thresholds(ctx, qos, settings);

    Output out(opt.out_path, ctx.tier_count());
    ResultRow row;
    fill_optimizer_columns(row, res);
    out.csv().write(row);
    write_sidecar(opt.out_path, trace_json(res));
    return 0;
}

int run_sweep(const Options& opt) {
    const Resolved r = resolve_config(opt);

    SweepSpec sweep;
    if (!opt.sweep_variable.empty() || !opt.range_text.empty()) {
        if (opt.sweep_variable.empty() || opt.range_text.empty())
            throw ConfigError("sweep: --sweep and --range go together");
        sweep.variable = opt.sweep_variable;
        if (std::sscanf(opt.range_text.c_str(), "%lf:%lf:%lf", &sweep.start,
                        &sweep.stop, &sweep.step) != 3)
            throw ConfigError("sweep: --range must be start:stop:step");
    } else if (r.preset) {
        sweep = r.preset->sweep;
    } else {
        throw ConfigError("sweep: need --sweep/--range or a --preset with a sweep");
    }

    const bool optimize = opt.optimize_sweep || (r.preset && r.preset->optimize);
    const long n = opt.n >= 0 ? opt.n : (r.preset ? r.preset->default_n : 5000);
    if (n != 0 && n < 100 && !optimize)
        throw ConfigError("sweep: need --n >= 100, or --n 0 for analytic only");
    const bool simulate = !optimize && n > 0;
    const std::vector<double> points = sweep_points(sweep);
    const bool theta_axis = sweep.variable == "theta" ||
                            sweep.variable == "theta_c" ||
                            sweep.variable == "theta_s";
    {
        // Reject unknown axes before any work; theta axes patch nothing.
        NetworkConfig probe = r.loaded.network;
        apply_sweep_value(probe, sweep.variable, points.front());
    }

    Output out(opt.out_path, static_cast<int>(r.loaded.network.tiers.size()));
    nlohmann::json traces = nlohmann::json::array();

    // A threshold sweep never changes the geometry, so all its points can
    // share one batch of realizations.
    std::optional<SinrBatch> shared_batch;
    if (simulate && theta_axis)
        shared_batch = run_batch(r.loaded.network, SimulationRegion{r.loaded.region_radius_m},
                                 n, opt.seed, true, opt.threads);

    for (double value : points) {
        ResultRow row;
        row.sweep_variable = sweep.variable;
        row.sweep_value = value;
        try {
            NetworkConfig cfg = r.loaded.network;
            apply_sweep_value(cfg, sweep.variable, value);
            double theta_c = from_db(opt.theta_c_db);
            double theta_s = from_db(opt.theta_s_db);
            if (sweep.variable == "theta") {
                theta_c = from_db(value);
                theta_s = from_db(value);
            } else if (sweep.variable == "theta_c") {
                theta_c = from_db(value);
            } else if (sweep.variable == "theta_s") {
                theta_s = from_db(value);
            }

            if (optimize) {
                const AnalyticContext ctx(cfg, kSearchQuadrature);
                QosRequirements qos;
                qos.target_secrecy = opt.target_secrecy;
                qos.target_rate = opt.target_rate;
                OptimizerSettings settings;
                settings.step_m = opt.delta_m;
                settings.max_iterations = opt.max_iterations;
                const OptimizationResult res = optimize_thresholds(ctx, qos, settings);
                fill_optimizer_columns(row, res);
                nlohmann::json entry = trace_json(res);
                entry["sweep_value"] = value;
                traces.push_back(entry);
            } else {
                const AnalyticContext ctx(cfg);
                row.analytic_pc = connection_probability(ctx, theta_c);
                row.analytic_ps = secrecy_probability(ctx, theta_s);
                if (simulate) {
                    const SinrBatch* batch = nullptr;
                    std::optional<SinrBatch> own;
                    if (shared_batch) {
                        batch = &*shared_batch;
                    } else {
                        own = run_batch(cfg, SimulationRegion{r.loaded.region_radius_m},
                                        n, opt.seed, true, opt.threads);
                        batch = &*own;
                    }
                    const TierwiseEstimate pc = batch_connection(*batch, theta_c);
                    const TierwiseEstimate ps = batch_secrecy(*batch, theta_s);
                    row.sim_pc = pc.overall.mean;
                    row.sim_pc_ci = pc.overall.ci_half_width;
                    row.sim_ps = ps.overall.mean;
                    row.sim_ps_ci = ps.overall.ci_half_width;
                    for (int k = 0; k < batch->tier_count; ++k) {
                        row.pc_tier.push_back(
                            pc.per_tier[static_cast<std::size_t>(k)].mean);
                        row.ps_tier.push_back(
                            ps.per_tier[static_cast<std::size_t>(k)].mean);
                    }
                } else {
                    for (int k = 0; k < ctx.tier_count(); ++k) {
                        row.pc_tier.push_back(
                            connection_probability_given_tier(ctx, k, theta_c));
                        row.ps_tier.push_back(
                            secrecy_probability_given_tier(ctx, k, theta_s));
                    }
                }
            }
        } catch (const std::exception& e) {
            // Flush the failing point with its reason, then surface the error.
            row.status = e.what();
            out.csv().write(row);
            throw;
        }
        out.csv().write(row);
    }

    if (optimize) write_sidecar(opt.out_path, traces);
    return 0;
}

int run_validate(const Options& opt) {
    const std::vector<CheckResult> checks = run_selfcheck(opt.verify_n, opt.seed);
    bool all = true;
    for (const CheckResult& c : checks) {
        std::printf("[%s] %s — %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
        all = all && c.passed;
    }
    std::printf("%zu/%zu checks passed\n",
                static_cast<std::size_t>(
                    std::count_if(checks.begin(), checks.end(),
                                  [](const CheckResult& c) { return c.passed; })),
                checks.size());
    if (!all) throw NumericalError("validation failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Physical-layer security toolkit for multi-tier cellular networks with "
        "jammer selection and full-duplex users"};
    app.require_subcommand(1);

    Options opt;

    const auto add_common = [&](CLI::App* sub, bool with_thresholds) {
        sub->add_option("--config", opt.config_path, "JSON config file");
        sub->add_option("--preset", opt.preset_name, "named parameter study");
        sub->add_option("--out", opt.out_path, "output CSV path ('-' = stdout)");
        sub->add_option("--region-km", opt.region_km, "simulation window radius");
        if (with_thresholds) {
            sub->add_option("--theta-c-db", opt.theta_c_db,
                            "connection SINR threshold [dB]");
            sub->add_option("--theta-s-db", opt.theta_s_db,
                            "secrecy SINR threshold [dB]");
        }
    };
    const auto add_mc = [&](CLI::App* sub) {
        sub->add_option("--n", opt.n, "Monte Carlo realizations");
        sub->add_option("--seed", opt.seed, "RNG master seed");
        sub->add_option("--threads", opt.threads, "worker threads (0 = auto)");
    };
    const auto add_opt = [&](CLI::App* sub) {
        sub->add_option("--pt", opt.target_secrecy, "secrecy probability target");
        sub->add_option("--rt", opt.target_rate, "rate gap target [bps/Hz]");
        sub->add_option("--delta", opt.delta_m, "guard-radius step [m]");
        sub->add_option("--max-iter", opt.max_iterations, "outer iteration cap");
    };

    CLI::App* analytic =
        app.add_subcommand("analytic", "evaluate the analytical model at one point");
    add_common(analytic, true);

    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo estimates at one point");
    add_common(simulate, true);
    add_mc(simulate);

    CLI::App* optimize =
        app.add_subcommand("optimize", "optimize the threshold triple for a QoS target");
    add_common(optimize, false);
    add_opt(optimize);

    CLI::App* sweep =
        app.add_subcommand("sweep", "sweep one variable, one CSV row per point");
    add_common(sweep, true);
    add_mc(sweep);
    add_opt(sweep);
    sweep->add_option("--sweep", opt.sweep_variable,
                      "theta | theta_c | theta_s | lambda_J | P_J_dbm | lambda_E | "
                      "beta_db | tau_dbw");
    sweep->add_option("--range", opt.range_text, "start:stop:step");
    sweep->add_flag("--optimize", opt.optimize_sweep,
                    "run the threshold optimizer at every point");

    CLI::App* validate =
        app.add_subcommand("validate", "run the built-in property/oracle suite");
    validate->add_option("--verify-n", opt.verify_n,
                         "realizations for the geometry checks");
    validate->add_option("--seed", opt.seed, "RNG master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and friends exit 0; any usage error is a config error.
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    }

    try {
        if (analytic->parsed()) return run_analytic(opt);
        if (simulate->parsed()) return run_simulate(opt);
        if (optimize->parsed()) return run_optimize(opt);
        if (sweep->parsed()) return run_sweep(opt);
        if (validate->parsed()) return run_validate(opt);
        throw ConfigError("no command given");
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
