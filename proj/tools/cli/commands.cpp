#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hicache/energy.hpp"
#include "hicache/error.hpp"
#include "hicache/evaluation.hpp"
#include "hicache/parallel.hpp"
#include "hicache/scheduler.hpp"

namespace hicache::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) { return format_double(v); }

std::string fmt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

Json json_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

void emit(const std::string& contents, const std::optional<std::filesystem::path>& path) {
    if (path) write_file_atomic(*path, contents);
}

struct MeanCi {
    double mean = 0.0;
    double low = 0.0;
    double high = 0.0;
    std::size_t n = 0;
};

// Normal-approximation 95% interval of the mean.
MeanCi mean_ci(const std::vector<double>& xs) {
    MeanCi out;
    out.n = xs.size();
    if (xs.empty()) {
        out.mean = out.low = out.high = std::nan("");
        return out;
    }
    out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() < 2) {
        out.low = out.high = out.mean;
        return out;
    }
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    const double half = 1.96 * std::sqrt(ss / static_cast<double>(xs.size() - 1)) /
                        std::sqrt(static_cast<double>(xs.size()));
    out.low = out.mean - half;
    out.high = out.mean + half;
    return out;
}

BasisConfig make_basis(BasisKind kind, int order, double sigma) {
    return kind == BasisKind::TaylorMonomial ? BasisConfig::taylor(order) : BasisConfig::hermite(order, sigma);
}

Json generator_json(const GeneratorOptions& g) {
    Json j;
    j["kind"] = g.kind;
    j["dim"] = g.dim;
    j["steps"] = g.steps;
    j["seed"] = g.seed;
    if (g.kind == "gp-se") {
        j["length_scale"] = g.length_scale;
        j["amplitude"] = g.amplitude;
    } else if (g.kind == "ou") {
        j["theta"] = g.theta;
        j["noise"] = g.noise.value_or(1.0);
        j["x0"] = json_number(g.x0);
    } else {
        j["degree"] = g.degree;
        j["coeff_scale"] = g.coeff_scale;
        j["noise"] = g.noise.value_or(0.0);
    }
    return j;
}

std::vector<Trajectory> campaign_trajectories(const GeneratorOptions& gen, std::size_t seeds) {
    if (seeds == 0) throw ConfigError("--seeds must be >= 1");
    std::vector<Trajectory> out(seeds);
    parallel_for(seeds, [&](std::size_t i) { out[i] = generate(gen.to_spec(gen.seed + i)); });
    return out;
}

}  // namespace

GeneratorSpec GeneratorOptions::to_spec(std::uint64_t seed_override) const {
    GeneratorSpec spec;
    spec.dim = dim;
    spec.total_steps = steps;
    spec.seed = seed_override;
    if (kind == "gp-se") {
        spec.kind = GpSquaredExponential{length_scale, amplitude};
    } else if (kind == "ou") {
        spec.kind = OrnsteinUhlenbeck{theta, noise.value_or(1.0), x0};
    } else if (kind == "poly") {
        spec.kind = PolyPlusNoise{degree, coeff_scale, noise.value_or(0.0)};
    } else {
        throw ConfigError("unknown generator kind '" + kind + "' (expected gp-se, ou or poly)");
    }
    spec.validate();
    return spec;
}

std::string cmd_simulate(const SimulateOptions& options) {
    const GeneratorSpec spec = options.gen.to_spec();
    const Trajectory traj = generate(spec);
    write_trace(traj, options.out, options.format);
    std::ostringstream line;
    line << "T=" << traj.size() << " D=" << traj.dim() << " kind=" << kind_name(spec.kind)
         << " seed=" << spec.seed << " out=" << options.out.string() << '\n';
    return line.str();
}

PredictOutput cmd_predict(const PredictOptions& options) {
    const Trajectory traj = read_trace(options.trace);
    if (!traj.has_canonical_times()) {
        throw ConfigError("predict needs a trace with timesteps T, T-1, ..., 1");
    }
    ScheduleConfig config;
    config.total_steps = static_cast<std::int64_t>(traj.size());
    config.interval = options.interval;
    config.basis = make_basis(options.basis, options.order, options.sigma);
    const ScheduleTrace trace = run_schedule(config, trajectory_oracle(traj, options.busy_work), &traj);

    PredictOutput out;
    out.steps_csv = "t,mode,horizon,order_used,l2_error\n";
    double full_sq = 0.0;
    double pred_sq = 0.0;
    double warm_sq = 0.0;
    std::size_t n_full = 0;
    std::size_t n_pred = 0;
    std::size_t n_warm = 0;
    const double dim = static_cast<double>(traj.dim());
    for (const StepRecord& rec : trace.steps) {
        const double e = rec.error.value_or(0.0);
        out.steps_csv += std::to_string(rec.t) + ',' + std::string(to_string(rec.mode)) + ',' +
                         std::to_string(rec.horizon) + ',' + std::to_string(rec.order_used) + ',' + fmt(e) + '\n';
        if (rec.mode == StepMode::Full) {
            full_sq += e * e / dim;
            ++n_full;
        } else {
            pred_sq += e * e / dim;
            ++n_pred;
            if (rec.order_used == options.order) {
                warm_sq += e * e / dim;
                ++n_warm;
            }
        }
    }

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "predict";
    j["total_steps"] = config.total_steps;
    j["dim"] = traj.dim();
    j["interval"] = options.interval;
    j["order"] = options.order;
    j["basis"] = std::string(to_string(options.basis));
    j["sigma"] = options.basis == BasisKind::ScaledHermite ? Json(options.sigma) : Json(nullptr);
    j["oracle_calls"] = trace.oracle_calls;
    j["skipped"] = trace.steps.size() - trace.oracle_calls;
    j["mse_full"] = n_full ? Json(full_sq / static_cast<double>(n_full)) : Json(nullptr);
    j["mse_predicted"] = n_pred ? Json(pred_sq / static_cast<double>(n_pred)) : Json(nullptr);
    // Predictions made after the cache holds every configured order.
    j["mse_predicted_warm"] = n_warm ? Json(warm_sq / static_cast<double>(n_warm)) : Json(nullptr);
    j["speedup_proxy"] = static_cast<double>(config.total_steps) / static_cast<double>(trace.oracle_calls);
    out.summary_json = j.dump(2) + '\n';

    emit(out.steps_csv, options.steps_out);
    emit(out.summary_json, options.summary_out);
    return out;
}

std::vector<RatioCell> compare_campaign(const CompareOptions& options) {
    if (options.orders.empty()) throw ConfigError("--orders is empty");
    std::vector<Trajectory> trajectories;
    if (options.trace) {
        trajectories.push_back(read_trace(*options.trace));
    } else {
        trajectories = campaign_trajectories(options.gen, options.seeds);
    }

    const std::size_t n_orders = options.orders.size();
    // reports[seed][order index]
    std::vector<std::vector<ErrorReport>> reports(trajectories.size(), std::vector<ErrorReport>(n_orders));
    parallel_for(trajectories.size(), [&](std::size_t s) {
        for (std::size_t o = 0; o < n_orders; ++o) {
            const int order = options.orders[o];
            const std::vector<BasisConfig> configs = {
                make_basis(options.reference, order, options.reference_sigma),
                BasisConfig::hermite(order, options.sigma),
            };
            reports[s][o] = non_cumulative_eval(trajectories[s], options.interval, configs);
        }
    });

    std::vector<RatioCell> cells;
    for (std::size_t o = 0; o < n_orders; ++o) {
        for (int h = 1; h < options.interval; ++h) {
            const auto hi = static_cast<std::size_t>(h - 1);
            std::vector<double> r;
            std::vector<double> cum;
            RatioCell cell;
            cell.order = options.orders[o];
            cell.horizon = h;
            for (const auto& per_seed : reports) {
                const ErrorReport& rep = per_seed[o];
                if (const auto v = rep.ratios[0].per_horizon[hi]) {
                    r.push_back(*v);
                } else {
                    ++cell.undefined;
                }
                if (const auto v = rep.ratios[0].cumulative[hi]) cum.push_back(*v);
                cell.reference_mse += rep.bases[0].mse[hi];
                cell.candidate_mse += rep.bases[1].mse[hi];
            }
            const double n_seeds = static_cast<double>(reports.size());
            cell.reference_mse /= n_seeds;
            cell.candidate_mse /= n_seeds;
            const MeanCi a = mean_ci(r);
            const MeanCi b = mean_ci(cum);
            cell.n = a.n;
            cell.mean = a.mean;
            cell.ci_low = a.low;
            cell.ci_high = a.high;
            cell.cum_mean = b.mean;
            cell.cum_ci_low = b.low;
            cell.cum_ci_high = b.high;
            cells.push_back(cell);
        }
    }
    return cells;
}

std::string cmd_compare(const CompareOptions& options) {
    const std::vector<RatioCell> cells = compare_campaign(options);
    std::string out;
    if (options.format == OutputFormat::Csv) {
        out = "order,horizon,n,n_undefined,r_mean,r_ci_low,r_ci_high,reference_mse,hermite_mse";
        if (options.cumulative) out += ",cum_r_mean,cum_r_ci_low,cum_r_ci_high";
        out += '\n';
        for (const RatioCell& c : cells) {
            out += std::to_string(c.order) + ',' + std::to_string(c.horizon) + ',' + std::to_string(c.n) + ',' +
                   std::to_string(c.undefined) + ',' + fmt(c.mean) + ',' + fmt(c.ci_low) + ',' + fmt(c.ci_high) +
                   ',' + fmt(c.reference_mse) + ',' + fmt(c.candidate_mse);
            if (options.cumulative) out += ',' + fmt(c.cum_mean) + ',' + fmt(c.cum_ci_low) + ',' + fmt(c.cum_ci_high);
            out += '\n';
        }
    } else {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "compare";
        Json cfg;
        if (options.trace) {
            cfg["trace"] = options.trace->string();
        } else {
            cfg["generator"] = generator_json(options.gen);
            cfg["seeds"] = options.seeds;
        }
        cfg["interval"] = options.interval;
        cfg["orders"] = options.orders;
        cfg["sigma"] = options.sigma;
        cfg["reference"] = std::string(to_string(options.reference));
        j["config"] = cfg;
        Json rows = Json::array();
        for (const RatioCell& c : cells) {
            Json row;
            row["order"] = c.order;
            row["horizon"] = c.horizon;
            row["n"] = c.n;
            row["n_undefined"] = c.undefined;
            row["r_mean"] = c.mean;
            row["r_ci"] = {c.ci_low, c.ci_high};
            row["reference_mse"] = c.reference_mse;
            row["hermite_mse"] = c.candidate_mse;
            if (options.cumulative) {
                row["cum_r_mean"] = c.cum_mean;
                row["cum_r_ci"] = {c.cum_ci_low, c.cum_ci_high};
            }
            rows.push_back(row);
        }
        j["rows"] = rows;
        out = j.dump(2) + '\n';
    }
    emit(out, options.out);
    return out;
}

std::string cmd_gauss_test(const GaussTestOptions& options) {
    if (options.max_order < 1) throw ConfigError("--max-order must be >= 1");
    const Trajectory traj = options.trace ? read_trace(*options.trace) : generate(options.gen.to_spec());

    struct Row {
        int order;
        std::size_t n;
        std::string status;
        std::optional<EnergyTestResult> result;
    };
    std::vector<Row> rows;
    for (int order = 1; order <= options.max_order; ++order) {
        Row row{order, 0, "ok", std::nullopt};
        try {
            const DifferenceSamples ds = difference_samples(traj, options.interval, order);
            row.n = ds.vectors.size();
            if (ds.degenerate) {
                row.status = "degenerate";
            } else if (row.n < traj.dim() + 2) {
                row.status = "insufficient";
            } else {
                EnergyTestOptions eo;
                eo.n_mc_reference = options.n_mc_reference;
                eo.n_replicates = options.replicates;
                eo.seed = options.test_seed;
                row.result = energy_test(ds.vectors, eo);
            }
        } catch (const InsufficientDataError&) {
            row.status = "insufficient";
        } catch (const SingularCovarianceError&) {
            row.status = "singular";
        }
        rows.push_back(std::move(row));
    }

    std::string out;
    if (options.format == OutputFormat::Csv) {
        out = "order,n_samples,dim,statistic,p_value,condition,pseudo_inverse,status\n";
        for (const Row& r : rows) {
            out += std::to_string(r.order) + ',' + std::to_string(r.n) + ',' + std::to_string(traj.dim()) + ',';
            if (r.result) {
                out += fmt(r.result->statistic) + ',' + fmt(r.result->p_value) + ',' +
                       fmt(r.result->condition_estimate) + ',' + (r.result->pseudo_inverse ? "1" : "0");
            } else {
                out += ",,,";
            }
            out += ',' + r.status + '\n';
        }
    } else {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "gauss-test";
        j["interval"] = options.interval;
        j["n_mc_reference"] = options.n_mc_reference;
        j["replicates"] = options.replicates;
        j["test_seed"] = options.test_seed;
        Json arr = Json::array();
        for (const Row& r : rows) {
            Json row;
            row["order"] = r.order;
            row["n_samples"] = r.n;
            row["dim"] = traj.dim();
            row["statistic"] = r.result ? Json(r.result->statistic) : Json(nullptr);
            row["p_value"] = r.result ? Json(r.result->p_value) : Json(nullptr);
            row["condition"] = r.result ? Json(r.result->condition_estimate) : Json(nullptr);
            row["pseudo_inverse"] = r.result ? Json(r.result->pseudo_inverse) : Json(nullptr);
            row["status"] = r.status;
            arr.push_back(row);
        }
        j["rows"] = arr;
        out = j.dump(2) + '\n';
    }
    emit(out, options.out);
    return out;
}

std::vector<AblationRow> ablation_campaign(const AblateOptions& options) {
    if (options.sigmas.empty()) throw ConfigError("--sigmas is empty");
    std::vector<BasisConfig> configs = {BasisConfig::taylor(options.order)};
    for (double s : options.sigmas) configs.push_back(BasisConfig::hermite(options.order, s));

    const std::vector<Trajectory> trajectories = campaign_trajectories(options.gen, options.seeds);
    std::vector<std::vector<double>> mse(trajectories.size());
    parallel_for(trajectories.size(), [&](std::size_t s) {
        const ErrorReport rep = non_cumulative_eval(trajectories[s], options.interval, configs);
        for (const BasisErrors& be : rep.bases) {
            mse[s].push_back(be.cumulative_mse.back() / static_cast<double>(options.interval - 1));
        }
    });

    std::vector<AblationRow> rows;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        double total = 0.0;
        for (const auto& per_seed : mse) total += per_seed[c];
        AblationRow row;
        row.basis = configs[c].kind;
        row.sigma = configs[c].sigma;
        row.mse = total / static_cast<double>(mse.size());
        rows.push_back(row);
    }
    for (AblationRow& row : rows) row.ratio_vs_taylor = error_ratio(rows.front().mse, row.mse);
    return rows;
}

std::string cmd_ablate_sigma(const AblateOptions& options) {
    const std::vector<AblationRow> rows = ablation_campaign(options);
    std::string out;
    if (options.format == OutputFormat::Csv) {
        out = "basis,sigma,order,interval,n_seeds,mse,ratio_vs_taylor\n";
        for (const AblationRow& r : rows) {
            const bool hermite = r.basis == BasisKind::ScaledHermite;
            out += std::string(to_string(r.basis)) + ',' + (hermite ? fmt(r.sigma) : std::string()) + ',' +
                   std::to_string(options.order) + ',' + std::to_string(options.interval) + ',' +
                   std::to_string(options.seeds) + ',' + fmt(r.mse) + ',' + fmt(r.ratio_vs_taylor) + '\n';
        }
    } else {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "ablate-sigma";
        j["generator"] = generator_json(options.gen);
        j["seeds"] = options.seeds;
        j["interval"] = options.interval;
        j["order"] = options.order;
        Json arr = Json::array();
        for (const AblationRow& r : rows) {
            Json row;
            row["basis"] = std::string(to_string(r.basis));
            row["sigma"] = r.basis == BasisKind::ScaledHermite ? Json(r.sigma) : Json(nullptr);
            row["mse"] = r.mse;
            row["ratio_vs_taylor"] = json_number(r.ratio_vs_taylor);
            arr.push_back(row);
        }
        j["rows"] = arr;
        out = j.dump(2) + '\n';
    }
    emit(out, options.out);
    return out;
}

namespace {

std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> out;
    auto parse_int = [&](std::string_view s) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw ConfigError("bad order list '" + text + "'");
        }
        return v;
    };
    const std::string_view sv(text);
    if (const auto dots = sv.find(".."); dots != std::string_view::npos) {
        const int lo = parse_int(sv.substr(0, dots));
        const int hi = parse_int(sv.substr(dots + 2));
        if (hi < lo) throw ConfigError("empty order range '" + text + "'");
        for (int o = lo; o <= hi; ++o) out.push_back(o);
        return out;
    }
    std::size_t start = 0;
    while (start <= sv.size()) {
        const std::size_t comma = std::min(sv.find(',', start), sv.size());
        out.push_back(parse_int(sv.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

BasisKind parse_basis(const std::string& s) {
    if (s == "taylor") return BasisKind::TaylorMonomial;
    if (s == "hermite") return BasisKind::ScaledHermite;
    throw ConfigError("unknown basis '" + s + "' (expected taylor or hermite)");
}

OutputFormat parse_output_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + s + "' (expected csv or json)");
}

// Optional path flags are bound to strings; empty means "not given".
std::optional<std::filesystem::path> as_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::filesystem::path(s);
}

struct GeneratorFlags {
    GeneratorOptions opts;
    double noise = 0.0;
    double x0 = 0.0;
    CLI::Option* noise_opt = nullptr;
    CLI::Option* x0_opt = nullptr;

    void attach(CLI::App* app, std::string default_kind) {
        opts.kind = std::move(default_kind);
        app->add_option("--kind", opts.kind, "Generator: gp-se, ou or poly")->capture_default_str();
        app->add_option("--dim", opts.dim, "Feature dimension")->capture_default_str();
        app->add_option("--steps", opts.steps, "Number of timesteps T")->capture_default_str();
        app->add_option("--seed", opts.seed, "Generator seed (first seed of a campaign)")->capture_default_str();
        app->add_option("--length-scale", opts.length_scale, "gp-se length scale")->capture_default_str();
        app->add_option("--amplitude", opts.amplitude, "gp-se amplitude")->capture_default_str();
        app->add_option("--theta", opts.theta, "ou mean-reversion rate")->capture_default_str();
        noise_opt = app->add_option("--noise", noise, "ou diffusion or poly white-noise scale");
        x0_opt = app->add_option("--x0", x0, "ou initial value (default: stationary draw)");
        app->add_option("--degree", opts.degree, "poly degree (0-4)")->capture_default_str();
        app->add_option("--coeff-scale", opts.coeff_scale, "poly coefficient scale")->capture_default_str();
    }

    GeneratorOptions finish() const {
        GeneratorOptions g = opts;
        if (noise_opt->count() > 0) g.noise = noise;
        if (x0_opt->count() > 0) g.x0 = x0;
        return g;
    }
};

// Subcommand config files are not applied by CLI11 itself (it only reads the
// top-level app's), so the ini keys are turned into flags up front. Keys at
// top level or in a section named after the subcommand count; flags already
// on the command line take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (!path || args.empty()) return args;
    const std::string& subcommand = args.front();

    auto given = [&](const std::string& flag) {
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    std::vector<std::string> out = args;
    for (const CLI::ConfigItem& item : CLI::ConfigINI().from_file(*path)) {
        const bool ours = item.parents.empty() || (item.parents.size() == 1 && item.parents[0] == subcommand);
        if (!ours || item.name.empty() || item.name == "config" || item.name == "++" || item.name == "--") continue;
        const std::string flag = "--" + item.name;
        if (given(flag)) continue;
        if (item.inputs.size() == 1 && item.inputs[0] == "false") continue;
        out.push_back(flag);
        if (item.inputs.size() == 1 && item.inputs[0] == "true") continue;
        out.insert(out.end(), item.inputs.begin(), item.inputs.end());
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    try {
        args = expand_config(raw_args);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    std::string config_path;

    CLI::App app{"Hermite-basis feature forecasting benchmarks"};
    app.name("hicache");
    app.require_subcommand(1);

    // simulate
    GeneratorFlags sim_gen;
    std::string sim_out;
    std::string sim_format = "binary";
    auto* sim = app.add_subcommand("simulate", "Generate a synthetic feature trace");
    sim->add_option("--config", config_path, "Read options from an ini file (command line wins)");
    sim_gen.attach(sim, "gp-se");
    sim->add_option("--out", sim_out, "Output trace path")->required();
    sim->add_option("--format", sim_format, "binary or csv")->capture_default_str();

    // predict
    PredictOptions pred;
    std::string pred_trace, pred_basis = "hermite", pred_steps_out, pred_summary_out;
    auto* pr = app.add_subcommand("predict", "Run the cache-then-forecast schedule over a trace");
    pr->add_option("--config", config_path, "Read options from an ini file (command line wins)");
    pr->add_option("--trace", pred_trace, "Input trace")->required();
    pr->add_option("--interval", pred.interval, "Activation interval")->capture_default_str();
    pr->add_option("--order", pred.order, "Maximum expansion order")->capture_default_str();
    pr->add_option("--basis", pred_basis, "taylor or hermite")->capture_default_str();
    pr->add_option("--sigma", pred.sigma, "Hermite contraction factor")->capture_default_str();
    pr->add_option("--busy-work", pred.busy_work, "Simulated oracle cost (loop iterations)")->capture_default_str();
    pr->add_option("--steps-out", pred_steps_out, "Per-step CSV path (default: stdout)");
    pr->add_option("--summary-out", pred_summary_out, "Summary JSON path (default: stdout)");

    // compare
    CompareOptions cmp;
    GeneratorFlags cmp_gen;
    std::string cmp_trace, cmp_orders = "1..5", cmp_reference = "taylor", cmp_format = "csv", cmp_out;
    auto* co = app.add_subcommand("compare", "Taylor/Hermite error-ratio table over a seed campaign");
    co->add_option("--config", config_path, "Read options from an ini file (command line wins)");
    cmp_gen.attach(co, "gp-se");
    co->add_option("--trace", cmp_trace, "Evaluate a single trace instead of generating");
    co->add_option("--seeds", cmp.seeds, "Number of generator seeds")->capture_default_str();
    co->add_option("--interval", cmp.interval, "Activation interval")->capture_default_str();
    co->add_option("--orders", cmp_orders, "Orders, as lo..hi or a comma list")->capture_default_str();
    co->add_option("--sigma", cmp.sigma, "Hermite contraction factor")->capture_default_str();
    co->add_option("--reference", cmp_reference, "Reference basis: taylor or hermite")->capture_default_str();
    co->add_option("--reference-sigma", cmp.reference_sigma, "Sigma for a hermite reference")->capture_default_str();
    co->add_flag("--cumulative", cmp.cumulative, "Add cumulative ratio columns");
    co->add_option("--format", cmp_format, "csv or json")->capture_default_str();
    co->add_option("--out", cmp_out, "Output path (default: stdout)");

    // gauss-test
    GaussTestOptions gt;
    GeneratorFlags gt_gen;
    std::string gt_trace, gt_format = "csv", gt_out;
    auto* ga = app.add_subcommand("gauss-test", "Energy normality test on finite-difference samples");
    ga->add_option("--config", config_path, "Read options from an ini file (command line wins)");
    gt_gen.attach(ga, "ou");
    ga->add_option("--trace", gt_trace, "Input trace (default: generate from flags)");
    ga->add_option("--interval", gt.interval, "Difference step")->capture_default_str();
    ga->add_option("--max-order", gt.max_order, "Test orders 1..K")->capture_default_str();
    ga->add_option("--n-ref", gt.n_mc_reference, "Monte-Carlo reference size")->capture_default_str();
    ga->add_option("--replicates", gt.replicates, "Null replicates")->capture_default_str();
    ga->add_option("--test-seed", gt.test_seed, "Energy test seed")->capture_default_str();
    ga->add_option("--format", gt_format, "csv or json")->capture_default_str();
    ga->add_option("--out", gt_out, "Output path (default: stdout)");

    // ablate-sigma
    AblateOptions ab;
    GeneratorFlags ab_gen;
    std::string ab_format = "csv", ab_out;
    auto* abl = app.add_subcommand("ablate-sigma", "Prediction MSE across contraction factors");
    abl->add_option("--config", config_path, "Read options from an ini file (command line wins)");
    ab_gen.attach(abl, "gp-se");
    abl->add_option("--seeds", ab.seeds, "Number of generator seeds")->capture_default_str();
    abl->add_option("--interval", ab.interval, "Activation interval")->capture_default_str();
    abl->add_option("--order", ab.order, "Expansion order")->capture_default_str();
    abl->add_option("--sigmas", ab.sigmas, "Comma-separated contraction factors")->delimiter(',')->capture_default_str();
    abl->add_option("--format", ab_format, "csv or json")->capture_default_str();
    abl->add_option("--out", ab_out, "Output path (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
    }

    try {
        if (sim->parsed()) {
            SimulateOptions so;
            so.gen = sim_gen.finish();
            so.out = sim_out;
            if (sim_format == "binary") {
                so.format = TraceFormat::Binary;
            } else if (sim_format == "csv") {
                so.format = TraceFormat::Csv;
            } else {
                throw ConfigError("unknown trace format '" + sim_format + "' (expected binary or csv)");
            }
            out << cmd_simulate(so);
        } else if (pr->parsed()) {
            pred.trace = pred_trace;
            pred.basis = parse_basis(pred_basis);
            pred.steps_out = as_path(pred_steps_out);
            pred.summary_out = as_path(pred_summary_out);
            const PredictOutput po = cmd_predict(pred);
            if (!pred.steps_out) out << po.steps_csv;
            if (!pred.summary_out) out << po.summary_json;
        } else if (co->parsed()) {
            cmp.gen = cmp_gen.finish();
            cmp.trace = as_path(cmp_trace);
            cmp.orders = parse_orders(cmp_orders);
            cmp.reference = parse_basis(cmp_reference);
            cmp.format = parse_output_format(cmp_format);
            cmp.out = as_path(cmp_out);
            const std::string text = cmd_compare(cmp);
            if (!cmp.out) out << text;
        } else if (ga->parsed()) {
            gt.gen = gt_gen.finish();
            gt.trace = as_path(gt_trace);
            gt.format = parse_output_format(gt_format);
            gt.out = as_path(gt_out);
            const std::string text = cmd_gauss_test(gt);
            if (!gt.out) out << text;
        } else if (abl->parsed()) {
            ab.gen = ab_gen.finish();
            ab.format = parse_output_format(ab_format);
            ab.out = as_path(ab_out);
            const std::string text = cmd_ablate_sigma(ab);
            if (!ab.out) out << text;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace hicache::cli
