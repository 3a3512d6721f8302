#include "safeoco/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace safeoco {

const char* const kCsvHeader =
    "setting,algo,schedule,dim,seed,horizon,regret,avg_regret,max_g_value,min_gamma,"
    "max_iterate_gap,audit_pass,wall_ms";

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_ms(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string setting_name(Setting s) {
    return s == Setting::Linear ? "linear" : "quadratic";
}

std::string schedule_name(Schedule s) {
    return s == Schedule::Theorem ? "theorem" : "experiment";
}

std::vector<CostOracle> zero_costs(std::size_t n, int dim) {
    std::vector<CostOracle> draws(n);
    for (auto& c : draws) {
        c.value = [](const Vec&) { return 0.0; };
        c.gradient = [dim](const Vec&) { return Vec(Vec::Zero(dim)); };
    }
    return draws;
}

AlgoParams baseline_params(const std::string& algo, const ProblemInstance& instance,
                           long horizon) {
    const Constants& c = instance.constants;
    const double T = static_cast<double>(horizon);
    AlgoParams p;
    p.told = c;
    p.horizon = horizon;
    p.dim = instance.dim;
    if (algo == "mp-ogd") {
        const auto ball = instance.constraint.sublevel_ball();
        if (!ball)
            throw PreconditionViolation("mp-ogd needs a ball-shaped constraint set");
        const double safe_radius = ball->radius - ball->center.norm();
        p.points_per_round = instance.dim + 1;
        p.eta = c.D / (instance.dim * c.G * std::sqrt(T));
        p.delta = 1.0 / T;
        p.alpha = p.delta / safe_radius;
    } else {  // rogd
        p.points_per_round = 1;
        p.eta = c.D / (c.G * std::sqrt(T));
        p.delta = 0.0;
        p.alpha = 0.0;
    }
    return p;
}

struct RunOutput {
    SweepRow row;
    AuditReport report;
    RunResult trace;
};

struct AlgoRun {
    AlgoParams params;
    RunResult trace;
};

AlgoRun run_algo(const std::string& algo, const ProblemInstance& instance,
                 const std::vector<CostOracle>& draws, long horizon,
                 const SweepConfig& config) {
    AlgoRun out;
    if (algo == "mp-rogd") {
        out.params = config.schedule == Schedule::Theorem
                         ? theorem_schedule(instance.constants, horizon, instance.dim)
                         : experiment_schedule(instance.constants, horizon, instance.dim);
        out.params.assert_safe();
        out.trace = run_mp_rogd(make_value_oracles(instance, draws), instance.action_set,
                                out.params);
    } else if (algo == "mp-ogd") {
        out.params = baseline_params(algo, instance, horizon);
        out.trace = run_mp_ogd(make_value_oracles(instance, draws), instance.action_set,
                               *instance.constraint.sublevel_ball(), out.params);
    } else if (algo == "rogd") {
        out.params = baseline_params(algo, instance, horizon);
        out.trace = run_rogd(make_first_order_oracles(instance, draws),
                             instance.action_set, out.params);
    } else {
        throw PreconditionViolation("unknown algorithm: " + algo);
    }
    return out;
}

RunOutput summarize(const std::string& algo, const ProblemInstance& instance,
                    const std::vector<CostOracle>& draws, const Vec& x_star,
                    RunResult trace, const AlgoParams& params, long horizon,
                    const SweepConfig& config) {
    RunOutput out;
    out.trace = std::move(trace);
    out.row.algo = algo;
    out.row.seed = instance.seed;
    out.row.horizon = horizon;

    out.trace.final_regret = regret(out.trace.played_per_round(), x_star, draws);
    out.row.regret = out.trace.final_regret;
    out.row.avg_regret = out.trace.final_regret / static_cast<double>(horizon);
    out.row.wall_ms = out.trace.wall_ms;

    double max_g = -std::numeric_limits<double>::infinity();
    double min_gamma = std::numeric_limits<double>::infinity();
    double max_gap = 0.0;
    for (const auto& round : out.trace.rounds) {
        for (const Vec& p : round.played)
            max_g = std::max(max_g, instance.constraint.value(p));
        min_gamma = std::min(min_gamma, round.gamma);
        max_gap = std::max(max_gap, (round.played.at(0) - round.opt_iterate).norm());
    }
    out.row.max_g_value = max_g;
    out.row.min_gamma = min_gamma;
    out.row.max_iterate_gap = max_gap;

    if (config.audit) {
        if (algo == "mp-ogd") {
            // No restrained-set machinery to audit in this baseline.
            out.report.checks.push_back(check_safety(out.trace, instance));
        } else {
            const bool theorem = algo == "mp-rogd" && config.schedule == Schedule::Theorem;
            out.report = run_full_audit(out.trace, instance, params, &x_star, theorem);
        }
        out.row.audit_pass = out.report.all_pass() ? 1 : 0;
    }
    return out;
}

RunOutput execute_run(const std::string& algo, const ProblemInstance& instance,
                      const std::vector<CostOracle>& draws, const Vec& x_star,
                      long horizon, const SweepConfig& config) {
    AlgoRun r = run_algo(algo, instance, draws, horizon, config);
    return summarize(algo, instance, draws, x_star, std::move(r.trace), r.params,
                     horizon, config);
}

RunResult prefix_of(const RunResult& trace, long horizon) {
    RunResult out;
    out.rounds.assign(trace.rounds.begin(), trace.rounds.begin() + horizon);
    out.wall_ms = trace.wall_ms;
    out.algorithm = trace.algorithm;
    return out;
}

void save_trace(const std::string& dir, const SweepConfig& config, const SweepRow& row,
                const RunResult& trace, const Vec& x_star) {
    nlohmann::json doc;
    doc["setting"] = setting_name(config.setting);
    doc["schedule"] = schedule_name(config.schedule);
    doc["algo"] = row.algo;
    doc["seed"] = row.seed;
    doc["horizon"] = row.horizon;
    doc["regret"] = row.regret;
    doc["x_star"] = std::vector<double>(x_star.data(), x_star.data() + x_star.size());
    auto& played = doc["played"];
    played = nlohmann::json::array();
    for (const auto& round : trace.rounds) {
        nlohmann::json pts = nlohmann::json::array();
        for (const Vec& p : round.played)
            pts.push_back(std::vector<double>(p.data(), p.data() + p.size()));
        played.push_back(std::move(pts));
    }
    std::ostringstream name;
    name << dir << '/' << setting_name(config.setting) << '_' << row.algo << '_'
         << schedule_name(config.schedule) << "_s" << row.seed << "_T" << row.horizon
         << ".json";
    std::ofstream out(name.str());
    if (!out) throw EvaluationFault("save_trace: cannot open " + name.str());
    out << doc.dump();
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
    const std::size_t n_algos = config.algorithms.size();
    const std::size_t n_h = config.horizons.size();
    const std::size_t n_s = config.seeds.size();
    const std::size_t n_rows = n_algos * n_h * n_s;

    std::vector<SweepRow> rows(n_rows);
    std::vector<AuditReport> reports(n_rows);
    const auto slot = [&](std::size_t a, std::size_t h, std::size_t s) {
        return (a * n_h + h) * n_s + s;
    };

    // One instance per seed, shared across the pool; instances and cost
    // streams are immutable after construction.
    std::vector<ProblemInstance> instances;
    instances.reserve(n_s);
    for (const auto seed : config.seeds)
        instances.push_back(config.setting == Setting::Linear
                                ? gen_linear_setting(seed, config.dim)
                                : gen_quadratic_setting(seed, config.dim));

    const long max_horizon = *std::max_element(config.horizons.begin(), config.horizons.end());

    // Work units: (seed, horizon) pairs, or just seeds in prefix mode where
    // one long run at the largest horizon supplies every shorter row.
    struct Unit {
        std::size_t s_idx, h_idx;
    };
    std::vector<Unit> units;
    if (config.prefix_checkpoints) {
        for (std::size_t s = 0; s < n_s; ++s) units.push_back({s, 0});
    } else {
        for (std::size_t s = 0; s < n_s; ++s)
            for (std::size_t h = 0; h < n_h; ++h) units.push_back({s, h});
    }

    const auto fill_unit = [&](std::size_t s_idx, std::size_t h_idx) {
        const ProblemInstance& instance = instances[s_idx];
        const long horizon = config.horizons[h_idx];
        std::vector<CostOracle> draws =
            config.zero_cost ? zero_costs(static_cast<std::size_t>(horizon), config.dim)
                             : materialize_costs(instance, horizon);
        Vec x_star;
        std::string unit_error;
        try {
            x_star = offline_optimum(instance, draws);
        } catch (const std::exception& e) {
            unit_error = e.what();
        }
        for (std::size_t a = 0; a < n_algos; ++a) {
            SweepRow& row = rows[slot(a, h_idx, s_idx)];
            row.algo = config.algorithms[a];
            row.seed = instance.seed;
            row.horizon = horizon;
            if (!unit_error.empty()) {
                row.error = unit_error;
                continue;
            }
            try {
                RunOutput out = execute_run(config.algorithms[a], instance, draws,
                                            x_star, horizon, config);
                if (!config.save_traces_dir.empty())
                    save_trace(config.save_traces_dir, config, out.row, out.trace,
                               x_star);
                row = std::move(out.row);
                reports[slot(a, h_idx, s_idx)] = std::move(out.report);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };

    // Prefix mode: the long run keeps the max-horizon step sizes; each row
    // re-solves the offline comparator for its own prefix of the cost draws.
    const auto fill_prefixes = [&](std::size_t s_idx) {
        const ProblemInstance& instance = instances[s_idx];
        const std::vector<CostOracle> draws =
            config.zero_cost
                ? zero_costs(static_cast<std::size_t>(max_horizon), config.dim)
                : materialize_costs(instance, max_horizon);
        for (std::size_t a = 0; a < n_algos; ++a) {
            std::string algo_error;
            AlgoRun full;
            try {
                full = run_algo(config.algorithms[a], instance, draws, max_horizon,
                                config);
            } catch (const std::exception& e) {
                algo_error = e.what();
            }
            for (std::size_t h = 0; h < n_h; ++h) {
                SweepRow& row = rows[slot(a, h, s_idx)];
                row.algo = config.algorithms[a];
                row.seed = instance.seed;
                row.horizon = config.horizons[h];
                if (!algo_error.empty()) {
                    row.error = algo_error;
                    continue;
                }
                try {
                    const long horizon = config.horizons[h];
                    const std::vector<CostOracle> draws_h(draws.begin(),
                                                          draws.begin() + horizon);
                    const Vec x_star = offline_optimum(instance, draws_h);
                    AlgoParams params = full.params;
                    params.horizon = horizon;
                    RunOutput out = summarize(config.algorithms[a], instance, draws_h,
                                              x_star, prefix_of(full.trace, horizon),
                                              params, horizon, config);
                    if (!config.save_traces_dir.empty() && horizon == max_horizon)
                        save_trace(config.save_traces_dir, config, out.row, out.trace,
                                   x_star);
                    row = std::move(out.row);
                    reports[slot(a, h, s_idx)] = std::move(out.report);
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
            }
        }
    };

    std::atomic<std::size_t> cursor{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t u = cursor.fetch_add(1);
            if (u >= units.size()) return;
            if (config.prefix_checkpoints)
                fill_prefixes(units[u].s_idx);
            else
                fill_unit(units[u].s_idx, units[u].h_idx);
        }
    };

    unsigned n_workers = config.workers > 0
                             ? static_cast<unsigned>(config.workers)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, units.size() ? units.size() : 1);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n_workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // Serialize in (algo, horizon, seed) order with an aggregate row per
    // (algo, horizon) group.
    std::ostringstream csv;
    csv << kCsvHeader << '\n';
    const std::string setting_str = setting_name(config.setting);
    const std::string schedule_str = schedule_name(config.schedule);
    for (std::size_t a = 0; a < n_algos; ++a) {
        for (std::size_t h = 0; h < n_h; ++h) {
            double sum = 0.0, sum_sq = 0.0, avg_sum = 0.0, avg_sum_sq = 0.0;
            double agg_max_g = -std::numeric_limits<double>::infinity();
            double agg_min_gamma = std::numeric_limits<double>::infinity();
            double agg_max_gap = 0.0, agg_wall = 0.0;
            int agg_audit = config.audit ? 1 : -1;
            std::size_t n_ok = 0;
            for (std::size_t s = 0; s < n_s; ++s) {
                const SweepRow& row = rows[slot(a, h, s)];
                csv << setting_str << ',' << row.algo << ',' << schedule_str << ','
                    << config.dim << ',' << row.seed << ',' << row.horizon << ',';
                if (!row.error.empty()) {
                    csv << "nan,nan,nan,nan,nan,0,"
                        << (config.stable_timing ? "0.000" : fmt_ms(row.wall_ms)) << '\n';
                    agg_audit = config.audit ? 0 : -1;
                    continue;
                }
                csv << fmt(row.regret) << ',' << fmt(row.avg_regret) << ','
                    << fmt(row.max_g_value) << ',' << fmt(row.min_gamma) << ','
                    << fmt(row.max_iterate_gap) << ','
                    << (row.audit_pass < 0 ? std::string()
                                           : std::to_string(row.audit_pass))
                    << ',' << (config.stable_timing ? "0.000" : fmt_ms(row.wall_ms))
                    << '\n';
                sum += row.regret;
                sum_sq += row.regret * row.regret;
                avg_sum += row.avg_regret;
                avg_sum_sq += row.avg_regret * row.avg_regret;
                agg_max_g = std::max(agg_max_g, row.max_g_value);
                agg_min_gamma = std::min(agg_min_gamma, row.min_gamma);
                agg_max_gap = std::max(agg_max_gap, row.max_iterate_gap);
                agg_wall += row.wall_ms;
                if (row.audit_pass == 0) agg_audit = 0;
                ++n_ok;
            }
            if (n_ok == 0) continue;
            const double n = static_cast<double>(n_ok);
            const double mean = sum / n;
            const double std_dev = std::sqrt(std::max(0.0, sum_sq / n - mean * mean));
            const double avg_mean = avg_sum / n;
            const double avg_std =
                std::sqrt(std::max(0.0, avg_sum_sq / n - avg_mean * avg_mean));
            csv << setting_str << ',' << config.algorithms[a] << ',' << schedule_str << ','
                << config.dim << ",agg," << config.horizons[h] << ',' << fmt(mean) << ';'
                << fmt(std_dev) << ',' << fmt(avg_mean) << ';' << fmt(avg_std) << ','
                << fmt(agg_max_g) << ',' << fmt(agg_min_gamma) << ',' << fmt(agg_max_gap)
                << ',' << (agg_audit < 0 ? std::string() : std::to_string(agg_audit)) << ','
                << (config.stable_timing ? "0.000" : fmt_ms(agg_wall)) << '\n';
        }
    }

    SweepResult result;
    result.rows = std::move(rows);
    result.reports = std::move(reports);
    result.csv = csv.str();
    return result;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string emit_plot(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw EvaluationFault("emit_plot: CSV schema mismatch");

    // algo -> horizon -> per-seed average regrets
    std::map<std::string, std::map<long, std::vector<double>>> data;
    std::vector<std::string> algo_order;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 13) throw EvaluationFault("emit_plot: malformed row");
        if (cells[4] == "agg") continue;
        const double avg = std::strtod(cells[7].c_str(), nullptr);
        if (std::isnan(avg)) continue;
        const long horizon = std::strtol(cells[5].c_str(), nullptr, 10);
        if (!data.count(cells[1])) algo_order.push_back(cells[1]);
        data[cells[1]][horizon].push_back(avg);
    }
    if (data.empty()) throw EvaluationFault("emit_plot: no data rows");

    struct Curve {
        std::string algo;
        std::vector<long> horizons;
        std::vector<double> mean, std_dev;
    };
    std::vector<Curve> curves;
    double t_min = std::numeric_limits<double>::infinity(), t_max = 0.0, y_max = 0.0;
    for (const auto& algo : algo_order) {
        Curve c;
        c.algo = algo;
        for (const auto& [horizon, vals] : data[algo]) {
            double s = 0.0, s2 = 0.0;
            for (double v : vals) {
                s += v;
                s2 += v * v;
            }
            const double m = s / vals.size();
            const double sd = std::sqrt(std::max(0.0, s2 / vals.size() - m * m));
            c.horizons.push_back(horizon);
            c.mean.push_back(m);
            c.std_dev.push_back(sd);
            t_min = std::min(t_min, static_cast<double>(horizon));
            t_max = std::max(t_max, static_cast<double>(horizon));
            y_max = std::max(y_max, m + sd);
        }
        curves.push_back(std::move(c));
    }
    if (y_max <= 0.0) y_max = 1.0;
    y_max *= 1.05;

    const double width = 640, height = 440;
    const double ml = 70, mr = 20, mt = 20, mb = 50;
    const double lx0 = std::log10(t_min), lx1 = std::log10(std::max(t_max, t_min + 1e-9));
    const auto sx = [&](double t) {
        const double f = lx1 > lx0 ? (std::log10(t) - lx0) / (lx1 - lx0) : 0.5;
        return ml + f * (width - ml - mr);
    };
    const auto sy = [&](double v) { return height - mb - (v / y_max) * (height - mt - mb); };
    const auto f2 = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    svg << "<line x1=\"" << f2(ml) << "\" y1=\"" << f2(height - mb) << "\" x2=\""
        << f2(width - mr) << "\" y2=\"" << f2(height - mb)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << f2(ml) << "\" y1=\"" << f2(mt) << "\" x2=\"" << f2(ml)
        << "\" y2=\"" << f2(height - mb) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int e = static_cast<int>(std::floor(lx0)); e <= static_cast<int>(std::ceil(lx1));
         ++e) {
        const double t = std::pow(10.0, e);
        if (t < t_min * 0.999 || t > t_max * 1.001) continue;
        svg << "<line x1=\"" << f2(sx(t)) << "\" y1=\"" << f2(height - mb) << "\" x2=\""
            << f2(sx(t)) << "\" y2=\"" << f2(height - mb + 5)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << f2(sx(t)) << "\" y=\"" << f2(height - mb + 20)
            << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double v = y_max * i / 5.0;
        char lbl[32];
        std::snprintf(lbl, sizeof lbl, "%.3g", v);
        svg << "<line x1=\"" << f2(ml - 5) << "\" y1=\"" << f2(sy(v)) << "\" x2=\""
            << f2(ml) << "\" y2=\"" << f2(sy(v)) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << f2(ml - 8) << "\" y=\"" << f2(sy(v) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << lbl << "</text>\n";
    }
    svg << "<text x=\"" << f2((ml + width - mr) / 2) << "\" y=\"" << f2(height - 8)
        << "\" font-size=\"13\" text-anchor=\"middle\">T</text>\n";
    svg << "<text x=\"16\" y=\"" << f2((mt + height - mb) / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << f2((mt + height - mb) / 2) << ")\">average regret</text>\n";

    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const Curve& c = curves[ci];
        const char* color = palette[ci % 4];
        if (c.horizons.size() == 1) {
            svg << "<circle cx=\"" << f2(sx(c.horizons[0])) << "\" cy=\""
                << f2(sy(c.mean[0])) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        } else {
            std::ostringstream band, lineout;
            for (std::size_t i = 0; i < c.horizons.size(); ++i)
                band << f2(sx(c.horizons[i])) << ','
                     << f2(sy(std::min(y_max, c.mean[i] + c.std_dev[i]))) << ' ';
            for (std::size_t i = c.horizons.size(); i-- > 0;)
                band << f2(sx(c.horizons[i])) << ','
                     << f2(sy(std::max(0.0, c.mean[i] - c.std_dev[i]))) << ' ';
            for (std::size_t i = 0; i < c.horizons.size(); ++i)
                lineout << f2(sx(c.horizons[i])) << ',' << f2(sy(c.mean[i])) << ' ';
            svg << "<polygon points=\"" << band.str() << "\" fill=\"" << color
                << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
            svg << "<polyline points=\"" << lineout.str() << "\" fill=\"none\" stroke=\""
                << color << "\" stroke-width=\"1.5\"/>\n";
        }
        svg << "<rect x=\"" << f2(width - mr - 150) << "\" y=\"" << f2(mt + 10 + 18 * ci)
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << f2(width - mr - 133) << "\" y=\"" << f2(mt + 20 + 18 * ci)
            << "\" font-size=\"12\">" << c.algo << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_plot_file(const std::string& csv_path, const std::string& out_path) {
    std::ifstream in(csv_path);
    if (!in) throw EvaluationFault("emit_plot_file: cannot open " + csv_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string svg = emit_plot(buf.str());
    std::ofstream out(out_path);
    if (!out) throw EvaluationFault("emit_plot_file: cannot open " + out_path);
    out << svg;
}

}  // namespace safeoco
