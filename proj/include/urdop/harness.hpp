// Multi-seed, multi-algorithm campaigns: plan files, concurrent execution,
// per-run record files, mean convergence traces and summary statistics.
//
// Output layout under the result directory:
//   instances/K<K>.json
//   runs/<label>_K<K>_s<seed>.json
//   traces/<label>_K<K>.csv        fe,mean_best_objective
#ifndef URDOP_HARNESS_HPP
#define URDOP_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "urdop/baselines.hpp"
#include "urdop/record_io.hpp"
#include "urdop/sadevps.hpp"

namespace urdop {

/// One solver column of the campaign.
struct SolverSpec {
    enum class MChoice { none, mid, max, fixed };

    Algorithm algorithm = Algorithm::sadevps;
    MChoice m_choice = MChoice::none;
    int m_value = 0; // used with MChoice::fixed

    /// File-safe label, e.g. "sadevps", "fixed_m_de_mid", "fixed_m_de_m12".
    std::string label() const {
        std::string base(to_string(algorithm));
        switch (m_choice) {
        case MChoice::none: return base;
        case MChoice::mid: return base + "_mid";
        case MChoice::max: return base + "_max";
        case MChoice::fixed: return base + "_m" + std::to_string(m_value);
        }
        return base;
    }

    int resolve_m(const ScenarioConfig& cfg) const {
        switch (m_choice) {
        case MChoice::mid: return mid_point_count(cfg);
        case MChoice::fixed: return m_value;
        default: return cfg.M_max;
        }
    }
};

/// Parses "sadevps", "devips", "fixed-m-de:mid", "fixed-m-de:max" or
/// "fixed-m-de:<M>".
inline SolverSpec parse_solver_spec(const std::string& text) {
    auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    auto algo = parse_algorithm(name);
    if (!algo) throw ConfigError("unknown algorithm '" + name + "'");
    SolverSpec spec{*algo};
    if (*algo != Algorithm::fixed_m_de) {
        if (colon != std::string::npos) throw ConfigError("'" + name + "' takes no M setting");
        return spec;
    }
    const std::string m = colon == std::string::npos ? "max" : text.substr(colon + 1);
    if (m == "mid") {
        spec.m_choice = SolverSpec::MChoice::mid;
    } else if (m == "max") {
        spec.m_choice = SolverSpec::MChoice::max;
    } else {
        spec.m_choice = SolverSpec::MChoice::fixed;
        spec.m_value = static_cast<int>(detail::to_int("M", m));
    }
    return spec;
}

struct ExperimentPlan {
    std::vector<SolverSpec> solvers;
    std::vector<int> k_values;
    int runs = 1;
    std::uint64_t base_seed = 1;
    std::uint64_t instance_seed = 1;
    long long max_fe = 100000;
    long long checkpoint_fe = 1000;
    unsigned threads = 0; // 0 = hardware concurrency
    RawParams config;     // scenario overrides (K comes from k_values)

    /// Seed of run i in every cell.
    std::uint64_t run_seed(int i) const { return base_seed + static_cast<std::uint64_t>(i); }
};

namespace harness_detail {

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace harness_detail

/// Plan keys: algorithms, k_values, runs, base_seed, instance_seed, max_fe,
/// checkpoint_fe, threads. Any other key must be a scenario config key.
inline ExperimentPlan parse_plan(const RawParams& raw) {
    ExperimentPlan plan;
    bool have_instance_seed = false;
    for (const auto& [key, value] : raw) {
        if (key == "algorithms") {
            for (const auto& a : harness_detail::split_list(value)) plan.solvers.push_back(parse_solver_spec(a));
        } else if (key == "k_values") {
            for (const auto& k : harness_detail::split_list(value))
                plan.k_values.push_back(static_cast<int>(detail::to_int(key, k)));
        } else if (key == "runs") {
            plan.runs = static_cast<int>(detail::to_int(key, value));
        } else if (key == "base_seed") {
            plan.base_seed = static_cast<std::uint64_t>(detail::to_int(key, value));
        } else if (key == "instance_seed") {
            plan.instance_seed = static_cast<std::uint64_t>(detail::to_int(key, value));
            have_instance_seed = true;
        } else if (key == "max_fe") {
            plan.max_fe = detail::to_int(key, value);
        } else if (key == "checkpoint_fe") {
            plan.checkpoint_fe = detail::to_int(key, value);
        } else if (key == "threads") {
            plan.threads = static_cast<unsigned>(detail::to_int(key, value));
        } else if (key == "K") {
            throw ConfigError("plan: use k_values instead of K");
        } else if (is_config_key(key)) {
            plan.config[key] = value;
        } else {
            throw ConfigError("plan: unknown key '" + key + "'");
        }
    }
    if (!have_instance_seed) plan.instance_seed = plan.base_seed;
    if (plan.solvers.empty()) throw ConfigError("plan: 'algorithms' is empty");
    if (plan.k_values.empty()) throw ConfigError("plan: 'k_values' is empty");
    if (plan.runs < 1) throw ConfigError("plan: runs must be >= 1");
    if (plan.max_fe < 1) throw ConfigError("plan: max_fe must be >= 1");
    if (plan.checkpoint_fe < 1) throw ConfigError("plan: checkpoint_fe must be >= 1");
    for (int k : plan.k_values) {
        RawParams r = plan.config;
        r["K"] = std::to_string(k);
        const ScenarioConfig cfg = build_config(r); // validates overrides per K
        for (const auto& s : plan.solvers) {
            const int m = s.resolve_m(cfg);
            if (s.algorithm == Algorithm::fixed_m_de && (m < cfg.M_min || m > cfg.M_max))
                throw ConfigError("plan: " + s.label() + " has M outside [M_min, M_max] for K=" + std::to_string(k));
        }
    }
    return plan;
}

/// Runs one solver on one instance.
inline RunRecord solve(const SolverSpec& spec, const Instance& inst, const ScenarioConfig& cfg, std::uint64_t seed,
                       long long max_fe) {
    switch (spec.algorithm) {
    case Algorithm::sadevps: return run_sadevps(inst, cfg, seed, max_fe);
    case Algorithm::devips: return run_devips(inst, cfg, seed, max_fe);
    case Algorithm::fixed_m_de: return run_fixed_m_de(inst, cfg, spec.resolve_m(cfg), seed, max_fe);
    }
    throw std::logic_error("unreachable");
}

/// Best-so-far value at `fe`, linearly interpolated between trace samples
/// and held constant outside them.
inline double trace_value_at(const std::vector<TracePoint>& trace, double fe) {
    if (trace.empty()) return NAN;
    if (fe <= static_cast<double>(trace.front().fe)) return trace.front().best;
    if (fe >= static_cast<double>(trace.back().fe)) return trace.back().best;
    auto hi = std::upper_bound(trace.begin(), trace.end(), fe,
                               [](double v, const TracePoint& t) { return v < static_cast<double>(t.fe); });
    auto lo = hi - 1;
    const double span = static_cast<double>(hi->fe - lo->fe);
    if (span <= 0.0) return hi->best;
    const double w = (fe - static_cast<double>(lo->fe)) / span;
    return lo->best + w * (hi->best - lo->best);
}

struct MeanTrace {
    std::vector<long long> fe;
    std::vector<double> mean_best;
};

/// Checkpoints 0, step, 2 step, ... up to max_fe; mean over the given runs.
inline MeanTrace mean_trace(const std::vector<const RunRecord*>& runs, long long max_fe, long long step) {
    MeanTrace mt;
    for (long long fe = 0; fe <= max_fe; fe += step) {
        double sum = 0.0;
        for (const RunRecord* r : runs) sum += trace_value_at(r->trace, static_cast<double>(fe));
        mt.fe.push_back(fe);
        mt.mean_best.push_back(runs.empty() ? NAN : sum / static_cast<double>(runs.size()));
    }
    return mt;
}

inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string trace_csv(const MeanTrace& mt) {
    std::string out = "fe,mean_best_objective\n";
    for (std::size_t i = 0; i < mt.fe.size(); ++i)
        out += std::to_string(mt.fe[i]) + "," + format_number(mt.mean_best[i]) + "\n";
    return out;
}

/// All runs of one (solver, K) cell.
struct CellResult {
    std::string label;
    int K = 0;
    std::vector<RunRecord> runs; // successful and failed, in seed order
    std::vector<std::string> errors;

    std::vector<const RunRecord*> successful() const {
        std::vector<const RunRecord*> out;
        for (const auto& r : runs)
            if (r.status == RunStatus::ok) out.push_back(&r);
        return out;
    }
};

struct ExperimentResult {
    std::vector<CellResult> cells;
    long long max_fe = 0;
    long long checkpoint_fe = 1000;

    bool all_cells_succeeded() const {
        return std::all_of(cells.begin(), cells.end(), [](const CellResult& c) { return !c.successful().empty(); });
    }
};

inline std::string run_file_name(const std::string& label, int K, std::uint64_t seed) {
    return label + "_K" + std::to_string(K) + "_s" + std::to_string(seed) + ".json";
}

/// Writes one mean-trace CSV per cell into dir/traces.
inline void export_traces(const ExperimentResult& result, const std::filesystem::path& dir) {
    for (const auto& cell : result.cells) {
        const auto ok = cell.successful();
        if (ok.empty()) continue;
        const MeanTrace mt = mean_trace(ok, result.max_fe, result.checkpoint_fe);
        write_text_file_atomic(dir / "traces" / (cell.label + "_K" + std::to_string(cell.K) + ".csv"), trace_csv(mt));
    }
}

/// Executes every (solver, K, seed) run, concurrently across runs, and
/// writes instances, run records and mean traces under `out_dir`.
inline ExperimentResult run_experiment(const ExperimentPlan& plan, const std::filesystem::path& out_dir) {
    struct Job {
        std::size_t cell;
        int run;
    };
    std::vector<Instance> instances;
    std::vector<ScenarioConfig> configs;
    for (int k : plan.k_values) {
        RawParams r = plan.config;
        r["K"] = std::to_string(k);
        configs.push_back(build_config(r));
        instances.push_back(generate_instance(configs.back(), plan.instance_seed));
        write_text_file_atomic(out_dir / "instances" / ("K" + std::to_string(k) + ".json"),
                               save_instance(instances.back(), configs.back()));
    }

    ExperimentResult result;
    result.max_fe = plan.max_fe;
    result.checkpoint_fe = plan.checkpoint_fe;
    std::vector<Job> jobs;
    std::vector<std::size_t> cell_k;
    for (std::size_t ki = 0; ki < plan.k_values.size(); ++ki) {
        for (const auto& s : plan.solvers) {
            CellResult cell;
            cell.label = s.label();
            cell.K = plan.k_values[ki];
            cell.runs.resize(static_cast<std::size_t>(plan.runs));
            cell.errors.resize(static_cast<std::size_t>(plan.runs));
            result.cells.push_back(std::move(cell));
            cell_k.push_back(ki);
            for (int i = 0; i < plan.runs; ++i) jobs.push_back({result.cells.size() - 1, i});
        }
    }
    std::vector<SolverSpec> cell_spec;
    for (std::size_t ki = 0; ki < plan.k_values.size(); ++ki)
        for (const auto& s : plan.solvers) cell_spec.push_back(s);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
            const Job& job = jobs[j];
            CellResult& cell = result.cells[job.cell];
            const std::size_t ki = cell_k[job.cell];
            const std::uint64_t seed = plan.run_seed(job.run);
            RunRecord& rec = cell.runs[static_cast<std::size_t>(job.run)];
            try {
                rec = solve(cell_spec[job.cell], instances[ki], configs[ki], seed, plan.max_fe);
            } catch (const std::exception& e) {
                rec = RunRecord{};
                rec.algorithm = cell_spec[job.cell].algorithm;
                rec.status = RunStatus::init_failed;
                rec.seed = seed;
                rec.max_fe = plan.max_fe;
                cell.errors[static_cast<std::size_t>(job.run)] = e.what();
            }
            json doc = run_record_to_json(rec);
            doc["label"] = cell.label;
            doc["K"] = cell.K;
            write_text_file_atomic(out_dir / "runs" / run_file_name(cell.label, cell.K, seed), to_text(doc));
        }
    };
    unsigned n = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, jobs.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    export_traces(result, out_dir);
    return result;
}

struct SummaryRow {
    int K = 0;
    std::string label;
    std::size_t runs = 0;
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation (n - 1); 0 for one run
    double gap_pct = 0.0; // (mean - best mean) / best mean * 100, per K
    double mean_m = 0.0;  // mean final hover-point count
};

/// Per (K, label) statistics over successful runs. Empty cells are omitted
/// and reported through `warnings`.
inline std::vector<SummaryRow> summarize(const std::vector<CellResult>& cells,
                                         std::vector<std::string>* warnings = nullptr) {
    std::vector<SummaryRow> rows;
    for (const auto& cell : cells) {
        const auto ok = cell.successful();
        if (ok.empty()) {
            if (warnings) warnings->push_back("no successful runs for " + cell.label + " K=" + std::to_string(cell.K));
            continue;
        }
        SummaryRow row{cell.K, cell.label, ok.size()};
        for (const RunRecord* r : ok) {
            row.mean += r->final_breakdown.objective;
            row.mean_m += static_cast<double>(r->final_deployment.size());
        }
        row.mean /= static_cast<double>(ok.size());
        row.mean_m /= static_cast<double>(ok.size());
        if (ok.size() > 1) {
            double ss = 0.0;
            for (const RunRecord* r : ok) ss += std::pow(r->final_breakdown.objective - row.mean, 2);
            row.stddev = std::sqrt(ss / static_cast<double>(ok.size() - 1));
        }
        rows.push_back(row);
    }
    std::map<int, double> best;
    for (const auto& r : rows) {
        auto [it, fresh] = best.emplace(r.K, r.mean);
        if (!fresh) it->second = std::min(it->second, r.mean);
    }
    for (auto& r : rows) r.gap_pct = (r.mean - best[r.K]) / best[r.K] * 100.0;
    std::stable_sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) { return a.K < b.K; });
    return rows;
}

/// Reads every run record under dir/runs and groups them into cells.
inline std::vector<CellResult> load_result_set(const std::filesystem::path& dir,
                                               std::vector<std::string>* warnings = nullptr) {
    const auto runs_dir = dir / "runs";
    if (!std::filesystem::is_directory(runs_dir)) throw ParseError("no runs/ directory under " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(runs_dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    std::map<std::pair<int, std::string>, CellResult> cells;
    for (const auto& f : files) {
        try {
            const json doc = parse_json_text(read_text_file(f.string()), f.string());
            RunRecord rec = run_record_from_json(doc);
            const std::string label =
                doc.contains("label") ? doc["label"].get<std::string>() : std::string(to_string(rec.algorithm));
            const int K = doc.contains("K") ? doc["K"].get<int>() : 0;
            auto& cell = cells[{K, label}];
            cell.label = label;
            cell.K = K;
            cell.runs.push_back(std::move(rec));
        } catch (const std::exception& e) {
            if (warnings) warnings->push_back(std::string("skipping ") + f.string() + ": " + e.what());
        }
    }
    std::vector<CellResult> out;
    for (auto& [key, cell] : cells) {
        std::sort(cell.runs.begin(), cell.runs.end(),
                  [](const RunRecord& a, const RunRecord& b) { return a.seed < b.seed; });
        out.push_back(std::move(cell));
    }
    return out;
}

inline std::string format_summary(const std::vector<SummaryRow>& rows) {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-6s %-20s %5s %18s %18s %9s %8s\n", "K", "algorithm", "runs", "mean_J",
                  "std_J", "gap_%", "mean_M");
    os << buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-6d %-20s %5zu %18.10e %18.10e %9.2f %8.2f\n", r.K, r.label.c_str(), r.runs,
                      r.mean, r.stddev, r.gap_pct, r.mean_m);
        os << buf;
    }
    return os.str();
}

inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "K,algorithm,runs,mean_objective,std_objective,gap_percent,mean_M\n";
    for (const auto& r : rows)
        out += std::to_string(r.K) + "," + r.label + "," + std::to_string(r.runs) + "," + format_number(r.mean) +
               "," + format_number(r.stddev) + "," + format_number(r.gap_pct) + "," + format_number(r.mean_m) + "\n";
    return out;
}

} // namespace urdop

#endif // URDOP_HARNESS_HPP
