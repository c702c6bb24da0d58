// urdop: instance generation, single solves, campaigns and summaries.
//
//   urdop gen-instance --k 100 --seed 1 --out inst.json [--config scenario.cfg]
//   urdop solve --algo sadevps --instance inst.json --seed 7 --max-fe 20000 --out run.json
//   urdop experiment --plan plan.cfg --out-dir results/
//   urdop summarize --in-dir results/
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "urdop/urdop.hpp"

namespace {

using namespace urdop;

int cmd_gen_instance(int k, std::uint64_t seed, const std::string& config_path, const std::string& out) {
    RawParams raw = config_path.empty() ? RawParams{} : read_key_value_file(config_path);
    raw["K"] = std::to_string(k);
    const ScenarioConfig cfg = build_config(raw);
    const Instance inst = generate_instance(cfg, seed);
    write_text_file_atomic(out, save_instance(inst, cfg));
    std::cout << "wrote " << out << " (K=" << cfg.K << ", M in [" << cfg.M_min << ", " << cfg.M_max << "])\n";
    return 0;
}

int cmd_solve(const std::string& algo, const std::string& instance_path, const std::string& config_path,
              std::uint64_t seed, long long max_fe, const std::string& m, const std::string& out) {
    const RawParams fallback = config_path.empty() ? RawParams{} : read_key_value_file(config_path);
    auto [inst, cfg] = load_instance_file(instance_path, fallback);
    std::string spec_text = algo;
    if (!m.empty()) {
        if (algo != "fixed-m-de" && algo != "fixed_m_de") throw ConfigError("--m only applies to fixed-m-de");
        spec_text += ":" + m;
    }
    const SolverSpec spec = parse_solver_spec(spec_text);
    if (spec.algorithm == Algorithm::fixed_m_de) {
        const int M = spec.resolve_m(cfg);
        if (M < cfg.M_min || M > cfg.M_max)
            throw ConfigError("--m " + std::to_string(M) + " outside [" + std::to_string(cfg.M_min) + ", " +
                              std::to_string(cfg.M_max) + "]");
    }
    const RunRecord rec = solve(spec, inst, cfg, seed, max_fe);
    write_text_file_atomic(out, to_text(run_record_to_json(rec)));
    if (rec.status != RunStatus::ok) {
        std::cerr << "initialization failed after " << rec.fe_used << " evaluations\n";
        return 2;
    }
    std::printf("%s seed=%llu objective=%.10e M=%zu fe=%lld\n", std::string(to_string(rec.algorithm)).c_str(),
                static_cast<unsigned long long>(seed), rec.final_breakdown.objective, rec.final_deployment.size(),
                rec.fe_used);
    std::fprintf(stderr, "wall time %.3f s\n", rec.wall_time_s);
    return 0;
}

int cmd_experiment(const std::string& plan_path, const std::string& out_dir) {
    const ExperimentPlan plan = parse_plan(read_key_value_file(plan_path));
    const ExperimentResult result = run_experiment(plan, out_dir);
    for (const auto& cell : result.cells)
        for (std::size_t i = 0; i < cell.errors.size(); ++i)
            if (!cell.errors[i].empty())
                std::cerr << cell.label << " K=" << cell.K << " run " << i << ": " << cell.errors[i] << "\n";
    std::vector<std::string> warnings;
    const auto rows = summarize(result.cells, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    write_text_file_atomic(std::filesystem::path(out_dir) / "summary.csv", summary_csv(rows));
    std::cout << format_summary(rows);
    return result.all_cells_succeeded() ? 0 : 1;
}

int cmd_summarize(const std::string& in_dir) {
    std::vector<std::string> warnings;
    const auto cells = load_result_set(in_dir, &warnings);
    const auto rows = summarize(cells, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cout << format_summary(rows);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV relay deployment optimization"};
    app.require_subcommand(1);

    int k = 100;
    std::uint64_t seed = 1;
    std::string out, config_path;
    auto* gen = app.add_subcommand("gen-instance", "Generate a random instance");
    gen->add_option("--k", k, "Number of UEs")->required();
    gen->add_option("--seed", seed, "Instance seed")->required();
    gen->add_option("--out", out, "Output file")->required();
    gen->add_option("--config", config_path, "Scenario config (key=value)");

    std::string algo, instance_path, m;
    long long max_fe = 100000;
    auto* solve_cmd = app.add_subcommand("solve", "Run one solver on one instance");
    solve_cmd->add_option("--algo", algo, "sadevps | devips | fixed-m-de")
        ->required()
        ->check(CLI::IsMember({"sadevps", "devips", "fixed-m-de"}));
    solve_cmd->add_option("--instance", instance_path, "Instance file")->required();
    solve_cmd->add_option("--seed", seed, "Solver seed")->required();
    solve_cmd->add_option("--max-fe", max_fe, "Fitness-evaluation budget")->required();
    solve_cmd->add_option("--m", m, "fixed-m-de point count: mid | max | <M> (default max)");
    solve_cmd->add_option("--out", out, "RunRecord output file")->required();
    solve_cmd->add_option("--config", config_path, "Scenario config when the instance embeds none");

    std::string plan_path, dir;
    auto* exp = app.add_subcommand("experiment", "Run a multi-seed campaign");
    exp->add_option("--plan", plan_path, "Plan file (key=value)")->required();
    exp->add_option("--out-dir", dir, "Result directory")->required();

    auto* sum = app.add_subcommand("summarize", "Summarize a result directory");
    sum->add_option("--in-dir", dir, "Result directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_gen_instance(k, seed, config_path, out);
        if (*solve_cmd) return cmd_solve(algo, instance_path, config_path, seed, max_fe, m, out);
        if (*exp) return cmd_experiment(plan_path, dir);
        if (*sum) return cmd_summarize(dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
