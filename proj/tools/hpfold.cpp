// hpfold command-line tool.
//
// Subcommands:
//   bench   seeded multi-run benchmark over the embedded instances
//   fold    run one method on a single sequence
//   oracle  exhaustive search on a small instance
//   blocks  dump the fragment-block table
//
// Machine-readable output (JSON lines, block table) goes to stdout; human
// summaries and progress go to stderr. With a fixed seed, an iteration
// budget and --threads 1, stdout is byte-identical across invocations.

#include <fstream>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hpfold/hpfold.hpp"

namespace {

// Reads the first sequence from a text file: one h/p string per line,
// '#' lines and blank lines ignored.
std::string read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sequence file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        // trim whitespace
        const auto begin = line.find_first_not_of(" \t\r\n");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r\n");
        line = line.substr(begin, end - begin + 1);
        if (line.empty() || line[0] == '#') continue;
        return line;
    }
    throw std::runtime_error("no sequence found in '" + path + "'");
}

struct BudgetFlags {
    double time_budget_secs = 0.0;
    std::uint64_t iters = 0;

    hpfold::Budget resolve(double default_secs) const {
        hpfold::Budget budget;
        budget.max_iterations = iters;
        budget.max_seconds = time_budget_secs;
        if (budget.max_iterations == 0 && budget.max_seconds <= 0.0) {
            budget.max_seconds = default_secs;
        }
        return budget;
    }
};

void add_budget_flags(CLI::App* cmd, BudgetFlags& flags) {
    cmd->add_option("--time-budget-secs", flags.time_budget_secs,
                    "Wall-clock budget per run in seconds");
    cmd->add_option("--iters", flags.iters,
                    "Iteration budget per run (use for reproducible output)");
}

void add_param_flags(CLI::App* cmd, hpfold::HeuristicParams& params) {
    cmd->add_option("--sa-t0", params.sa_t0, "SA initial temperature (default 2*thh)");
    cmd->add_option("--sa-alpha", params.sa_alpha, "SA geometric cooling factor");
    cmd->add_option("--sa-steps-per-level", params.sa_steps_per_level,
                    "SA iterations per temperature level (default: neighborhood size)");
    cmd->add_option("--ants", params.n_ants, "Ants per iteration");
    cmd->add_option("--alpha", params.alpha, "Pheromone exponent");
    cmd->add_option("--beta", params.beta, "Heuristic exponent");
    cmd->add_option("--rho", params.rho, "Evaporation rate");
    cmd->add_option("--hc-sweeps", params.hc_sweeps,
                    "Hill-climb sweep cap (0 = run to local optimum)");
    cmd->add_option("--k-perturb", params.k_perturb,
                    "Positions perturbed per ant (hmcaco; clamped to path length)");
    cmd->add_option("--temperature", params.temperature, "Metropolis temperature (hmcaco)");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int cmd_bench(const std::string& methods_csv, const std::string& instances_csv, int runs,
              const BudgetFlags& budget_flags, std::uint64_t seed, int threads,
              const std::string& out_dir, const hpfold::HeuristicParams& params) {
    hpfold::BenchConfig config;
    config.methods.clear();
    for (const std::string& name : split_list(methods_csv)) {
        config.methods.push_back(hpfold::parse_method(name));
    }
    config.instances = hpfold::resolve_instances(split_list(instances_csv));
    config.runs_per_instance = runs;
    config.budget = budget_flags.resolve(10.0);
    config.base_seed = seed;
    config.threads = threads;
    config.params = params;

    const hpfold::BlockTable table = hpfold::build_block_table();
    const hpfold::BenchReport report = hpfold::run_benchmark(table, config);

    hpfold::write_jsonl(std::cout, report.records);
    hpfold::write_summary_table(std::cerr, config, report.summary);

    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        {
            std::ofstream jsonl(fs::path(out_dir) / "records.jsonl");
            hpfold::write_jsonl(jsonl, report.records);
        }
        {
            std::ofstream csv(fs::path(out_dir) / "summary.csv");
            hpfold::write_summary_csv(csv, report.summary);
        }
        fs::create_directories(fs::path(out_dir) / "structures");
        for (const hpfold::BenchmarkInstance& inst : config.instances) {
            for (hpfold::Method m : config.methods) {
                // best feasible record of the cell, ties to the earliest run
                const hpfold::RunRecord* best = nullptr;
                for (const hpfold::RunRecord& rec : report.records) {
                    if (rec.instance != inst.id || rec.method != hpfold::method_name(m)) continue;
                    if (!rec.best_feasible_path) continue;
                    if (!best || *rec.best_hh_feasible > *best->best_hh_feasible) best = &rec;
                }
                if (!best) continue;
                const hpfold::HPSequence seq = hpfold::parse_sequence(inst.sequence);
                hpfold::Path path;
                path.choices = *best->best_feasible_path;
                std::ofstream sf(fs::path(out_dir) / "structures" /
                                 (inst.id + "_" + best->method + ".txt"));
                hpfold::export_structure(sf, inst.id, best->method, best->seed, path, seq, table);
            }
        }
        std::cerr << "wrote " << out_dir << "/records.jsonl, summary.csv, structures/\n";
    }
    return 0;
}

int cmd_fold(const std::string& seq_text, const std::string& file, const std::string& method_name,
             const std::string& id, const BudgetFlags& budget_flags, std::uint64_t seed,
             const std::string& export_path, const std::string& dump_pheromone,
             hpfold::HeuristicParams params) {
    if (seq_text.empty() && file.empty()) {
        throw CLI::ValidationError("fold", "need --seq or --file");
    }
    hpfold::BenchmarkInstance instance;
    instance.id = id;
    instance.sequence = seq_text.empty() ? read_sequence_file(file) : seq_text;
    hpfold::parse_sequence(instance.sequence);

    const hpfold::Method method = hpfold::parse_method(method_name);
    const hpfold::Budget budget = budget_flags.resolve(10.0);
    const hpfold::BlockTable table = hpfold::build_block_table();

    std::ofstream dump_stream;
    if (!dump_pheromone.empty()) {
        if (method != hpfold::Method::ACO && method != hpfold::Method::HMCACO) {
            throw CLI::ValidationError("fold", "--dump-pheromone needs an ant method");
        }
        dump_stream.open(dump_pheromone);
        params.matrix_dump = &dump_stream;
    }

    const hpfold::RunRecord record = hpfold::run_record(
        method, instance, 0, 0, table, budget, seed, params);
    std::cout << hpfold::to_json(record).dump() << '\n';

    if (!export_path.empty()) {
        if (!record.best_feasible_path) {
            std::cerr << "no overlap-free solution seen; nothing to export\n";
            return 1;
        }
        const hpfold::HPSequence seq = hpfold::parse_sequence(instance.sequence);
        hpfold::Path path;
        path.choices = *record.best_feasible_path;
        std::ofstream out(export_path);
        hpfold::export_structure(out, instance.id, record.method, record.seed, path, seq, table);
        std::cerr << "wrote " << export_path << '\n';
    }
    return 0;
}

int cmd_oracle(const std::string& seq_text, const std::string& file, bool force,
               const std::string& id) {
    if (seq_text.empty() && file.empty()) {
        throw CLI::ValidationError("oracle", "need --seq or --file");
    }
    const std::string text = seq_text.empty() ? read_sequence_file(file) : seq_text;
    const hpfold::HPSequence seq = hpfold::parse_sequence(text);
    const hpfold::BlockTable table = hpfold::build_block_table();
    const hpfold::OracleResult result = hpfold::exhaustive_search(seq, table, force);

    nlohmann::ordered_json j;
    j["instance"] = id;
    j["method"] = "oracle";
    j["n"] = seq.n();
    j["best_energy"] = result.best_energy;
    j["best_hh_feasible"] = result.best_hh_feasible;
    j["optimal_paths"] = result.optimal_paths;
    j["enumerated"] = result.enumerated;
    j["best_path"] = result.best_path.choices;
    j["best_feasible_path"] = result.best_feasible_path.choices;
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_blocks(const std::string& out_path) {
    const hpfold::BlockTable table = hpfold::build_block_table();
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        os = &file;
    }
    *os << "# fragment blocks: id then step triples d1 d2 d3 as dx dy dz\n";
    for (std::size_t id = 0; id < table.blocks.size(); ++id) {
        const hpfold::Block& b = table.blocks[id];
        *os << id;
        for (const hpfold::Point3& d : b.steps) {
            *os << ' ' << d.x << ' ' << d.y << ' ' << d.z;
        }
        *os << '\n';
    }
    *os << "start_ids";
    for (int s : table.start_ids) *os << ' ' << s;
    *os << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"HP lattice protein folding: fragment-block heuristics and benchmark harness"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config file mirroring the flags; flags take precedence");

    // bench
    auto* bench = app.add_subcommand("bench", "Seeded multi-run benchmark");
    std::string methods_csv = "sa,aco,hmcaco";
    std::string instances_csv = "all";
    int runs = 3;
    BudgetFlags bench_budget;
    std::uint64_t bench_seed = 1;
    int threads = 1;
    std::string out_dir;
    hpfold::HeuristicParams bench_params;
    bench->add_option("--methods", methods_csv, "Comma list of hc,sa,aco,hmcaco,oracle");
    bench->add_option("--instances", instances_csv,
                      "Comma list of S1..S10, 'all', or custom name:sequence");
    bench->add_option("--runs", runs, "Runs per (method, instance)");
    add_budget_flags(bench, bench_budget);
    bench->add_option("--seed", bench_seed, "Base seed (per-run seeds derive from it)");
    bench->add_option("--threads", threads, "Worker pool width (1 = deterministic order)");
    bench->add_option("--out", out_dir, "Directory for records.jsonl, summary.csv, structures/");
    add_param_flags(bench, bench_params);

    // fold
    auto* fold = app.add_subcommand("fold", "Fold one sequence with one method");
    std::string fold_seq, fold_file, fold_method = "hmcaco", fold_id = "custom";
    std::string export_path, dump_pheromone;
    BudgetFlags fold_budget;
    std::uint64_t fold_seed = 1;
    hpfold::HeuristicParams fold_params;
    fold->add_option("--seq", fold_seq, "Sequence as an h/p string");
    fold->add_option("--file", fold_file, "File with one h/p string per line ('#' comments)");
    fold->add_option("--method", fold_method, "One of hc,sa,aco,hmcaco");
    fold->add_option("--id", fold_id, "Instance label used in the output");
    add_budget_flags(fold, fold_budget);
    fold->add_option("--seed", fold_seed, "Run seed");
    fold->add_option("--export", export_path, "Write the best overlap-free structure here");
    fold->add_option("--dump-pheromone", dump_pheromone,
                     "Write the final pheromone matrix snapshot here (ant methods)");
    add_param_flags(fold, fold_params);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exhaustive search (small instances)");
    std::string oracle_seq, oracle_file, oracle_id = "custom";
    bool force = false;
    oracle->add_option("--seq", oracle_seq, "Sequence as an h/p string");
    oracle->add_option("--file", oracle_file, "File with one h/p string per line");
    oracle->add_option("--id", oracle_id, "Instance label used in the output");
    oracle->add_flag("--force", force, "Admit 4-position instances (20.25M paths)");

    // blocks
    auto* blocks = app.add_subcommand("blocks", "Dump the 150-block table and start set");
    std::string blocks_out;
    blocks->add_option("--out", blocks_out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench->parsed()) {
            return cmd_bench(methods_csv, instances_csv, runs, bench_budget, bench_seed, threads,
                             out_dir, bench_params);
        }
        if (fold->parsed()) {
            return cmd_fold(fold_seq, fold_file, fold_method, fold_id, fold_budget, fold_seed,
                            export_path, dump_pheromone, fold_params);
        }
        if (oracle->parsed()) {
            return cmd_oracle(oracle_seq, oracle_file, force, oracle_id);
        }
        if (blocks->parsed()) {
            return cmd_blocks(blocks_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
