// Benchmark harness: the ten standard 48-residue instances, seeded
// multi-run execution over a worker pool, and machine-readable reporting
// (JSON-lines records, CSV summary, structure export).
//
// Reported "HP energy" is -hh of the best overlap-free conformation a run
// ever evaluated, which is the conventional HP objective; the multi-term
// energy is the internal search objective and is reported alongside.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hpfold/aco.hpp"
#include "hpfold/core.hpp"
#include "hpfold/hmcaco.hpp"
#include "hpfold/local_search.hpp"
#include "hpfold/oracle.hpp"
#include "hpfold/scoring.hpp"
#include "hpfold/search.hpp"

namespace hpfold {

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

struct BenchmarkInstance {
    std::string id;
    std::string sequence;
    std::optional<int> reference_emin; // known optimum (negative contacts), when available
};

// The ten standard 48-residue cubic-lattice instances with their known
// optima.
inline const std::vector<BenchmarkInstance>& benchmark_instances() {
    static const std::vector<BenchmarkInstance> instances = {
        {"S1", "hphhpphhhhphhhpphhpphphhhphphhpphhppphpppppppphh", -32},
        {"S2", "hhhhphhphhhhhpphpphhpphpppppphpphppphpphhpphhhph", -34},
        {"S3", "phphhphhhhhhpphphpphphhphphppphpphhpphhpphphpphp", -34},
        {"S4", "phphhpphphhhpphhphhppphhhhhpphphhphphpppphpphphp", -33},
        {"S5", "pphppphphhhhpphhhhphhphhhpphphphpphpppppphhphhph", -32},
        {"S6", "hhhppphhphphhphhphhphppppppphphpphppphpphhhhhhph", -32},
        {"S7", "phpppphphhhphphhhhphhphhppphphppphhhpphhpphhppph", -32},
        {"S8", "phhphhhphhhhpphhhpppppphphhpphhphppphhphphphhppp", -31},
        {"S9", "phphpppphphphpphphhhhhhpphhhphpphphhpphphhhpppph", -34},
        {"S10", "phhpppppphhppphhhphpphphhpphpphpphhpphhhhhhhpphh", -33},
    };
    return instances;
}

// Resolves instance tokens: "all", a standard id (S1..S10), or a custom
// "name:sequence" pair.
inline std::vector<BenchmarkInstance> resolve_instances(const std::vector<std::string>& tokens) {
    std::vector<BenchmarkInstance> out;
    for (const std::string& tok : tokens) {
        if (tok == "all") {
            for (const auto& inst : benchmark_instances()) out.push_back(inst);
            continue;
        }
        const auto colon = tok.find(':');
        if (colon != std::string::npos) {
            BenchmarkInstance inst;
            inst.id = tok.substr(0, colon);
            inst.sequence = tok.substr(colon + 1);
            parse_sequence(inst.sequence); // validate
            out.push_back(inst);
            continue;
        }
        bool found = false;
        for (const auto& inst : benchmark_instances()) {
            if (inst.id == tok) {
                out.push_back(inst);
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("unknown instance '" + tok + "'");
    }
    if (out.empty()) throw std::invalid_argument("no instances selected");
    return out;
}

// ---------------------------------------------------------------------------
// Methods and per-run configuration
// ---------------------------------------------------------------------------

enum class Method { HillClimb, SA, ACO, HMCACO, Oracle };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::HillClimb: return "hc";
        case Method::SA: return "sa";
        case Method::ACO: return "aco";
        case Method::HMCACO: return "hmcaco";
        case Method::Oracle: return "oracle";
    }
    return "?";
}

inline Method parse_method(const std::string& name) {
    if (name == "hc") return Method::HillClimb;
    if (name == "sa") return Method::SA;
    if (name == "aco") return Method::ACO;
    if (name == "hmcaco") return Method::HMCACO;
    if (name == "oracle") return Method::Oracle;
    throw std::invalid_argument("unknown method '" + name + "'");
}

// Heuristic knobs shared by the CLI and the harness. Zeros mean
// "derive from the instance" where documented.
struct HeuristicParams {
    double sa_t0 = 0.0;                   // <= 0: 2 * thh
    double sa_alpha = 0.98;
    std::uint64_t sa_steps_per_level = 0; // 0: 1-neighborhood size
    int n_ants = 5;
    double alpha = 1.0;
    double beta = 1.0;
    double rho = 0.1;
    int hc_sweeps = 0; // 0: descend to a local optimum
    int k_perturb = 4; // clamped to the instance's path length
    double temperature = 2.0;
    bool force_oracle = false;           // admit P = 4 oracle instances
    std::ostream* matrix_dump = nullptr; // ant methods: final-matrix snapshot sink
};

// Per-run record; one JSON line each in reports. wall_time_seconds is only
// recorded for wall-clock budgets so that iteration-budgeted reports are
// byte-identical across invocations.
struct RunRecord {
    std::string instance;
    std::string method;
    std::uint64_t seed = 0;
    std::optional<int> best_hh_feasible;
    double best_internal_energy = 0.0;
    int ov_of_best = 0;
    std::uint64_t iterations = 0;
    std::optional<double> wall_time_seconds;
    std::vector<int> best_path;
    std::optional<std::vector<int>> best_feasible_path;
};

inline nlohmann::ordered_json to_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance;
    j["method"] = r.method;
    j["seed"] = r.seed;
    if (r.best_hh_feasible) {
        j["best_hh_feasible"] = *r.best_hh_feasible;
        j["feasible"] = true;
    } else {
        j["best_hh_feasible"] = nullptr;
        j["feasible"] = false;
    }
    j["best_internal_energy"] = r.best_internal_energy;
    j["ov_of_best"] = r.ov_of_best;
    j["iterations"] = r.iterations;
    if (r.wall_time_seconds) j["wall_time_seconds"] = *r.wall_time_seconds;
    j["best_path"] = r.best_path;
    if (r.best_feasible_path) {
        j["best_feasible_path"] = *r.best_feasible_path;
    } else {
        j["best_feasible_path"] = nullptr;
    }
    return j;
}

// Documented seed derivation: run (method, instance i, run r) under base
// seed B uses substream_seed(B, fnv1a64(method), i, r).
inline std::uint64_t mix_run_seed(std::uint64_t base_seed, Method method,
                                  std::uint64_t instance_index, std::uint64_t run_index) {
    return substream_seed(base_seed, fnv1a64(method_name(method)), instance_index, run_index);
}

// Dispatches one heuristic run. Oracle runs go through run_oracle_record.
inline SearchResult run_one(Method method, const HPSequence& seq, const BlockTable& table,
                            const Budget& budget, std::uint64_t seed,
                            const HeuristicParams& params) {
    switch (method) {
        case Method::HillClimb:
            return hc_run(seq, table, params.hc_sweeps, budget, seed);
        case Method::SA: {
            CoolingSchedule schedule;
            schedule.t0 = params.sa_t0;
            schedule.alpha = params.sa_alpha;
            schedule.steps_per_level = params.sa_steps_per_level;
            return sa_run(seq, table, schedule, budget, seed);
        }
        case Method::ACO: {
            AcoConfig cfg;
            cfg.n_ants = params.n_ants;
            cfg.alpha = params.alpha;
            cfg.beta = params.beta;
            cfg.rho = params.rho;
            cfg.hc_sweeps = params.hc_sweeps;
            cfg.budget = budget;
            cfg.seed = seed;
            cfg.matrix_dump = params.matrix_dump;
            return aco_run(seq, table, cfg);
        }
        case Method::HMCACO: {
            HmcacoConfig cfg;
            cfg.n_ants = params.n_ants;
            cfg.alpha = params.alpha;
            cfg.beta = params.beta;
            cfg.rho = params.rho;
            cfg.k_perturb = std::min(params.k_perturb, path_length_for(seq.n()));
            cfg.temperature = params.temperature;
            cfg.hc_sweeps = params.hc_sweeps;
            cfg.budget = budget;
            cfg.seed = seed;
            cfg.matrix_dump = params.matrix_dump;
            return hmcaco_run(seq, table, cfg);
        }
        case Method::Oracle:
            throw std::invalid_argument("run_one: oracle is handled by exhaustive_search");
    }
    throw std::logic_error("unreachable");
}

namespace detail {

// Re-scores a recorded feasible path and verifies the claimed contact
// count; guards every reported benchmark result.
inline void verify_feasible(const Path& path, const HPSequence& seq, const BlockTable& table,
                            int claimed_hh) {
    const Conformation conf = decode(path, table, seq.n());
    const ScoreBreakdown sb = energy(conf, seq);
    if (sb.ov != 0 || sb.hh != claimed_hh) {
        throw std::logic_error("feasible-result verification failed: recorded hh " +
                               std::to_string(claimed_hh) + ", rescored hh " +
                               std::to_string(sb.hh) + " with ov " + std::to_string(sb.ov));
    }
}

} // namespace detail

// Runs one (method, instance, run-index) cell job and builds its record.
inline RunRecord run_record(Method method, const BenchmarkInstance& instance,
                            std::uint64_t instance_index, std::uint64_t run_index,
                            const BlockTable& table, const Budget& budget,
                            std::uint64_t base_seed, const HeuristicParams& params) {
    const HPSequence seq = parse_sequence(instance.sequence);
    const std::uint64_t seed = mix_run_seed(base_seed, method, instance_index, run_index);
    const bool wall_mode = budget.max_seconds > 0.0;

    RunRecord rec;
    rec.instance = instance.id;
    rec.method = method_name(method);
    rec.seed = seed;

    if (method == Method::Oracle) {
        const OracleResult oracle = exhaustive_search(seq, table, params.force_oracle);
        rec.best_internal_energy = oracle.best_energy;
        rec.best_hh_feasible = oracle.best_hh_feasible;
        rec.ov_of_best = ov_score(decode(oracle.best_path, table, seq.n()));
        rec.iterations = oracle.enumerated;
        rec.best_path = oracle.best_path.choices;
        rec.best_feasible_path = oracle.best_feasible_path.choices;
        detail::verify_feasible(oracle.best_feasible_path, seq, table, oracle.best_hh_feasible);
        return rec;
    }

    const SearchResult result = run_one(method, seq, table, budget, seed, params);
    rec.best_internal_energy = result.best_score.energy;
    rec.ov_of_best = result.best_score.ov;
    rec.iterations = result.iterations;
    if (wall_mode) rec.wall_time_seconds = result.seconds;
    rec.best_path = result.best_path.choices;
    if (result.best_feasible_path) {
        rec.best_hh_feasible = result.best_feasible_score.hh;
        rec.best_feasible_path = result.best_feasible_path->choices;
        detail::verify_feasible(*result.best_feasible_path, seq, table,
                                result.best_feasible_score.hh);
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Multi-run benchmark
// ---------------------------------------------------------------------------

struct BenchConfig {
    std::vector<Method> methods = {Method::SA, Method::ACO, Method::HMCACO};
    std::vector<BenchmarkInstance> instances;
    int runs_per_instance = 1;
    Budget budget;
    std::uint64_t base_seed = 1;
    int threads = 1;
    HeuristicParams params;
};

struct SummaryCell {
    std::string instance;
    std::string method;
    int runs = 0;
    int feasible_runs = 0;
    std::optional<int> best_hh;
    double mean_hh = 0.0; // over feasible runs; NaN when none
};

// "-29(-27.0)": best and mean reported as conventional negative HP energy.
inline std::string format_cell(const SummaryCell& cell) {
    if (!cell.best_hh) return "n/a";
    std::ostringstream os;
    os << -*cell.best_hh << "(" << std::fixed << std::setprecision(1) << -cell.mean_hh << ")";
    return os.str();
}

struct BenchReport {
    std::vector<RunRecord> records; // ordered by (instance, method, run)
    std::vector<SummaryCell> summary;
};

inline BenchReport run_benchmark(const BlockTable& table, const BenchConfig& config) {
    if (config.runs_per_instance < 1) {
        throw std::invalid_argument("run_benchmark: runs_per_instance must be >= 1");
    }
    if (config.methods.empty()) throw std::invalid_argument("run_benchmark: no methods");
    if (config.instances.empty()) throw std::invalid_argument("run_benchmark: no instances");
    if (config.budget.max_iterations == 0 && config.budget.max_seconds <= 0.0) {
        throw std::invalid_argument("run_benchmark: need an iteration or wall-clock budget");
    }

    struct Job {
        std::size_t record_slot;
        std::size_t instance_index;
        std::size_t method_index;
        std::uint64_t run_index;
    };
    std::vector<Job> jobs;
    const std::size_t n_cells = config.instances.size() * config.methods.size();
    jobs.reserve(n_cells * static_cast<std::size_t>(config.runs_per_instance));
    std::size_t slot = 0;
    for (std::size_t i = 0; i < config.instances.size(); ++i) {
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
            for (int r = 0; r < config.runs_per_instance; ++r) {
                jobs.push_back({slot++, i, m, static_cast<std::uint64_t>(r)});
            }
        }
    }

    BenchReport report;
    report.records.resize(jobs.size());
    const auto worker_body = [&](std::size_t job_index) {
        const Job& job = jobs[job_index];
        report.records[job.record_slot] =
            run_record(config.methods[job.method_index], config.instances[job.instance_index],
                       job.instance_index, job.run_index, table, config.budget, config.base_seed,
                       config.params);
    };

    const int threads = std::max(1, config.threads);
    if (threads == 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) worker_body(j);
    } else {
        std::mutex mu;
        std::size_t next = 0;
        std::exception_ptr failure;
        auto loop = [&] {
            while (true) {
                std::size_t j;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (failure || next >= jobs.size()) return;
                    j = next++;
                }
                try {
                    worker_body(j);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(loop);
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    // summary per (instance, method)
    for (std::size_t i = 0; i < config.instances.size(); ++i) {
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
            SummaryCell cell;
            cell.instance = config.instances[i].id;
            cell.method = method_name(config.methods[m]);
            double sum = 0.0;
            for (const RunRecord& rec : report.records) {
                if (rec.instance != cell.instance || rec.method != cell.method) continue;
                ++cell.runs;
                if (rec.best_hh_feasible) {
                    ++cell.feasible_runs;
                    sum += *rec.best_hh_feasible;
                    if (!cell.best_hh || *rec.best_hh_feasible > *cell.best_hh) {
                        cell.best_hh = *rec.best_hh_feasible;
                    }
                }
            }
            cell.mean_hh = cell.feasible_runs > 0 ? sum / cell.feasible_runs
                                                  : std::numeric_limits<double>::quiet_NaN();
            report.summary.push_back(cell);
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Report writers
// ---------------------------------------------------------------------------

inline void write_jsonl(std::ostream& os, const std::vector<RunRecord>& records) {
    for (const RunRecord& rec : records) os << to_json(rec).dump() << '\n';
}

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryCell>& summary) {
    os << "instance,method,runs,feasible_runs,best_hh,mean_hh,report\n";
    for (const SummaryCell& cell : summary) {
        os << cell.instance << ',' << cell.method << ',' << cell.runs << ','
           << cell.feasible_runs << ',';
        if (cell.best_hh) {
            char mean[32];
            std::snprintf(mean, sizeof(mean), "%.9g", cell.mean_hh);
            os << *cell.best_hh << ',' << mean << ',' << format_cell(cell) << '\n';
        } else {
            os << ",,n/a\n";
        }
    }
}

// Console table in the best(mean) style, instances as rows and methods as
// columns.
inline void write_summary_table(std::ostream& os, const BenchConfig& config,
                                const std::vector<SummaryCell>& summary) {
    os << std::left << std::setw(8) << "ID";
    os << std::setw(8) << "E_min";
    for (Method m : config.methods) os << std::setw(14) << method_name(m);
    os << '\n';
    for (const BenchmarkInstance& inst : config.instances) {
        os << std::setw(8) << inst.id;
        if (inst.reference_emin) {
            os << std::setw(8) << *inst.reference_emin;
        } else {
            os << std::setw(8) << "-";
        }
        for (Method m : config.methods) {
            for (const SummaryCell& cell : summary) {
                if (cell.instance == inst.id && cell.method == method_name(m)) {
                    os << std::setw(14) << format_cell(cell);
                    break;
                }
            }
        }
        os << '\n';
    }
}

// Structure export: "#"-prefixed metadata header, then one line per
// residue: "index x y z residue-letter" with 1-based indices.
inline void export_structure(std::ostream& os, const std::string& instance_id,
                             const std::string& method, std::uint64_t seed, const Path& path,
                             const HPSequence& seq, const BlockTable& table) {
    const Conformation conf = decode(path, table, seq.n());
    const ScoreBreakdown sb = energy(conf, seq);
    os << "# instance " << instance_id << " method " << method << " seed " << seed << " hh "
       << sb.hh << " ov " << sb.ov << " energy " << sb.energy << '\n';
    for (int i = 0; i < seq.n(); ++i) {
        const Point3& p = conf.coords[static_cast<std::size_t>(i)];
        os << (i + 1) << ' ' << p.x << ' ' << p.y << ' ' << p.z << ' '
           << (seq.is_h(i) ? 'h' : 'p') << '\n';
    }
}

} // namespace hpfold
