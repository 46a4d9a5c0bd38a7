// Max-Min Ant System on the adjacent-position block graph: probabilistic
// path construction biased by pheromone and a partial-energy heuristic,
// hill-climbing daemon, evaporation, and elite deposit.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "hpfold/core.hpp"
#include "hpfold/local_search.hpp"
#include "hpfold/pheromone.hpp"
#include "hpfold/scoring.hpp"
#include "hpfold/search.hpp"

namespace hpfold {

struct AcoConfig {
    int n_ants = 5;
    double alpha = 1.0; // pheromone exponent
    double beta = 1.0;  // heuristic exponent
    double rho = 0.1;   // evaporation rate
    int hc_sweeps = 0;  // daemon hill-climb sweep cap; 0 = run to local optimum
    Budget budget;
    std::uint64_t seed = 0;
    std::ostream* matrix_dump = nullptr; // final-matrix snapshot sink (debugging)

    void validate() const {
        if (n_ants < 1) throw std::invalid_argument("aco: need at least one ant");
        if (!(0.0 < rho && rho < 1.0)) throw std::invalid_argument("aco: rho must be in (0,1)");
        budget.validate();
    }
};

// Pessimistic estimate of the optimal energy: every bound contact made,
// no overlaps, no mixed contacts, zero distance sum. Keeps the deposit
// ratio c_s/c_opt in (0, 1] for every reachable solution.
inline double optimal_energy_estimate(int thh) {
    const double t = static_cast<double>(thh);
    return -(t + 1.0) * (t + 1.0); // = energy_value(thh, 0, 0, 0, thh)
}

namespace detail {

// Energies of all one-block extensions of a prefix, scored on the decoded
// partial conformation under the full sequence's contact bound.
inline void candidate_energies(const HPSequence& seq, const BlockTable& table,
                               std::vector<int>& prefix, int thh, Conformation& buf,
                               std::array<double, kBlockCount>& out) {
    const int m = std::min(static_cast<int>(prefix.size() + 1) * kBlockResidues, seq.n());
    Path partial;
    prefix.push_back(0);
    partial.choices = prefix;
    for (int b = 0; b < kBlockCount; ++b) {
        partial.choices.back() = b;
        decode_into(partial, table, m, buf.coords);
        out[static_cast<std::size_t>(b)] = score_prefix(buf, seq, m, thh).energy;
    }
    prefix.pop_back();
}

inline double pow_fast(double base, double exponent) {
    if (exponent == 1.0) return base;
    if (exponent == 0.0) return 1.0;
    return std::pow(base, exponent);
}

// Cumulative sampling over non-negative weights.
template <typename Weights>
inline int sample_index(const Weights& weights, int count, Rng& rng) {
    double total = 0.0;
    for (int i = 0; i < count; ++i) total += weights[static_cast<std::size_t>(i)];
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng) * total;
    double acc = 0.0;
    int last_positive = 0;
    for (int i = 0; i < count; ++i) {
        const double w = weights[static_cast<std::size_t>(i)];
        if (w > 0.0) last_positive = i;
        acc += w;
        if (u < acc) return i;
    }
    return last_positive;
}

} // namespace detail

// Heuristic desirability of each candidate block extending the prefix:
// eta = 1 / (1 + E_cand - E_best) over the 150 candidate extensions, so
// eta is in (0, 1] and equals 1 for (at least) the best candidate.
inline std::array<double, kBlockCount> candidate_etas(const HPSequence& seq,
                                                      const BlockTable& table,
                                                      const std::vector<int>& prefix_choices) {
    if (prefix_choices.empty() ||
        static_cast<int>(prefix_choices.size()) >= path_length_for(seq.n())) {
        throw std::invalid_argument("candidate_etas: prefix must cover positions 1..P-1");
    }
    const int thh = contact_upper_bound(seq);
    std::vector<int> prefix = prefix_choices;
    Conformation buf;
    std::array<double, kBlockCount> energies;
    detail::candidate_energies(seq, table, prefix, thh, buf, energies);
    double best = energies[0];
    for (double e : energies) best = std::min(best, e);
    std::array<double, kBlockCount> etas;
    for (int b = 0; b < kBlockCount; ++b) {
        etas[static_cast<std::size_t>(b)] = 1.0 / (1.0 + energies[static_cast<std::size_t>(b)] - best);
    }
    return etas;
}

inline double heuristic_eta(const HPSequence& seq, const BlockTable& table,
                            const std::vector<int>& prefix_choices, int candidate_block) {
    return candidate_etas(seq, table, prefix_choices)[static_cast<std::size_t>(candidate_block)];
}

// Start-block selection weights: mean pheromone over each start node's
// incident edges, normalized. Indexed like table.start_ids.
inline std::array<double, kStartBlockCount> start_probabilities(const PheromoneMatrix& matrix,
                                                                const BlockTable& table) {
    std::array<double, kStartBlockCount> w{};
    double total = 0.0;
    for (int s = 0; s < kStartBlockCount; ++s) {
        w[static_cast<std::size_t>(s)] =
            matrix.mean_incident(0, table.start_ids[static_cast<std::size_t>(s)]);
        total += w[static_cast<std::size_t>(s)];
    }
    for (double& v : w) v /= total;
    return w;
}

// Transition probabilities for the next position given a construction
// prefix: p(b) proportional to t(prev, b)^alpha * eta(b)^beta.
inline std::array<double, kBlockCount> step_probabilities(const PheromoneMatrix& matrix,
                                                          const HPSequence& seq,
                                                          const BlockTable& table,
                                                          const std::vector<int>& prefix_choices,
                                                          double alpha, double beta) {
    const int pos = static_cast<int>(prefix_choices.size());
    std::array<double, kBlockCount> w;
    std::array<double, kBlockCount> etas{};
    if (beta != 0.0) etas = candidate_etas(seq, table, prefix_choices);
    const int prev = prefix_choices.back();
    double total = 0.0;
    for (int b = 0; b < kBlockCount; ++b) {
        double v = detail::pow_fast(matrix.value(pos - 1, prev, pos, b), alpha);
        if (beta != 0.0) v *= detail::pow_fast(etas[static_cast<std::size_t>(b)], beta);
        w[static_cast<std::size_t>(b)] = v;
        total += v;
    }
    for (double& v : w) v /= total;
    return w;
}

// One ant's constructive walk over positions 1..P.
inline Path construct_solution(const PheromoneMatrix& matrix, const HPSequence& seq,
                               const BlockTable& table, double alpha, double beta, Rng& rng) {
    const int positions = path_length_for(seq.n());
    const int thh = contact_upper_bound(seq);
    Path path;
    path.choices.reserve(static_cast<std::size_t>(positions));

    const auto start_w = start_probabilities(matrix, table);
    path.choices.push_back(
        table.start_ids[static_cast<std::size_t>(detail::sample_index(start_w, kStartBlockCount, rng))]);

    Conformation buf;
    std::array<double, kBlockCount> energies;
    std::array<double, kBlockCount> w;
    for (int pos = 1; pos < positions; ++pos) {
        const int prev = path.choices.back();
        if (beta != 0.0) {
            detail::candidate_energies(seq, table, path.choices, thh, buf, energies);
            double best = energies[0];
            for (double e : energies) best = std::min(best, e);
            for (int b = 0; b < kBlockCount; ++b) {
                const double eta = 1.0 / (1.0 + energies[static_cast<std::size_t>(b)] - best);
                w[static_cast<std::size_t>(b)] =
                    detail::pow_fast(matrix.value(pos - 1, prev, pos, b), alpha) *
                    detail::pow_fast(eta, beta);
            }
        } else {
            for (int b = 0; b < kBlockCount; ++b) {
                w[static_cast<std::size_t>(b)] =
                    detail::pow_fast(matrix.value(pos - 1, prev, pos, b), alpha);
            }
        }
        path.choices.push_back(detail::sample_index(w, kBlockCount, rng));
    }
    return path;
}

// Full Max-Min Ant System run. Per iteration: n_ants constructions, each
// locally optimized by the hill-climbing daemon; evaporation; deposit by
// the best-so-far solution when it improved this iteration, otherwise by
// the iteration best; bound update on improvement.
inline SearchResult aco_run(const HPSequence& seq, const BlockTable& table,
                            const AcoConfig& config) {
    config.validate();
    const int n = seq.n();
    const int thh = contact_upper_bound(seq);
    const double c_opt = optimal_energy_estimate(thh);
    const int positions = path_length_for(n);

    const RunClock clock;
    PheromoneMatrix matrix(positions, GraphMode::AdjacentOnly, config.rho);

    SearchResult result;
    Conformation buf;
    std::uint64_t iter = 0;
    bool stop = false;
    while (!stop) {
        if (config.budget.max_iterations != 0 && iter >= config.budget.max_iterations) break;
        if (config.budget.max_seconds > 0.0 && clock.seconds() >= config.budget.max_seconds) break;
        ++iter;

        const double best_before =
            result.trace.empty() ? 0.0 : result.best_score.energy; // energies are < 0
        Path iter_best_path;
        ScoreBreakdown iter_best{};
        bool have_iter_best = false;
        for (int a = 0; a < config.n_ants; ++a) {
            Rng ant_rng(substream_seed(config.seed, iter, static_cast<std::uint64_t>(a)));
            Path ant = construct_solution(matrix, seq, table, config.alpha, config.beta, ant_rng);
            ant = hill_climb(std::move(ant), seq, table, config.hc_sweeps);
            decode_into(ant, table, n, buf.coords);
            const ScoreBreakdown sb = score_prefix(buf, seq, n, thh);
            result.observe(ant, sb, iter);
            if (!have_iter_best || sb.energy < iter_best.energy) {
                iter_best_path = std::move(ant);
                iter_best = sb;
                have_iter_best = true;
            }
            if (config.budget.target_reached(result.best_score.energy)) {
                stop = true;
                break;
            }
            if (config.budget.max_seconds > 0.0 && clock.seconds() >= config.budget.max_seconds) {
                stop = true;
                break;
            }
        }
        if (!have_iter_best) break;

        matrix.evaporate(config.rho);
        const bool improved = result.best_score.energy < best_before;
        if (improved) {
            matrix.deposit(result.best_path, result.best_score.energy, c_opt);
            matrix.update_bounds(result.best_score.energy, c_opt, config.rho);
        } else {
            matrix.deposit(iter_best_path, iter_best.energy, c_opt);
        }
    }
    result.iterations = iter;
    result.seconds = clock.seconds();
    if (config.matrix_dump) matrix.dump(*config.matrix_dump);
    return result;
}

} // namespace hpfold
