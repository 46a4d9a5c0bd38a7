// Hybrid Monte Carlo Ant Colony Optimization: a single model solution is
// perturbed by pheromone-guided block replacements on the all-pairs graph;
// the iteration best competes with the incumbent under the Metropolis
// criterion, and the surviving solution deposits pheromone and becomes the
// next model.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "hpfold/aco.hpp"
#include "hpfold/core.hpp"
#include "hpfold/local_search.hpp"
#include "hpfold/pheromone.hpp"
#include "hpfold/scoring.hpp"
#include "hpfold/search.hpp"

namespace hpfold {

struct HmcacoConfig {
    int n_ants = 5;
    double alpha = 1.0;
    double beta = 1.0;
    double rho = 0.1;
    int k_perturb = 4;        // positions replaced per ant
    double temperature = 2.0; // fixed Metropolis temperature for elite acceptance
    int hc_sweeps = 0;
    Budget budget;
    std::uint64_t seed = 0;
    std::ostream* matrix_dump = nullptr; // final-matrix snapshot sink (debugging)

    void validate(int positions) const {
        if (n_ants < 1) throw std::invalid_argument("hmcaco: need at least one ant");
        if (!(0.0 < rho && rho < 1.0)) throw std::invalid_argument("hmcaco: rho must be in (0,1)");
        if (k_perturb < 1 || k_perturb > positions) {
            throw std::invalid_argument("hmcaco: k_perturb must be in [1, path length]");
        }
        if (!(temperature > 0.0)) {
            throw std::invalid_argument("hmcaco: temperature must be positive");
        }
        budget.validate();
    }
};

// Candidate blocks at a position: the 6 start blocks at the path head,
// all 150 elsewhere.
inline std::vector<int> candidate_blocks(const BlockTable& table, int pos) {
    if (pos == 0) return std::vector<int>(table.start_ids.begin(), table.start_ids.end());
    std::vector<int> ids(kBlockCount);
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

// Replacement probabilities at one position of a complete path: each
// candidate j is weighted by (mean pheromone between (pos, j) and every
// other position's current node)^alpha times eta^beta, where eta is the
// cost ratio E_j / E_best over the full-solution energies with j
// substituted (energies are negative, so eta is in (0, 1] and equals 1
// for the best candidate). The ratio form keeps single-block clashes,
// which cost hundreds of energy units, from zeroing out exploration.
// Returned values align with candidate_blocks(table, pos) and sum to 1.
inline std::vector<double> perturb_probabilities(const PheromoneMatrix& matrix,
                                                 const HPSequence& seq, const BlockTable& table,
                                                 const Path& path, int pos, double alpha,
                                                 double beta) {
    const int positions = static_cast<int>(path.choices.size());
    if (pos < 0 || pos >= positions) {
        throw std::invalid_argument("perturb_probabilities: position out of range");
    }
    const int n = seq.n();
    const int thh = contact_upper_bound(seq);
    const std::vector<int> candidates = candidate_blocks(table, pos);

    std::vector<double> etas(candidates.size(), 1.0);
    if (beta != 0.0) {
        Path working = path;
        Conformation buf;
        std::vector<double> energies(candidates.size());
        double best = 0.0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            working.choices[static_cast<std::size_t>(pos)] = candidates[c];
            decode_into(working, table, n, buf.coords);
            energies[c] = score_prefix(buf, seq, n, thh).energy;
            if (c == 0 || energies[c] < best) best = energies[c];
        }
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            etas[c] = energies[c] / best; // both negative; best candidate gets 1
        }
    }

    std::vector<double> w(candidates.size());
    double total = 0.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        double mean = 0.0;
        for (int other = 0; other < positions; ++other) {
            if (other == pos) continue;
            mean += matrix.value(other, path.choices[static_cast<std::size_t>(other)], pos,
                                 candidates[c]);
        }
        mean /= static_cast<double>(positions - 1); // |S| = P - 1
        w[c] = detail::pow_fast(mean, alpha) * detail::pow_fast(etas[c], beta);
        total += w[c];
    }
    for (double& v : w) v /= total;
    return w;
}

// Applies k pheromone-guided replacements to a copy of the model. The
// perturbed positions are drawn uniformly without replacement and
// processed in ascending order, each seeing the earlier replacements.
// A position may re-sample its current block, so fewer than k entries can
// end up changed.
inline Path perturb(const Path& model, const PheromoneMatrix& matrix, const HPSequence& seq,
                    const BlockTable& table, int k, double alpha, double beta, Rng& rng) {
    const int positions = static_cast<int>(model.choices.size());
    if (k < 0 || k > positions) throw std::invalid_argument("perturb: k out of range");
    if (k == 0) return model;

    std::vector<int> order(static_cast<std::size_t>(positions));
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> pick(i, positions - 1);
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
    }
    std::vector<int> chosen(order.begin(), order.begin() + k);
    std::sort(chosen.begin(), chosen.end());

    Path working = model;
    for (int pos : chosen) {
        const std::vector<int> candidates = candidate_blocks(table, pos);
        const std::vector<double> probs =
            perturb_probabilities(matrix, seq, table, working, pos, alpha, beta);
        const int pick = detail::sample_index(probs, static_cast<int>(probs.size()), rng);
        working.choices[static_cast<std::size_t>(pos)] = candidates[static_cast<std::size_t>(pick)];
    }
    return working;
}

// Full HMCACO run. The incumbent (Metropolis-accepted) solution deposits
// on all node-pair edges of its path and serves as the next model; the
// best-so-far is a separate elitist record and is what gets returned.
inline SearchResult hmcaco_run(const HPSequence& seq, const BlockTable& table,
                               const HmcacoConfig& config) {
    const int n = seq.n();
    const int positions = path_length_for(n);
    config.validate(positions);
    const int thh = contact_upper_bound(seq);
    const double c_opt = optimal_energy_estimate(thh);

    const RunClock clock;
    PheromoneMatrix matrix(positions, GraphMode::AllPairs, config.rho);

    Rng main_rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Path model = random_path(table, positions, main_rng);
    Conformation buf;
    decode_into(model, table, n, buf.coords);
    ScoreBreakdown incumbent = score_prefix(buf, seq, n, thh);
    Path incumbent_path = model;

    SearchResult result;
    result.observe(model, incumbent, 0);

    std::uint64_t iter = 0;
    bool stop = false;
    while (!stop) {
        if (config.budget.max_iterations != 0 && iter >= config.budget.max_iterations) break;
        if (config.budget.max_seconds > 0.0 && clock.seconds() >= config.budget.max_seconds) break;
        if (config.budget.target_reached(result.best_score.energy)) break;
        ++iter;

        const double best_before = result.best_score.energy;
        Path iter_best_path;
        ScoreBreakdown iter_best{};
        bool have_iter_best = false;
        for (int a = 0; a < config.n_ants; ++a) {
            Rng ant_rng(substream_seed(config.seed, iter, static_cast<std::uint64_t>(a)));
            Path ant = perturb(model, matrix, seq, table, config.k_perturb, config.alpha,
                               config.beta, ant_rng);
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
        bool accept = iter_best.energy <= incumbent.energy;
        if (!accept) {
            accept = metropolis_accept(incumbent.energy, iter_best.energy, config.temperature,
                                       unit(main_rng));
        }
        // only an accepted solution releases pheromone; a rejected iteration
        // leaves evaporation unanswered, which unwinds stagnation
        if (accept) {
            incumbent = iter_best;
            incumbent_path = std::move(iter_best_path);
            matrix.deposit(incumbent_path, incumbent.energy, c_opt);
        }
        model = incumbent_path;
        if (result.best_score.energy < best_before) {
            matrix.update_bounds(result.best_score.energy, c_opt, config.rho);
        }
    }
    result.iterations = iter;
    result.seconds = clock.seconds();
    if (config.matrix_dump) matrix.dump(*config.matrix_dump);
    return result;
}

} // namespace hpfold
