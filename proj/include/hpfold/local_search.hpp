// Block-exchange 1-neighborhood, best-improvement hill climbing, and
// simulated annealing with Metropolis acceptance.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "hpfold/core.hpp"
#include "hpfold/scoring.hpp"
#include "hpfold/search.hpp"

namespace hpfold {

// A 1-neighborhood move: replace the block at `position` with `block`.
struct Move {
    int position = 0;
    int block = 0;
};

struct Neighborhood1 {
    Path base;
    std::vector<Move> moves;
};

// Moves in a path's 1-neighborhood: (P-1)*149 + 5 for P positions
// (position 1 only exchanges within the 6 start blocks).
inline std::uint64_t neighborhood_size(int positions) {
    return static_cast<std::uint64_t>(positions - 1) * (kBlockCount - 1) + (kStartBlockCount - 1);
}

// The idx-th move in lexicographic (position, block) order, matching
// enumerate_1_neighborhood. O(1); used to sample moves uniformly without
// materializing the list.
inline Move nth_move(const Path& path, const BlockTable& table, std::uint64_t idx) {
    if (idx < kStartBlockCount - 1) {
        int seen = 0;
        for (int s : table.start_ids) {
            if (s == path.choices[0]) continue;
            if (seen == static_cast<int>(idx)) return {0, s};
            ++seen;
        }
        throw std::logic_error("start block not in start set");
    }
    idx -= kStartBlockCount - 1;
    const int position = 1 + static_cast<int>(idx / (kBlockCount - 1));
    const int offset = static_cast<int>(idx % (kBlockCount - 1));
    const int current = path.choices[static_cast<std::size_t>(position)];
    return {position, offset < current ? offset : offset + 1};
}

// Complete, duplicate-free move list in lexicographic (position, block)
// order. The base path itself is never a move.
inline Neighborhood1 enumerate_1_neighborhood(const Path& path, const BlockTable& table) {
    Neighborhood1 nbh;
    nbh.base = path;
    const int positions = static_cast<int>(path.choices.size());
    nbh.moves.reserve(neighborhood_size(positions));
    for (int s : table.start_ids) {
        if (s != path.choices[0]) nbh.moves.push_back({0, s});
    }
    for (int k = 1; k < positions; ++k) {
        for (int b = 0; b < kBlockCount; ++b) {
            if (b != path.choices[static_cast<std::size_t>(k)]) nbh.moves.push_back({k, b});
        }
    }
    return nbh;
}

// Best-improvement hill climbing: each sweep scans the full 1-neighborhood
// and moves to the strictly best improving neighbor (ties broken by lowest
// (position, block)). Stops at a 1-local optimum or after max_sweeps.
// max_sweeps <= 0 means no sweep limit.
inline Path hill_climb(Path path, const HPSequence& seq, const BlockTable& table,
                       int max_sweeps = 0) {
    const int n = seq.n();
    const int positions = static_cast<int>(path.choices.size());
    const int thh = contact_upper_bound(seq);

    Conformation buf;
    decode_into(path, table, n, buf.coords);
    double current = score_prefix(buf, seq, n, thh).energy;

    for (int sweep = 0; max_sweeps <= 0 || sweep < max_sweeps; ++sweep) {
        double best = current;
        Move best_move{-1, -1};
        for (int k = 0; k < positions; ++k) {
            const int saved = path.choices[static_cast<std::size_t>(k)];
            if (k == 0) {
                for (int s : table.start_ids) {
                    if (s == saved) continue;
                    path.choices[0] = s;
                    decode_into(path, table, n, buf.coords);
                    const double e = score_prefix(buf, seq, n, thh).energy;
                    if (e < best) {
                        best = e;
                        best_move = {0, s};
                    }
                }
                path.choices[0] = saved;
            } else {
                for (int b = 0; b < kBlockCount; ++b) {
                    if (b == saved) continue;
                    path.choices[static_cast<std::size_t>(k)] = b;
                    decode_into(path, table, n, buf.coords);
                    const double e = score_prefix(buf, seq, n, thh).energy;
                    if (e < best) {
                        best = e;
                        best_move = {k, b};
                    }
                }
                path.choices[static_cast<std::size_t>(k)] = saved;
            }
        }
        if (best_move.position < 0) break; // 1-local optimum
        path.choices[static_cast<std::size_t>(best_move.position)] = best_move.block;
        current = best;
    }
    return path;
}

// Metropolis acceptance: always accept a candidate that is no worse;
// otherwise accept iff u < exp((c_current - c_candidate) / T).
inline bool metropolis_accept(double c_current, double c_candidate, double temperature,
                              double u) {
    if (!(temperature > 0.0)) {
        throw std::invalid_argument("metropolis_accept: temperature must be positive");
    }
    if (c_candidate <= c_current) return true;
    return u < std::exp((c_current - c_candidate) / temperature);
}

// Geometric cooling: T starts at t0 and is multiplied by alpha every
// steps_per_level iterations.
struct CoolingSchedule {
    double t0 = 0.0; // <= 0: defaulted to 2*thh(seq) at run start
    double alpha = 0.98;
    std::uint64_t steps_per_level = 0; // 0: defaulted to the 1-neighborhood size

    void validate() const {
        if (alpha <= 0.0 || alpha >= 1.0) {
            throw std::invalid_argument("cooling: alpha must be in (0,1)");
        }
    }
};

// Budgeted random-restart driver around hill_climb: repeatedly descends
// from fresh random paths until the budget runs out. iterations counts
// completed descents.
inline SearchResult hc_run(const HPSequence& seq, const BlockTable& table, int hc_sweeps,
                           const Budget& budget, std::uint64_t seed) {
    budget.validate();
    const int n = seq.n();
    const int positions = path_length_for(n);
    const int thh = contact_upper_bound(seq);

    const RunClock clock;
    Rng rng(seed);
    Conformation buf;
    SearchResult result;
    std::uint64_t restarts = 0;
    while (true) {
        if (budget.max_iterations != 0 && restarts >= budget.max_iterations) break;
        if (budget.max_seconds > 0.0 && clock.seconds() >= budget.max_seconds) break;
        if (budget.target_reached(result.best_score.energy) && !result.trace.empty()) break;
        ++restarts;
        Path path = hill_climb(random_path(table, positions, rng), seq, table, hc_sweeps);
        decode_into(path, table, n, buf.coords);
        result.observe(path, score_prefix(buf, seq, n, thh), restarts);
    }
    result.iterations = restarts;
    result.seconds = clock.seconds();
    return result;
}

// Simulated annealing from a random start. Each iteration samples one
// uniform random 1-neighborhood move and applies Metropolis acceptance at
// the current temperature.
inline SearchResult sa_run(const HPSequence& seq, const BlockTable& table,
                           CoolingSchedule schedule, const Budget& budget, std::uint64_t seed) {
    budget.validate();
    schedule.validate();
    const int n = seq.n();
    const int positions = path_length_for(n);
    const int thh = contact_upper_bound(seq);
    if (schedule.t0 <= 0.0) schedule.t0 = 2.0 * thh;
    if (schedule.steps_per_level == 0) schedule.steps_per_level = neighborhood_size(positions);

    const RunClock clock;
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> move_dist(0, neighborhood_size(positions) - 1);

    Path path = random_path(table, positions, rng);
    Conformation buf;
    decode_into(path, table, n, buf.coords);
    const ScoreBreakdown initial = score_prefix(buf, seq, n, thh);
    double current = initial.energy;

    SearchResult result;
    result.observe(path, initial, 0);

    double temperature = schedule.t0;
    std::uint64_t iter = 0;
    std::uint64_t level_steps = 0;
    while (true) {
        if (budget.max_iterations != 0 && iter >= budget.max_iterations) break;
        if (budget.max_seconds > 0.0 && clock.seconds() >= budget.max_seconds) break;
        if (budget.target_reached(result.best_score.energy)) break;
        ++iter;

        const Move move = nth_move(path, table, move_dist(rng));
        const int saved = path.choices[static_cast<std::size_t>(move.position)];
        path.choices[static_cast<std::size_t>(move.position)] = move.block;
        decode_into(path, table, n, buf.coords);
        const ScoreBreakdown cand = score_prefix(buf, seq, n, thh);

        bool accept;
        if (cand.energy <= current) {
            accept = true;
        } else {
            accept = metropolis_accept(current, cand.energy, temperature, unit(rng));
        }
        result.observe(path, cand, iter);
        if (accept) {
            current = cand.energy;
        } else {
            path.choices[static_cast<std::size_t>(move.position)] = saved;
        }

        if (++level_steps >= schedule.steps_per_level) {
            level_steps = 0;
            temperature *= schedule.alpha;
            if (temperature < 1e-12) temperature = 1e-12;
        }
    }
    result.iterations = iter;
    result.seconds = clock.seconds();
    return result;
}

} // namespace hpfold
