// Shared search-run machinery: budgets, RNG substreams, result records.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hpfold/core.hpp"
#include "hpfold/scoring.hpp"

namespace hpfold {

using Rng = std::mt19937_64;

// splitmix64; also the documented seed-mixing hash for benchmark runs.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derives an independent substream seed from a master seed and up to three
// stream coordinates (e.g. iteration, ant index).
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                    std::uint64_t c = 0) {
    std::uint64_t x = splitmix64(master ^ splitmix64(a));
    x = splitmix64(x ^ splitmix64(b));
    return splitmix64(x ^ splitmix64(c));
}

// Run limits. At least one of max_iterations / max_seconds must be set.
// target_energy, when finite, stops the run as soon as the best energy
// reaches it (used by tests and the oracle-comparison harness).
struct Budget {
    std::uint64_t max_iterations = 0; // 0 = unlimited
    double max_seconds = 0.0;         // 0 = unlimited
    double target_energy = std::numeric_limits<double>::quiet_NaN();

    void validate() const {
        if (max_iterations == 0 && max_seconds <= 0.0) {
            throw std::invalid_argument("budget: need an iteration or wall-clock limit");
        }
    }

    bool target_reached(double best_energy) const {
        return !std::isnan(target_energy) && best_energy <= target_energy + 1e-9;
    }
};

class RunClock {
  public:
    RunClock() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

struct TracePoint {
    std::uint64_t iteration = 0;
    double energy = 0.0;
};

// Outcome of a heuristic run: the best solution by energy, the best
// feasible (overlap-free) solution by contact count if one was ever
// evaluated, and the improvement trace of the energy best.
struct SearchResult {
    Path best_path;
    ScoreBreakdown best_score;
    std::optional<Path> best_feasible_path;
    ScoreBreakdown best_feasible_score;
    std::vector<TracePoint> trace;
    std::uint64_t iterations = 0;
    double seconds = 0.0;

    // Folds one evaluated solution into both running bests. Returns true
    // if the energy best improved.
    bool observe(const Path& path, const ScoreBreakdown& sb, std::uint64_t iteration) {
        bool improved = false;
        if (trace.empty() || sb.energy < best_score.energy) {
            best_path = path;
            best_score = sb;
            trace.push_back({iteration, sb.energy});
            improved = true;
        }
        if (sb.feasible()) {
            if (!best_feasible_path || sb.hh > best_feasible_score.hh ||
                (sb.hh == best_feasible_score.hh && sb.energy < best_feasible_score.energy)) {
                best_feasible_path = path;
                best_feasible_score = sb;
            }
        }
        return improved;
    }
};

// Uniform random path: position 1 uniform over the start blocks, every
// other position uniform over all 150 blocks.
inline Path random_path(const BlockTable& table, int positions, Rng& rng) {
    Path path;
    path.choices.resize(static_cast<std::size_t>(positions));
    std::uniform_int_distribution<int> start_dist(0, kStartBlockCount - 1);
    std::uniform_int_distribution<int> block_dist(0, kBlockCount - 1);
    path.choices[0] = table.start_ids[static_cast<std::size_t>(start_dist(rng))];
    for (int k = 1; k < positions; ++k) {
        path.choices[static_cast<std::size_t>(k)] = block_dist(rng);
    }
    return path;
}

} // namespace hpfold
