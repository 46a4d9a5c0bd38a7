// Bounded pheromone matrix over (position, block) node pairs.
//
// Two edge sets are supported: adjacent-only (edges between consecutive
// positions; used by the constructive ACO) and all-pairs (edges between
// every pair of distinct positions; used by the model-perturbation
// variant). Values are clamped to [t_min, t_max] at all times and storage
// is symmetric: value(u, v) == value(v, u) by construction.
//
// Max-Min bounds policy: t_max = (c_best/c_opt)/rho, t_min = t_max/(2*n_b),
// re-applied whenever the best-so-far improves; a fresh matrix uses
// c_best = c_opt, i.e. t_max = 1/rho, with every edge at t_max.

#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpfold/core.hpp"

namespace hpfold {

enum class GraphMode { AdjacentOnly, AllPairs };

// Evaporation step for one edge value.
inline double evaporated_value(double v, double rho, double t_min) {
    return (1.0 - rho) * v + rho * t_min;
}

// Deposit step for one edge value; the increment is the cost ratio
// c_s/c_opt and the result is capped at t_max.
inline double deposited_value(double v, double ratio, double t_max) {
    return std::min(v + ratio, t_max);
}

class PheromoneMatrix {
  public:
    PheromoneMatrix(int positions, GraphMode mode, double rho)
        : PheromoneMatrix(positions, mode, 1.0 / check_rho(rho) / (2.0 * kBlockCount),
                          1.0 / check_rho(rho)) {}

    // Explicit-bounds constructor; every edge starts at t_max.
    PheromoneMatrix(int positions, GraphMode mode, double t_min, double t_max)
        : positions_(positions), mode_(mode), t_min_(t_min), t_max_(t_max) {
        if (positions < 2) throw std::invalid_argument("pheromone matrix needs >= 2 positions");
        if (!(0.0 < t_min && t_min < t_max)) {
            throw std::invalid_argument("pheromone bounds must satisfy 0 < t_min < t_max");
        }
        values_.assign(pair_count() * kSlotsPerPair, t_max_);
    }

    int positions() const { return positions_; }
    GraphMode mode() const { return mode_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    std::size_t edge_count() const { return values_.size(); }

    double value(int pos_a, int block_a, int pos_b, int block_b) const {
        return values_[slot(pos_a, block_a, pos_b, block_b)];
    }

    // True when every stored value lies in [t_min, t_max] (within tol).
    bool within_bounds(double tol = 0.0) const {
        for (double v : values_) {
            if (v < t_min_ - tol || v > t_max_ + tol) return false;
        }
        return true;
    }

    // v <- (1-rho)*v + rho*t_min on every edge.
    void evaporate(double rho) {
        check_rho(rho);
        for (double& v : values_) v = evaporated_value(v, rho, t_min_);
    }

    // Raises every edge of the path by c_s/c_opt, capped at t_max. In
    // adjacent-only mode the path contributes its consecutive-position
    // edges; in all-pairs mode every pair of its nodes.
    void deposit(const Path& path, double c_s, double c_opt) {
        if (!(c_s < 0.0) || !(c_opt < 0.0)) {
            throw std::invalid_argument("deposit: energies must be negative");
        }
        const double ratio = c_s / c_opt;
        const int p = static_cast<int>(path.choices.size());
        if (p != positions_) throw std::invalid_argument("deposit: path length mismatch");
        if (mode_ == GraphMode::AdjacentOnly) {
            for (int i = 0; i + 1 < p; ++i) {
                double& v = values_[slot(i, path.choices[static_cast<std::size_t>(i)], i + 1,
                                         path.choices[static_cast<std::size_t>(i + 1)])];
                v = deposited_value(v, ratio, t_max_);
            }
        } else {
            for (int i = 0; i < p; ++i) {
                for (int j = i + 1; j < p; ++j) {
                    double& v = values_[slot(i, path.choices[static_cast<std::size_t>(i)], j,
                                             path.choices[static_cast<std::size_t>(j)])];
                    v = deposited_value(v, ratio, t_max_);
                }
            }
        }
    }

    // Max-Min bound refresh from the current best energy; re-clamps all
    // stored values into the new [t_min, t_max].
    void update_bounds(double c_best, double c_opt, double rho, int n_b = kBlockCount) {
        if (!(c_best < 0.0) || !(c_opt < 0.0)) {
            throw std::invalid_argument("update_bounds: energies must be negative");
        }
        check_rho(rho);
        t_max_ = (c_best / c_opt) / rho;
        t_min_ = t_max_ / (2.0 * n_b);
        for (double& v : values_) v = std::clamp(v, t_min_, t_max_);
    }

    // Mean pheromone over all edges incident to node (pos, block); drives
    // the probabilistic choice of the starting block.
    double mean_incident(int pos, int block) const {
        double sum = 0.0;
        std::size_t count = 0;
        for (int other = 0; other < positions_; ++other) {
            if (other == pos) continue;
            if (mode_ == GraphMode::AdjacentOnly && std::abs(other - pos) != 1) continue;
            for (int b = 0; b < kBlockCount; ++b) {
                sum += values_[slot(pos, block, other, b)];
                ++count;
            }
        }
        return sum / static_cast<double>(count);
    }

    // Text snapshot, one line per edge: "i block_i j block_j value" with
    // 1-based position ids.
    void dump(std::ostream& os) const {
        for (int i = 0; i < positions_; ++i) {
            for (int j = i + 1; j < positions_; ++j) {
                if (mode_ == GraphMode::AdjacentOnly && j != i + 1) continue;
                for (int bi = 0; bi < kBlockCount; ++bi) {
                    for (int bj = 0; bj < kBlockCount; ++bj) {
                        os << (i + 1) << ' ' << bi << ' ' << (j + 1) << ' ' << bj << ' '
                           << value(i, bi, j, bj) << '\n';
                    }
                }
            }
        }
    }

  private:
    static constexpr std::size_t kSlotsPerPair =
        static_cast<std::size_t>(kBlockCount) * kBlockCount;

    static double check_rho(double rho) {
        if (!(0.0 < rho && rho < 1.0)) {
            throw std::invalid_argument("evaporation rate must be in (0,1)");
        }
        return rho;
    }

    std::size_t pair_count() const {
        const std::size_t p = static_cast<std::size_t>(positions_);
        return mode_ == GraphMode::AdjacentOnly ? p - 1 : p * (p - 1) / 2;
    }

    // Index of the unordered position pair; blocks are re-oriented so the
    // lower position comes first, which is what makes reads symmetric.
    std::size_t slot(int pos_a, int block_a, int pos_b, int block_b) const {
        if (pos_a > pos_b) {
            std::swap(pos_a, pos_b);
            std::swap(block_a, block_b);
        }
        if (pos_a < 0 || pos_b >= positions_ || pos_a == pos_b) {
            throw std::out_of_range("pheromone: invalid position pair (" +
                                    std::to_string(pos_a) + ", " + std::to_string(pos_b) + ")");
        }
        if (block_a < 0 || block_a >= kBlockCount || block_b < 0 || block_b >= kBlockCount) {
            throw std::out_of_range("pheromone: block id out of range");
        }
        std::size_t pair;
        if (mode_ == GraphMode::AdjacentOnly) {
            if (pos_b - pos_a != 1) {
                throw std::out_of_range("pheromone: positions " + std::to_string(pos_a) + " and " +
                                        std::to_string(pos_b) +
                                        " are not adjacent (adjacent-only mode)");
            }
            pair = static_cast<std::size_t>(pos_a);
        } else {
            // triangular index of (pos_a < pos_b)
            const std::size_t p = static_cast<std::size_t>(positions_);
            const std::size_t a = static_cast<std::size_t>(pos_a);
            const std::size_t b = static_cast<std::size_t>(pos_b);
            pair = a * p - a * (a + 1) / 2 + (b - a - 1);
        }
        return pair * kSlotsPerPair + static_cast<std::size_t>(block_a) * kBlockCount +
               static_cast<std::size_t>(block_b);
    }

    int positions_;
    GraphMode mode_;
    double t_min_;
    double t_max_;
    std::vector<double> values_;
};

} // namespace hpfold
