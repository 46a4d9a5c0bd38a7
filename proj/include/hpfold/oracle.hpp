// Exhaustive reference search over the full path space. Ground truth for
// the heuristics and the scoring pipeline on desk-scale instances.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "hpfold/core.hpp"
#include "hpfold/scoring.hpp"

namespace hpfold {

struct OracleResult {
    double best_energy = 0.0;
    int best_hh_feasible = 0;        // max hh over overlap-free paths
    std::uint64_t optimal_paths = 0; // paths attaining best_energy
    std::uint64_t enumerated = 0;    // always 6 * 150^(P-1)
    Path best_path;                  // first path attaining best_energy
    Path best_feasible_path;         // first overlap-free path attaining best_hh_feasible
};

// Visits every path (6 start blocks x 150^(P-1) continuations), decodes
// and scores it, and returns exact optima for both the search energy and
// the feasible contact count. Capped at P <= 3 (135,000 paths) by default;
// `force` admits P = 4 (20.25M paths, minutes of CPU). Larger instances
// are always rejected.
inline OracleResult exhaustive_search(const HPSequence& seq, const BlockTable& table,
                                      bool force = false) {
    const int n = seq.n();
    const int positions = path_length_for(n);
    if (positions > 4 || (positions > 3 && !force)) {
        throw std::invalid_argument(
            "exhaustive_search: instance needs " + std::to_string(positions) +
            " block positions; the cap is 3 (4 with force)");
    }
    const int thh = contact_upper_bound(seq);

    OracleResult out;
    Path path;
    path.choices.assign(static_cast<std::size_t>(positions), 0);
    Conformation buf;

    // Odometer over the path space; digit 0 indexes the start set.
    std::vector<int> digits(static_cast<std::size_t>(positions), 0);
    bool first = true;
    bool have_feasible = false;
    while (true) {
        path.choices[0] = table.start_ids[static_cast<std::size_t>(digits[0])];
        for (int k = 1; k < positions; ++k) {
            path.choices[static_cast<std::size_t>(k)] = digits[static_cast<std::size_t>(k)];
        }
        decode_into(path, table, n, buf.coords);
        const ScoreBreakdown sb = score_prefix(buf, seq, n, thh);
        ++out.enumerated;

        if (first || sb.energy < out.best_energy) {
            out.best_energy = sb.energy;
            out.best_path = path;
            out.optimal_paths = 1;
        } else if (sb.energy == out.best_energy) {
            ++out.optimal_paths;
        }
        if (sb.feasible() && (!have_feasible || sb.hh > out.best_hh_feasible)) {
            out.best_hh_feasible = sb.hh;
            out.best_feasible_path = path;
            have_feasible = true;
        }
        first = false;

        // advance odometer
        int k = positions - 1;
        while (k >= 0) {
            const int limit = (k == 0) ? kStartBlockCount : kBlockCount;
            if (++digits[static_cast<std::size_t>(k)] < limit) break;
            digits[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return out;
}

} // namespace hpfold
