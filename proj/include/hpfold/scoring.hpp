// Multi-term energy for block-encoded HP conformations.
//
// The search objective combines four pairwise scores:
//   hh  — H-H contacts (pairs j >= i+3 at Manhattan distance 1, both H),
//   ov  — overlaps (pairs j >= i+2 on the same lattice site),
//   hp  — mixed H-P contacts (pairs j >= i+3 at distance 1),
//   hd  — summed H-H Manhattan distances over opposite-parity pairs,
// plus thh, an analytic upper bound on hh for the sequence:
//
//   energy = -[ (hh / (1+ov))^2 + 1/(1+hp) + 2*thh/(1+hd) ]
//
// hh is stored as a positive count; the single leading minus sign makes
// more contacts better (lower energy). Overlaps are counted for all pairs
// with separation >= 2: separation-1 pairs are chain neighbors at distance
// exactly 1 and can never overlap, while separation-2 overlaps do occur
// across block boundaries. Energy is always strictly negative.

#pragma once

#include <stdexcept>
#include <string>

#include "hpfold/core.hpp"

namespace hpfold {

struct ScoreBreakdown {
    int hh = 0;
    int ov = 0;
    int hp = 0;
    int hd = 0;
    int thh = 0;
    double energy = 0.0;

    bool feasible() const { return ov == 0; }
};

inline double energy_value(int hh, int ov, int hp, int hd, int thh) {
    const double contact = static_cast<double>(hh) / (1.0 + ov);
    return -(contact * contact + 1.0 / (1.0 + hp) + 2.0 * static_cast<double>(thh) / (1.0 + hd));
}

// Contact upper bound: 4*min(#H at odd 1-based indices, #H at even) + 2.
// Every contact pairs residues of opposite index parity; an interior
// residue has four non-chain lattice neighbors and the two chain termini
// contribute the +2.
inline int contact_upper_bound(const HPSequence& seq) {
    int odd = 0, even = 0;
    for (int i = 0; i < seq.n(); ++i) {
        if (!seq.is_h(i)) continue;
        // 0-based index i is 1-based position i+1
        if ((i + 1) % 2 == 1) {
            ++odd;
        } else {
            ++even;
        }
    }
    return 4 * (odd < even ? odd : even) + 2;
}

namespace detail {
inline void check_lengths(int conf_n, int seq_n, const char* what) {
    if (conf_n > seq_n) {
        throw std::invalid_argument(std::string(what) + ": conformation has " +
                                    std::to_string(conf_n) + " residues but sequence has only " +
                                    std::to_string(seq_n));
    }
}
} // namespace detail

// Scores the first m residues of seq against an m-point conformation, with
// an explicit thh (constructive searches score prefixes under the full
// sequence's bound). Single fused pass over all pairs.
inline ScoreBreakdown score_prefix(const Conformation& conf, const HPSequence& seq, int m,
                                   int thh) {
    if (conf.n() != m) {
        throw std::invalid_argument("score_prefix: conformation size " +
                                    std::to_string(conf.n()) + " != " + std::to_string(m));
    }
    detail::check_lengths(m, seq.n(), "score_prefix");

    ScoreBreakdown sb;
    sb.thh = thh;
    const auto& c = conf.coords;
    for (int i = 0; i + 2 < m; ++i) {
        const bool hi = seq.is_h(i);
        const Point3& pi = c[static_cast<std::size_t>(i)];
        for (int j = i + 2; j < m; ++j) {
            const Point3& pj = c[static_cast<std::size_t>(j)];
            const int dist = manhattan(pi, pj);
            if (dist == 0) ++sb.ov;
            if (j == i + 2) continue; // hh/hp/hd start at separation 3
            const bool hj = seq.is_h(j);
            if (dist == 1) {
                if (hi && hj) {
                    ++sb.hh;
                } else if (hi != hj) {
                    ++sb.hp;
                }
            }
            if (hi && hj && (((j - i) & 1) != 0)) sb.hd += dist;
        }
    }
    sb.energy = energy_value(sb.hh, sb.ov, sb.hp, sb.hd, sb.thh);
    return sb;
}

inline ScoreBreakdown energy(const Conformation& conf, const HPSequence& seq) {
    if (conf.n() != seq.n()) {
        throw std::invalid_argument("energy: conformation/sequence length mismatch");
    }
    return score_prefix(conf, seq, seq.n(), contact_upper_bound(seq));
}

// Individual scores; pair ranges as documented above.

inline int hh_score(const Conformation& conf, const HPSequence& seq) {
    if (conf.n() != seq.n()) throw std::invalid_argument("hh_score: length mismatch");
    int hh = 0;
    for (int i = 0; i + 3 < conf.n(); ++i) {
        if (!seq.is_h(i)) continue;
        for (int j = i + 3; j < conf.n(); ++j) {
            if (seq.is_h(j) && manhattan(conf.coords[static_cast<std::size_t>(i)],
                                         conf.coords[static_cast<std::size_t>(j)]) == 1)
                ++hh;
        }
    }
    return hh;
}

inline int ov_score(const Conformation& conf) {
    if (conf.n() < 2) throw std::invalid_argument("ov_score: need at least 2 residues");
    int ov = 0;
    for (int i = 0; i + 2 < conf.n(); ++i) {
        for (int j = i + 2; j < conf.n(); ++j) {
            if (conf.coords[static_cast<std::size_t>(i)] ==
                conf.coords[static_cast<std::size_t>(j)])
                ++ov;
        }
    }
    return ov;
}

inline int hp_score(const Conformation& conf, const HPSequence& seq) {
    if (conf.n() != seq.n()) throw std::invalid_argument("hp_score: length mismatch");
    int hp = 0;
    for (int i = 0; i + 3 < conf.n(); ++i) {
        for (int j = i + 3; j < conf.n(); ++j) {
            if (seq.is_h(i) != seq.is_h(j) &&
                manhattan(conf.coords[static_cast<std::size_t>(i)],
                          conf.coords[static_cast<std::size_t>(j)]) == 1)
                ++hp;
        }
    }
    return hp;
}

inline int hd_score(const Conformation& conf, const HPSequence& seq) {
    if (conf.n() != seq.n()) throw std::invalid_argument("hd_score: length mismatch");
    int hd = 0;
    for (int i = 0; i + 3 < conf.n(); ++i) {
        if (!seq.is_h(i)) continue;
        for (int j = i + 3; j < conf.n(); ++j) {
            if (seq.is_h(j) && (((j - i) & 1) != 0))
                hd += manhattan(conf.coords[static_cast<std::size_t>(i)],
                                conf.coords[static_cast<std::size_t>(j)]);
        }
    }
    return hd;
}

} // namespace hpfold
