// The 48-element cubic symmetry group (signed axis permutations).
// Used to verify that the start blocks form a transversal of the block
// orbits and that scores are invariant under lattice symmetries.

#pragma once

#include <array>
#include <vector>

#include "hpfold/core.hpp"

namespace hpfold {

struct CubicSymmetry {
    std::array<int, 3> perm; // output axis k reads input axis perm[k]
    std::array<int, 3> sign; // each +1 or -1

    Point3 apply(const Point3& p) const {
        const int v[3] = {p.x, p.y, p.z};
        return {sign[0] * v[perm[0]], sign[1] * v[perm[1]], sign[2] * v[perm[2]]};
    }
};

// All 48 signed permutations of the axes (rotations and reflections).
inline const std::vector<CubicSymmetry>& cubic_symmetries() {
    static const std::vector<CubicSymmetry> group = [] {
        std::vector<CubicSymmetry> g;
        g.reserve(48);
        std::array<int, 3> perm = {0, 1, 2};
        const std::array<std::array<int, 3>, 6> perms = {{
            {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
        }};
        for (const auto& p : perms) {
            for (int bits = 0; bits < 8; ++bits) {
                CubicSymmetry s;
                s.perm = p;
                s.sign = {(bits & 1) ? -1 : 1, (bits & 2) ? -1 : 1, (bits & 4) ? -1 : 1};
                g.push_back(s);
            }
        }
        return g;
    }();
    return group;
}

inline Block apply(const CubicSymmetry& s, const Block& b) {
    return Block{{s.apply(b.steps[0]), s.apply(b.steps[1]), s.apply(b.steps[2])}};
}

inline Conformation apply(const CubicSymmetry& s, const Conformation& conf) {
    Conformation out;
    out.coords.reserve(conf.coords.size());
    for (const Point3& p : conf.coords) out.coords.push_back(s.apply(p));
    return out;
}

} // namespace hpfold
