// Cubic-lattice HP model: sequences, fragment blocks, paths and decoding.
//
// A conformation is encoded as a path of fragment blocks. Each block is an
// ordered triple of unit lattice steps that places three residues and the
// anchor of the next block. There are exactly 150 blocks (all non-reversing
// step triples); only 6 canonical blocks are allowed at the first position,
// which removes rotational/reflective duplicates of whole conformations.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpfold {

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

enum class Residue : std::uint8_t { P = 0, H = 1 };

struct HPSequence {
    std::vector<Residue> residues;

    int n() const { return static_cast<int>(residues.size()); }
    bool is_h(int i) const { return residues[static_cast<std::size_t>(i)] == Residue::H; }
};

// Case-insensitive h/p parser. Throws std::invalid_argument on any other
// character (the message names the offending 0-based index) and on
// sequences shorter than 4 residues.
inline HPSequence parse_sequence(const std::string& text) {
    HPSequence seq;
    seq.residues.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == 'h' || c == 'H') {
            seq.residues.push_back(Residue::H);
        } else if (c == 'p' || c == 'P') {
            seq.residues.push_back(Residue::P);
        } else {
            throw std::invalid_argument("invalid residue character '" + std::string(1, c) +
                                        "' at index " + std::to_string(i));
        }
    }
    if (seq.n() < 4) {
        throw std::invalid_argument("sequence too short: need at least 4 residues, got " +
                                    std::to_string(seq.n()));
    }
    return seq;
}

inline std::string to_string(const HPSequence& seq) {
    std::string out;
    out.reserve(seq.residues.size());
    for (Residue r : seq.residues) out.push_back(r == Residue::H ? 'h' : 'p');
    return out;
}

// ---------------------------------------------------------------------------
// Lattice geometry
// ---------------------------------------------------------------------------

struct Point3 {
    int x = 0;
    int y = 0;
    int z = 0;

    friend Point3 operator+(const Point3& a, const Point3& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Point3 operator-(const Point3& a, const Point3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend bool operator==(const Point3& a, const Point3& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend bool operator!=(const Point3& a, const Point3& b) { return !(a == b); }
};

inline int manhattan(const Point3& a, const Point3& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

// The six axis directions in table order: +x, -x, +y, -y, +z, -z.
// Block ids are assigned lexicographically over this order.
inline constexpr std::array<Point3, 6> kDirections = {{
    {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
}};

// ---------------------------------------------------------------------------
// Fragment blocks
// ---------------------------------------------------------------------------

inline constexpr int kBlockResidues = 3;   // residues covered per block (b_s)
inline constexpr int kBlockCount = 150;    // non-reversing step triples (n_b)
inline constexpr int kStartBlockCount = 6; // canonical blocks allowed at position 1

struct Block {
    std::array<Point3, 3> steps; // d1, d2, d3; d2 != -d1 and d3 != -d2

    friend bool operator==(const Block& a, const Block& b) { return a.steps == b.steps; }
};

struct BlockTable {
    std::vector<Block> blocks;                    // all 150, lexicographic order
    std::array<int, kStartBlockCount> start_ids;  // ascending

    bool is_start(int id) const {
        for (int s : start_ids)
            if (s == id) return true;
        return false;
    }

    // Index of a block in the table, or -1 if the step triple is not a
    // valid block. Linear scan; fine for the 150-entry table.
    int index_of(const Block& b) const {
        for (int i = 0; i < static_cast<int>(blocks.size()); ++i)
            if (blocks[static_cast<std::size_t>(i)] == b) return i;
        return -1;
    }
};

// Builds the full block table: every ordered triple (d1, d2, d3) of unit
// steps with d2 != -d1 and d3 != -d2, in lexicographic order over
// kDirections. Non-reversal makes the four fragment points pairwise
// distinct, which is re-checked here. The start set is the fixed
// transversal {(+x,+x,+x), (+x,+x,+y), (+x,+y,+x), (+x,+y,+y), (+x,+y,-x),
// (+x,+y,+z)}: one representative per orbit of the 48-element cubic
// symmetry group.
inline BlockTable build_block_table() {
    BlockTable table;
    table.blocks.reserve(kBlockCount);
    const auto opposite = [](const Point3& d) { return Point3{-d.x, -d.y, -d.z}; };
    for (const Point3& d1 : kDirections) {
        for (const Point3& d2 : kDirections) {
            if (d2 == opposite(d1)) continue;
            for (const Point3& d3 : kDirections) {
                if (d3 == opposite(d2)) continue;
                const Block b{{d1, d2, d3}};
                // fragment self-avoidance: 0, d1, d1+d2, d1+d2+d3 distinct
                const Point3 p0{0, 0, 0};
                const Point3 p1 = d1;
                const Point3 p2 = d1 + d2;
                const Point3 p3 = p2 + d3;
                if (p2 == p0 || p3 == p1 || p3 == p0) {
                    throw std::logic_error("non-reversing block is not self-avoiding");
                }
                table.blocks.push_back(b);
            }
        }
    }
    if (static_cast<int>(table.blocks.size()) != kBlockCount) {
        throw std::logic_error("block table has " + std::to_string(table.blocks.size()) +
                               " entries, expected " + std::to_string(kBlockCount));
    }

    const Point3 px{1, 0, 0}, mx{-1, 0, 0}, py{0, 1, 0}, pz{0, 0, 1};
    const std::array<Block, kStartBlockCount> starts = {{
        {{px, px, px}},
        {{px, px, py}},
        {{px, py, px}},
        {{px, py, py}},
        {{px, py, mx}},
        {{px, py, pz}},
    }};
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const int id = table.index_of(starts[i]);
        if (id < 0) throw std::logic_error("canonical start block missing from table");
        table.start_ids[i] = id;
    }
    std::sort(table.start_ids.begin(), table.start_ids.end());
    return table;
}

// ---------------------------------------------------------------------------
// Paths and conformations
// ---------------------------------------------------------------------------

// Number of block positions needed for an n-residue sequence: ceil(n/3).
inline int path_length_for(int n) { return (n + kBlockResidues - 1) / kBlockResidues; }

// The genotype: one block id per position. choices[0] must be a start id.
struct Path {
    std::vector<int> choices;

    friend bool operator==(const Path& a, const Path& b) { return a.choices == b.choices; }
};

struct Conformation {
    std::vector<Point3> coords;

    int n() const { return static_cast<int>(coords.size()); }
};

inline bool is_valid_path(const Path& path, const BlockTable& table, int n) {
    if (static_cast<int>(path.choices.size()) != path_length_for(n)) return false;
    for (int c : path.choices)
        if (c < 0 || c >= kBlockCount) return false;
    return table.is_start(path.choices[0]);
}

// Decodes a path into residue coordinates, reusing the caller's buffer.
// Block k places residues 3k, 3k+1, 3k+2 at anchor, anchor+d1, anchor+d1+d2
// and moves the anchor by d1+d2+d3. Trailing steps of the final block that
// would exceed n are ignored.
inline void decode_into(const Path& path, const BlockTable& table, int n,
                        std::vector<Point3>& out) {
    const int positions = static_cast<int>(path.choices.size());
    if (positions != path_length_for(n)) {
        throw std::invalid_argument("path length " + std::to_string(positions) +
                                    " does not match residue count " + std::to_string(n));
    }
    out.resize(static_cast<std::size_t>(n));
    Point3 anchor{0, 0, 0};
    int r = 0;
    for (int k = 0; k < positions; ++k) {
        const int id = path.choices[static_cast<std::size_t>(k)];
        if (id < 0 || id >= kBlockCount) {
            throw std::invalid_argument("block id out of range at position " + std::to_string(k));
        }
        const Block& b = table.blocks[static_cast<std::size_t>(id)];
        Point3 p = anchor;
        for (int s = 0; s < kBlockResidues && r < n; ++s) {
            out[static_cast<std::size_t>(r++)] = p;
            p = p + b.steps[static_cast<std::size_t>(s)];
        }
        anchor = anchor + b.steps[0] + b.steps[1] + b.steps[2];
    }
}

inline Conformation decode(const Path& path, const BlockTable& table, int n) {
    Conformation conf;
    decode_into(path, table, n, conf.coords);
    return conf;
}

} // namespace hpfold
