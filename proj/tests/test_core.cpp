#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "hpfold/core.hpp"
#include "hpfold/search.hpp"
#include "hpfold/symmetry.hpp"
#include "test_util.hpp"

using namespace hpfold;

namespace {
const Point3 px{1, 0, 0}, mx{-1, 0, 0}, py{0, 1, 0}, my{0, -1, 0}, pz{0, 0, 1}, mz{0, 0, -1};
}

TEST_CASE("block table has exactly 150 distinct non-reversing blocks") {
    const BlockTable table = build_block_table();
    REQUIRE(table.blocks.size() == 150);

    std::set<std::vector<int>> seen;
    for (const Block& b : table.blocks) {
        std::vector<int> key;
        for (const Point3& d : b.steps) {
            key.push_back(d.x);
            key.push_back(d.y);
            key.push_back(d.z);
        }
        seen.insert(key);
    }
    REQUIRE(seen.size() == 150);

    CHECK(testref::find_block(table, px, px, px) >= 0);
    CHECK(testref::find_block(table, px, mx, px) < 0); // immediate reversal
    // lexicographic order over the +x,-x,+y,-y,+z,-z direction table
    CHECK(testref::find_block(table, px, px, px) == 0);
    CHECK(testref::find_block(table, mz, mz, mz) == 149);
}

TEST_CASE("all 150 blocks decode to four pairwise-distinct fragment points") {
    const BlockTable table = build_block_table();
    for (const Block& b : table.blocks) {
        const Point3 p0{0, 0, 0};
        const Point3 p1 = b.steps[0];
        const Point3 p2 = p1 + b.steps[1];
        const Point3 p3 = p2 + b.steps[2];
        const std::vector<Point3> pts = {p0, p1, p2, p3};
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                REQUIRE(pts[i] != pts[j]);
            }
        }
    }
}

TEST_CASE("orbit decomposition under the 48-element cubic group is {6,24,24,24,24,48}") {
    const BlockTable table = build_block_table();
    const auto& group = cubic_symmetries();
    REQUIRE(group.size() == 48);

    // orbit of each start block
    std::vector<std::set<int>> orbits;
    for (int s : table.start_ids) {
        std::set<int> orbit;
        for (const CubicSymmetry& g : group) {
            const int image = table.index_of(apply(g, table.blocks[s]));
            REQUIRE(image >= 0); // group action stays inside the table
            orbit.insert(image);
        }
        orbits.push_back(orbit);
    }

    std::multiset<std::size_t> sizes;
    std::set<int> covered;
    for (const auto& orbit : orbits) {
        sizes.insert(orbit.size());
        covered.insert(orbit.begin(), orbit.end());
    }
    CHECK(sizes == std::multiset<std::size_t>{6, 24, 24, 24, 24, 48});
    // transversal: orbits are disjoint and cover all 150 blocks
    CHECK(covered.size() == 150);
}

TEST_CASE("every block maps to exactly one start block under symmetry") {
    const BlockTable table = build_block_table();
    const auto& group = cubic_symmetries();
    for (int b = 0; b < kBlockCount; ++b) {
        std::set<int> reachable_starts;
        for (const CubicSymmetry& g : group) {
            const int image = table.index_of(apply(g, table.blocks[b]));
            if (table.is_start(image)) reachable_starts.insert(image);
        }
        REQUIRE(reachable_starts.size() == 1);
    }
}

TEST_CASE("start ids are the six canonical representatives") {
    const BlockTable table = build_block_table();
    const std::vector<std::array<Point3, 3>> expected = {
        {px, px, px}, {px, px, py}, {px, py, px}, {px, py, py}, {px, py, mx}, {px, py, pz},
    };
    std::set<int> ids;
    for (const auto& steps : expected) {
        const int id = testref::find_block(table, steps[0], steps[1], steps[2]);
        REQUIRE(id >= 0);
        ids.insert(id);
        CHECK(table.is_start(id));
    }
    CHECK(ids.size() == 6);
    CHECK(std::is_sorted(table.start_ids.begin(), table.start_ids.end()));
}

TEST_CASE("decode: straight chains and anchor chaining") {
    const BlockTable table = build_block_table();
    const int straight = testref::find_block(table, px, px, px);

    SECTION("single block, n=3") {
        Path path{{straight}};
        const Conformation conf = decode(path, table, 3);
        REQUIRE(conf.coords == std::vector<Point3>{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
    }
    SECTION("two straight blocks, n=6") {
        Path path{{straight, straight}};
        const Conformation conf = decode(path, table, 6);
        for (int i = 0; i < 6; ++i) {
            REQUIRE(conf.coords[i] == Point3{i, 0, 0});
        }
    }
    SECTION("anchor after (+x,+y,-x) is (0,1,0)") {
        const int bent = testref::find_block(table, px, py, mx);
        Path path{{bent, straight}};
        const Conformation conf = decode(path, table, 6);
        REQUIRE(conf.coords[0] == Point3{0, 0, 0});
        REQUIRE(conf.coords[1] == Point3{1, 0, 0});
        REQUIRE(conf.coords[2] == Point3{1, 1, 0});
        REQUIRE(conf.coords[3] == Point3{0, 1, 0}); // residue 4 at the new anchor
    }
}

TEST_CASE("decode truncates the final block for n not divisible by 3") {
    const BlockTable table = build_block_table();
    const int straight = testref::find_block(table, px, px, px);
    Path path{{straight, straight}};
    const Conformation conf = decode(path, table, 4);
    REQUIRE(conf.n() == 4);
    REQUIRE(conf.coords[3] == Point3{3, 0, 0});
}

TEST_CASE("decode rejects a path/length mismatch") {
    const BlockTable table = build_block_table();
    Path path{{table.start_ids[0]}};
    CHECK_THROWS_AS(decode(path, table, 6), std::invalid_argument);
    CHECK_THROWS_AS(decode(path, table, 4), std::invalid_argument);
}

TEST_CASE("decode is deterministic and keeps chain connectivity across blocks") {
    const BlockTable table = build_block_table();
    Rng rng(20240817);
    for (int n : {4, 5, 6, 9, 17, 48}) {
        const int positions = path_length_for(n);
        for (int rep = 0; rep < 200; ++rep) {
            const Path path = random_path(table, positions, rng);
            REQUIRE(is_valid_path(path, table, n));
            const Conformation a = decode(path, table, n);
            const Conformation b = decode(path, table, n);
            REQUIRE(a.coords == b.coords);
            REQUIRE(a.coords[0] == Point3{0, 0, 0});
            for (int i = 0; i + 1 < n; ++i) {
                REQUIRE(manhattan(a.coords[i], a.coords[i + 1]) == 1);
            }
        }
    }
}

TEST_CASE("parse_sequence handles case, rejects junk, enforces length") {
    const HPSequence a = parse_sequence("hphh");
    const HPSequence b = parse_sequence("HPHH");
    REQUIRE(a.residues == b.residues);
    REQUIRE(a.n() == 4);
    CHECK(a.is_h(0));
    CHECK_FALSE(a.is_h(1));

    CHECK_THROWS_AS(parse_sequence("hpxh"), std::invalid_argument);
    CHECK_THROWS_WITH(parse_sequence("hpxh"), Catch::Matchers::ContainsSubstring("index 2"));
    CHECK_THROWS_AS(parse_sequence("hph"), std::invalid_argument);

    const HPSequence s1 =
        parse_sequence("hphhpphhhhphhhpphhpphphhhphphhpphhppphpppppppphh");
    CHECK(s1.n() == 48);
    CHECK(path_length_for(s1.n()) == 16);
}
