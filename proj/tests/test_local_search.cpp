#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>

#include "hpfold/core.hpp"
#include "hpfold/local_search.hpp"
#include "hpfold/scoring.hpp"
#include "hpfold/search.hpp"
#include "test_util.hpp"

using namespace hpfold;

TEST_CASE("1-neighborhood has (P-1)*149 + 5 distinct moves and no identity") {
    const BlockTable table = build_block_table();
    Rng rng(101);

    SECTION("path of length 16") {
        const Path path = random_path(table, 16, rng);
        const Neighborhood1 nbh = enumerate_1_neighborhood(path, table);
        CHECK(nbh.moves.size() == 2240);
        CHECK(neighborhood_size(16) == 2240);
    }
    SECTION("path of length 2") {
        const Path path = random_path(table, 2, rng);
        const Neighborhood1 nbh = enumerate_1_neighborhood(path, table);
        CHECK(nbh.moves.size() == 154);
    }
    SECTION("moves never reproduce the base path and never repeat") {
        const Path path = random_path(table, 5, rng);
        const Neighborhood1 nbh = enumerate_1_neighborhood(path, table);
        std::set<std::pair<int, int>> seen;
        for (const Move& m : nbh.moves) {
            CHECK(m.block != path.choices[m.position]);
            if (m.position == 0) CHECK(table.is_start(m.block));
            seen.insert({m.position, m.block});
        }
        CHECK(seen.size() == nbh.moves.size());
    }
    SECTION("nth_move agrees with the enumerated order") {
        const Path path = random_path(table, 4, rng);
        const Neighborhood1 nbh = enumerate_1_neighborhood(path, table);
        for (std::size_t i = 0; i < nbh.moves.size(); ++i) {
            const Move m = nth_move(path, table, i);
            REQUIRE(m.position == nbh.moves[i].position);
            REQUIRE(m.block == nbh.moves[i].block);
        }
    }
}

TEST_CASE("hill climbing is monotone and stops at a 1-local optimum") {
    const BlockTable table = build_block_table();
    Rng rng(777);
    const HPSequence seq = testref::random_sequence(12, rng);
    const int n = seq.n();

    for (int rep = 0; rep < 10; ++rep) {
        const Path start = random_path(table, path_length_for(n), rng);
        const double e0 = energy(decode(start, table, n), seq).energy;

        const Path improved = hill_climb(start, seq, table);
        const double e1 = energy(decode(improved, table, n), seq).energy;
        CHECK(e1 <= e0);
        REQUIRE(is_valid_path(improved, table, n));

        // a converged result is a fixed point of another sweep
        const Path again = hill_climb(improved, seq, table, 1);
        CHECK(again == improved);

        // and no single exchange improves it
        const Neighborhood1 nbh = enumerate_1_neighborhood(improved, table);
        Path probe = improved;
        for (const Move& m : nbh.moves) {
            const int saved = probe.choices[m.position];
            probe.choices[m.position] = m.block;
            CHECK(energy(decode(probe, table, n), seq).energy >= e1);
            probe.choices[m.position] = saved;
        }
    }
}

TEST_CASE("hill climbing respects the sweep cap") {
    const BlockTable table = build_block_table();
    Rng rng(3);
    const HPSequence seq = testref::random_sequence(15, rng);
    const Path start = random_path(table, path_length_for(seq.n()), rng);
    const Path one = hill_climb(start, seq, table, 1);
    const Path full = hill_climb(start, seq, table);
    const double e_one = energy(decode(one, table, seq.n()), seq).energy;
    const double e_full = energy(decode(full, table, seq.n()), seq).energy;
    CHECK(e_full <= e_one);
}

TEST_CASE("metropolis acceptance rule") {
    SECTION("equal or better candidates always accepted") {
        CHECK(metropolis_accept(-5.0, -5.0, 1.0, 0.999999));
        CHECK(metropolis_accept(-5.0, -7.5, 0.01, 0.999999));
    }
    SECTION("worse candidates accepted iff u < exp(-dE/T)") {
        const double p = std::exp(-1.0);
        CHECK(metropolis_accept(-5.0, -4.0, 1.0, p - 1e-9));
        CHECK_FALSE(metropolis_accept(-5.0, -4.0, 1.0, p + 1e-9));
    }
    SECTION("huge uphill moves are effectively never accepted") {
        CHECK_FALSE(metropolis_accept(-5.0, 1e6, 1.0, 1e-300));
    }
    SECTION("non-positive temperature is rejected") {
        CHECK_THROWS_AS(metropolis_accept(0.0, 1.0, 0.0, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(metropolis_accept(0.0, 1.0, -1.0, 0.5), std::invalid_argument);
    }
}

TEST_CASE("metropolis empirical acceptance at dE = T is near exp(-1)") {
    Rng rng(424242);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int trials = 10000;
    int accepted = 0;
    for (int t = 0; t < trials; ++t) {
        if (metropolis_accept(-3.0, -3.0 + 2.5, 2.5, unit(rng))) ++accepted;
    }
    const double rate = static_cast<double>(accepted) / trials;
    CHECK(rate > std::exp(-1.0) - 0.015);
    CHECK(rate < std::exp(-1.0) + 0.015);
}

TEST_CASE("simulated annealing: determinism, monotone best, valid paths") {
    const BlockTable table = build_block_table();
    const HPSequence seq = parse_sequence("hphhpphhphhpph");
    CoolingSchedule schedule; // defaults derived from the instance
    Budget budget;
    budget.max_iterations = 20000;

    const SearchResult a = sa_run(seq, table, schedule, budget, 99);
    const SearchResult b = sa_run(seq, table, schedule, budget, 99);
    REQUIRE(a.best_path == b.best_path);
    REQUIRE(a.best_score.energy == b.best_score.energy);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        REQUIRE(a.trace[i].iteration == b.trace[i].iteration);
        REQUIRE(a.trace[i].energy == b.trace[i].energy);
    }

    const SearchResult c = sa_run(seq, table, schedule, budget, 100);
    CHECK(a.iterations == c.iterations); // same budget

    // best-so-far trace is strictly improving by construction
    for (std::size_t i = 1; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].energy < a.trace[i - 1].energy);
    }
    REQUIRE(is_valid_path(a.best_path, table, seq.n()));
    if (a.best_feasible_path) {
        REQUIRE(is_valid_path(*a.best_feasible_path, table, seq.n()));
        const ScoreBreakdown sb = energy(decode(*a.best_feasible_path, table, seq.n()), seq);
        CHECK(sb.ov == 0);
        CHECK(sb.hh == a.best_feasible_score.hh);
    }

    // the reported best is reproducible from its path
    const ScoreBreakdown re = energy(decode(a.best_path, table, seq.n()), seq);
    CHECK(re.energy == a.best_score.energy);
}

TEST_CASE("simulated annealing rejects an empty budget and bad schedules") {
    const BlockTable table = build_block_table();
    const HPSequence seq = parse_sequence("hpph");
    CHECK_THROWS_AS(sa_run(seq, table, CoolingSchedule{}, Budget{}, 1), std::invalid_argument);
    CoolingSchedule bad;
    bad.alpha = 1.5;
    Budget budget;
    budget.max_iterations = 10;
    CHECK_THROWS_AS(sa_run(seq, table, bad, budget, 1), std::invalid_argument);
}

TEST_CASE("random-restart hill climbing honors its budget and tracks bests") {
    const BlockTable table = build_block_table();
    const HPSequence seq = parse_sequence("hhpphphphh");
    Budget budget;
    budget.max_iterations = 25;
    const SearchResult r = hc_run(seq, table, 0, budget, 7);
    CHECK(r.iterations == 25);
    REQUIRE(is_valid_path(r.best_path, table, seq.n()));
    const SearchResult r2 = hc_run(seq, table, 0, budget, 7);
    CHECK(r.best_score.energy == r2.best_score.energy);
}
