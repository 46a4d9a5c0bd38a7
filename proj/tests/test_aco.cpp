#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <map>
#include <vector>

#include "hpfold/aco.hpp"
#include "hpfold/core.hpp"
#include "hpfold/pheromone.hpp"
#include "hpfold/scoring.hpp"
#include "hpfold/search.hpp"
#include "test_util.hpp"

using namespace hpfold;

namespace {

// All edges at exactly t_min except the pair edges of `path`, which sit at
// t_max: evaporate until the geometric tail vanishes below double
// resolution, then deposit with ratio 1.
PheromoneMatrix polarized_matrix(int positions, GraphMode mode, const Path& path) {
    PheromoneMatrix m(positions, mode, 0.05, 1.0);
    for (int i = 0; i < 4000; ++i) m.evaporate(0.5);
    m.deposit(path, -2.0, -2.0);
    return m;
}

} // namespace

TEST_CASE("candidate etas: best extension gets 1, all lie in (0,1]") {
    const BlockTable table = build_block_table();
    Rng rng(11);
    const HPSequence seq = testref::random_sequence(9, rng);
    const std::vector<int> prefix = {table.start_ids[2]};

    const auto etas = candidate_etas(seq, table, prefix);
    double max_eta = 0.0;
    for (double e : etas) {
        CHECK(e > 0.0);
        CHECK(e <= 1.0);
        max_eta = std::max(max_eta, e);
    }
    CHECK(max_eta == 1.0);

    // eta = 1 / (1 + energy gap to the best candidate)
    const int thh = contact_upper_bound(seq);
    std::array<double, kBlockCount> energies;
    Path partial;
    partial.choices = {prefix[0], 0};
    double best = 0.0;
    for (int b = 0; b < kBlockCount; ++b) {
        partial.choices[1] = b;
        const Conformation conf = decode(partial, table, 6);
        energies[b] = score_prefix(conf, seq, 6, thh).energy;
        if (b == 0 || energies[b] < best) best = energies[b];
    }
    for (int b = 0; b < kBlockCount; ++b) {
        REQUIRE(etas[b] == Catch::Approx(1.0 / (1.0 + energies[b] - best)).margin(1e-12));
        REQUIRE(heuristic_eta(seq, table, prefix, b) == etas[b]);
    }
}

TEST_CASE("candidate etas: degenerate step where every extension ties") {
    // n = 4: the final block only places residue 4 at the fixed anchor, so
    // all 150 extensions decode identically and eta is 1 everywhere.
    const BlockTable table = build_block_table();
    const HPSequence seq = parse_sequence("hpph");
    const auto etas = candidate_etas(seq, table, {table.start_ids[0]});
    for (double e : etas) REQUIRE(e == 1.0);
}

TEST_CASE("start probabilities are uniform on a fresh matrix") {
    const BlockTable table = build_block_table();
    PheromoneMatrix m(3, GraphMode::AdjacentOnly, 0.1);
    const auto probs = start_probabilities(m, table);
    for (double p : probs) CHECK(p == Catch::Approx(1.0 / 6.0).margin(1e-12));
}

TEST_CASE("step probabilities normalize and follow the weight formula") {
    const BlockTable table = build_block_table();
    Rng rng(22);
    const HPSequence seq = testref::random_sequence(9, rng);
    PheromoneMatrix m(3, GraphMode::AdjacentOnly, 0.1);
    // differentiate the matrix with a few deposits
    for (int rep = 0; rep < 3; ++rep) {
        m.evaporate(0.3);
        m.deposit(random_path(table, 3, rng), -5.0, -20.0);
    }

    const std::vector<int> prefix = {table.start_ids[1], 42};
    const double alpha = 1.3, beta = 0.7;
    const auto probs = step_probabilities(m, seq, table, prefix, alpha, beta);

    double sum = 0.0;
    for (double p : probs) sum += p;
    CHECK(sum == Catch::Approx(1.0).margin(1e-9));

    const auto etas = candidate_etas(seq, table, prefix);
    std::array<double, kBlockCount> expect;
    double total = 0.0;
    for (int b = 0; b < kBlockCount; ++b) {
        expect[b] = std::pow(m.value(1, 42, 2, b), alpha) * std::pow(etas[b], beta);
        total += expect[b];
    }
    for (int b = 0; b < kBlockCount; ++b) {
        REQUIRE(probs[b] == Catch::Approx(expect[b] / total).margin(1e-12));
    }
}

TEST_CASE("alpha = 0 reduces selection to the heuristic alone") {
    const BlockTable table = build_block_table();
    Rng rng(33);
    const HPSequence seq = testref::random_sequence(9, rng);
    PheromoneMatrix m(3, GraphMode::AdjacentOnly, 0.1);
    m.evaporate(0.4);
    m.deposit(random_path(table, 3, rng), -5.0, -20.0);

    const std::vector<int> prefix = {table.start_ids[0]};
    const auto probs = step_probabilities(m, seq, table, prefix, 0.0, 2.0);
    const auto etas = candidate_etas(seq, table, prefix);
    double total = 0.0;
    for (double e : etas) total += e * e;
    for (int b = 0; b < kBlockCount; ++b) {
        REQUIRE(probs[b] == Catch::Approx(etas[b] * etas[b] / total).margin(1e-12));
    }
}

TEST_CASE("beta = 0 on a polarized matrix: elite edge dominates per the formula") {
    const BlockTable table = build_block_table();
    const HPSequence seq = parse_sequence("hphphphph");
    Path elite;
    elite.choices = {table.start_ids[3], 77, 11};
    const PheromoneMatrix m = polarized_matrix(3, GraphMode::AdjacentOnly, elite);
    REQUIRE(m.value(0, table.start_ids[3], 1, 77) == 1.0);
    REQUIRE(m.value(0, table.start_ids[3], 1, 76) == 0.05);

    const std::vector<int> prefix = {elite.choices[0]};
    const auto probs = step_probabilities(m, seq, table, prefix, 1.0, 0.0);
    const double expected = 1.0 / (1.0 + 149 * 0.05);
    CHECK(probs[77] == Catch::Approx(expected).margin(1e-12));
    CHECK(probs[76] == Catch::Approx(0.05 / (1.0 + 149 * 0.05)).margin(1e-12));
}

TEST_CASE("construction start choice is uniform over the 6 start blocks (chi-square)") {
    const BlockTable table = build_block_table();
    const HPSequence seq = parse_sequence("hpphpp");
    PheromoneMatrix m(2, GraphMode::AdjacentOnly, 0.1);
    Rng rng(4040);

    std::map<int, int> counts;
    const int draws = 10000;
    for (int d = 0; d < draws; ++d) {
        const Path path = construct_solution(m, seq, table, 1.0, 0.0, rng);
        ++counts[path.choices[0]];
    }
    std::vector<double> observed, expected;
    for (int s : table.start_ids) {
        observed.push_back(counts[s]);
        expected.push_back(draws / 6.0);
    }
    // chi-square(5) critical value at 0.001
    CHECK(testref::chi_square(observed, expected) < 20.516);
}

TEST_CASE("uniform pheromone and beta = 0 make 2-position paths uniform (chi-square)") {
    const BlockTable table = build_block_table();
    const HPSequence seq = parse_sequence("hpphpp");
    PheromoneMatrix m(2, GraphMode::AdjacentOnly, 0.1);
    Rng rng(360360);

    const int draws = 90000; // 6*150 cells, 100 expected each
    std::map<std::pair<int, int>, int> counts;
    for (int d = 0; d < draws; ++d) {
        const Path path = construct_solution(m, seq, table, 1.0, 0.0, rng);
        ++counts[{path.choices[0], path.choices[1]}];
    }
    std::vector<double> observed(6 * 150, 0.0), expected(6 * 150, 100.0);
    std::size_t cell = 0;
    for (int s : table.start_ids) {
        for (int b = 0; b < kBlockCount; ++b) {
            observed[cell++] = counts[{s, b}];
        }
    }
    // chi-square(899) critical value at 0.001
    CHECK(testref::chi_square(observed, expected) < 1035.76);
}

TEST_CASE("aco run: determinism, elitist trace, valid paths") {
    const BlockTable table = build_block_table();
    const HPSequence seq = parse_sequence("hhphphhppphh");
    AcoConfig cfg;
    cfg.budget.max_iterations = 40;
    cfg.seed = 2024;

    const SearchResult a = aco_run(seq, table, cfg);
    const SearchResult b = aco_run(seq, table, cfg);
    REQUIRE(a.best_path == b.best_path);
    REQUIRE(a.best_score.energy == b.best_score.energy);
    REQUIRE(a.iterations == b.iterations);

    for (std::size_t i = 1; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].energy < a.trace[i - 1].energy);
    }
    REQUIRE(is_valid_path(a.best_path, table, seq.n()));
    const ScoreBreakdown re = energy(decode(a.best_path, table, seq.n()), seq);
    CHECK(re.energy == a.best_score.energy);
    if (a.best_feasible_path) {
        CHECK(energy(decode(*a.best_feasible_path, table, seq.n()), seq).ov == 0);
    }
}

TEST_CASE("aco config validation") {
    const BlockTable table = build_block_table();
    const HPSequence seq = parse_sequence("hpph");
    AcoConfig cfg; // no budget
    CHECK_THROWS_AS(aco_run(seq, table, cfg), std::invalid_argument);
    cfg.budget.max_iterations = 5;
    cfg.n_ants = 0;
    CHECK_THROWS_AS(aco_run(seq, table, cfg), std::invalid_argument);
    cfg.n_ants = 2;
    cfg.rho = 1.0;
    CHECK_THROWS_AS(aco_run(seq, table, cfg), std::invalid_argument);
}

TEST_CASE("aco stops early once the target energy is reached") {
    const BlockTable table = build_block_table();
    const HPSequence seq = parse_sequence("hpph");
    AcoConfig cfg;
    cfg.budget.max_iterations = 100000;
    cfg.budget.target_energy = -5.0; // any overlap-free fold with a contact beats this
    cfg.seed = 9;
    const SearchResult r = aco_run(seq, table, cfg);
    CHECK(r.best_score.energy <= -5.0 + 1e-9);
    CHECK(r.iterations < 100000);
}
