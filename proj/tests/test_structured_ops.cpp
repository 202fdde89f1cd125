#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "bbls/structured_ops.hpp"
#include "bbls/text.hpp"

using namespace bbls;

namespace {

std::vector<double> random_vector(RngState& rng, int n, double half = 5.0) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = half * (2.0 * rng.next_uniform() - 1.0);
    return x;
}

double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

std::vector<double> dense_matvec(const std::vector<std::vector<double>>& m,
                                 std::span<const double> x) {
    std::vector<double> y(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
    return y;
}

}  // namespace

TEST_CASE("block_sizes partitions n") {
    REQUIRE(block_sizes(100, 40) == std::vector<int>{40, 40, 20});
    REQUIRE(block_sizes(20, 40) == std::vector<int>{20});
    REQUIRE(block_sizes(640, 40) == std::vector<int>(16, 40));
    REQUIRE(block_sizes(1, 40) == std::vector<int>{1});
    REQUIRE_THROWS_AS(block_sizes(0, 40), std::invalid_argument);

    RngState rng(3);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng.uniform_int(0, 700));
        const int s = 1 + static_cast<int>(rng.uniform_int(0, 64));
        const auto sizes = block_sizes(n, s);
        REQUIRE(std::accumulate(sizes.begin(), sizes.end(), 0) == n);
        const int full = std::min(n, s);
        REQUIRE(static_cast<int>(sizes.size()) == (n + full - 1) / full);
        for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
            REQUIRE(sizes[i] == full);
    }
}

TEST_CASE("generated blocks are orthogonal") {
    SECTION("1x1 block is a sign") {
        RngState rng(17);
        const auto b = generate_block_diagonal(rng, 1, 40);
        REQUIRE(b.block_count() == 1);
        REQUIRE(std::abs(std::abs(b.block(0)[0]) - 1.0) < 1e-15);
    }
    SECTION("two 4x4 blocks") {
        RngState rng(18);
        const auto b = generate_block_diagonal(rng, 8, 4);
        REQUIRE(b.block_count() == 2);
        REQUIRE(b.orthogonality_error() <= 1e-9);
    }
    SECTION("40x40 off-diagonal average over 20 seeds") {
        double avg_offdiag = 0.0;
        std::int64_t entries = 0;
        for (int seed = 1; seed <= 20; ++seed) {
            RngState rng(static_cast<std::uint64_t>(seed));
            const auto b = generate_block_diagonal(rng, 40, 40);
            const auto dense = materialize(b);
            for (int i = 0; i < 40; ++i)
                for (int j = 0; j < 40; ++j) {
                    if (i == j) continue;
                    double dot = 0.0;
                    for (int k = 0; k < 40; ++k)
                        dot += dense[static_cast<std::size_t>(i)]
                                    [static_cast<std::size_t>(k)] *
                               dense[static_cast<std::size_t>(j)]
                                    [static_cast<std::size_t>(k)];
                    avg_offdiag += std::abs(dot);
                    ++entries;
                }
        }
        REQUIRE(avg_offdiag / static_cast<double>(entries) <= 1e-10);
    }
}

TEST_CASE("apply_block_diagonal matches the dense product") {
    SECTION("identity blocks") {
        std::vector<std::vector<double>> blocks{
            {1, 0, 0, 1},
            {1, 0, 0, 0, 1, 0, 0, 0, 1}};
        BlockDiagonalMatrix b(5, {2, 3}, std::move(blocks));
        RngState rng(4);
        const auto x = random_vector(rng, 5);
        REQUIRE(b.apply(x) == x);
    }
    SECTION("dense oracle, n=8 s=4") {
        RngState rng(5);
        const auto b = generate_block_diagonal(rng, 8, 4);
        const auto dense = materialize(b);
        for (int t = 0; t < 20; ++t) {
            const auto x = random_vector(rng, 8);
            const auto fast = b.apply(x);
            const auto slow = dense_matvec(dense, x);
            for (int i = 0; i < 8; ++i)
                REQUIRE(fast[static_cast<std::size_t>(i)] ==
                        Catch::Approx(slow[static_cast<std::size_t>(i)])
                            .margin(1e-12));
        }
    }
    SECTION("norm preservation") {
        RngState rng(6);
        const auto b = generate_block_diagonal(rng, 50, 16);
        for (int t = 0; t < 20; ++t) {
            const auto x = random_vector(rng, 50);
            REQUIRE(norm2(b.apply(x)) ==
                    Catch::Approx(norm2(x)).epsilon(1e-9));
        }
    }
    SECTION("transpose inverts") {
        RngState rng(7);
        const auto b = generate_block_diagonal(rng, 23, 9);
        const auto x = random_vector(rng, 23);
        const auto back = b.apply_transpose(b.apply(x));
        for (int i = 0; i < 23; ++i)
            REQUIRE(back[static_cast<std::size_t>(i)] ==
                    Catch::Approx(x[static_cast<std::size_t>(i)]).margin(1e-12));
    }
    SECTION("dimension mismatch") {
        RngState rng(8);
        const auto b = generate_block_diagonal(rng, 4, 2);
        std::vector<double> x(5, 0.0);
        REQUIRE_THROWS_AS(b.apply(x), std::invalid_argument);
    }
    SECTION("cost formula is linear in n at fixed block size") {
        RngState rng(9);
        const auto b1 = generate_block_diagonal(rng, 80, 40);
        const auto b2 = generate_block_diagonal(rng, 160, 40);
        REQUIRE(b1.multiply_add_count() == 80u * 40u);
        REQUIRE(b2.multiply_add_count() == 2 * b1.multiply_add_count());
    }
}

TEST_CASE("permutation basics") {
    const Permutation id = Permutation::identity(4);
    RngState rng(10);
    const auto x = random_vector(rng, 4);
    REQUIRE(id.apply(x) == x);

    // one-line transposition: 1-based (2,1) is zero-based (1,0)
    const Permutation swap2({1, 0});
    const std::vector<double> ab{3.5, -1.25};
    REQUIRE(swap2.apply(ab) == std::vector<double>{-1.25, 3.5});

    // 1-based cycle (3,1,2) -> inverse (2,3,1); zero-based (2,0,1) -> (1,2,0)
    const Permutation cycle({2, 0, 1});
    REQUIRE(cycle.inverse().forward() == std::vector<int>{1, 2, 0});
    REQUIRE(cycle.inverse().inverse().forward() == cycle.forward());

    for (int t = 0; t < 50; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform_int(0, 60));
        const auto p = random_permutation(rng, n);
        const auto v = random_vector(rng, n);
        REQUIRE(p.apply(p.inverse().apply(v)) == v);
        for (int i = 0; i < n; ++i)
            REQUIRE(p.inverse()[p[i]] == i);
    }

    std::vector<double> wrong(3, 0.0);
    REQUIRE_THROWS_AS(swap2.apply(wrong), std::invalid_argument);
}

TEST_CASE("random_permutation is uniform over S_4") {
    RngState rng(77);
    std::map<std::vector<int>, int> counts;
    const int draws = 48000;
    for (int t = 0; t < draws; ++t)
        ++counts[random_permutation(rng, 4).forward()];
    REQUIRE(counts.size() == 24);
    for (const auto& [perm, c] : counts)
        REQUIRE(std::abs(static_cast<double>(c) / draws - 1.0 / 24.0) < 0.004);
}

TEST_CASE("truncated uniform swaps produce valid permutations") {
    SECTION("no swaps is the identity") {
        RngState rng(11);
        const auto p = truncated_uniform_swaps(rng, 10, {0, 3});
        REQUIRE(p.forward() == Permutation::identity(10).forward());
    }
    SECTION("n_s > n is rejected") {
        RngState rng(12);
        REQUIRE_THROWS_AS(truncated_uniform_swaps(rng, 5, {6, 2}),
                          std::invalid_argument);
    }
    SECTION("validity over randomized parameters") {
        RngState rng(13);
        for (int t = 0; t < 10000; ++t) {
            const int n = 1 + static_cast<int>(rng.uniform_int(0, 63));
            const SwapParams params{static_cast<int>(rng.uniform_int(0, n)),
                                    static_cast<int>(rng.uniform_int(0, n))};
            const auto p = truncated_uniform_swaps(rng, n, params);
            REQUIRE(p.is_valid());
        }
    }
}

TEST_CASE("second swap index respects range and exclusion") {
    RngState rng(14);
    // first index 0 (leftmost position), range 5 in n=40: partner in {1..5}
    std::set<int> seen;
    for (int t = 0; t < 2000; ++t) {
        const auto j = second_swap_index(rng, 40, 0, 5);
        REQUIRE(j.has_value());
        REQUIRE(*j >= 1);
        REQUIRE(*j <= 5);
        seen.insert(*j);
    }
    REQUIRE(seen.size() == 5);

    // randomized truncation property |i - j| <= r_s, j != i
    for (int t = 0; t < 20000; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform_int(0, 98));
        const int i = static_cast<int>(rng.uniform_int(0, n - 1));
        const int r = 1 + static_cast<int>(rng.uniform_int(0, n));
        const auto j = second_swap_index(rng, n, i, r);
        REQUIRE(j.has_value());
        REQUIRE(*j != i);
        REQUIRE(*j >= 0);
        REQUIRE(*j < n);
        REQUIRE(std::abs(i - *j) <= r);
    }

    // empty candidate set
    REQUIRE_FALSE(second_swap_index(rng, 1, 0, 4).has_value());
    REQUIRE_FALSE(second_swap_index(rng, 10, 3, 0).has_value());
}

TEST_CASE("swap distance statistics match the analysis") {
    RngState rng(15);
    const SwapParams params{0, 10};

    SECTION("zero range executes no swaps") {
        const auto stats = swap_distance_stats(rng, 1000, 50, {50, 0});
        REQUIRE(stats.executed_swaps == 0);
    }
    SECTION("interior first index: mean r_s/2 + 1/2") {
        const auto stats = swap_distance_stats(rng, 100000, 100, params, 49);
        REQUIRE(stats.mean_distance == Catch::Approx(5.5).epsilon(0.05));
        REQUIRE(stats.max_distance <= 10);
    }
    SECTION("boundary first index is also maximal") {
        const auto stats = swap_distance_stats(rng, 100000, 100, params, 0);
        REQUIRE(stats.mean_distance == Catch::Approx(5.5).epsilon(0.05));
    }
    SECTION("asymmetric first index: mean (sqrt(2)-1) r_s + 1/2") {
        // minimizing offset from the boundary, zero-based index 4
        const auto stats = swap_distance_stats(rng, 100000, 100, params, 4);
        REQUIRE(stats.mean_distance ==
                Catch::Approx((std::sqrt(2.0) - 1.0) * 10.0 + 0.5).epsilon(0.05));
    }
    SECTION("full runs stay within the analytic bracket") {
        const auto stats = swap_distance_stats(rng, 300, 100, {100, 10});
        REQUIRE(stats.executed_swaps == 300 * 100);
        REQUIRE(stats.mean_distance >= (std::sqrt(2.0) - 1.0) * 10.0 + 0.5 - 0.3);
        REQUIRE(stats.mean_distance <= 5.5 + 0.3);
        REQUIRE(stats.max_distance <= 10);
    }
}

TEST_CASE("moved-variable fraction is near one with suite parameters") {
    RngState rng(16);
    for (int n : {20, 80}) {
        double moved = 0.0;
        const int perms = 50;
        for (int t = 0; t < perms; ++t) {
            const auto p = truncated_uniform_swaps(rng, n, {n, n / 3});
            for (int i = 0; i < n; ++i)
                if (p[i] != i) moved += 1.0;
        }
        REQUIRE(moved / (perms * n) >= 0.95);
    }
}

TEST_CASE("composed operator is orthogonal and non-separable") {
    RngState rng(17);
    for (int n : {4, 9, 16}) {
        const auto B = generate_block_diagonal(rng, n, 4);
        const auto P1 = truncated_uniform_swaps(rng, n, {n, std::max(1, n / 3)});
        const auto P2 = truncated_uniform_swaps(rng, n, {n, std::max(1, n / 3)});

        // materialize R = P1 B P2 densely
        std::vector<std::vector<double>> R(
            static_cast<std::size_t>(n),
            std::vector<double>(static_cast<std::size_t>(n)));
        for (int j = 0; j < n; ++j) {
            std::vector<double> e(static_cast<std::size_t>(n), 0.0);
            e[static_cast<std::size_t>(j)] = 1.0;
            const auto col = P1.apply(B.apply(P2.apply(e)));
            for (int i = 0; i < n; ++i)
                R[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    col[static_cast<std::size_t>(i)];
        }

        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double dot = 0.0;
                for (int k = 0; k < n; ++k)
                    dot += R[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                           R[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
            }
        REQUIRE(worst <= 1e-9);

        // composed apply equals dense matvec
        for (int t = 0; t < 10; ++t) {
            const auto x = random_vector(rng, n);
            const auto fast = P1.apply(B.apply(P2.apply(x)));
            const auto slow = dense_matvec(R, x);
            for (int i = 0; i < n; ++i)
                REQUIRE(std::abs(fast[static_cast<std::size_t>(i)] -
                                 slow[static_cast<std::size_t>(i)]) <= 1e-10);
        }

        if (n >= 4) {
            bool coupled_row = false;
            for (int i = 0; i < n && !coupled_row; ++i) {
                int nonzero = 0;
                for (int j = 0; j < n; ++j)
                    if (std::abs(R[static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(j)]) > 1e-12)
                        ++nonzero;
                coupled_row = nonzero >= 2;
            }
            REQUIRE(coupled_row);
        }
    }
}

TEST_CASE("matrix text dump is parseable at full precision") {
    RngState rng(18);
    const auto b = generate_block_diagonal(rng, 3, 3);
    const auto dense = materialize(b);
    std::istringstream in(matrix_to_text(dense));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double v;
            REQUIRE(in >> v);
            REQUIRE(v == dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
}
