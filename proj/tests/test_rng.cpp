#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <set>
#include <vector>

#include "bbls/rng.hpp"

using bbls::RngState;

TEST_CASE("same seed reproduces the stream") {
    RngState a(7), b(7);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_uniform() == b.next_uniform());

    // interleaved operations stay in lockstep too
    RngState c(99), d(99);
    for (int i = 0; i < 10000; ++i) {
        switch (i % 4) {
            case 0: REQUIRE(c.next_u64() == d.next_u64()); break;
            case 1: REQUIRE(c.next_uniform() == d.next_uniform()); break;
            case 2: REQUIRE(c.next_gaussian() == d.next_gaussian()); break;
            default: REQUIRE(c.uniform_int(-5, 17) == d.uniform_int(-5, 17));
        }
    }
}

TEST_CASE("seed zero is remapped to a valid distinct stream") {
    RngState zero(0), one(1);
    const double u0 = zero.next_uniform();
    REQUIRE(u0 == 0.39646732433925647);
    REQUIRE(one.next_uniform() == 0.031830493152778305);
    REQUIRE(u0 != 0.031830493152778305);
}

TEST_CASE("golden values from the reference implementation") {
    RngState r42(42);
    const std::array<double, 5> uniforms{
        0.9083704228825028, 0.33061240302563022, 0.95093543380552736,
        0.20447121706056748, 0.34282982677775886};
    for (double want : uniforms) REQUIRE(r42.next_uniform() == want);

    RngState g42(42);
    const std::array<double, 4> gaussians{
        0.64805041224573856, -0.26880424217240412, -0.26321336856086741,
        -0.68335331926027054};
    for (double want : gaussians) REQUIRE(g42.next_gaussian() == want);

    RngState r7(7);
    REQUIRE(r7.next_u64() == 11620550107985403399ULL);
    REQUIRE(r7.next_u64() == 2209111995329479690ULL);
    REQUIRE(r7.next_u64() == 7163010267061228092ULL);

    RngState r123(123);
    const std::array<int, 12> rolls{1, 3, 5, 1, 1, 2, 3, 2, 3, 5, 5, 5};
    for (int want : rolls)
        REQUIRE(r123.uniform_int(1, 6) == static_cast<std::int64_t>(want));
}

TEST_CASE("uniform draws stay in [0,1) with mean 1/2") {
    RngState r(42);
    double sum = 0.0;
    for (int i = 0; i < 1000000; ++i) {
        const double u = r.next_uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    REQUIRE(std::abs(sum / 1e6 - 0.5) < 0.01);
}

TEST_CASE("gaussian moments") {
    RngState r(2024);
    double sum = 0.0, sq = 0.0;
    const int draws = 1000000;
    for (int i = 0; i < draws; ++i) {
        const double g = r.next_gaussian();
        sum += g;
        sq += g * g;
    }
    const double mean = sum / draws;
    const double var = sq / draws - mean * mean;
    REQUIRE(std::abs(mean) < 0.01);
    REQUIRE(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("gaussian spare is consumed before advancing the uniform stream") {
    RngState a(5);
    a.next_gaussian();
    REQUIRE(a.has_cached_gaussian());
    a.next_gaussian();
    REQUIRE_FALSE(a.has_cached_gaussian());

    // stream position after two gaussians equals position after one
    RngState b(5);
    b.next_gaussian();
    REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform_int contract") {
    RngState r(11);
    SECTION("singleton range") {
        RngState fresh(11);
        REQUIRE(r.uniform_int(3, 3) == 3);
        REQUIRE(r.next_u64() == fresh.next_u64());  // consumed nothing
    }
    SECTION("invalid range") {
        REQUIRE_THROWS_AS(r.uniform_int(5, 4), std::invalid_argument);
    }
    SECTION("dice frequencies") {
        std::array<int, 6> counts{};
        const int draws = 100000;
        for (int i = 0; i < draws; ++i)
            ++counts[static_cast<std::size_t>(r.uniform_int(1, 6) - 1)];
        for (int c : counts)
            REQUIRE(std::abs(static_cast<double>(c) / draws - 1.0 / 6.0) < 0.01);
    }
    SECTION("randomized ranges never escape bounds") {
        for (int trial = 0; trial < 1000000; ++trial) {
            const std::int64_t lo = r.uniform_int(-1000, 1000);
            const std::int64_t hi = lo + r.uniform_int(0, 37);
            const std::int64_t v = r.uniform_int(lo, hi);
            REQUIRE(v >= lo);
            REQUIRE(v <= hi);
        }
    }
}

TEST_CASE("derive_seed matches reference and separates roles") {
    const std::array<std::uint64_t, 9> want{
        17419991467685312450ULL, 8723418704081603007ULL,
        9381321149455720836ULL,  2285320204257304202ULL,
        8203591676873756210ULL,  12900044316169642971ULL,
        3222780089834624509ULL,  2778211553248710679ULL,
        17256662183399121546ULL};
    std::set<std::uint64_t> seen;
    for (int role = 0; role < bbls::kSeedRoleCount; ++role) {
        const std::uint64_t s =
            bbls::derive_seed(10, 40, 1, static_cast<bbls::SeedRole>(role));
        REQUIRE(s == want[static_cast<std::size_t>(role)]);
        seen.insert(s);
    }
    REQUIRE(seen.size() == 9);

    // neighbouring triples do not collide (instances disjoint from the
    // (10, 40, 1) tuple probed above)
    for (std::uint64_t fid = 1; fid <= 24; ++fid)
        for (std::uint64_t inst : {3ULL, 5ULL, 7ULL, 9ULL})
            for (std::uint64_t n : {20ULL, 40ULL})
                seen.insert(bbls::derive_seed(fid, n, inst, bbls::SeedRole::x_opt));
    REQUIRE(seen.size() == 9 + 24 * 4 * 2);
}
