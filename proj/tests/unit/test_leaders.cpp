#include <doctest.h>

#include <cmath>
#include <limits>

#include "../support/helpers.hpp"
#include "mflift/errors.hpp"
#include "mflift/leaders.hpp"

using namespace mflift;
using namespace mflift::test;

TEST_CASE("single spike: coarser leaders equal the normalized magnitude on "
          "covering windows only") {
    // N = 64 instance: scales 1..5 (sizes 2..32), one nonzero coefficient at
    // the finest scale.
    const int J = 5;
    std::vector<std::vector<double>> levels;
    for (int j = 1; j <= J; ++j)
        levels.emplace_back(static_cast<std::size_t>(1) << j, 0.0);
    const int k0 = 13;
    levels.back()[k0] = 1.0;
    const auto pyr = make_pyramid_1d(std::move(levels), 1);
    const auto lead = leaders1d(pyr);
    const double want = std::exp2(0.5 * J);

    for (const auto& lv : lead.levels) {
        const int f = 1 << (J - lv.scale);
        for (int k = 0; k < lv.cols; ++k) {
            // brute force window coverage check
            const double got = lv.value[static_cast<std::size_t>(k)];
            const long lo = (static_cast<long>(k) - 1) * f;
            const long hi = (static_cast<long>(k) + 2) * f;
            const bool covers = k0 >= lo && k0 < hi;
            if (covers)
                CHECK(got == want);
            else
                CHECK(got == 0.0);
        }
        // at most three covering positions per scale
        int count = 0;
        for (int k = 0; k < lv.cols; ++k)
            if (lv.value[static_cast<std::size_t>(k)] > 0) ++count;
        CHECK(count <= 3);
        CHECK(count >= 1);
    }
}

TEST_CASE("all-equal coefficients: sup sits at the finest scale") {
    const int J = 5;
    const double c = 0.37;
    std::vector<std::vector<double>> levels;
    for (int j = 1; j <= J; ++j)
        levels.emplace_back(static_cast<std::size_t>(1) << j, c);
    const auto lead = leaders1d(make_pyramid_1d(std::move(levels), 1));
    const double want = std::exp2(0.5 * J) * c;
    for (const auto& lv : lead.levels)
        for (double v : lv.value) CHECK(v == want);
}

TEST_CASE("all-zero pyramid: leaders zero and everything masked") {
    std::vector<std::vector<double>> levels{{0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}};
    const auto lead = leaders1d(make_pyramid_1d(std::move(levels), 1));
    for (const auto& lv : lead.levels) {
        CHECK(lv.n_valid == 0);
        for (double v : lv.value) CHECK(v == 0.0);
    }
}

TEST_CASE("bottom-up leaders equal the brute-force sup-set, bit exact") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const auto pyr = random_pyramid_1d(128, 6, seed, seed % 2 == 0);
        const auto lead = leaders1d(pyr);
        for (const auto& lv : lead.levels)
            for (int k = 0; k < lv.cols; ++k)
                CHECK(lv.value[static_cast<std::size_t>(k)] ==
                      brute_leader_1d(pyr, lv.scale, k));
    }
}

TEST_CASE("2D leaders equal brute force on 32x32") {
    for (std::uint64_t seed : {11u, 12u}) {
        const auto pyr = random_pyramid_2d(32, 4, seed);
        const auto lead = leaders2d(pyr);
        for (const auto& lv : lead.levels)
            for (int r = 0; r < lv.rows; ++r)
                for (int c = 0; c < lv.cols; ++c)
                    CHECK(lv.value[static_cast<std::size_t>(r) * lv.cols + c] ==
                          brute_leader_2d(pyr, lv.scale, r, c));
    }
}

TEST_CASE("leaders dominate the normalized coefficients at every position") {
    const auto pyr = random_pyramid_1d(128, 6, 42);
    const auto lead = leaders1d(pyr);
    for (std::size_t li = 0; li < pyr.levels.size(); ++li) {
        const auto& cl = pyr.levels[li];
        const auto& ll = lead.levels[li];
        const double f = std::exp2(0.5 * cl.scale);
        for (std::size_t k = 0; k < cl.bands[0].size(); ++k)
            CHECK(ll.value[k] >= f * std::abs(cl.bands[0][k]));
    }
}

TEST_CASE("positive homogeneity is exact for power-of-two factors") {
    const auto pyr = random_pyramid_2d(32, 4, 7);
    CoefficientPyramid scaled = pyr;
    for (auto& lv : scaled.levels)
        for (auto& band : lv.bands)
            for (auto& v : band) v *= 4.0;
    const auto a = leaders2d(pyr);
    const auto b = leaders2d(scaled);
    for (std::size_t li = 0; li < a.levels.size(); ++li)
        for (std::size_t k = 0; k < a.levels[li].value.size(); ++k)
            CHECK(b.levels[li].value[k] == 4.0 * a.levels[li].value[k]);
}

TEST_CASE("empty pyramid is rejected") {
    CoefficientPyramid empty;
    empty.dim = 1;
    CHECK_THROWS_AS(leaders1d(empty), InvalidInputError);
    CoefficientPyramid empty2;
    empty2.dim = 2;
    CHECK_THROWS_AS(leaders2d(empty2), InvalidInputError);
}

TEST_CASE("wrap mask flags the first and last window per axis") {
    const auto pyr = random_pyramid_1d(64, 4, 3);
    LeaderOptions opts;
    opts.mask_wrapped = true;
    const auto lead = leaders1d(pyr, opts);
    for (const auto& lv : lead.levels) {
        CHECK(lv.valid.front() == 0);
        CHECK(lv.valid.back() == 0);
    }
}

TEST_CASE("log slopes read decay exponents off exact power laws") {
    // L_{j,k} = 2^{-0.7 j}
    std::vector<std::vector<double>> levels;
    for (int j = 3; j <= 6; ++j)
        levels.emplace_back(static_cast<std::size_t>(1) << j,
                            std::exp2(-0.7 * j));
    const auto lead = make_leaders_1d(std::move(levels), 3);
    const auto slopes = log_slopes(lead);
    for (const auto& sl : slopes)
        for (std::size_t k = 0; k < sl.value.size(); ++k)
            CHECK(sl.value[k] == doctest::Approx(0.7).epsilon(1e-12));

    // L = 1 everywhere -> slope 0
    std::vector<std::vector<double>> ones;
    for (int j = 3; j <= 5; ++j)
        ones.emplace_back(static_cast<std::size_t>(1) << j, 1.0);
    const auto lead1 = make_leaders_1d(std::move(ones), 3);
    for (const auto& sl : log_slopes(lead1))
        for (double v : sl.value) CHECK(v == 0.0);
}

TEST_CASE("mixed two-value pyramid yields both slopes") {
    std::vector<std::vector<double>> levels;
    for (int j = 3; j <= 6; ++j) {
        std::vector<double> v(static_cast<std::size_t>(1) << j);
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] = k % 2 == 0 ? std::exp2(-0.5 * j) : std::exp2(-1.2 * j);
        levels.push_back(std::move(v));
    }
    const auto lead = make_leaders_1d(std::move(levels), 3);
    for (const auto& sl : log_slopes(lead))
        for (std::size_t k = 0; k < sl.value.size(); ++k)
            CHECK(sl.value[k] ==
                  doctest::Approx(k % 2 == 0 ? 0.5 : 1.2).epsilon(1e-12));
}

TEST_CASE("large-deviation histogram counts and sentinels") {
    // all slopes equal h0 = 0.8 at scale j: D = log2(n_j)/(-j)
    std::vector<std::vector<double>> levels;
    for (int j = 3; j <= 5; ++j)
        levels.emplace_back(static_cast<std::size_t>(1) << j,
                            std::exp2(-0.8 * j));
    const auto lead = make_leaders_1d(std::move(levels), 3);
    const auto d = ld_histogram(lead, 4, 0.05, {0.8, 2.0});
    CHECK(d[0] == doctest::Approx(std::log2(16.0) / -4.0).epsilon(1e-12));
    CHECK(d[1] == -std::numeric_limits<double>::infinity());

    CHECK_THROWS_AS(ld_histogram(lead, 4, 0.0, {0.8}), InvalidParameterError);
    CHECK_THROWS_AS(ld_histogram(lead, 99, 0.1, {0.8}), InvalidRangeError);
}

TEST_CASE("two-value histogram splits counts exactly") {
    std::vector<std::vector<double>> levels;
    for (int j = 3; j <= 6; ++j) {
        std::vector<double> v(static_cast<std::size_t>(1) << j);
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] = k % 2 == 0 ? std::exp2(-0.5 * j) : std::exp2(-1.2 * j);
        levels.push_back(std::move(v));
    }
    const auto lead = make_leaders_1d(std::move(levels), 3);
    const int j = 5;
    const auto d = ld_histogram(lead, j, 0.01, {0.5, 1.2});
    const double half = std::log2(16.0) / -j;  // 16 of 32 positions each
    CHECK(d[0] == doctest::Approx(half).epsilon(1e-12));
    CHECK(d[1] == doctest::Approx(half).epsilon(1e-12));
}
