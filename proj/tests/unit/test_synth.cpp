#include <doctest.h>

#include <cmath>
#include <vector>

#include "mflift/errors.hpp"
#include "mflift/gridfun.hpp"
#include "mflift/synth.hpp"

using namespace mflift;

TEST_CASE("generators are bit-deterministic in the seed") {
    const auto a = gen_levy_brownian(1 << 12, 1.25, 9001);
    const auto b = gen_levy_brownian(1 << 12, 1.25, 9001);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    const auto c = gen_levy_brownian(1 << 12, 1.25, 9002);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs |= a[i] != c[i];
    CHECK(differs);

    const auto m1 = gen_mrw1d(1 << 12, 0.72, 0.08, 31);
    const auto m2 = gen_mrw1d(1 << 12, 0.72, 0.08, 31);
    for (std::size_t i = 0; i < m1.size(); ++i) CHECK(m1[i] == m2[i]);

    const auto i1 = gen_mrw2d(64, 128, 0.6, 0.01, 7);
    const auto i2 = gen_mrw2d(64, 128, 0.6, 0.01, 7);
    for (std::size_t i = 0; i < i1.pix.size(); ++i)
        CHECK(i1.pix[i] == i2.pix[i]);
}

TEST_CASE("levy parameter validation") {
    CHECK_THROWS_AS(gen_levy_brownian(1 << 10, 0.0, 1), InvalidParameterError);
    CHECK_THROWS_AS(gen_levy_brownian(1 << 10, 2.0, 1), InvalidParameterError);
    CHECK_THROWS_AS(gen_levy_brownian(1000, 1.5, 1), InvalidParameterError);
    CHECK_THROWS_AS(theory_levy(2.5), InvalidParameterError);
}

TEST_CASE("levy theory values") {
    const auto t = theory_levy(1.25);
    CHECK(t.eval(0.4) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.eval(0.5) == 1.0);
    CHECK(t.eval(0.6) == kNegInfinity);
    CHECK(t.eval(-0.1) == kNegInfinity);
    CHECK(t.eval(0.0) == 0.0);
}

TEST_CASE("dwc tree values and conservation") {
    const double w = 0.45;
    const auto pyr = gen_dwc(3, w);
    REQUIRE(pyr.levels.size() == 3);
    REQUIRE(pyr.norm == CoeffNormalization::L1Prescribed);
    // finest level first (scale 3, 8 values) in tree order
    const auto& fine = pyr.levels.front();
    CHECK(fine.scale == 3);
    REQUIRE(fine.bands[0].size() == 8);
    const double v = w, u = 1.0 - w;
    const std::vector<double> want{v * v * v, v * v * u, v * u * v, v * u * u,
                                   u * v * v, u * v * u, u * u * v, u * u * u};
    for (std::size_t k = 0; k < 8; ++k)
        CHECK(fine.bands[0][k] == doctest::Approx(want[k]).epsilon(1e-15));
    for (const auto& lv : pyr.levels) {
        double sum = 0;
        for (double x : lv.bands[0]) sum += x;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("symmetric cascade is monofractal at h = 1") {
    const auto pyr = gen_dwc(5, 0.5);
    for (const auto& lv : pyr.levels)
        for (double x : lv.bands[0])
            CHECK(x == doctest::Approx(std::exp2(-lv.scale)).epsilon(1e-15));
}

TEST_CASE("thresholding: inert above h_max, total near zero, enumerated set") {
    const double w = 0.45;
    const auto pyr = gen_dwc(10, w);
    const double hmax = -std::log2(std::min(w, 1.0 - w));

    const auto same = threshold_dwc(pyr, hmax + 0.1);
    for (std::size_t li = 0; li < pyr.levels.size(); ++li)
        for (std::size_t k = 0; k < pyr.levels[li].bands[0].size(); ++k)
            CHECK(same.levels[li].bands[0][k] == pyr.levels[li].bands[0][k]);

    const auto zeroed = threshold_dwc(pyr, 1e-9);
    for (const auto& lv : zeroed.levels)
        for (double x : lv.bands[0]) CHECK(x == 0.0);

    const double theta = 1.0;
    const auto th = threshold_dwc(pyr, theta);
    for (std::size_t li = 0; li < pyr.levels.size(); ++li) {
        const auto& orig = pyr.levels[li];
        for (std::size_t k = 0; k < orig.bands[0].size(); ++k) {
            const bool keep =
                -std::log2(orig.bands[0][k]) <= theta * orig.scale;
            if (keep)
                CHECK(th.levels[li].bands[0][k] == orig.bands[0][k]);
            else
                CHECK(th.levels[li].bands[0][k] == 0.0);
        }
    }
    // idempotence
    const auto twice = threshold_dwc(th, theta);
    for (std::size_t li = 0; li < th.levels.size(); ++li)
        for (std::size_t k = 0; k < th.levels[li].bands[0].size(); ++k)
            CHECK(twice.levels[li].bands[0][k] == th.levels[li].bands[0][k]);
}

TEST_CASE("dwc theory: support endpoints at zero, peak of one at midpoint") {
    const double w = 0.45;
    const auto t = theory_dwc(w);
    const double lo = -std::log2(1.0 - w);  // 0.8625
    const double hi = -std::log2(w);        // 1.1520
    CHECK(t.h_min == doctest::Approx(lo).epsilon(1e-12));
    CHECK(t.h_max == doctest::Approx(hi).epsilon(1e-12));
    CHECK(t.eval(lo) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(t.eval(hi) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(t.eval((lo + hi) / 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.eval(lo - 0.01) == kNegInfinity);

    const auto deg = theory_dwc(0.5);
    CHECK(deg.degenerate);
    CHECK(deg.eval(1.0) == 1.0);
    CHECK(deg.eval(1.01) == kNegInfinity);
}

TEST_CASE("thresholded dwc theory keeps a nonconcave second hump") {
    const double w = 0.45, theta = 1.0;
    const auto base = theory_dwc(w);
    const auto t = theory_dwc_thresholded(w, theta);
    CHECK(t.h_max > base.h_max);
    // sup dominates the base everywhere
    for (double h = base.h_min; h <= base.h_max; h += 0.01)
        CHECK(t.eval(h) >= base.eval(h) - 1e-12);
    // beyond the original support the remapped branch is alive
    CHECK(t.eval(base.h_max + 0.2) > 0.0);
    // inert when the threshold exceeds the support
    const auto same = theory_dwc_thresholded(w, base.h_max + 0.5);
    CHECK(same.h_max == base.h_max);
}

TEST_CASE("mrw parameter validation and theory parabola") {
    CHECK_THROWS_AS(gen_mrw1d(1 << 12, 1.5, 0.08, 1), InvalidParameterError);
    CHECK_THROWS_AS(gen_mrw1d(1 << 12, 0.5, 0.0, 1), InvalidParameterError);
    CHECK_THROWS_AS(gen_mrw1d(1000, 0.5, 0.1, 1), InvalidParameterError);

    const auto t6 = theory_mrw(0.6, 0.01, 1);
    CHECK(t6.eval(0.605) == doctest::Approx(1.0).epsilon(1e-12));
    const auto t75 = theory_mrw(0.75, 0.01, 1);
    CHECK(t75.eval(0.755) == doctest::Approx(1.0).epsilon(1e-12));
    const double root = 0.605 + std::sqrt(2.0 * 0.01 * 1.0);
    CHECK(t6.eval(root) == doctest::Approx(0.0).epsilon(1e-9));
    // parabola returned as-is outside the plottable support
    CHECK(t6.eval(2.0) < -10.0);
}

TEST_CASE("theory_sup takes the pointwise maximum; paper crossing point") {
    const auto t6 = theory_mrw(0.6, 0.01, 1);
    const auto both = theory_sup(t6, t6);
    CHECK(both.eval(0.62) == doctest::Approx(t6.eval(0.62)).epsilon(1e-12));

    const auto sup = theory_sup(theory_mrw(0.6, 0.01, 1),
                                theory_mrw(0.75, 0.01, 1));
    CHECK(sup.eval(0.68) == doctest::Approx(0.71875).epsilon(1e-12));
    CHECK(sup.eval(0.605) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sup.eval(0.755) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("concatenation shapes and sub-seeding") {
    ProcessSpec spec;
    spec.kind = ProcessSpec::Kind::Concat2d;
    ProcessSpec p;
    p.kind = ProcessSpec::Kind::Mrw2d;
    p.rows = 1 << 7;
    p.cols = 1 << 6;
    p.H = 0.6;
    p.lambda2 = 0.01;
    spec.pieces = {p, p};
    const auto r = generate(spec, 5);
    CHECK(r.image.rows == 128);
    CHECK(r.image.cols == 128);

    // pieces use distinct sub-seeds: halves differ
    bool differs = false;
    for (int i = 0; i < 128 && !differs; ++i)
        for (int j = 0; j < 64 && !differs; ++j)
            differs |= r.image.at(i, j) != r.image.at(i, 64 + j);
    CHECK(differs);

    ProcessSpec one = spec;
    one.pieces.resize(1);
    CHECK_THROWS_AS(generate(one, 5), InvalidParameterError);

    ProcessSpec c1;
    c1.kind = ProcessSpec::Kind::Concat1d;
    ProcessSpec q1;
    q1.kind = ProcessSpec::Kind::Mrw1d;
    q1.n = 1 << 10;
    q1.H = 0.6;
    q1.lambda2 = 0.01;
    ProcessSpec q2 = q1;
    q2.H = 0.75;
    c1.pieces = {q1, q2};
    const auto s = generate(c1, 5);
    CHECK(s.signal.size() == (1u << 11));
    const auto th = theory(c1);
    CHECK(th.eval(0.68) == doctest::Approx(0.71875).epsilon(1e-12));
}

TEST_CASE("theory peaks reach the dimension for the paper parameterizations") {
    CHECK(theory_levy(1.25).eval(0.5) == 1.0);
    const auto dwc = theory_dwc(0.45);
    CHECK(dwc.eval((dwc.h_min + dwc.h_max) / 2) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(theory_mrw(0.72, 0.08, 1).eval(0.76) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(theory_mrw(0.6, 0.01, 2).eval(0.605) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("process kind round trip") {
    for (const char* name :
         {"levy", "dwc", "dwc-thresholded", "mrw1d", "mrw2d", "concat1d",
          "concat2d"})
        CHECK(to_string(process_kind_from_string(name)) == name);
    CHECK_THROWS_AS(process_kind_from_string("brownian"),
                    InvalidParameterError);
}
