#include <doctest.h>

#include <cmath>

#include "../support/helpers.hpp"
#include "mflift/analysis.hpp"
#include "mflift/synth.hpp"

using namespace mflift;
using namespace mflift::test;

TEST_CASE("default fit range excludes the finest scales after a transform") {
    // 2^12 samples, db3 (6 taps): depth 9, labels 3..11
    std::vector<double> sig(1 << 12);
    Rng rng(4);
    for (auto& v : sig) v = rng.normal();
    AnalysisConfig cfg;
    cfg.nvm = 3;
    const auto res = analyze_signal(sig, cfg);
    CHECK(res.levels == 9);
    CHECK(res.j1 == 7);   // 2*ceil(log2 6)+1
    CHECK(res.j2 == 9);   // finest(11) - 2
}

TEST_CASE("prescribed pyramids fit everything above the two coarsest") {
    const auto pyr = gen_dwc(10, 0.45);
    AnalysisConfig cfg;
    const auto res = analyze_pyramid(pyr, cfg);
    CHECK(res.j1 == 3);
    CHECK(res.j2 == 10);
}

TEST_CASE("logscale fit is perfect on an exact power-law pyramid") {
    std::vector<std::vector<double>> levels;
    for (int j = 3; j <= 9; ++j)
        levels.emplace_back(static_cast<std::size_t>(1) << j,
                            std::exp2(1.0 - 0.7 * j));
    const auto lead = make_leaders_1d(std::move(levels), 3);
    const auto cent = estimate_centering(lead, 3, 9);
    const auto table = logscale_table(lead, cent, {-2.0, 0.0, 2.0}, {0.0, 100.0},
                                      {0.7}, GFunction::Shape::Parabola, 3, 9);
    REQUIRE(!table.empty());
    for (const auto& e : table) {
        CHECK(e.r2 == doctest::Approx(1.0).epsilon(1e-9));
        if (e.q == 0.0 && e.gamma == 0.0)
            for (double v : e.log2_sg) CHECK(v == 0.0);
    }
}

TEST_CASE("analysis of a small mrw is sane end to end") {
    const auto sig = gen_mrw1d(1 << 13, 0.72, 0.08, 421);
    AnalysisConfig cfg;
    cfg.nvm = 3;
    cfg.gammas = {0.0, 10.0, 100.0};
    cfg.deltas = {};  // auto
    const auto res = analyze_signal(sig, cfg);

    // centering should land near the spectrum mode 0.76
    CHECK(res.centering.h_mode > 0.4);
    CHECK(res.centering.h_mode < 1.1);

    // envelope never exceeds the classical spectrum
    for (std::size_t i = 0; i < res.envelope.curve.size(); ++i)
        CHECK(res.envelope.curve.values[i] <=
              res.legendre.curve.values[i] + 1e-12);

    // provenance tags
    CHECK(res.legendre.estimator == "legendre");
    CHECK(res.envelope.estimator == "envelope");
    REQUIRE(!res.members.empty());
    CHECK(res.members.front().estimator == "generalized");
    CHECK(res.logscale.size() > 0);

    // classical spectrum is concave and capped by d
    CHECK(res.legendre.max_finite() <= 1.0 + 1e-12);
    for (std::size_t i = 1; i + 1 < res.legendre.curve.size(); ++i)
        CHECK(res.legendre.curve.values[i - 1] -
                  2 * res.legendre.curve.values[i] +
                  res.legendre.curve.values[i + 1] <=
              1e-6);
}

TEST_CASE("realization dispatch matches the direct entry points") {
    ProcessSpec spec;
    spec.kind = ProcessSpec::Kind::Dwc;
    spec.depth = 9;
    spec.w = 0.45;
    const auto real = generate(spec, 1);
    REQUIRE(real.is_pyramid);
    AnalysisConfig cfg;
    const auto a = analyze_realization(real, cfg);
    const auto b = analyze_pyramid(real.pyramid, cfg);
    for (std::size_t i = 0; i < a.envelope.curve.size(); ++i)
        CHECK(a.envelope.curve.values[i] == b.envelope.curve.values[i]);
}
