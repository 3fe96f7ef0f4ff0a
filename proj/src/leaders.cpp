#include "mflift/leaders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mflift/errors.hpp"

namespace mflift {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double level_factor(const CoefficientPyramid& pyr, int scale) {
    if (pyr.norm == CoeffNormalization::L1Prescribed) return 1.0;
    return std::exp2(0.5 * pyr.dim * scale);
}

void check_structure(const CoefficientPyramid& pyr, int dim, const char* who) {
    if (pyr.empty())
        throw InvalidInputError(std::string(who) + ": empty pyramid");
    if (pyr.dim != dim)
        throw InvalidInputError(std::string(who) + ": pyramid dimension is " +
                                std::to_string(pyr.dim));
    const std::size_t nbands = dim == 1 ? 1 : 3;
    for (std::size_t i = 0; i < pyr.levels.size(); ++i) {
        const auto& lv = pyr.levels[i];
        if (lv.bands.size() != nbands)
            throw InvalidInputError(std::string(who) + ": wrong band count");
        for (const auto& b : lv.bands)
            if (b.size() != static_cast<std::size_t>(lv.rows) * lv.cols)
                throw InvalidInputError(std::string(who) +
                                        ": band size mismatch");
        if (i > 0) {
            const auto& finer = pyr.levels[i - 1];
            if (finer.scale != lv.scale + 1 || finer.cols != 2 * lv.cols ||
                (dim == 2 && finer.rows != 2 * lv.rows))
                throw InvalidInputError(
                    std::string(who) +
                    ": levels must be contiguous fine-to-coarse dyadic scales");
        }
    }
}

void finalize_level(LeaderLevel& lv, bool mask_wrapped, int dim) {
    lv.valid.assign(lv.value.size(), 1);
    for (std::size_t k = 0; k < lv.value.size(); ++k)
        if (!(lv.value[k] > 0.0)) lv.valid[k] = 0;
    if (mask_wrapped) {
        if (dim == 1) {
            if (lv.cols > 0) {
                lv.valid.front() = 0;
                lv.valid.back() = 0;
            }
        } else {
            for (int c = 0; c < lv.cols; ++c) {
                lv.valid[static_cast<std::size_t>(c)] = 0;
                lv.valid[static_cast<std::size_t>(lv.rows - 1) * lv.cols + c] = 0;
            }
            for (int r = 0; r < lv.rows; ++r) {
                lv.valid[static_cast<std::size_t>(r) * lv.cols] = 0;
                lv.valid[static_cast<std::size_t>(r) * lv.cols + lv.cols - 1] = 0;
            }
        }
    }
    lv.n_valid = 0;
    for (auto v : lv.valid) lv.n_valid += v;
}

} // namespace

int LeaderPyramid::finest_scale() const {
    return levels.empty() ? 0 : levels.front().scale;
}

int LeaderPyramid::coarsest_scale() const {
    return levels.empty() ? 0 : levels.back().scale;
}

LeaderPyramid leaders1d(const CoefficientPyramid& pyr,
                        const LeaderOptions& opts) {
    check_structure(pyr, 1, "leaders1d");
    LeaderPyramid out;
    out.dim = 1;
    out.levels.reserve(pyr.levels.size());

    std::vector<double> subtree_finer;
    for (std::size_t li = 0; li < pyr.levels.size(); ++li) {
        const auto& cl = pyr.levels[li];
        const int n = cl.cols;
        const double f = level_factor(pyr, cl.scale);
        std::vector<double> subtree(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            subtree[static_cast<std::size_t>(k)] =
                f * std::abs(cl.bands[0][static_cast<std::size_t>(k)]);
        if (li > 0) {
            for (int k = 0; k < n; ++k) {
                double m = subtree[static_cast<std::size_t>(k)];
                m = std::max(m, subtree_finer[static_cast<std::size_t>(2 * k)]);
                m = std::max(m,
                             subtree_finer[static_cast<std::size_t>(2 * k + 1)]);
                subtree[static_cast<std::size_t>(k)] = m;
            }
        }
        LeaderLevel lv;
        lv.scale = cl.scale;
        lv.rows = 1;
        lv.cols = n;
        lv.value.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const int km = (k == 0) ? n - 1 : k - 1;
            const int kp = (k == n - 1) ? 0 : k + 1;
            lv.value[static_cast<std::size_t>(k)] =
                std::max({subtree[static_cast<std::size_t>(km)],
                          subtree[static_cast<std::size_t>(k)],
                          subtree[static_cast<std::size_t>(kp)]});
        }
        finalize_level(lv, opts.mask_wrapped, 1);
        out.levels.push_back(std::move(lv));
        subtree_finer = std::move(subtree);
    }
    return out;
}

LeaderPyramid leaders2d(const CoefficientPyramid& pyr,
                        const LeaderOptions& opts) {
    check_structure(pyr, 2, "leaders2d");
    LeaderPyramid out;
    out.dim = 2;
    out.levels.reserve(pyr.levels.size());

    std::vector<double> subtree_finer;
    int finer_cols = 0;
    for (std::size_t li = 0; li < pyr.levels.size(); ++li) {
        const auto& cl = pyr.levels[li];
        const int nr = cl.rows, nc = cl.cols;
        const double f = level_factor(pyr, cl.scale);
        std::vector<double> subtree(static_cast<std::size_t>(nr) * nc);
        for (std::size_t k = 0; k < subtree.size(); ++k) {
            double m = std::abs(cl.bands[0][k]);
            m = std::max(m, std::abs(cl.bands[1][k]));
            m = std::max(m, std::abs(cl.bands[2][k]));
            subtree[k] = f * m;
        }
        if (li > 0) {
            for (int r = 0; r < nr; ++r) {
                const std::size_t base0 =
                    static_cast<std::size_t>(2 * r) * finer_cols;
                const std::size_t base1 = base0 + finer_cols;
                for (int c = 0; c < nc; ++c) {
                    double m = subtree[static_cast<std::size_t>(r) * nc + c];
                    m = std::max(m, subtree_finer[base0 + 2 * c]);
                    m = std::max(m, subtree_finer[base0 + 2 * c + 1]);
                    m = std::max(m, subtree_finer[base1 + 2 * c]);
                    m = std::max(m, subtree_finer[base1 + 2 * c + 1]);
                    subtree[static_cast<std::size_t>(r) * nc + c] = m;
                }
            }
        }
        LeaderLevel lv;
        lv.scale = cl.scale;
        lv.rows = nr;
        lv.cols = nc;
        lv.value.resize(subtree.size());
        for (int r = 0; r < nr; ++r) {
            const int rm = (r == 0) ? nr - 1 : r - 1;
            const int rp = (r == nr - 1) ? 0 : r + 1;
            for (int c = 0; c < nc; ++c) {
                const int cm = (c == 0) ? nc - 1 : c - 1;
                const int cp = (c == nc - 1) ? 0 : c + 1;
                double m = 0.0;
                for (int rr : {rm, r, rp})
                    for (int cc : {cm, c, cp})
                        m = std::max(
                            m, subtree[static_cast<std::size_t>(rr) * nc + cc]);
                lv.value[static_cast<std::size_t>(r) * nc + c] = m;
            }
        }
        finalize_level(lv, opts.mask_wrapped, 2);
        out.levels.push_back(std::move(lv));
        subtree_finer = std::move(subtree);
        finer_cols = nc;
    }
    return out;
}

LeaderPyramid compute_leaders(const CoefficientPyramid& pyr,
                              const LeaderOptions& opts) {
    return pyr.dim == 1 ? leaders1d(pyr, opts) : leaders2d(pyr, opts);
}

std::vector<SlopeLevel> log_slopes(const LeaderPyramid& leaders) {
    std::vector<SlopeLevel> out;
    out.reserve(leaders.levels.size());
    for (const auto& lv : leaders.levels) {
        SlopeLevel s;
        s.scale = lv.scale;
        s.rows = lv.rows;
        s.cols = lv.cols;
        s.valid = lv.valid;
        s.value.assign(lv.value.size(),
                       std::numeric_limits<double>::quiet_NaN());
        if (lv.scale == 0) {
            // log-slope undefined at scale 0; mask the whole level
            std::fill(s.valid.begin(), s.valid.end(), 0);
        } else {
            for (std::size_t k = 0; k < lv.value.size(); ++k)
                if (lv.valid[k])
                    s.value[k] = std::log2(lv.value[k]) / -lv.scale;
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<double> ld_histogram(const LeaderPyramid& leaders, int scale,
                                 double epsilon,
                                 const std::vector<double>& h_grid) {
    if (!(epsilon > 0.0))
        throw InvalidParameterError("ld_histogram: epsilon must be > 0");
    const LeaderLevel* lv = leaders.find(scale);
    if (lv == nullptr)
        throw InvalidRangeError("ld_histogram: scale " + std::to_string(scale) +
                                " not present in pyramid");
    std::vector<double> slopes;
    slopes.reserve(lv->value.size());
    for (std::size_t k = 0; k < lv->value.size(); ++k)
        if (lv->valid[k] && lv->scale != 0)
            slopes.push_back(std::log2(lv->value[k]) / -lv->scale);

    std::vector<double> out(h_grid.size(), kNegInf);
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        const double lo = h_grid[i] - epsilon, hi = h_grid[i] + epsilon;
        std::size_t count = 0;
        for (double s : slopes)
            if (s >= lo && s <= hi) ++count;
        if (count > 0)
            out[i] = std::log2(static_cast<double>(count)) / -scale;
    }
    return out;
}

} // namespace mflift
