#include "mflift/transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mflift/errors.hpp"

namespace mflift {

namespace {

int ceil_log2(int n) {
    int p = 0;
    while ((1 << p) < n) ++p;
    return p;
}

int floor_log2(int n) {
    int p = 0;
    while ((1 << (p + 1)) <= n) ++p;
    return p;
}

// One periodic analysis step: out_a[k] = sum_m h[m] x[(2k+m) mod n], same
// for out_d with the QMF highpass. n must be even.
void analysis_step(const double* x, int n, const std::vector<double>& h,
                   const std::vector<double>& g, double* out_a,
                   double* out_d) {
    const int m = static_cast<int>(h.size());
    const int half = n / 2;
    for (int k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        int idx = 2 * k;
        for (int t = 0; t < m; ++t) {
            const double xv = x[idx];
            a += h[t] * xv;
            d += g[t] * xv;
            if (++idx == n) idx = 0;
        }
        out_a[k] = a;
        out_d[k] = d;
    }
}

// Taint propagation matching analysis_step: an output is tainted when its
// support wraps past the end or touches a tainted input.
void taint_step(const std::vector<std::uint8_t>& in, int n, int filter_len,
                std::vector<std::uint8_t>& out) {
    const int half = n / 2;
    out.assign(static_cast<std::size_t>(half), 0);
    for (int k = 0; k < half; ++k) {
        std::uint8_t t = (2 * k + filter_len - 1 >= n) ? 1 : 0;
        if (!t && !in.empty()) {
            int idx = 2 * k;
            for (int s = 0; s < filter_len; ++s) {
                if (in[static_cast<std::size_t>(idx)]) {
                    t = 1;
                    break;
                }
                if (++idx == n) idx = 0;
            }
        }
        out[static_cast<std::size_t>(k)] = t;
    }
}

void check_1d_preconditions(std::size_t n, const WaveletFilter& filter,
                            int levels, const char* who) {
    if (levels < 1)
        throw InvalidParameterError(std::string(who) + ": levels must be >= 1");
    if (filter.length() < 2)
        throw UnsupportedFilterError(std::string(who) + ": filter too short");
    const std::size_t need =
        (std::size_t{1} << levels) * static_cast<std::size_t>(filter.length());
    if (n < need)
        throw InsufficientLengthError(
            std::string(who) + ": input length " + std::to_string(n) +
            " < 2^levels * filter length = " + std::to_string(need));
    if (n % (std::size_t{1} << levels) != 0)
        throw InsufficientLengthError(
            std::string(who) + ": input length " + std::to_string(n) +
            " not divisible by 2^" + std::to_string(levels));
}

} // namespace

int default_levels(int n, const WaveletFilter& filter) {
    return floor_log2(n) - ceil_log2(filter.length());
}

int default_levels(int rows, int cols, const WaveletFilter& filter) {
    return default_levels(std::min(rows, cols), filter);
}

CoefficientPyramid dwt1d(std::span<const double> signal,
                         const WaveletFilter& filter, int levels) {
    check_1d_preconditions(signal.size(), filter, levels, "dwt1d");
    const auto h = filter.lowpass;
    const auto g = filter.highpass();
    const int n = static_cast<int>(signal.size());
    const int label_ref = ceil_log2(n);

    CoefficientPyramid pyr;
    pyr.dim = 1;
    std::vector<double> cur(signal.begin(), signal.end());
    std::vector<std::uint8_t> taint;
    for (int oct = 1; oct <= levels; ++oct) {
        const int nc = static_cast<int>(cur.size());
        std::vector<double> a(nc / 2), d(nc / 2);
        analysis_step(cur.data(), nc, h, g, a.data(), d.data());
        std::vector<std::uint8_t> taint_next;
        taint_step(taint, nc, filter.length(), taint_next);
        CoefficientLevel lv;
        lv.scale = label_ref - oct;
        lv.rows = 1;
        lv.cols = nc / 2;
        lv.bands.push_back(std::move(d));
        lv.tainted = taint_next;
        pyr.levels.push_back(std::move(lv));
        cur = std::move(a);
        taint = std::move(taint_next);
    }
    pyr.approx = std::move(cur);
    pyr.approx_rows = 1;
    pyr.approx_cols = static_cast<int>(pyr.approx.size());
    return pyr;
}

std::vector<double> idwt1d(const CoefficientPyramid& pyramid,
                           const WaveletFilter& filter) {
    if (pyramid.dim != 1 || pyramid.empty())
        throw InvalidInputError("idwt1d: expected a nonempty 1D pyramid");
    const auto h = filter.lowpass;
    const auto g = filter.highpass();
    const int m = filter.length();

    std::vector<double> cur = pyramid.approx;
    // Levels are stored fine -> coarse; reconstruct coarse -> fine.
    for (auto it = pyramid.levels.rbegin(); it != pyramid.levels.rend(); ++it) {
        const auto& d = it->bands.at(0);
        const int half = static_cast<int>(d.size());
        if (static_cast<int>(cur.size()) != half)
            throw InvalidInputError("idwt1d: level sizes are inconsistent");
        const int n = 2 * half;
        std::vector<double> next(n, 0.0);
        for (int k = 0; k < half; ++k) {
            const double a = cur[k], dv = d[k];
            int idx = 2 * k;
            for (int t = 0; t < m; ++t) {
                next[idx] += a * h[t] + dv * g[t];
                if (++idx == n) idx = 0;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

CoefficientPyramid dwt2d(std::span<const double> image, int rows, int cols,
                         const WaveletFilter& filter, int levels) {
    if (rows < 1 || cols < 1 ||
        image.size() != static_cast<std::size_t>(rows) * cols)
        throw InvalidInputError("dwt2d: image size does not match rows*cols");
    check_1d_preconditions(static_cast<std::size_t>(rows), filter, levels,
                           "dwt2d");
    check_1d_preconditions(static_cast<std::size_t>(cols), filter, levels,
                           "dwt2d");
    const auto h = filter.lowpass;
    const auto g = filter.highpass();
    const int label_ref = ceil_log2(std::min(rows, cols));

    CoefficientPyramid pyr;
    pyr.dim = 2;
    std::vector<double> cur(image.begin(), image.end());
    std::vector<std::uint8_t> taint;
    int r = rows, c = cols;
    std::vector<double> lox, hix, col_in, col_a, col_d;
    std::vector<std::uint8_t> taint_x, taint_next, trow_in, trow_out, tcol_in,
        tcol_out;
    for (int oct = 1; oct <= levels; ++oct) {
        const int hc = c / 2, hr = r / 2;
        lox.assign(static_cast<std::size_t>(r) * hc, 0.0);
        hix.assign(static_cast<std::size_t>(r) * hc, 0.0);
        taint_x.assign(static_cast<std::size_t>(r) * hc, 0);
        for (int i = 0; i < r; ++i) {
            analysis_step(cur.data() + static_cast<std::size_t>(i) * c, c, h, g,
                          lox.data() + static_cast<std::size_t>(i) * hc,
                          hix.data() + static_cast<std::size_t>(i) * hc);
            if (taint.empty())
                trow_in.clear();
            else
                trow_in.assign(taint.begin() + static_cast<std::ptrdiff_t>(i) * c,
                               taint.begin() +
                                   static_cast<std::ptrdiff_t>(i + 1) * c);
            taint_step(trow_in, c, filter.length(), trow_out);
            std::copy(trow_out.begin(), trow_out.end(),
                      taint_x.begin() + static_cast<std::ptrdiff_t>(i) * hc);
        }
        CoefficientLevel lv;
        lv.scale = label_ref - oct;
        lv.rows = hr;
        lv.cols = hc;
        lv.bands.assign(3, std::vector<double>(
                               static_cast<std::size_t>(hr) * hc));
        std::vector<double> ll(static_cast<std::size_t>(hr) * hc);
        col_in.resize(static_cast<std::size_t>(r));
        col_a.resize(static_cast<std::size_t>(hr));
        col_d.resize(static_cast<std::size_t>(hr));
        for (int j = 0; j < hc; ++j) {
            // lowpass-x column -> LL and y-detail (LH)
            for (int i = 0; i < r; ++i)
                col_in[i] = lox[static_cast<std::size_t>(i) * hc + j];
            analysis_step(col_in.data(), r, h, g, col_a.data(), col_d.data());
            for (int i = 0; i < hr; ++i) {
                ll[static_cast<std::size_t>(i) * hc + j] = col_a[i];
                lv.bands[1][static_cast<std::size_t>(i) * hc + j] = col_d[i];
            }
            // highpass-x column -> x-detail (HL) and diagonal (HH)
            for (int i = 0; i < r; ++i)
                col_in[i] = hix[static_cast<std::size_t>(i) * hc + j];
            analysis_step(col_in.data(), r, h, g, col_a.data(), col_d.data());
            for (int i = 0; i < hr; ++i) {
                lv.bands[0][static_cast<std::size_t>(i) * hc + j] = col_a[i];
                lv.bands[2][static_cast<std::size_t>(i) * hc + j] = col_d[i];
            }
        }
        pyr.levels.push_back(std::move(lv));
        cur = std::move(ll);
        r = hr;
        c = hc;
    }
    pyr.approx = std::move(cur);
    pyr.approx_rows = r;
    pyr.approx_cols = c;
    return pyr;
}

} // namespace mflift
