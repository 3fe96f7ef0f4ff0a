#include "mflift/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "mflift/errors.hpp"
#include "mflift/fft.hpp"
#include "mflift/gridfun.hpp"
#include "mflift/rng.hpp"

namespace mflift {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const char* msg) {
    if (!cond) throw InvalidParameterError(msg);
}

// Symmetric alpha-stable variate, unit scale (Chambers-Mallows-Stuck).
double sas_variate(Rng& rng, double alpha) {
    const double u = kPi * (rng.uniform() - 0.5);  // (-pi/2, pi/2)
    double wexp = rng.exponential();
    if (wexp <= 0.0) wexp = std::numeric_limits<double>::min();
    if (alpha == 1.0) return std::tan(u);
    const double su = std::sin(alpha * u);
    const double cu = std::cos(u);
    const double c2 = std::cos((1.0 - alpha) * u);
    return su / std::pow(cu, 1.0 / alpha) *
           std::pow(c2 / wexp, (1.0 - alpha) / alpha);
}

// Stationary Gaussian sample on [0, n) with covariance cov(lag) given on the
// doubled circulant grid; returns the first n values. Doubles the embedding
// once if the eigenvalues come out negative.
std::vector<double> circulant_gaussian_1d(
    std::size_t n, const std::function<double(double)>& cov, Rng& rng) {
    std::size_t m = 2 * n;
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<std::complex<double>> c(m);
        for (std::size_t t = 0; t < m; ++t) {
            const double lag = static_cast<double>(std::min(t, m - t));
            c[t] = cov(lag);
        }
        fft(c, false);
        double emin = 0.0, emax = 0.0;
        for (const auto& z : c) {
            emin = std::min(emin, z.real());
            emax = std::max(emax, z.real());
        }
        if (emin < -1e-9 * std::max(1.0, emax)) {
            m *= 2;
            continue;
        }
        std::vector<std::complex<double>> xi(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double a = rng.normal();
            const double b = rng.normal();
            const double e = std::max(0.0, c[k].real());
            xi[k] = std::sqrt(e) * std::complex<double>(a, b);
        }
        fft(xi, true);
        std::vector<double> out(n);
        const double scale = std::sqrt(static_cast<double>(m));
        for (std::size_t t = 0; t < n; ++t) out[t] = xi[t].real() * scale;
        return out;
    }
    throw InvalidInputError(
        "circulant embedding is not nonnegative definite after doubling");
}

std::vector<double> circulant_gaussian_2d(
    int rows, int cols, const std::function<double(double)>& cov, Rng& rng) {
    int mr = 2 * rows, mc = 2 * cols;
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<std::complex<double>> c(static_cast<std::size_t>(mr) * mc);
        for (int r = 0; r < mr; ++r) {
            const double dr = static_cast<double>(std::min(r, mr - r));
            for (int q = 0; q < mc; ++q) {
                const double dc = static_cast<double>(std::min(q, mc - q));
                c[static_cast<std::size_t>(r) * mc + q] =
                    cov(std::sqrt(dr * dr + dc * dc));
            }
        }
        fft2(c, mr, mc, false);
        double emin = 0.0, emax = 0.0;
        for (const auto& z : c) {
            emin = std::min(emin, z.real());
            emax = std::max(emax, z.real());
        }
        if (emin < -1e-9 * std::max(1.0, emax)) {
            mr *= 2;
            mc *= 2;
            continue;
        }
        std::vector<std::complex<double>> xi(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) {
            const double a = rng.normal();
            const double b = rng.normal();
            const double e = std::max(0.0, c[k].real());
            xi[k] = std::sqrt(e) * std::complex<double>(a, b);
        }
        fft2(xi, mr, mc, true);
        std::vector<double> out(static_cast<std::size_t>(rows) * cols);
        const double scale = std::sqrt(static_cast<double>(xi.size()));
        for (int r = 0; r < rows; ++r)
            for (int q = 0; q < cols; ++q)
                out[static_cast<std::size_t>(r) * cols + q] =
                    xi[static_cast<std::size_t>(r) * mc + q].real() * scale;
        return out;
    }
    throw InvalidInputError(
        "2D circulant embedding is not nonnegative definite after doubling");
}

double binary_entropy(double a) {
    if (a <= 0.0 || a >= 1.0) return 0.0;
    return -a * std::log2(a) - (1.0 - a) * std::log2(1.0 - a);
}

} // namespace

std::vector<double> gen_levy_brownian_mixed(std::size_t n, double alpha,
                                            std::uint64_t seed,
                                            double stable_amp,
                                            double brownian_amp) {
    require(alpha > 0.0 && alpha < 2.0, "levy: alpha must be in (0, 2)");
    require(n >= 2 && is_pow2(n), "levy: n must be a power of two");
    Rng rng(seed);
    std::vector<double> stable(n), brown(n);
    for (std::size_t i = 0; i < n; ++i) stable[i] = sas_variate(rng, alpha);
    for (std::size_t i = 0; i < n; ++i) brown[i] = rng.normal();
    std::vector<double> x(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += stable_amp * stable[i] + brownian_amp * brown[i];
        x[i] = acc;
    }
    return x;
}

std::vector<double> gen_levy_brownian(std::size_t n, double alpha,
                                      std::uint64_t seed) {
    return gen_levy_brownian_mixed(n, alpha, seed, 1.0, 1.0);
}

TheorySpectrum theory_levy(double alpha) {
    require(alpha > 0.0 && alpha < 2.0, "theory_levy: alpha must be in (0, 2)");
    TheorySpectrum t;
    t.dim = 1;
    t.h_min = 0.0;
    t.h_max = 0.5;
    t.eval = [alpha](double h) {
        if (std::abs(h - 0.5) <= 1e-12) return 1.0;
        if (h >= 0.0 && h < 0.5) return alpha * h;
        return kNegInfinity;
    };
    return t;
}

CoefficientPyramid gen_dwc(int depth, double w) {
    require(w > 0.0 && w < 1.0, "dwc: w must be in (0, 1)");
    require(depth >= 1, "dwc: depth must be >= 1");
    CoefficientPyramid pyr;
    pyr.dim = 1;
    pyr.norm = CoeffNormalization::L1Prescribed;
    std::vector<double> prev{1.0};
    std::vector<CoefficientLevel> asc;
    for (int t = 1; t <= depth; ++t) {
        std::vector<double> cur(prev.size() * 2);
        for (std::size_t k = 0; k < prev.size(); ++k) {
            cur[2 * k] = w * prev[k];
            cur[2 * k + 1] = (1.0 - w) * prev[k];
        }
        CoefficientLevel lv;
        lv.scale = t;
        lv.rows = 1;
        lv.cols = static_cast<int>(cur.size());
        lv.bands.push_back(cur);
        asc.push_back(std::move(lv));
        prev = std::move(cur);
    }
    // store fine -> coarse
    for (auto it = asc.rbegin(); it != asc.rend(); ++it)
        pyr.levels.push_back(std::move(*it));
    return pyr;
}

CoefficientPyramid threshold_dwc(const CoefficientPyramid& pyramid,
                                 double theta) {
    require(theta > 0.0, "threshold_dwc: theta must be > 0");
    CoefficientPyramid out = pyramid;
    for (auto& lv : out.levels) {
        const double cut = std::exp2(-theta * lv.scale);
        for (auto& band : lv.bands)
            for (auto& v : band)
                if (std::abs(v) < cut) v = 0.0;
    }
    return out;
}

TheorySpectrum theory_dwc(double w) {
    require(w > 0.0 && w < 1.0, "theory_dwc: w must be in (0, 1)");
    TheorySpectrum t;
    t.dim = 1;
    const double hw = -std::log2(w);
    const double h1w = -std::log2(1.0 - w);
    t.h_min = std::min(hw, h1w);
    t.h_max = std::max(hw, h1w);
    if (w == 0.5) {
        t.degenerate = true;
        t.eval = [](double h) {
            return std::abs(h - 1.0) <= 1e-12 ? 1.0 : kNegInfinity;
        };
        return t;
    }
    const double lo = t.h_min, hi = t.h_max;
    const double b = std::log2(1.0 - w);
    const double denom = std::log2(1.0 - w) - std::log2(w);
    t.eval = [lo, hi, b, denom](double h) {
        if (h < lo || h > hi) return kNegInfinity;
        const double a = (h + b) / denom;
        return binary_entropy(a);
    };
    return t;
}

TheorySpectrum theory_dwc_thresholded(double w, double theta) {
    require(theta > 0.0, "theory_dwc_thresholded: theta must be > 0");
    TheorySpectrum base = theory_dwc(w);
    if (theta >= base.h_max || base.degenerate) return base;
    require(theta > base.h_min,
            "theory_dwc_thresholded: theta below the minimal exponent "
            "degenerates the cascade");
    // Increasing remap of the kept branch [theta, h_max]: exponents above the
    // threshold stretch to omega(u) = theta (u + b)/(theta + b), b = log2(1-w)
    // for w < 1/2 (the branch cut uses the endpoint reaching 0 at u = -b).
    const double b = w < 0.5 ? std::log2(1.0 - w) : std::log2(w);
    const double denom = theta + b;
    const TheorySpectrum inner = base;
    TheorySpectrum t;
    t.dim = 1;
    t.h_min = base.h_min;
    const double omega_hmax =
        denom > 0 ? theta * (base.h_max + b) / denom : base.h_max;
    t.h_max = std::max(base.h_max, omega_hmax);
    const double th = theta;
    t.eval = [inner, th, b, denom](double h) {
        double d1 = inner.eval(h);
        double d2 = kNegInfinity;
        if (denom > 0 && h >= th) {
            const double u = h * denom / th - b;  // omega^{-1}(h)
            d2 = inner.eval(u);
        }
        return std::max(d1, d2);
    };
    return t;
}

namespace {

// Spectral fractional integration of order s on the n-circle: multiply the
// DFT by |2 sin(pi k / n)|^{-s}, zeroing the DC bin.
void fractional_integrate_1d(std::vector<double>& x, double s) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = x[i];
    fft(f, false);
    f[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double w = 2.0 * std::sin(kPi * static_cast<double>(k) /
                                        static_cast<double>(n));
        f[k] *= std::pow(w, -s);
    }
    fft(f, true);
    for (std::size_t i = 0; i < n; ++i) x[i] = f[i].real();
}

void fractional_integrate_2d(std::vector<double>& x, int rows, int cols,
                             double s) {
    std::vector<std::complex<double>> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) f[i] = x[i];
    fft2(f, rows, cols, false);
    for (int r = 0; r < rows; ++r) {
        const double wr = 2.0 * std::sin(kPi * r / rows);
        for (int c = 0; c < cols; ++c) {
            const double wc = 2.0 * std::sin(kPi * c / cols);
            const double w2 = wr * wr + wc * wc;
            auto& z = f[static_cast<std::size_t>(r) * cols + c];
            if (w2 == 0.0)
                z = 0.0;
            else
                z *= std::pow(w2, -0.5 * s);
        }
    }
    fft2(f, rows, cols, true);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = f[i].real();
}

} // namespace

std::vector<double> gen_mrw1d(std::size_t n, double H, double lambda2,
                              std::uint64_t seed, double integral_scale) {
    require(H > 0.0 && H < 1.0, "mrw: H must be in (0, 1)");
    require(lambda2 > 0.0, "mrw: lambda2 must be > 0");
    require(n >= 16 && is_pow2(n), "mrw: n must be a power of two >= 16");
    const double L =
        integral_scale > 0.0 ? integral_scale : static_cast<double>(n) / 8.0;
    Rng rng(seed);
    auto cov = [lambda2, L](double lag) {
        return lambda2 * std::max(0.0, std::log(L / (lag + 1.0)));
    };
    std::vector<double> omega = circulant_gaussian_1d(n, cov, rng);
    const double mean = -lambda2 * std::log(L);
    // Correlated Gaussian increments first (spectral fractional integration
    // of white noise to covariance decay ~ lag^{2H-2}), then the log-normal
    // modulation, then the cumulative sum. Modulating before the integration
    // would leave the second-order scaling at 2H instead of 2H - lambda2:
    // the modulated white noise is uncorrelated, so a linear filter cannot
    // recover the cascade correction.
    std::vector<double> incr(n);
    for (std::size_t i = 0; i < n; ++i) incr[i] = rng.normal();
    fractional_integrate_1d(incr, H - 0.5);
    for (std::size_t i = 0; i < n; ++i)
        incr[i] *= std::exp(omega[i] + mean);
    std::vector<double> x(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += incr[i];
        x[i] = acc;
    }
    return x;
}

Image gen_mrw2d(int rows, int cols, double H, double lambda2,
                std::uint64_t seed, double integral_scale) {
    require(H > 0.0 && H < 1.0, "mrw2d: H must be in (0, 1)");
    require(lambda2 > 0.0, "mrw2d: lambda2 must be > 0");
    require(rows >= 16 && cols >= 16 && is_pow2(static_cast<std::size_t>(rows)) &&
                is_pow2(static_cast<std::size_t>(cols)),
            "mrw2d: rows and cols must be powers of two >= 16");
    const double L = integral_scale > 0.0
                         ? integral_scale
                         : static_cast<double>(std::min(rows, cols)) / 8.0;
    Rng rng(seed);
    auto cov = [lambda2, L](double lag) {
        return lambda2 * std::max(0.0, std::log(L / (lag + 1.0)));
    };
    std::vector<double> omega = circulant_gaussian_2d(rows, cols, cov, rng);
    const double mean = -lambda2 * std::log(L);
    // Same ordering as 1D: correlated Gaussian texture (order H, covariance
    // ~ r^{2H-2}), log-normal modulation, then one full integration order.
    std::vector<double> field(omega.size());
    for (std::size_t i = 0; i < field.size(); ++i) field[i] = rng.normal();
    fractional_integrate_2d(field, rows, cols, H);
    for (std::size_t i = 0; i < field.size(); ++i)
        field[i] *= std::exp(omega[i] + mean);
    fractional_integrate_2d(field, rows, cols, 1.0);
    Image img;
    img.rows = rows;
    img.cols = cols;
    img.pix = std::move(field);
    return img;
}

TheorySpectrum theory_mrw(double H, double lambda2, int dim) {
    require(H > 0.0 && H < 1.0, "theory_mrw: H must be in (0, 1)");
    require(lambda2 > 0.0, "theory_mrw: lambda2 must be > 0");
    require(dim == 1 || dim == 2, "theory_mrw: dim must be 1 or 2");
    TheorySpectrum t;
    t.dim = dim;
    const double c1 = H + lambda2 / 2.0;
    const double half_width = std::sqrt(2.0 * lambda2 * dim);
    t.h_min = c1 - half_width;
    t.h_max = c1 + half_width;
    t.eval = [dim, c1, lambda2](double h) {
        const double u = h - c1;
        return dim - u * u / (2.0 * lambda2);
    };
    return t;
}

TheorySpectrum theory_sup(const TheorySpectrum& a, const TheorySpectrum& b) {
    if (a.dim != b.dim)
        throw InvalidInputError("theory_sup: dimension mismatch");
    TheorySpectrum t;
    t.dim = a.dim;
    t.h_min = std::min(a.h_min, b.h_min);
    t.h_max = std::max(a.h_max, b.h_max);
    t.degenerate = a.degenerate && b.degenerate;
    const auto ea = a.eval, eb = b.eval;
    t.eval = [ea, eb](double h) { return std::max(ea(h), eb(h)); };
    return t;
}

ProcessSpec::Kind process_kind_from_string(const std::string& name) {
    if (name == "levy") return ProcessSpec::Kind::LevyBrownian;
    if (name == "dwc") return ProcessSpec::Kind::Dwc;
    if (name == "dwc-thresholded" || name == "dwc_thresholded")
        return ProcessSpec::Kind::DwcThresholded;
    if (name == "mrw1d") return ProcessSpec::Kind::Mrw1d;
    if (name == "mrw2d") return ProcessSpec::Kind::Mrw2d;
    if (name == "concat1d") return ProcessSpec::Kind::Concat1d;
    if (name == "concat2d") return ProcessSpec::Kind::Concat2d;
    throw InvalidParameterError("unknown process kind: " + name);
}

std::string to_string(ProcessSpec::Kind kind) {
    switch (kind) {
        case ProcessSpec::Kind::LevyBrownian: return "levy";
        case ProcessSpec::Kind::Dwc: return "dwc";
        case ProcessSpec::Kind::DwcThresholded: return "dwc-thresholded";
        case ProcessSpec::Kind::Mrw1d: return "mrw1d";
        case ProcessSpec::Kind::Mrw2d: return "mrw2d";
        case ProcessSpec::Kind::Concat1d: return "concat1d";
        case ProcessSpec::Kind::Concat2d: return "concat2d";
    }
    return "unknown";
}

Realization generate(const ProcessSpec& spec, std::uint64_t seed) {
    Realization r;
    switch (spec.kind) {
        case ProcessSpec::Kind::LevyBrownian:
            r.dim = 1;
            r.signal = gen_levy_brownian(spec.n, spec.alpha, seed);
            return r;
        case ProcessSpec::Kind::Dwc:
            r.dim = 1;
            r.is_pyramid = true;
            r.pyramid = gen_dwc(spec.depth, spec.w);
            return r;
        case ProcessSpec::Kind::DwcThresholded:
            r.dim = 1;
            r.is_pyramid = true;
            r.pyramid = threshold_dwc(gen_dwc(spec.depth, spec.w), spec.theta);
            return r;
        case ProcessSpec::Kind::Mrw1d:
            r.dim = 1;
            r.signal = gen_mrw1d(spec.n, spec.H, spec.lambda2, seed);
            return r;
        case ProcessSpec::Kind::Mrw2d:
            r.dim = 2;
            r.image = gen_mrw2d(spec.rows, spec.cols, spec.H, spec.lambda2, seed);
            return r;
        case ProcessSpec::Kind::Concat1d: {
            if (spec.pieces.size() < 2)
                throw InvalidParameterError("concat1d: need >= 2 pieces");
            r.dim = 1;
            for (std::size_t p = 0; p < spec.pieces.size(); ++p) {
                const Realization piece =
                    generate(spec.pieces[p], subseed(seed, p));
                if (piece.dim != 1 || piece.is_pyramid)
                    throw InvalidInputError("concat1d: pieces must be 1D signals");
                r.signal.insert(r.signal.end(), piece.signal.begin(),
                                piece.signal.end());
            }
            return r;
        }
        case ProcessSpec::Kind::Concat2d: {
            if (spec.pieces.size() < 2)
                throw InvalidParameterError("concat2d: need >= 2 pieces");
            r.dim = 2;
            std::vector<Image> imgs;
            int rows = -1, total_cols = 0;
            for (std::size_t p = 0; p < spec.pieces.size(); ++p) {
                Realization piece = generate(spec.pieces[p], subseed(seed, p));
                if (piece.dim != 2)
                    throw InvalidInputError("concat2d: pieces must be images");
                if (rows < 0) rows = piece.image.rows;
                if (piece.image.rows != rows)
                    throw InvalidInputError(
                        "concat2d: pieces must share the row count");
                total_cols += piece.image.cols;
                imgs.push_back(std::move(piece.image));
            }
            r.image.rows = rows;
            r.image.cols = total_cols;
            r.image.pix.resize(static_cast<std::size_t>(rows) * total_cols);
            int col0 = 0;
            for (const auto& im : imgs) {
                for (int rr = 0; rr < rows; ++rr)
                    std::copy(im.pix.begin() +
                                  static_cast<std::ptrdiff_t>(rr) * im.cols,
                              im.pix.begin() +
                                  static_cast<std::ptrdiff_t>(rr + 1) * im.cols,
                              r.image.pix.begin() +
                                  static_cast<std::ptrdiff_t>(rr) * total_cols +
                                  col0);
                col0 += im.cols;
            }
            return r;
        }
    }
    throw InvalidParameterError("generate: unknown process kind");
}

TheorySpectrum theory(const ProcessSpec& spec) {
    switch (spec.kind) {
        case ProcessSpec::Kind::LevyBrownian: return theory_levy(spec.alpha);
        case ProcessSpec::Kind::Dwc: return theory_dwc(spec.w);
        case ProcessSpec::Kind::DwcThresholded:
            return theory_dwc_thresholded(spec.w, spec.theta);
        case ProcessSpec::Kind::Mrw1d: return theory_mrw(spec.H, spec.lambda2, 1);
        case ProcessSpec::Kind::Mrw2d: return theory_mrw(spec.H, spec.lambda2, 2);
        case ProcessSpec::Kind::Concat1d:
        case ProcessSpec::Kind::Concat2d: {
            if (spec.pieces.size() < 2)
                throw InvalidParameterError("concat: need >= 2 pieces");
            TheorySpectrum t = theory(spec.pieces[0]);
            for (std::size_t p = 1; p < spec.pieces.size(); ++p)
                t = theory_sup(t, theory(spec.pieces[p]));
            return t;
        }
    }
    throw InvalidParameterError("theory: unknown process kind");
}

} // namespace mflift
