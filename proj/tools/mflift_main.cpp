// mflift command-line frontend: synthesis, analysis and Monte Carlo runs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mflift/analysis.hpp"
#include "mflift/errors.hpp"
#include "mflift/harness.hpp"
#include "mflift/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mflift;

namespace {

#ifndef MFLIFT_VERSION
#define MFLIFT_VERSION "0.0.0"
#endif

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

json curve_to_json(const SpectrumCurve& s) {
    json j;
    j["estimator"] = s.estimator;
    j["d"] = s.dim;
    j["params"] = {{"gamma", s.gamma},
                   {"delta", s.delta},
                   {"q_range", {s.q_min, s.q_max}},
                   {"j1", s.j1},
                   {"j2", s.j2},
                   {"nvm", s.nvm}};
    json hs = json::array(), ds = json::array();
    for (std::size_t i = 0; i < s.curve.size(); ++i) {
        hs.push_back(s.curve.h(i));
        ds.push_back(finite_or_null(s.curve.values[i]));
    }
    j["h"] = std::move(hs);
    j["D"] = std::move(ds);
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

void write_logscale_csv(const fs::path& path,
                        const std::vector<LogscaleEntry>& entries) {
    std::string text = "q,gamma,delta,j,log2_sg,fit,r2\n";
    for (const auto& e : entries) {
        for (std::size_t i = 0; i < e.scales.size(); ++i) {
            const double fit =
                e.intercept + e.slope * -static_cast<double>(e.scales[i]);
            text += format_double(e.q) + "," + format_double(e.gamma) + "," +
                    format_double(e.delta) + "," + std::to_string(e.scales[i]) +
                    "," + format_double(e.log2_sg[i]) + "," +
                    format_double(fit) + "," + format_double(e.r2) + "\n";
        }
    }
    write_text(path, text);
}

struct ManifestBuilder {
    json m;
    std::vector<std::string> outputs;

    ManifestBuilder(const std::string& command) {
        m["tool"] = "mflift";
        m["version"] = MFLIFT_VERSION;
        m["command"] = command;
        m["timestamp"] = utc_now();
        m["inputs"] = json::array();
    }
    void add_input(const std::string& path) {
        m["inputs"].push_back({{"path", path}, {"sha256", sha256_file(path)}});
    }
    void add_output(const std::string& name) { outputs.push_back(name); }
    void write(const fs::path& dir) {
        m["outputs"] = outputs;
        write_text(dir / "manifest.json", m.dump(2) + "\n");
    }
};

json analysis_config_json(const AnalysisConfig& c) {
    json j;
    j["nvm"] = c.nvm;
    j["levels"] = c.levels;
    j["j1"] = c.j1;
    j["j2"] = c.j2;
    j["weighted"] = c.weighted;
    j["mask_wrapped"] = c.mask_wrapped;
    j["q_grid"] = c.q_grid;
    j["gammas"] = c.gammas;
    j["deltas"] = c.deltas;
    j["g_shape"] =
        c.g_shape == GFunction::Shape::Parabola ? "parabola" : "abs";
    j["h"] = {c.h_lo, c.h_hi, c.h_step};
    return j;
}

// ---- analyze ----

struct AnalyzeArgs {
    std::string input;
    std::string out_dir;
    std::string shape;       // RxC for raw 2D input
    int dim = 0;             // 0 = infer
    bool pyramid = false;    // input is a (scale,k,value) CSV pyramid
    std::string q = "-4:0.25:4";
    std::string gammas = "0,5,10,100,200,500";
    std::string deltas = "auto";
    std::string h;
    std::string gshape = "parabola";
    AnalysisConfig cfg;
};

CoefficientPyramid read_pyramid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::map<int, std::map<long, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 's') continue;  // header
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') ||
            !std::getline(ss, c))
            throw IoError(path + ": expected scale,k,value rows");
        rows[std::stoi(a)][std::stol(b)] = std::stod(c);
    }
    if (rows.empty()) throw IoError(path + ": empty pyramid");
    CoefficientPyramid pyr;
    pyr.dim = 1;
    pyr.norm = CoeffNormalization::L1Prescribed;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        CoefficientLevel lv;
        lv.scale = it->first;
        lv.rows = 1;
        lv.cols = static_cast<int>(it->second.size());
        std::vector<double> band(it->second.size(), 0.0);
        for (const auto& [k, v] : it->second) {
            if (k < 0 || k >= static_cast<long>(band.size()))
                throw IoError(path + ": non-contiguous pyramid indices");
            band[static_cast<std::size_t>(k)] = v;
        }
        lv.bands.push_back(std::move(band));
        pyr.levels.push_back(std::move(lv));
    }
    return pyr;
}

int run_analyze(AnalyzeArgs& a) {
    a.cfg.q_grid = parse_range(a.q);
    a.cfg.gammas = parse_list(a.gammas);
    if (a.deltas != "auto") a.cfg.deltas = parse_list(a.deltas);
    if (!a.h.empty()) {
        const auto grid = parse_range(a.h);
        a.cfg.h_lo = grid.front();
        a.cfg.h_hi = grid.back();
        if (grid.size() > 1) a.cfg.h_step = grid[1] - grid[0];
    }
    if (a.gshape == "parabola")
        a.cfg.g_shape = GFunction::Shape::Parabola;
    else if (a.gshape == "abs")
        a.cfg.g_shape = GFunction::Shape::AbsoluteValue;
    else
        throw InvalidParameterError("--gshape must be parabola or abs");

    fs::create_directories(a.out_dir);
    ManifestBuilder manifest("analyze");
    manifest.add_input(a.input);

    AnalysisResult res;
    const std::string ext = fs::path(a.input).extension().string();
    if (a.pyramid) {
        res = analyze_pyramid(read_pyramid_csv(a.input), a.cfg);
    } else if (ext == ".pgm") {
        Image img = read_pgm(a.input);
        if (a.dim == 1)
            throw InvalidParameterError("--dim 1 conflicts with PGM input");
        // truncate to a transform-compatible multiple of 2^levels
        const WaveletFilter f = daubechies_filter(a.cfg.nvm);
        int levels = a.cfg.levels > 0
                         ? a.cfg.levels
                         : default_levels(img.rows, img.cols, f);
        if (levels < 1) throw InsufficientLengthError("image too small");
        const int mult = 1 << levels;
        const int r = (img.rows / mult) * mult, c = (img.cols / mult) * mult;
        if (r < mult || c < mult)
            throw InsufficientLengthError("image too small for transform");
        if (r != img.rows || c != img.cols) {
            Image trunc;
            trunc.rows = r;
            trunc.cols = c;
            trunc.pix.resize(static_cast<std::size_t>(r) * c);
            for (int i = 0; i < r; ++i)
                std::copy(img.pix.begin() + static_cast<std::ptrdiff_t>(i) * img.cols,
                          img.pix.begin() + static_cast<std::ptrdiff_t>(i) * img.cols + c,
                          trunc.pix.begin() + static_cast<std::ptrdiff_t>(i) * c);
            img = std::move(trunc);
            manifest.m["truncated_shape"] = {r, c};
        }
        AnalysisConfig cfg = a.cfg;
        cfg.levels = levels;
        res = analyze_image(img.pix, img.rows, img.cols, cfg);
    } else if (!a.shape.empty()) {
        const auto x = a.shape.find('x');
        if (x == std::string::npos)
            throw InvalidParameterError("--shape must be RxC");
        const int r = std::stoi(a.shape.substr(0, x));
        const int c = std::stoi(a.shape.substr(x + 1));
        std::vector<double> data = read_f64(a.input);
        if (data.size() != static_cast<std::size_t>(r) * c)
            throw IoError("raw input size does not match --shape");
        res = analyze_image(data, r, c, a.cfg);
    } else {
        std::vector<double> sig = ext == ".f64" || ext == ".bin"
                                      ? read_f64(a.input)
                                      : read_csv_1d(a.input);
        if (a.dim == 2)
            throw InvalidParameterError("--dim 2 requires PGM or --shape");
        const WaveletFilter f = daubechies_filter(a.cfg.nvm);
        int levels = a.cfg.levels > 0
                         ? a.cfg.levels
                         : default_levels(static_cast<int>(sig.size()), f);
        if (levels < 1) throw InsufficientLengthError("signal too short");
        const std::size_t mult = std::size_t{1} << levels;
        const std::size_t keep = (sig.size() / mult) * mult;
        if (keep < mult) throw InsufficientLengthError("signal too short");
        if (keep != sig.size()) {
            sig.resize(keep);
            manifest.m["truncated_length"] = keep;
        }
        AnalysisConfig cfg = a.cfg;
        cfg.levels = levels;
        res = analyze_signal(sig, cfg);
    }

    json spectra;
    spectra["centering"] = {{"c10", res.centering.c10},
                            {"h_mode", res.centering.h_mode},
                            {"j1", res.centering.j1},
                            {"j2", res.centering.j2}};
    json curves = json::array();
    curves.push_back(curve_to_json(res.legendre));
    curves.push_back(curve_to_json(res.envelope));
    for (const auto& m : res.members) curves.push_back(curve_to_json(m));
    spectra["spectra"] = std::move(curves);
    write_text(fs::path(a.out_dir) / "spectra.json", spectra.dump(2) + "\n");
    manifest.add_output("spectra.json");

    std::string zeta_csv = "q,zeta,se,r2\n";
    for (std::size_t i = 0; i < res.zeta.q_grid.size(); ++i)
        zeta_csv += format_double(res.zeta.q_grid[i]) + "," +
                    format_double(res.zeta.zeta[i]) + "," +
                    format_double(res.zeta.slope_se[i]) + "," +
                    format_double(res.zeta.r2[i]) + "\n";
    write_text(fs::path(a.out_dir) / "zeta.csv", zeta_csv);
    manifest.add_output("zeta.csv");

    write_logscale_csv(fs::path(a.out_dir) / "logscale.csv", res.logscale);
    manifest.add_output("logscale.csv");

    manifest.m["analysis"] = analysis_config_json(a.cfg);
    manifest.m["resolved"] = {{"j1", res.j1},
                              {"j2", res.j2},
                              {"levels", res.levels},
                              {"dim", res.dim}};
    manifest.write(a.out_dir);
    return kExitOk;
}

// ---- synth ----

struct SynthArgs {
    std::string process;
    std::string out_dir;
    std::uint64_t seed = 42;
    double alpha = 1.25, w = 0.45, theta = 1.0, H = 0.72, H2 = 0.75,
           lambda2 = 0.08;
    std::size_t n = 1 << 16;
    int rows = 512, cols = 512, depth = 14;
    bool pgm = false;
};

ProcessSpec spec_from_synth_args(const SynthArgs& s) {
    ProcessSpec spec;
    if (s.process == "concat-mrw") {
        spec.kind = ProcessSpec::Kind::Concat1d;
        ProcessSpec p1, p2;
        p1.kind = p2.kind = ProcessSpec::Kind::Mrw1d;
        p1.H = s.H;
        p2.H = s.H2;
        p1.lambda2 = p2.lambda2 = s.lambda2;
        p1.n = p2.n = s.n;
        spec.pieces = {p1, p2};
        return spec;
    }
    if (s.process == "concat-mrw2d") {
        spec.kind = ProcessSpec::Kind::Concat2d;
        ProcessSpec p1, p2;
        p1.kind = p2.kind = ProcessSpec::Kind::Mrw2d;
        p1.H = s.H;
        p2.H = s.H2;
        p1.lambda2 = p2.lambda2 = s.lambda2;
        p1.rows = p2.rows = s.rows;
        p1.cols = p2.cols = s.cols;
        spec.pieces = {p1, p2};
        return spec;
    }
    spec.kind = process_kind_from_string(s.process);
    spec.alpha = s.alpha;
    spec.w = s.w;
    spec.theta = s.theta;
    spec.H = s.H;
    spec.lambda2 = s.lambda2;
    spec.n = s.n;
    spec.rows = s.rows;
    spec.cols = s.cols;
    spec.depth = s.depth;
    return spec;
}

json theory_to_json(const TheorySpectrum& th, const std::string& process) {
    const double step = 1e-3;
    const double lo = std::floor((th.h_min - 0.2) / step) * step;
    const double hi = th.h_max + 0.2;
    json j;
    j["estimator"] = "theory";
    j["process"] = process;
    j["d"] = th.dim;
    j["degenerate"] = th.degenerate;
    json hs = json::array(), ds = json::array();
    for (double h = lo; h <= hi + step / 2; h += step) {
        hs.push_back(h);
        ds.push_back(finite_or_null(th.eval(h)));
    }
    j["h"] = std::move(hs);
    j["D"] = std::move(ds);
    return j;
}

int run_synth(SynthArgs& s) {
    const ProcessSpec spec = spec_from_synth_args(s);
    fs::create_directories(s.out_dir);
    ManifestBuilder manifest("synth");

    const Realization real = generate(spec, s.seed);
    const fs::path dir(s.out_dir);
    if (real.is_pyramid) {
        std::string text = "scale,k,value\n";
        for (auto it = real.pyramid.levels.rbegin();
             it != real.pyramid.levels.rend(); ++it)
            for (std::size_t k = 0; k < it->bands[0].size(); ++k)
                text += std::to_string(it->scale) + "," + std::to_string(k) +
                        "," + format_double(it->bands[0][k]) + "\n";
        write_text(dir / "pyramid.csv", text);
        manifest.add_output("pyramid.csv");
    } else if (real.dim == 1) {
        write_csv_1d((dir / "data.csv").string(), real.signal);
        manifest.add_output("data.csv");
    } else {
        write_f64((dir / "data.f64").string(), real.image.pix);
        manifest.add_output("data.f64");
        manifest.m["shape"] = {real.image.rows, real.image.cols};
        if (s.pgm) {
            write_pgm((dir / "data.pgm").string(), real.image);
            manifest.add_output("data.pgm");
        }
    }

    write_text(dir / "theory.json",
               theory_to_json(theory(spec), s.process).dump(2) + "\n");
    manifest.add_output("theory.json");

    manifest.m["seed"] = s.seed;
    manifest.m["process"] = s.process;
    manifest.m["params"] = {{"alpha", s.alpha}, {"w", s.w},
                            {"theta", s.theta}, {"H", s.H},
                            {"H2", s.H2},       {"lambda2", s.lambda2},
                            {"n", s.n},         {"rows", s.rows},
                            {"cols", s.cols},   {"depth", s.depth}};
    manifest.write(dir);
    return kExitOk;
}

// ---- mc ----

void write_aggregate_csv(const fs::path& path, const AggregateResult& agg,
                         const EstimatorAggregate& est) {
    std::string text = "h,mean,band_lo,band_hi,rmse,theory\n";
    for (std::size_t i = 0; i < agg.h_grid.size(); ++i) {
        text += format_double(agg.h_grid[i]) + "," +
                format_double(est.mean[i]) + "," +
                format_double(est.band_lo[i]) + "," +
                format_double(est.band_hi[i]) + "," +
                format_double(est.rmse[i]) + "," +
                format_double(agg.theory[i]) + "\n";
    }
    write_text(path, text);
}

int run_mc(const std::string& config_path, const std::string& out_dir,
           int threads) {
    ExperimentConfig cfg = parse_experiment_config(config_path);
    if (threads > 0) cfg.threads = threads;
    fs::create_directories(out_dir);
    ManifestBuilder manifest("mc");
    manifest.add_input(config_path);

    const AggregateResult agg = run_experiment(cfg);
    const fs::path dir(out_dir);
    write_aggregate_csv(dir / "legendre.csv", agg, agg.legendre);
    manifest.add_output("legendre.csv");
    write_aggregate_csv(dir / "envelope.csv", agg, agg.envelope);
    manifest.add_output("envelope.csv");
    if (!agg.logscale.empty()) {
        write_logscale_csv(dir / "logscale.csv", agg.logscale.front());
        manifest.add_output("logscale.csv");
    }
    manifest.m["n_ok"] = agg.n_ok;
    manifest.m["n_failed"] = agg.n_failed;
    manifest.m["failures"] = agg.failures;
    manifest.m["seed"] = cfg.seed;
    manifest.m["n_mc"] = cfg.n_mc;
    manifest.m["analysis"] = analysis_config_json(cfg.analysis);
    manifest.write(dir);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavelet-leader multifractal analysis with nonconcave "
                 "spectrum estimation"};
    app.set_version_flag("--version", MFLIFT_VERSION);
    app.require_subcommand(1);

    AnalyzeArgs aa;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "estimate multifractal spectra from data");
    analyze->add_option("--input", aa.input, "input file (csv/pgm/f64)")
        ->required();
    analyze->add_option("--out", aa.out_dir, "output directory")->required();
    analyze->add_option("--dim", aa.dim, "1 or 2 (inferred by default)");
    analyze->add_option("--shape", aa.shape, "RxC for raw f64 images");
    analyze->add_flag("--pyramid", aa.pyramid,
                      "input is a scale,k,value coefficient pyramid CSV");
    analyze->add_option("--nvm", aa.cfg.nvm, "Daubechies vanishing moments");
    analyze->add_option("--levels", aa.cfg.levels, "decomposition depth");
    analyze->add_option("--j1", aa.cfg.j1, "fit range start (scale label)");
    analyze->add_option("--j2", aa.cfg.j2, "fit range end (scale label)");
    analyze->add_flag("--weighted", aa.cfg.weighted,
                      "inverse-variance regression weights");
    analyze->add_flag("--mask-wrapped", aa.cfg.mask_wrapped,
                      "exclude leaders whose window wraps around");
    analyze->add_option("--q", aa.q, "q grid lo:step:hi");
    analyze->add_option("--gamma", aa.gammas, "comma list of curvatures");
    analyze->add_option("--delta", aa.deltas, "auto or comma list of shifts");
    analyze->add_option("--gshape", aa.gshape, "parabola or abs");
    analyze->add_option("--h", aa.h, "spectrum grid lo:step:hi");
    analyze->add_option("--threads", aa.cfg.threads, "worker cap");
    analyze->add_flag("--logscale-all", aa.cfg.logscale_all_tuples,
                      "logscale tables for every (q,gamma,delta)");

    SynthArgs sa;
    CLI::App* synth =
        app.add_subcommand("synth", "generate a synthetic process");
    synth
        ->add_option("--process", sa.process,
                     "levy|dwc|dwc-thresholded|mrw1d|mrw2d|concat-mrw|"
                     "concat-mrw2d")
        ->required();
    synth->add_option("--out", sa.out_dir, "output directory")->required();
    synth->add_option("--seed", sa.seed, "RNG seed");
    synth->add_option("--alpha", sa.alpha, "stable index (levy)");
    synth->add_option("--w", sa.w, "cascade weight (dwc)");
    synth->add_option("--theta", sa.theta, "threshold exponent (dwc)");
    synth->add_option("--H", sa.H, "Hurst-like index (mrw)");
    synth->add_option("--H2", sa.H2, "second piece H (concat)");
    synth->add_option("--lambda2", sa.lambda2, "intermittency (mrw)");
    synth->add_option("--n", sa.n, "sample count (1D)");
    synth->add_option("--rows", sa.rows, "image rows (2D)");
    synth->add_option("--cols", sa.cols, "image cols (2D)");
    synth->add_option("--depth", sa.depth, "cascade depth (dwc)");
    synth->add_flag("--pgm", sa.pgm, "also write a 16-bit PGM preview");

    std::string mc_config, mc_out;
    int mc_threads = 0;
    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo experiment");
    mc->add_option("--config", mc_config, "experiment config file")->required();
    mc->add_option("--out", mc_out, "output directory")->required();
    mc->add_option("--threads", mc_threads, "worker cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*analyze) return run_analyze(aa);
        if (*synth) return run_synth(sa);
        if (*mc) return run_mc(mc_config, mc_out, mc_threads);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InsufficientLengthError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
