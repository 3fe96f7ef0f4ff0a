#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mflift/errors.hpp"
#include "mflift/harness.hpp"
#include "mflift/io.hpp"
#include "mflift/rng.hpp"

using namespace mflift;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("mflift_test_" + std::to_string(Rng(std::random_device{}())
                                                    .next_u64()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

} // namespace

TEST_CASE("format_double round-trips doubles exactly") {
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const double v = std::exp2(40.0 * (rng.uniform() - 0.5)) * rng.normal();
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("range and list parsing") {
    const auto r = parse_range("-4:0.25:4");
    REQUIRE(r.size() == 33);
    CHECK(r.front() == -4.0);
    CHECK(r.back() == 4.0);
    const auto one = parse_range("2.5");
    REQUIRE(one.size() == 1);
    CHECK(one[0] == 2.5);
    CHECK_THROWS_AS(parse_range("4:1:2"), InvalidParameterError);
    const auto l = parse_list("0,5,10,100");
    REQUIRE(l.size() == 4);
    CHECK(l[3] == 100.0);
}

TEST_CASE("csv and f64 round trips") {
    TempDir tmp;
    Rng rng(2);
    std::vector<double> data(257);
    for (auto& v : data) v = rng.normal() * 1e6;

    const auto csv = (tmp.path / "x.csv").string();
    write_csv_1d(csv, data);
    const auto back = read_csv_1d(csv);
    REQUIRE(back.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) CHECK(back[i] == data[i]);

    const auto bin = (tmp.path / "x.f64").string();
    write_f64(bin, data);
    const auto raw = read_f64(bin);
    REQUIRE(raw.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) CHECK(raw[i] == data[i]);
}

TEST_CASE("csv tolerates a header line and rejects garbage rows") {
    TempDir tmp;
    const auto path = (tmp.path / "h.csv").string();
    {
        std::ofstream out(path);
        out << "value\n1.5\n2.5\n";
    }
    const auto data = read_csv_1d(path);
    REQUIRE(data.size() == 2);
    CHECK(data[0] == 1.5);

    const auto bad = (tmp.path / "bad.csv").string();
    {
        std::ofstream out(bad);
        out << "1.0\nnot_a_number\n";
    }
    CHECK_THROWS_AS(read_csv_1d(bad), IoError);
    CHECK_THROWS_AS(read_csv_1d((tmp.path / "missing.csv").string()), IoError);
}

TEST_CASE("pgm writes 16-bit data spanning the full range") {
    TempDir tmp;
    Image img;
    img.rows = 3;
    img.cols = 4;
    img.pix = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    const auto path = (tmp.path / "img.pgm").string();
    write_pgm(path, img);
    const Image back = read_pgm(path);
    REQUIRE(back.rows == 3);
    REQUIRE(back.cols == 4);
    CHECK(back.pix.front() == 0.0);
    CHECK(back.pix.back() == 65535.0);
    // monotone order preserved by the affine rescale
    for (std::size_t i = 1; i < back.pix.size(); ++i)
        CHECK(back.pix[i] > back.pix[i - 1]);
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_bytes("abc", 3) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_bytes("", 0) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    TempDir tmp;
    const auto path = (tmp.path / "f.bin").string();
    {
        std::ofstream out(path, std::ios::binary);
        out << "abc";
    }
    CHECK(sha256_file(path) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("experiment config parsing") {
    TempDir tmp;
    const auto path = (tmp.path / "exp.cfg").string();
    {
        std::ofstream out(path);
        out << "# concatenated mrw experiment\n"
               "process = concat1d\n"
               "piece.1.process = mrw1d\n"
               "piece.1.H = 0.6\n"
               "piece.1.lambda2 = 0.01\n"
               "piece.1.n = 65536\n"
               "piece.2.process = mrw1d\n"
               "piece.2.H = 0.75\n"
               "piece.2.lambda2 = 0.01\n"
               "piece.2.n = 65536\n"
               "n_mc = 10\n"
               "seed = 7\n"
               "nvm = 3\n"
               "j1 = 7\n"
               "j2 = 12\n"
               "q = -4:0.25:4\n"
               "gammas = 0,5,10,100,200,500\n"
               "deltas = auto\n"
               "h = 0.3:0.005:1.1\n";
    }
    const auto cfg = parse_experiment_config(path);
    CHECK(cfg.process.kind == ProcessSpec::Kind::Concat1d);
    REQUIRE(cfg.process.pieces.size() == 2);
    CHECK(cfg.process.pieces[0].H == 0.6);
    CHECK(cfg.process.pieces[1].H == 0.75);
    CHECK(cfg.process.pieces[1].n == 65536);
    CHECK(cfg.n_mc == 10);
    CHECK(cfg.seed == 7);
    CHECK(cfg.analysis.j1 == 7);
    CHECK(cfg.analysis.q_grid.size() == 33);
    CHECK(cfg.analysis.h_lo == 0.3);
    CHECK(cfg.analysis.h_hi == 1.1);

    const auto bad = (tmp.path / "bad.cfg").string();
    {
        std::ofstream out(bad);
        out << "process mrw1d\n";
    }
    CHECK_THROWS_AS(parse_experiment_config(bad), IoError);
    CHECK_THROWS_AS(parse_experiment_config("/nonexistent/x.cfg"), IoError);
}
