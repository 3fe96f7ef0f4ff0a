#include "mflift/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mflift/errors.hpp"

namespace mflift {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_range(const std::string& text) {
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) return {std::stod(text)};
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw InvalidParameterError("range must be lo:step:hi, got " + text);
    const double lo = std::stod(text.substr(0, c1));
    const double step = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const double hi = std::stod(text.substr(c2 + 1));
    if (!(step > 0) || hi < lo)
        throw InvalidParameterError("bad range " + text);
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5));
    out.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        out.push_back(lo + step * static_cast<double>(i));
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw InvalidParameterError("empty list: " + text);
    return out;
}

std::vector<double> read_csv_1d(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<double> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        // Take the first comma-separated field per line.
        const auto comma = line.find(',');
        std::string field =
            comma == std::string::npos ? line : line.substr(0, comma);
        try {
            std::size_t used = 0;
            const double v = std::stod(field, &used);
            out.push_back(v);
        } catch (const std::exception&) {
            if (first) {  // tolerate a header line
                first = false;
                continue;
            }
            throw IoError("non-numeric value in " + path + ": " + field);
        }
        first = false;
    }
    if (out.empty()) throw IoError("no data in " + path);
    return out;
}

void write_csv_1d(const std::string& path, const std::vector<double>& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (double v : data) out << format_double(v) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

namespace {

int pgm_read_token(std::istream& in) {
    // skips whitespace and '#' comments
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string junk;
            std::getline(in, junk);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int v = -1;
    in >> v;
    return v;
}

} // namespace

Image read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P5") throw IoError(path + ": expected binary PGM (P5)");
    const int cols = pgm_read_token(in);
    const int rows = pgm_read_token(in);
    const int maxval = pgm_read_token(in);
    if (cols <= 0 || rows <= 0 || maxval <= 0 || maxval > 65535)
        throw IoError(path + ": bad PGM header");
    in.get();  // single whitespace after maxval
    Image img;
    img.rows = rows;
    img.cols = cols;
    img.pix.resize(static_cast<std::size_t>(rows) * cols);
    const std::size_t n = img.pix.size();
    if (maxval < 256) {
        std::vector<unsigned char> raw(n);
        in.read(reinterpret_cast<char*>(raw.data()),
                static_cast<std::streamsize>(n));
        if (!in) throw IoError(path + ": truncated PGM data");
        for (std::size_t i = 0; i < n; ++i)
            img.pix[i] = static_cast<double>(raw[i]);
    } else {
        std::vector<unsigned char> raw(2 * n);
        in.read(reinterpret_cast<char*>(raw.data()),
                static_cast<std::streamsize>(2 * n));
        if (!in) throw IoError(path + ": truncated PGM data");
        for (std::size_t i = 0; i < n; ++i)
            img.pix[i] = static_cast<double>((raw[2 * i] << 8) | raw[2 * i + 1]);
    }
    return img;
}

void write_pgm(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    double lo = img.pix.empty() ? 0.0 : img.pix[0], hi = lo;
    for (double v : img.pix) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    out << "P5\n" << img.cols << " " << img.rows << "\n65535\n";
    std::vector<unsigned char> raw(2 * img.pix.size());
    for (std::size_t i = 0; i < img.pix.size(); ++i) {
        const double f = (img.pix[i] - lo) / span;
        const auto q = static_cast<unsigned>(std::lround(f * 65535.0));
        raw[2 * i] = static_cast<unsigned char>(q >> 8);
        raw[2 * i + 1] = static_cast<unsigned char>(q & 0xFF);
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("write failed: " + path);
}

std::vector<double> read_f64(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw IoError("cannot open " + path);
    const std::streamsize bytes = in.tellg();
    if (bytes < 0 || bytes % 8 != 0)
        throw IoError(path + ": size is not a multiple of 8 bytes");
    in.seekg(0);
    std::vector<double> out(static_cast<std::size_t>(bytes) / 8);
    in.read(reinterpret_cast<char*>(out.data()), bytes);
    if (!in) throw IoError(path + ": short read");
    return out;
}

void write_f64(const std::string& path, const std::vector<double>& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * 8));
    if (!out) throw IoError("write failed: " + path);
}

// ---- SHA-256 (FIPS 180-4), compact implementation ----

namespace {

struct Sha256 {
    std::array<std::uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372,
                                      0xa54ff53a, 0x510e527f, 0x9b05688c,
                                      0x1f83d9ab, 0x5be0cd19};
    std::array<unsigned char, 64> buf{};
    std::uint64_t total = 0;
    std::size_t fill = 0;

    static std::uint32_t rotr(std::uint32_t x, int n) {
        return (x >> n) | (x << (32 - n));
    }

    void block(const unsigned char* p) {
        static constexpr std::uint32_t K[64] = {
            0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b,
            0x59f111f1, 0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01,
            0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7,
            0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc,
            0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152,
            0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
            0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
            0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
            0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819,
            0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116, 0x1e376c08,
            0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f,
            0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
            0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(p[4 * i]) << 24) |
                   (std::uint32_t(p[4 * i + 1]) << 16) |
                   (std::uint32_t(p[4 * i + 2]) << 8) |
                   std::uint32_t(p[4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            const std::uint32_t s0 =
                rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            const std::uint32_t s1 =
                rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        auto a = h;
        for (int i = 0; i < 64; ++i) {
            const std::uint32_t S1 =
                rotr(a[4], 6) ^ rotr(a[4], 11) ^ rotr(a[4], 25);
            const std::uint32_t ch = (a[4] & a[5]) ^ (~a[4] & a[6]);
            const std::uint32_t t1 = a[7] + S1 + ch + K[i] + w[i];
            const std::uint32_t S0 =
                rotr(a[0], 2) ^ rotr(a[0], 13) ^ rotr(a[0], 22);
            const std::uint32_t maj =
                (a[0] & a[1]) ^ (a[0] & a[2]) ^ (a[1] & a[2]);
            const std::uint32_t t2 = S0 + maj;
            a[7] = a[6];
            a[6] = a[5];
            a[5] = a[4];
            a[4] = a[3] + t1;
            a[3] = a[2];
            a[2] = a[1];
            a[1] = a[0];
            a[0] = t1 + t2;
        }
        for (int i = 0; i < 8; ++i) h[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(i)];
    }

    void update(const unsigned char* p, std::size_t len) {
        total += len;
        while (len > 0) {
            const std::size_t take = std::min(len, buf.size() - fill);
            std::memcpy(buf.data() + fill, p, take);
            fill += take;
            p += take;
            len -= take;
            if (fill == buf.size()) {
                block(buf.data());
                fill = 0;
            }
        }
    }

    std::string finish() {
        const std::uint64_t bits = total * 8;
        unsigned char pad = 0x80;
        update(&pad, 1);
        unsigned char zero = 0;
        while (fill != 56) update(&zero, 1);
        unsigned char len[8];
        for (int i = 0; i < 8; ++i)
            len[i] = static_cast<unsigned char>(bits >> (56 - 8 * i));
        update(len, 8);
        char out[65];
        for (int i = 0; i < 8; ++i)
            std::snprintf(out + 8 * i, 9, "%08x", h[static_cast<std::size_t>(i)]);
        return std::string(out, 64);
    }
};

} // namespace

std::string sha256_bytes(const void* data, std::size_t len) {
    Sha256 s;
    s.update(static_cast<const unsigned char*>(data), len);
    return s.finish();
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    Sha256 s;
    std::array<char, 65536> chunk;
    while (in) {
        in.read(chunk.data(), static_cast<std::streamsize>(chunk.size()));
        const std::streamsize got = in.gcount();
        if (got > 0)
            s.update(reinterpret_cast<const unsigned char*>(chunk.data()),
                     static_cast<std::size_t>(got));
    }
    return s.finish();
}

} // namespace mflift
