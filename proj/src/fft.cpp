#include "mflift/fft.hpp"

#include <algorithm>
#include <cmath>

#include "mflift/errors.hpp"

namespace mflift {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw InvalidParameterError("fft: size must be 2^k");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

void fft2(std::vector<std::complex<double>>& a, int rows, int cols,
          bool inverse) {
    if (rows < 1 || cols < 1 ||
        a.size() != static_cast<std::size_t>(rows) * cols)
        throw InvalidParameterError("fft2: size mismatch");
    std::vector<std::complex<double>> buf;
    buf.resize(static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r) {
        buf.assign(a.begin() + static_cast<std::ptrdiff_t>(r) * cols,
                   a.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols);
        fft(buf, inverse);
        std::copy(buf.begin(), buf.end(),
                  a.begin() + static_cast<std::ptrdiff_t>(r) * cols);
    }
    buf.resize(static_cast<std::size_t>(rows));
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r)
            buf[static_cast<std::size_t>(r)] =
                a[static_cast<std::size_t>(r) * cols + c];
        fft(buf, inverse);
        for (int r = 0; r < rows; ++r)
            a[static_cast<std::size_t>(r) * cols + c] =
                buf[static_cast<std::size_t>(r)];
    }
}

} // namespace mflift
