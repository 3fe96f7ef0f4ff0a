#ifndef MFLIFT_IO_HPP
#define MFLIFT_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mflift/synth.hpp"

namespace mflift {

/// Shortest text form that round-trips a double exactly (17 significant
/// digits via %.17g); used for all numeric file output.
std::string format_double(double v);

/// "lo:step:hi" -> inclusive uniform grid; plain "x" -> {x}.
std::vector<double> parse_range(const std::string& text);
/// Comma-separated doubles.
std::vector<double> parse_list(const std::string& text);

// ---- 1D CSV (single column, optional non-numeric header line) ----
std::vector<double> read_csv_1d(const std::string& path);
void write_csv_1d(const std::string& path, const std::vector<double>& data);

// ---- PGM (P5, 8 or 16 bit) ----
Image read_pgm(const std::string& path);
/// Writes 16-bit PGM, affinely rescaling data to the full range (records
/// nothing; for quantization-free round trips use the f64 format).
void write_pgm(const std::string& path, const Image& img);

// ---- raw little-endian float64, row-major; shape travels in the manifest
// (or a --shape flag on ingestion) ----
std::vector<double> read_f64(const std::string& path);
void write_f64(const std::string& path, const std::vector<double>& data);

/// SHA-256 of a file's contents, lowercase hex. Throws IoError if unreadable.
std::string sha256_file(const std::string& path);
std::string sha256_bytes(const void* data, std::size_t len);

} // namespace mflift

#endif
