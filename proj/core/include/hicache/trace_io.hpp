#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hicache/trajectory.hpp"

namespace hicache {

enum class TraceFormat { Binary, Csv };

enum class BinaryDtype : unsigned char { F32 = 0, F64 = 1 };

/// Binary layout, little-endian:
///
///   offset 0   "HITR"
///   offset 4   u16 version (1)
///   offset 6   u8  dtype (0 = f32, 1 = f64)
///   offset 7   u8  reserved (0)
///   offset 8   u32 T
///   offset 12  u32 D
///   offset 16  T*D values, row-major, rows in timestep order T, T-1, ..., 1
inline constexpr std::size_t kTraceHeaderBytes = 16;
inline constexpr std::uint16_t kTraceVersion = 1;

/// CSV layout: header "t,f0,f1,...,f{D-1}", one row per step, shortest
/// round-trip decimals.
///
/// Binary traces carry implicit timesteps, so writing one requires
/// trajectory.has_canonical_times(). Output is written to a temporary file
/// and renamed into place.
void write_trace(const Trajectory& trajectory, const std::filesystem::path& path, TraceFormat format,
                 BinaryDtype dtype = BinaryDtype::F64);

/// Reads either format, detected from the first bytes. Throws FormatError with
/// a byte offset (binary) or line number (CSV).
Trajectory read_trace(const std::filesystem::path& path);

/// Same as write_trace/read_trace on in-memory buffers.
std::string encode_trace(const Trajectory& trajectory, TraceFormat format,
                         BinaryDtype dtype = BinaryDtype::F64);
Trajectory decode_trace(std::string_view bytes);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Writes `contents` to a sibling temporary and renames it over `path`, so a
/// failed write never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace hicache
