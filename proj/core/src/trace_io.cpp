#include "hicache/trace_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>
#include <vector>

#include "hicache/error.hpp"

namespace hicache {

namespace {

constexpr char kMagic[4] = {'H', 'I', 'T', 'R'};

template <class U>
void put_le(std::string& out, U value) {
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
    }
}

template <class U>
U get_le(std::string_view bytes, std::size_t offset) {
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        value |= static_cast<U>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
    }
    return value;
}

std::string encode_binary(const Trajectory& traj, BinaryDtype dtype) {
    if (!traj.has_canonical_times()) {
        throw ConfigError("binary traces require timesteps T, T-1, ..., 1");
    }
    if (traj.size() > UINT32_MAX || traj.dim() > UINT32_MAX) {
        throw ConfigError("trajectory too large for a binary trace");
    }
    const std::size_t width = dtype == BinaryDtype::F64 ? 8 : 4;
    std::string out;
    out.reserve(kTraceHeaderBytes + traj.size() * traj.dim() * width);
    out.append(kMagic, 4);
    put_le<std::uint16_t>(out, kTraceVersion);
    out.push_back(static_cast<char>(dtype));
    out.push_back('\0');
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(traj.size()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(traj.dim()));
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const FeatureVector& f = traj.feature(i);
        for (Eigen::Index d = 0; d < f.size(); ++d) {
            if (dtype == BinaryDtype::F64) {
                put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(f(d)));
            } else {
                put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(f(d))));
            }
        }
    }
    return out;
}

Trajectory decode_binary(std::string_view bytes) {
    if (bytes.size() < kTraceHeaderBytes) {
        throw FormatError("truncated trace header", bytes.size());
    }
    const auto version = get_le<std::uint16_t>(bytes, 4);
    if (version != kTraceVersion) {
        throw FormatError("unsupported trace version " + std::to_string(version), 4);
    }
    const auto dtype = static_cast<unsigned char>(bytes[6]);
    if (dtype > 1) throw FormatError("unknown dtype code " + std::to_string(dtype), 6);
    if (bytes[7] != '\0') throw FormatError("reserved header byte must be zero", 7);
    const std::uint64_t steps = get_le<std::uint32_t>(bytes, 8);
    const std::uint64_t dim = get_le<std::uint32_t>(bytes, 12);
    if (steps == 0 || dim == 0) throw FormatError("trace declares an empty shape", 8);

    const std::uint64_t width = dtype == 1 ? 8 : 4;
    const std::uint64_t expected = kTraceHeaderBytes + steps * dim * width;
    if (bytes.size() < expected) {
        throw FormatError("truncated payload: expected " + std::to_string(expected) + " bytes, got " +
                              std::to_string(bytes.size()),
                          bytes.size());
    }
    if (bytes.size() > expected) {
        throw FormatError("trailing bytes after payload", expected);
    }

    Trajectory out(static_cast<std::size_t>(dim));
    std::size_t offset = kTraceHeaderBytes;
    for (std::uint64_t i = 0; i < steps; ++i) {
        FeatureVector f(static_cast<Eigen::Index>(dim));
        const std::size_t row_offset = offset;
        for (std::uint64_t d = 0; d < dim; ++d) {
            if (width == 8) {
                f(static_cast<Eigen::Index>(d)) = std::bit_cast<double>(get_le<std::uint64_t>(bytes, offset));
            } else {
                f(static_cast<Eigen::Index>(d)) = std::bit_cast<float>(get_le<std::uint32_t>(bytes, offset));
            }
            offset += width;
        }
        if (!all_finite(f)) throw FormatError("non-finite value in row " + std::to_string(i), row_offset);
        out.append(static_cast<std::int64_t>(steps - i), std::move(f));
    }
    return out;
}

std::string encode_csv(const Trajectory& traj) {
    std::string out = "t";
    for (std::size_t d = 0; d < traj.dim(); ++d) out += ",f" + std::to_string(d);
    out += '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += std::to_string(traj.time(i));
        const FeatureVector& f = traj.feature(i);
        for (Eigen::Index d = 0; d < f.size(); ++d) {
            out += ',';
            out += format_double(f(d));
        }
        out += '\n';
    }
    return out;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

template <class T>
bool parse_number(std::string_view field, T& value) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last;
}

Trajectory decode_csv(std::string_view bytes) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::size_t dim = 0;
    Trajectory out;
    while (pos < bytes.size()) {
        std::size_t end = bytes.find('\n', pos);
        if (end == std::string_view::npos) end = bytes.size();
        std::string_view line = bytes.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        const auto fields = split_fields(line);
        if (line_no == 1) {
            if (fields.size() < 2 || fields[0] != "t") {
                throw FormatError("CSV header must be t,f0,...", line_no);
            }
            for (std::size_t d = 1; d < fields.size(); ++d) {
                if (fields[d] != "f" + std::to_string(d - 1)) {
                    throw FormatError("unexpected CSV column '" + std::string(fields[d]) + "'", line_no);
                }
            }
            dim = fields.size() - 1;
            out = Trajectory(dim);
            continue;
        }
        if (fields.size() != dim + 1) {
            throw FormatError("row has " + std::to_string(fields.size() - 1) + " features, expected " +
                                  std::to_string(dim),
                              line_no);
        }
        std::int64_t t = 0;
        if (!parse_number(fields[0], t)) throw FormatError("bad timestep", line_no);
        FeatureVector f(static_cast<Eigen::Index>(dim));
        for (std::size_t d = 0; d < dim; ++d) {
            double v = 0.0;
            if (!parse_number(fields[d + 1], v)) {
                throw FormatError("bad number '" + std::string(fields[d + 1]) + "'", line_no);
            }
            f(static_cast<Eigen::Index>(d)) = v;
        }
        try {
            out.append(t, std::move(f));
        } catch (const Error& e) {
            throw FormatError(e.what(), line_no);
        }
    }
    if (dim == 0) throw FormatError("CSV trace has no header", line_no);
    if (out.empty()) throw FormatError("CSV trace has no rows", line_no);
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw NumericError("failed to format double");
    return std::string(buf, ptr);
}

std::string encode_trace(const Trajectory& trajectory, TraceFormat format, BinaryDtype dtype) {
    if (trajectory.empty()) throw ConfigError("cannot encode an empty trajectory");
    return format == TraceFormat::Binary ? encode_binary(trajectory, dtype) : encode_csv(trajectory);
}

Trajectory decode_trace(std::string_view bytes) {
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) return decode_binary(bytes);
    if (bytes.size() >= 2 && bytes.substr(0, 2) == "t,") return decode_csv(bytes);
    throw FormatError("bad magic: neither a HITR binary trace nor a CSV trace", 0);
}

void write_trace(const Trajectory& trajectory, const std::filesystem::path& path, TraceFormat format,
                 BinaryDtype dtype) {
    write_file_atomic(path, encode_trace(trajectory, format, dtype));
}

Trajectory read_trace(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open trace file " + path.string());
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_trace(bytes);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move output into place at " + path.string());
    }
}

}  // namespace hicache
