#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "tasep/common.hpp"

namespace tasep {

constexpr const char* kVersion = "1.0.0";

/// FNV-1a over a byte string; used to stamp outputs with a config hash.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t x) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[x & 0xf];
        x >>= 4;
    }
    return out;
}

/// Shortest decimal that round-trips to the same double; deterministic across
/// runs, which is what the byte-identity contract on data files needs.
inline std::string num(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::string num(long long x) { return std::to_string(x); }
inline std::string num(std::uint64_t x) { return std::to_string(x); }
inline std::string num(int x) { return std::to_string(x); }

/// CSV with '#'-prefixed metadata lines, then a column header, then rows.
struct Csv {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_meta(std::string key, std::string value) {
        meta.emplace_back(std::move(key), std::move(value));
    }

    std::string to_string() const {
        std::string out;
        for (const auto& [k, v] : meta) {
            out += "# ";
            out += k;
            out += ": ";
            out += v;
            out += '\n';
        }
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            out += columns[i];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += row[i];
            }
            out += '\n';
        }
        return out;
    }
};

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    require(f.good(), "write_text_file: cannot open output file");
    f << content;
    require(f.good(), "write_text_file: write failed");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    require(f.good(), "read_text_file: cannot open input file");
    std::string out((std::istreambuf_iterator<char>(f)),
                    std::istreambuf_iterator<char>());
    return out;
}

/// Flat binary grid: header (int64 rows, int64 cols, uint64 seed), then
/// rows*cols little-endian doubles, row-major.
inline void write_grid_binary(const std::string& path, std::int64_t rows,
                              std::int64_t cols, std::uint64_t seed,
                              const std::vector<double>& values) {
    require(rows >= 1 && cols >= 1, "write_grid_binary: empty grid");
    require(values.size() == static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
            "write_grid_binary: size mismatch");
    std::ofstream f(path, std::ios::binary);
    require(f.good(), "write_grid_binary: cannot open output file");
    f.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
    f.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
    f.write(reinterpret_cast<const char*>(&seed), sizeof(seed));
    f.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    require(f.good(), "write_grid_binary: write failed");
}

struct GridFile {
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    std::uint64_t seed = 0;
    std::vector<double> values;
};

inline GridFile read_grid_binary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    require(f.good(), "read_grid_binary: cannot open input file");
    GridFile g;
    f.read(reinterpret_cast<char*>(&g.rows), sizeof(g.rows));
    f.read(reinterpret_cast<char*>(&g.cols), sizeof(g.cols));
    f.read(reinterpret_cast<char*>(&g.seed), sizeof(g.seed));
    require(f.good() && g.rows >= 1 && g.cols >= 1, "read_grid_binary: bad header");
    g.values.resize(static_cast<std::size_t>(g.rows) * static_cast<std::size_t>(g.cols));
    f.read(reinterpret_cast<char*>(g.values.data()),
           static_cast<std::streamsize>(g.values.size() * sizeof(double)));
    require(f.good(), "read_grid_binary: truncated payload");
    return g;
}

}  // namespace tasep
