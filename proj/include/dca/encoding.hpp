#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "dca/error.hpp"

namespace dca {

/// Canonical number rendering shared by trace files, config files and CSV
/// reports: fixed notation, at most 6 decimal places, trailing zeros (and a
/// trailing dot) trimmed, no exponent. Identical values always produce
/// identical bytes, which keeps artifacts diffable and hashable.
inline std::string canon_num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s(buf);
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        auto last = s.find_last_not_of('0');
        s.erase(last == dot ? dot : last + 1);
    }
    if (s == "-0") s = "0";
    return s;
}

inline std::string canon_num(std::uint64_t v) { return std::to_string(v); }

/// Strict full-token parse of a non-negative or signed decimal number.
/// Rejects exponents, hex, inf/nan and trailing junk.
inline double parse_num(std::string_view tok, std::size_t line, const std::string& what) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v,
                                     std::chars_format::fixed);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw ParseError(line, "invalid number for " + what + ": '" + std::string(tok) + "'");
    return v;
}

inline std::uint64_t parse_u64(std::string_view tok, std::size_t line, const std::string& what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, "invalid integer for " + what + ": '" + std::string(tok) + "'");
    return v;
}

/// Splits a line into single-space-separated tokens. Empty tokens (leading,
/// trailing or doubled spaces) are rejected.
inline std::vector<std::string_view> split_tokens(std::string_view line, std::size_t lineno) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        auto sp = line.find(' ', pos);
        if (sp == std::string_view::npos) sp = line.size();
        if (sp == pos) throw ParseError(lineno, "empty token (check spacing)");
        out.push_back(line.substr(pos, sp - pos));
        pos = sp + 1;
    }
    return out;
}

struct KeyValue {
    std::string_view key;
    std::string_view value;
};

inline KeyValue split_key_value(std::string_view tok, std::size_t lineno) {
    auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ParseError(lineno, "expected key=value, got '" + std::string(tok) + "'");
    return {tok.substr(0, eq), tok.substr(eq + 1)};
}

/// FNV-1a 64-bit, used for config fingerprints in run metadata.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Write-then-rename so readers never observe a partially written artifact.
inline void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw ValidationError("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open for reading: " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

}  // namespace dca
