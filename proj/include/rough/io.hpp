#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rough/errors.hpp"
#include "rough/path.hpp"

namespace rough {

/// Round-trip decimal formatting, deterministic across runs.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Write-temp-then-rename so observers never see partial files.
inline void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw domain_error("cannot open for writing: " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw domain_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// CSV with header `time,x1,...,xd`, one row per sample.
inline std::string path_to_csv(const CadlagPath& path) {
    std::ostringstream out;
    out << "time";
    for (size_t c = 1; c <= path.dim(); ++c) out << ",x" << c;
    out << "\n";
    for (size_t k = 0; k < path.size(); ++k) {
        out << format_double(path.time(k));
        for (size_t c = 0; c < path.dim(); ++c) out << "," << format_double(path.at(k, c));
        out << "\n";
    }
    return out.str();
}

inline CadlagPath csv_to_path(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw domain_error("empty path CSV");
    size_t dim = 0;
    for (char ch : line)
        if (ch == ',') ++dim;
    if (dim == 0) throw domain_error("path CSV needs columns time,x1,...");
    std::vector<double> times, values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        if (!std::getline(row, cell, ',')) throw domain_error("bad CSV row: " + line);
        times.push_back(std::stod(cell));
        for (size_t c = 0; c < dim; ++c) {
            if (!std::getline(row, cell, ',')) throw domain_error("short CSV row: " + line);
            values.push_back(std::stod(cell));
        }
    }
    return CadlagPath(std::move(times), std::move(values), dim);
}

inline CadlagPath read_path_csv(const std::string& file) { return csv_to_path(read_text(file)); }

inline void write_path_csv(const std::string& file, const CadlagPath& path) {
    write_text_atomic(file, path_to_csv(path));
}

/// key=value configuration files; '#' starts a comment.
inline std::map<std::string, std::string> read_key_values(const std::string& file) {
    std::map<std::string, std::string> kv;
    std::istringstream in(read_text(file));
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

} // namespace rough
