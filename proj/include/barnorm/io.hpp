#pragma once

// File helpers: atomic writes (write to a temp name, then rename), full-file
// reads, and a small CSV writer with exact double round-trips.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace barnorm {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

// %.17g preserves every double bit across a text round trip.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(std::string header) { row_ = std::move(header); row_ += '\n'; }

    template <typename... Ts>
    void row(const Ts&... fields) {
        bool first = true;
        ((append_field(fields, first), first = false), ...);
        row_ += '\n';
    }

    const std::string& str() const { return row_; }

private:
    std::string row_;

    void append_field(double v, bool first) {
        if (!first) row_ += ',';
        row_ += fmt_double(v);
    }
    void append_field(int v, bool first) {
        if (!first) row_ += ',';
        row_ += std::to_string(v);
    }
    void append_field(std::size_t v, bool first) {
        if (!first) row_ += ',';
        row_ += std::to_string(v);
    }
    void append_field(const std::string& v, bool first) {
        if (!first) row_ += ',';
        row_ += v;
    }
    void append_field(const char* v, bool first) {
        if (!first) row_ += ',';
        row_ += v;
    }
};

}  // namespace barnorm
