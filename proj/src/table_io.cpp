#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "shssa/errors.hpp"
#include "shssa/io.hpp"

namespace shssa::io {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == sep && !quoted) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(line);
    }
    return out;
}

double parse_cell(const std::string& cell, const std::string& missing, std::size_t row) {
    if (cell.empty() || cell == missing) return kNaN;
    double v = 0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw ValidationError("csv_parse", "line " + std::to_string(row) + ": cannot parse '" +
                                               cell + "' as a number");
    return v;
}

std::string fmt(double v, const std::string& missing) {
    if (std::isnan(v)) return missing;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("io_open", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ComputeError("io_write", "cannot write '" + tmp.string() + "'");
        out.write(content.data(), std::streamsize(content.size()));
        if (!out) throw ComputeError("io_write", "write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

SeriesTable parse_csv_series(const std::string& text, const std::string& missing) {
    auto lines = lines_of(text);
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw ValidationError("csv_empty", "CSV input has no header row");
    SeriesTable t;
    t.names = split(lines[0], ',');
    t.columns.assign(t.names.size(), {});
    for (std::size_t r = 1; r < lines.size(); ++r) {
        if (trim(lines[r]).empty()) continue;
        auto cells = split(lines[r], ',');
        if (cells.size() != t.names.size())
            throw ValidationError("csv_columns", "line " + std::to_string(r + 1) + ": expected " +
                                                     std::to_string(t.names.size()) + " columns");
        for (std::size_t c = 0; c < cells.size(); ++c)
            t.columns[c].push_back(parse_cell(cells[c], missing, r + 1));
    }
    return t;
}

SeriesTable read_csv_series(const std::string& path, const std::string& missing) {
    return parse_csv_series(read_file(path), missing);
}

std::string format_csv_series(const SeriesTable& t, const std::string& missing) {
    std::string out;
    for (std::size_t c = 0; c < t.names.size(); ++c) out += (c ? "," : "") + t.names[c];
    out += '\n';
    std::size_t rows = 0;
    for (const auto& col : t.columns) rows = std::max(rows, col.size());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) out += ',';
            out += r < t.columns[c].size() ? fmt(t.columns[c][r], missing) : missing;
        }
        out += '\n';
    }
    return out;
}

RMatrix read_csv_matrix(const std::string& path, const std::string& missing) {
    auto lines = lines_of(read_file(path));
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (trim(lines[r]).empty()) continue;
        std::vector<double> row;
        for (const auto& c : split(lines[r], ',')) row.push_back(parse_cell(c, missing, r + 1));
        if (!rows.empty() && row.size() != rows[0].size())
            throw ValidationError("csv_columns", "line " + std::to_string(r + 1) +
                                                     ": ragged matrix row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ValidationError("csv_empty", "matrix file '" + path + "' is empty");
    RMatrix m(Eigen::Index(rows.size()), Eigen::Index(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
    return m;
}

std::string format_csv_matrix(const RMatrix& m, const std::string& missing) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += fmt(m(i, j), missing);
        }
        out += '\n';
    }
    return out;
}

RMatrix read_pgm(const std::string& path) {
    std::string data = read_file(path);
    std::size_t pos = 0;
    auto token = [&]() -> std::string {
        while (pos < data.size()) {
            if (data[pos] == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(data[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
        std::size_t b = pos;
        while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
        return data.substr(b, pos - b);
    };
    std::string magic = token();
    if (magic != "P2" && magic != "P5")
        throw ValidationError("pgm_magic", "'" + path + "' is not a P2/P5 PGM file");
    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(token());
        h = std::stoi(token());
        maxval = std::stoi(token());
    } catch (const std::exception&) {
        throw ValidationError("pgm_header", "malformed PGM header in '" + path + "'");
    }
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535)
        throw ValidationError("pgm_header", "invalid PGM dimensions in '" + path + "'");
    RMatrix m(h, w);
    if (magic == "P2") {
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) {
                std::string t = token();
                if (t.empty()) throw ValidationError("pgm_data", "truncated PGM '" + path + "'");
                m(i, j) = std::stod(t);
            }
        return m;
    }
    ++pos;  // single whitespace after maxval
    std::size_t bytes = maxval > 255 ? 2 : 1;
    if (data.size() < pos + std::size_t(w) * std::size_t(h) * bytes)
        throw ValidationError("pgm_data", "truncated PGM '" + path + "'");
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            auto b0 = static_cast<unsigned char>(data[pos++]);
            if (bytes == 2) {
                auto b1 = static_cast<unsigned char>(data[pos++]);
                m(i, j) = double((b0 << 8) | b1);
            } else {
                m(i, j) = double(b0);
            }
        }
    return m;
}

std::string format_pgm(const RMatrix& m, bool binary, int maxval) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (Eigen::Index i = 0; i < m.size(); ++i)
        if (std::isfinite(m.data()[i])) {
            lo = std::min(lo, m.data()[i]);
            hi = std::max(hi, m.data()[i]);
        }
    auto level = [&](double v) -> int {
        if (!std::isfinite(v) || !(hi > lo)) return 0;
        return int(std::lround((v - lo) / (hi - lo) * maxval));
    };
    std::string out = std::string(binary ? "P5" : "P2") + "\n" + std::to_string(m.cols()) + " " +
                      std::to_string(m.rows()) + "\n" + std::to_string(maxval) + "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            int v = level(m(i, j));
            if (binary) {
                if (maxval > 255) out += char((v >> 8) & 0xff);
                out += char(v & 0xff);
            } else {
                out += (j ? " " : "") + std::to_string(v);
            }
        }
        if (!binary) out += '\n';
    }
    return out;
}

RMatrix read_grid(const std::string& path, const std::string& missing) {
    std::string head = read_file(path).substr(0, 2);
    if (head == "P2" || head == "P5") return read_pgm(path);
    return read_csv_matrix(path, missing);
}

BoolGrid parse_mask(const std::string& text) {
    std::vector<std::vector<bool>> rows;
    auto lines = lines_of(text);
    for (std::size_t r = 0; r < lines.size(); ++r) {
        std::vector<bool> row;
        for (char c : lines[r]) {
            if (c == '0' || c == '1')
                row.push_back(c == '1');
            else if (c != ' ' && c != ',' && c != '\t')
                throw ValidationError("mask_parse", "mask line " + std::to_string(r + 1) +
                                                        ": unexpected character");
        }
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows[0].size())
            throw ValidationError("mask_parse", "mask line " + std::to_string(r + 1) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ValidationError("mask_parse", "mask is empty");
    BoolGrid m(Eigen::Index(rows.size()), Eigen::Index(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
    return m;
}

BoolGrid read_mask(const std::string& path) {
    std::string text = read_file(path);
    if (text.rfind("P2", 0) == 0 || text.rfind("P5", 0) == 0) {
        RMatrix g = read_pgm(path);
        return g.array() != 0.0;
    }
    return parse_mask(text);
}

std::string format_mask(const BoolGrid& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out += m(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

}  // namespace shssa::io
