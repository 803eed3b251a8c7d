// Copyright 2026 The NDAR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndar/errors.hpp"

namespace ndar::harness {

/// 12 significant digits, '.' decimal separator, "-0" normalized to "0".
inline std::string format_number(double v) {
    if (v == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string format_number(std::size_t v) { return std::to_string(v); }

/// Row-oriented CSV writer; values are written exactly as given.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) : width_(header.size()) { append(header); }

    CsvWriter &row(const std::vector<std::string> &cells) {
        if (cells.size() != width_) {
            throw std::logic_error("CsvWriter: row width does not match header");
        }
        append(cells);
        return *this;
    }

    const std::string &str() const noexcept { return text_; }

    void save(const std::filesystem::path &file) const {
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        out << text_;
        if (!out) {
            throw std::runtime_error("cannot write '" + file.string() + "'");
        }
    }

  private:
    void append(const std::vector<std::string> &cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k != 0) {
                text_ += ',';
            }
            text_ += cells[k];
        }
        text_ += '\n';
    }

    std::size_t width_;
    std::string text_;
};

/// A parsed CSV table with a header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string &name) const {
        for (std::size_t k = 0; k < header.size(); ++k) {
            if (header[k] == name) {
                return k;
            }
        }
        throw std::runtime_error("CSV is missing column '" + name + "'");
    }

    double number(std::size_t row, const std::string &name) const {
        const auto &cell = rows.at(row).at(column(name));
        char *end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (cell.empty() || end != cell.c_str() + cell.size()) {
            throw std::runtime_error("CSV column '" + name + "' holds a non-numeric value '" + cell + "'");
        }
        return v;
    }

    static CsvTable read(const std::filesystem::path &file) {
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            throw std::runtime_error("cannot open '" + file.string() + "'");
        }
        CsvTable t;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty()) {
                continue;
            }
            std::vector<std::string> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                cells.push_back(cell);
            }
            if (line.back() == ',') {
                cells.emplace_back();
            }
            if (first) {
                t.header = std::move(cells);
                first = false;
            } else {
                if (cells.size() != t.header.size()) {
                    throw std::runtime_error("'" + file.string() + "': row width does not match header");
                }
                t.rows.push_back(std::move(cells));
            }
        }
        if (first) {
            throw std::runtime_error("'" + file.string() + "' is empty");
        }
        return t;
    }
};

inline double mean(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) {
        s += x;
    }
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

/// Sample standard deviation over sqrt(count); 0 for a single value.
inline double sem(std::span<const double> xs) {
    if (xs.size() < 2 || std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) {
        return 0.0;
    }
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - m) * (x - m);
    }
    const double k = static_cast<double>(xs.size());
    return std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
}

} // namespace ndar::harness
