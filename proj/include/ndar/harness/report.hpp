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
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndar/harness/csv.hpp"

namespace ndar::harness {

class ReportError : public std::runtime_error {
  public:
    explicit ReportError(const std::string &what) : std::runtime_error(what) {}
};

namespace svg {

struct Series {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> err;
};

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Frame {
    double x0, x1, y0, y1;
    static constexpr double kWidth = 640, kHeight = 400, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

    double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
    double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

inline Frame fit(const std::vector<Series> &series, bool from_zero) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto &s : series) {
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            const double e = k < s.err.size() ? s.err[k] : 0.0;
            x0 = std::min(x0, s.x[k]);
            x1 = std::max(x1, s.x[k]);
            y0 = std::min(y0, s.y[k] - e);
            y1 = std::max(y1, s.y[k] + e);
        }
    }
    if (from_zero) {
        y0 = std::min(y0, 0.0);
    }
    if (!(x1 > x0)) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (!(y1 > y0)) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double pad = 0.05 * (y1 - y0);
    return {x0, x1, from_zero ? y0 : y0 - pad, y1 + pad};
}

inline std::string open(const std::string &title, const Frame &f, const std::string &xlabel, const std::string &ylabel) {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::kWidth << "\" height=\"" << Frame::kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << Frame::kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    const double bx = f.px(f.x0), by = f.py(f.y0), tx = f.px(f.x1), ty = f.py(f.y1);
    o << "<polyline fill=\"none\" stroke=\"black\" points=\"" << num(bx) << ',' << num(ty) << ' ' << num(bx) << ','
      << num(by) << ' ' << num(tx) << ',' << num(by) << "\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double yv = f.y0 + (f.y1 - f.y0) * k / 4.0;
        const double xv = f.x0 + (f.x1 - f.x0) * k / 4.0;
        char ybuf[32], xbuf[32];
        std::snprintf(ybuf, sizeof ybuf, "%.4g", yv);
        std::snprintf(xbuf, sizeof xbuf, "%.4g", xv);
        o << "<text x=\"" << num(bx - 6) << "\" y=\"" << num(f.py(yv) + 4) << "\" text-anchor=\"end\">" << ybuf << "</text>\n";
        o << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << num(by + 18) << "\" text-anchor=\"middle\">" << xbuf << "</text>\n";
    }
    o << "<text x=\"" << num((bx + tx) / 2) << "\" y=\"" << Frame::kHeight - 10 << "\" text-anchor=\"middle\">" << xlabel
      << "</text>\n";
    o << "<text transform=\"translate(16," << num((by + ty) / 2) << ") rotate(-90)\" text-anchor=\"middle\">" << ylabel
      << "</text>\n";
    return o.str();
}

inline std::string legend(const std::vector<Series> &series) {
    std::ostringstream o;
    double y = Frame::kTop + 6;
    for (const auto &s : series) {
        o << "<rect x=\"" << Frame::kWidth - 190 << "\" y=\"" << num(y - 9) << "\" width=\"10\" height=\"10\" fill=\"" << s.color
          << "\"/>\n";
        o << "<text x=\"" << Frame::kWidth - 175 << "\" y=\"" << num(y) << "\">" << s.label << "</text>\n";
        y += 16;
    }
    return o.str();
}

inline std::string line_chart(const std::string &title, const std::string &xlabel, const std::string &ylabel,
                              const std::vector<Series> &series) {
    const Frame f = fit(series, false);
    std::ostringstream o;
    o << open(title, f, xlabel, ylabel);
    for (const auto &s : series) {
        o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            o << (k ? " " : "") << num(f.px(s.x[k])) << ',' << num(f.py(s.y[k]));
        }
        o << "\"/>\n";
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            const double e = k < s.err.size() ? s.err[k] : 0.0;
            o << "<circle cx=\"" << num(f.px(s.x[k])) << "\" cy=\"" << num(f.py(s.y[k])) << "\" r=\"3\" fill=\"" << s.color
              << "\"/>\n";
            if (e > 0.0) {
                o << "<line x1=\"" << num(f.px(s.x[k])) << "\" x2=\"" << num(f.px(s.x[k])) << "\" y1=\""
                  << num(f.py(s.y[k] - e)) << "\" y2=\"" << num(f.py(s.y[k] + e)) << "\" stroke=\"" << s.color << "\"/>\n";
            }
        }
    }
    o << legend(series) << "</svg>\n";
    return o.str();
}

/// Overlaid bar histogram; each series is (bin centre, count).
inline std::string histogram(const std::string &title, const std::string &xlabel, const std::vector<Series> &series) {
    const Frame f = fit(series, true);
    double bin = 1e300;
    for (const auto &s : series) {
        std::vector<double> xs = s.x;
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 1; k < xs.size(); ++k) {
            if (xs[k] > xs[k - 1]) {
                bin = std::min(bin, xs[k] - xs[k - 1]);
            }
        }
    }
    if (bin == 1e300) {
        bin = 1.0;
    }
    const double w = std::max(1.0, (f.px(f.x0 + bin) - f.px(f.x0)) * 0.9);
    std::ostringstream o;
    o << open(title, f, xlabel, "count");
    for (const auto &s : series) {
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            const double top = f.py(s.y[k]);
            o << "<rect x=\"" << num(f.px(s.x[k]) - w / 2) << "\" y=\"" << num(top) << "\" width=\"" << num(w)
              << "\" height=\"" << num(f.py(0.0) - top) << "\" fill=\"" << s.color << "\" fill-opacity=\"0.5\"/>\n";
        }
    }
    o << legend(series) << "</svg>\n";
    return o.str();
}

} // namespace svg

inline std::string list_directory(const std::filesystem::path &dir) {
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto &entry : std::filesystem::directory_iterator(dir, ec)) {
        names.push_back(entry.path().filename().string());
    }
    if (ec) {
        return "  (directory not readable: " + ec.message() + ")\n";
    }
    std::sort(names.begin(), names.end());
    std::string out;
    for (const auto &n : names) {
        out += "  " + n + "\n";
    }
    return names.empty() ? "  (empty)\n" : out;
}

inline void write_text(const std::filesystem::path &file, const std::string &text) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw ReportError("cannot write '" + file.string() + "'");
    }
}

/// Builds the per-distribution histogram SVGs for the lowest run index
/// present, comparing its first and last recorded iteration.
inline std::vector<std::filesystem::path> write_distribution_charts(const std::filesystem::path &dir) {
    std::vector<std::filesystem::path> written;
    struct Spec {
        const char *file;
        const char *value_column;
        const char *title;
        const char *xlabel;
        const char *svg;
    };
    for (const Spec spec : {Spec{"cost_dist.csv", "cut", "Cut distribution", "cut value", "cost_dist.svg"},
                            Spec{"hamming_dist.csv", "hamming_weight", "Hamming weight distribution", "Hamming weight",
                                 "hamming_dist.svg"}}) {
        if (!std::filesystem::exists(dir / spec.file)) {
            continue;
        }
        const auto t = CsvTable::read(dir / spec.file);
        if (t.rows.empty()) {
            continue;
        }
        double run = 1e300;
        for (std::size_t k = 0; k < t.rows.size(); ++k) {
            run = std::min(run, t.number(k, "run"));
        }
        std::map<double, svg::Series> by_iter;
        for (std::size_t k = 0; k < t.rows.size(); ++k) {
            if (t.number(k, "run") != run) {
                continue;
            }
            auto &s = by_iter[t.number(k, "iter")];
            s.x.push_back(t.number(k, spec.value_column));
            s.y.push_back(t.number(k, "count"));
        }
        std::vector<svg::Series> series;
        const char *colors[] = {"#1f77b4", "#d62728"};
        std::size_t c = 0;
        for (auto &[iter, s] : by_iter) {
            s.label = "iteration " + format_number(iter);
            s.color = colors[c++ % 2];
            series.push_back(std::move(s));
        }
        const std::string title = std::string(spec.title) + " (run " + format_number(run) + ")";
        write_text(dir / spec.svg, svg::histogram(title, spec.xlabel, series));
        written.push_back(dir / spec.svg);
    }
    return written;
}

/**
 * Summarizes a finished run directory. Returns the text that the CLI
 * prints; with `emit_svg` also writes trajectory.svg and, when present,
 * the distribution charts.
 */
inline std::string report(const std::filesystem::path &dir, bool emit_svg = false) {
    const auto summary_file = dir / "summary.csv";
    const auto trajectory_file = dir / "trajectory.csv";
    if (!std::filesystem::exists(summary_file) || !std::filesystem::exists(trajectory_file)) {
        throw ReportError("'" + dir.string() + "' does not contain summary.csv and trajectory.csv; found:\n" +
                          list_directory(dir));
    }
    CsvTable summary;
    CsvTable trajectory;
    try {
        summary = CsvTable::read(summary_file);
        trajectory = CsvTable::read(trajectory_file);
        if (summary.rows.size() != 1 || trajectory.rows.empty()) {
            throw std::runtime_error("unexpected row count");
        }
        (void)trajectory.number(0, "mean_ratio");
    } catch (const std::exception &e) {
        throw ReportError("corrupt harness CSV in '" + dir.string() + "': " + e.what());
    }

    const std::size_t last = trajectory.rows.size() - 1;
    const double runs = summary.number(0, "runs");
    std::ostringstream o;
    o << "instance: n=" << summary.rows[0][summary.column("n")] << " edges=" << summary.rows[0][summary.column("edges")]
      << " density=" << summary.rows[0][summary.column("edge_density")] << '\n';
    o << "sampler: " << summary.rows[0][summary.column("sampler")] << '\n';
    o << "E_SA: " << summary.rows[0][summary.column("e_sa")];
    if (const auto &bf = summary.rows[0][summary.column("brute_force_cut")]; !bf.empty()) {
        o << " (exhaustive optimum " << bf << ")";
    }
    o << '\n';
    o << "runs: " << format_number(runs) << ", iterations: " << trajectory.rows.size() << '\n';
    o << "final E_Best/E_SA: " << format_number(trajectory.number(last, "mean_ratio")) << " +/- "
      << format_number(trajectory.number(last, "sem_ratio"));
    if (runs < 2) {
        o << " (single run; sem reported as 0)";
    }
    o << '\n';
    o << "final cumulative E_Best/E_SA: " << format_number(trajectory.number(last, "mean_cumulative_ratio")) << '\n';
    o << "final mean best cut: " << format_number(trajectory.number(last, "mean_best_cut")) << " +/- "
      << format_number(trajectory.number(last, "sem_best_cut")) << '\n';

    if (emit_svg) {
        svg::Series per_iter{"per-iteration best", "#1f77b4", {}, {}, {}};
        svg::Series cumulative{"cumulative best", "#2ca02c", {}, {}, {}};
        for (std::size_t k = 0; k < trajectory.rows.size(); ++k) {
            const double it = trajectory.number(k, "iter");
            per_iter.x.push_back(it);
            per_iter.y.push_back(trajectory.number(k, "mean_ratio"));
            per_iter.err.push_back(trajectory.number(k, "sem_ratio"));
            cumulative.x.push_back(it);
            cumulative.y.push_back(trajectory.number(k, "mean_cumulative_ratio"));
        }
        write_text(dir / "trajectory.svg",
                   svg::line_chart("E_Best / E_SA per iteration", "iteration", "E_Best / E_SA", {per_iter, cumulative}));
        o << "wrote " << (dir / "trajectory.svg").string() << '\n';
        for (const auto &p : write_distribution_charts(dir)) {
            o << "wrote " << p.string() << '\n';
        }
    }
    return o.str();
}

} // namespace ndar::harness
