#include "hqnn/reports.hpp"

#include "hqnn/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace hqnn {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

struct MetricColumn {
    const char *name;
    double (*get)(const RunRecord &);
    bool needs_ok; // predictive metrics are meaningless for failed runs
};

constexpr MetricColumn kMetricColumns[] = {
    {"accuracy", [](const RunRecord &r) { return r.metrics.accuracy; }, true},
    {"macro_precision",
     [](const RunRecord &r) { return r.metrics.macro_precision; }, true},
    {"macro_recall", [](const RunRecord &r) { return r.metrics.macro_recall; },
     true},
    {"macro_f1", [](const RunRecord &r) { return r.metrics.macro_f1; }, true},
    {"pr_auc", [](const RunRecord &r) { return r.metrics.pr_auc; }, true},
    {"qce", [](const RunRecord &r) { return r.diagnostics.qce; }, false},
    {"eee_bits", [](const RunRecord &r) { return r.diagnostics.eee_bits; },
     false},
    {"qgn_mean", [](const RunRecord &r) { return r.diagnostics.qgn_mean; },
     true},
};

void write_text_file(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataFormatError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw DataFormatError("write failed for " + path.string());
    }
}

std::string results_csv(std::span<const RunRecord> records) {
    std::ostringstream out;
    out << "dataset,axis,qubits,layers,seed,repeat,status";
    for (const MetricColumn &col : kMetricColumns) {
        out << ',' << col.name;
    }
    out << '\n';
    for (const RunRecord &r : records) {
        out << r.dataset << ',' << axis_to_string(r.axis) << ',' << r.qubits
            << ',' << r.layers << ',' << r.seed << ',' << r.repeat << ','
            << r.status;
        for (const MetricColumn &col : kMetricColumns) {
            out << ',';
            if (!col.needs_ok || r.status == "ok") {
                out << format_double(col.get(r));
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string correlations_csv(const CorrelationMatrix &m) {
    std::ostringstream out;
    out << "metric";
    for (const char *col : CorrelationMatrix::kCols) {
        out << ',' << col;
    }
    out << '\n';
    for (std::size_t r = 0; r < CorrelationMatrix::kRows.size(); ++r) {
        out << CorrelationMatrix::kRows[r];
        for (std::size_t c = 0; c < CorrelationMatrix::kCols.size(); ++c) {
            out << ',';
            if (m.rho[r][c].has_value()) {
                out << format_double(*m.rho[r][c]);
            }
        }
        out << '\n';
    }
    return out.str();
}

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

std::string svg_line_chart(const std::string &title, const std::string &x_label,
                           const std::string &y_label,
                           const std::vector<Series> &series) {
    constexpr double kWidth = 640.0;
    constexpr double kHeight = 400.0;
    constexpr double kLeft = 64.0;
    constexpr double kRight = 24.0;
    constexpr double kTop = 36.0;
    constexpr double kBottom = 48.0;

    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    bool first = true;
    for (const Series &s : series) {
        for (const auto &[x, y] : s.points) {
            if (first) {
                x_min = x_max = x;
                y_min = y_max = y;
                first = false;
            } else {
                x_min = std::min(x_min, x);
                x_max = std::max(x_max, x);
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    }
    if (x_max == x_min) {
        x_max = x_min + 1.0;
    }
    if (y_max == y_min) {
        y_max = y_min + 1.0;
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) {
        return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
    };

    static const char *kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n"
        << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "  <text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"14\">"
        << title << "</text>\n"
        << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << kTop + plot_h
        << "\" stroke=\"black\"/>\n"
        << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n"
        << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << x_label << "</text>\n"
        << "  <text x=\"16\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" transform=\"rotate(-90 16 "
        << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

    // axis end labels
    out << "  <text x=\"" << kLeft << "\" y=\"" << kTop + plot_h + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"10\">"
        << format_double(x_min) << "</text>\n"
        << "  <text x=\"" << kLeft + plot_w << "\" y=\"" << kTop + plot_h + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"10\">"
        << format_double(x_max) << "</text>\n"
        << "  <text x=\"" << kLeft - 6 << "\" y=\"" << kTop + plot_h
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"10\">"
        << format_double(y_min) << "</text>\n"
        << "  <text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 10
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"10\">"
        << format_double(y_max) << "</text>\n";

    int color = 0;
    for (const Series &s : series) {
        out << "  <polyline fill=\"none\" stroke=\""
            << kColors[color % 4] << "\" stroke-width=\"1.5\" points=\"";
        for (const auto &[x, y] : s.points) {
            out << format_double(sx(x)) << ',' << format_double(sy(y)) << ' ';
        }
        out << "\"/>\n";
        out << "  <text x=\"" << kLeft + plot_w - 4 << "\" y=\""
            << kTop + 14.0 * (color + 1)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\" fill=\""
            << kColors[color % 4] << "\">" << s.name << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace

void emit_reports(std::span<const RunRecord> records,
                  const CorrelationMatrix *correlations,
                  const std::string &output_dir) {
    const fs::path dir(output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw DataFormatError("cannot create output directory " + output_dir);
    }

    write_text_file(dir / "results.csv", results_csv(records));
    write_text_file(dir / "results.json", records_to_json_text(records));
    if (correlations != nullptr) {
        write_text_file(dir / "correlations.csv", correlations_csv(*correlations));
    }

    for (SweepAxis axis : {SweepAxis::depth, SweepAxis::width}) {
        const std::string x_name = axis == SweepAxis::depth ? "L" : "Q";
        for (const MetricColumn &col : kMetricColumns) {
            // one series per dataset, ordered by the sweep value
            std::map<std::string, Series> by_dataset;
            for (const RunRecord &r : records) {
                if (r.axis != axis || (col.needs_ok && r.status != "ok")) {
                    continue;
                }
                Series &s = by_dataset[r.dataset];
                s.name = r.dataset;
                const double x = axis == SweepAxis::depth ? r.layers : r.qubits;
                s.points.emplace_back(x, col.get(r));
            }
            if (by_dataset.empty()) {
                continue;
            }
            std::vector<Series> series;
            for (auto &[name, s] : by_dataset) {
                std::sort(s.points.begin(), s.points.end());
                series.push_back(std::move(s));
            }
            const std::string file = std::string(col.name) + "_vs_" + x_name + ".svg";
            write_text_file(dir / file,
                            svg_line_chart(std::string(col.name) + " vs " + x_name,
                                           x_name, col.name, series));
        }
    }
}

} // namespace hqnn
