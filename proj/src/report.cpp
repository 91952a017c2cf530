#include "rsma/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rsma {

namespace {

// Shortest decimal that round-trips the value.
std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_u64(std::uint64_t v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_field(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Split one CSV record honoring RFC-4180 quoting.
std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
                else quoted = false;
            } else cur += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else cur += c;
    }
    fields.push_back(std::move(cur));
    return fields;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("csv: bad number: " + s);
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("csv: bad integer: " + s);
    return v;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string csv_string(const std::vector<ResultRow>& rows) {
    std::string out = "scheme,sweep_kind,sweep_value,trial,seed,tau_s,sum_alpha,iterations,wall_time_s\n";
    for (const ResultRow& r : rows) {
        out += csv_field(to_string(r.scheme));
        out += ',';
        out += csv_field(to_string(r.kind));
        out += ',';
        out += fmt_double(r.sweep_value);
        out += ',';
        out += std::to_string(r.trial);
        out += ',';
        out += fmt_u64(r.seed);
        out += ',';
        out += fmt_double(r.tau_s);
        out += ',';
        out += fmt_double(r.sum_alpha);
        out += ',';
        out += std::to_string(r.iterations);
        out += ',';
        out += fmt_double(r.wall_time_s);
        out += '\n';
    }
    return out;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    write_file(path, csv_string(rows));
}

std::vector<ResultRow> parse_csv(const std::string& text) {
    std::vector<ResultRow> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        const auto f = split_record(line);
        if (f.size() != 9) throw std::invalid_argument("csv: expected 9 fields, got line: " + line);
        ResultRow r;
        r.scheme = scheme_from_string(f[0]);
        r.kind = sweep_kind_from_string(f[1]);
        r.sweep_value = parse_double(f[2]);
        r.trial = static_cast<int>(parse_u64(f[3]));
        r.seed = parse_u64(f[4]);
        r.tau_s = parse_double(f[5]);
        r.sum_alpha = parse_double(f[6]);
        r.iterations = static_cast<int>(parse_u64(f[7]));
        r.wall_time_s = parse_double(f[8]);
        rows.push_back(r);
    }
    return rows;
}

std::vector<ResultRow> read_csv(const std::string& path) {
    return parse_csv(read_file(path));
}

std::string trace_csv_string(const std::vector<BisectionStep>& trace) {
    std::string out = "iteration,tau_lb_s,tau_ub_s,feasible\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += fmt_double(trace[i].tau_lb);
        out += ',';
        out += fmt_double(trace[i].tau_ub);
        out += ',';
        out += trace[i].feasible ? '1' : '0';
        out += '\n';
    }
    return out;
}

void emit_trace_csv(const std::vector<BisectionStep>& trace, const std::string& path) {
    write_file(path, trace_csv_string(trace));
}

std::vector<BisectionStep> parse_trace_csv(const std::string& text) {
    std::vector<BisectionStep> trace;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        const auto f = split_record(line);
        if (f.size() != 4) throw std::invalid_argument("trace csv: expected 4 fields");
        trace.push_back({parse_double(f[1]), parse_double(f[2]), f[3] == "1"});
    }
    return trace;
}

std::string bench_csv_string(const std::vector<BenchRow>& rows) {
    std::string out = "scheme,n_users,trials,median_s,skipped,note\n";
    for (const BenchRow& r : rows) {
        out += csv_field(to_string(r.scheme));
        out += ',';
        out += std::to_string(r.n_users);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += r.skipped ? "" : fmt_double(r.median_s);
        out += ',';
        out += r.skipped ? '1' : '0';
        out += ',';
        out += csv_field(r.note);
        out += '\n';
    }
    return out;
}

void emit_bench_csv(const std::vector<BenchRow>& rows, const std::string& path) {
    write_file(path, bench_csv_string(rows));
}

std::string bench_table_string(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "scheme                     N    median solve time\n";
    for (const BenchRow& r : rows) {
        std::string name = to_string(r.scheme);
        name.resize(26, ' ');
        out << name << ' ';
        std::string n = std::to_string(r.n_users);
        out << n;
        for (std::size_t i = n.size(); i < 5; ++i) out << ' ';
        if (r.skipped) out << r.note;
        else out << fmt_double(r.median_s) << " s";
        out << '\n';
    }
    return out.str();
}

// ---- SVG ---------------------------------------------------------------------

namespace {

constexpr int kW = 720, kH = 480;
constexpr int kL = 70, kR = 24, kT = 36, kB = 56;  // margins

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Series {
    std::string label;
    std::vector<double> x, y, y_lo, y_hi;
};

double nice_step(double span) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

std::string render_chart(const std::vector<Series>& series, const std::string& title,
                         const std::string& x_label, const std::string& y_label) {
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
    for (const Series& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            const double lo = s.y_lo.empty() ? s.y[i] : s.y_lo[i];
            const double hi = s.y_hi.empty() ? s.y[i] : s.y_hi[i];
            y_min = std::min(y_min, lo);
            y_max = std::max(y_max, hi);
        }
    }
    if (!(x_max > x_min)) { x_min -= 0.5; x_max += 0.5; }
    if (!(y_max > y_min)) { y_min -= 0.5; y_max += 0.5; }
    const double y_pad = 0.06 * (y_max - y_min);
    y_min = std::max(0.0, y_min - y_pad);
    y_max += y_pad;

    auto px = [&](double x) {
        return kL + (x - x_min) / (x_max - x_min) * (kW - kL - kR);
    };
    auto py = [&](double y) {
        return kH - kB - (y - y_min) / (y_max - y_min) * (kH - kT - kB);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kW
        << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n"
        << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
           "font-family=\"sans-serif\">" << xml_escape(title) << "</text>\n";

    // axes
    svg << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\""
        << kH - kB << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR
        << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";

    const double xs = nice_step(x_max - x_min);
    for (double t = std::ceil(x_min / xs) * xs; t <= x_max + 1e-12 * xs; t += xs) {
        svg << "<line x1=\"" << px(t) << "\" y1=\"" << kH - kB << "\" x2=\"" << px(t)
            << "\" y2=\"" << kH - kB + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px(t) << "\" y=\"" << kH - kB + 20
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
            << fmt_double(std::round(t * 1e6) / 1e6) << "</text>\n";
    }
    const double ys = nice_step(y_max - y_min);
    for (double t = std::ceil(y_min / ys) * ys; t <= y_max + 1e-12 * ys; t += ys) {
        svg << "<line x1=\"" << kL - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << kL
            << "\" y2=\"" << py(t) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kL - 8 << "\" y=\"" << py(t) + 4
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
            << fmt_double(std::round(t * 1e6) / 1e6) << "</text>\n";
    }
    svg << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 14
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
        << xml_escape(x_label) << "</text>\n"
        << "<text x=\"18\" y=\"" << (kT + kH - kB) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 18 " << (kT + kH - kB) / 2 << ")\">"
        << xml_escape(y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = kPalette[si % 6];
        if (!s.y_lo.empty()) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (s.y_lo[i] == s.y_hi[i]) continue;
                svg << "<line x1=\"" << px(s.x[i]) << "\" y1=\"" << py(s.y_lo[i])
                    << "\" x2=\"" << px(s.x[i]) << "\" y2=\"" << py(s.y_hi[i])
                    << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
            }
        }
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            svg << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        svg << "\"/>\n";
        // legend
        const int ly = kT + 16 + static_cast<int>(si) * 16;
        svg << "<line x1=\"" << kW - kR - 150 << "\" y1=\"" << ly << "\" x2=\""
            << kW - kR - 126 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kW - kR - 120 << "\" y=\"" << ly + 4
            << "\" font-size=\"11\" font-family=\"sans-serif\">" << xml_escape(s.label)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

std::string svg_plot_string(const std::vector<ResultRow>& rows, SweepKind kind) {
    // mean over trials with min/max whiskers, per scheme, sorted by x
    std::map<std::string, std::map<double, std::vector<double>>> grouped;
    for (const ResultRow& r : rows)
        grouped[to_string(r.scheme)][r.sweep_value].push_back(r.tau_s * 1e3);

    std::vector<Series> series;
    for (auto& [label, pts] : grouped) {
        Series s;
        s.label = label;
        for (auto& [x, taus] : pts) {
            double sum = 0.0, lo = taus[0], hi = taus[0];
            for (double v : taus) {
                sum += v;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            s.x.push_back(x);
            s.y.push_back(sum / static_cast<double>(taus.size()));
            s.y_lo.push_back(lo);
            s.y_hi.push_back(hi);
        }
        series.push_back(std::move(s));
    }
    const bool power = kind == SweepKind::Power;
    return render_chart(series,
                        power ? "Max latency vs power limit" : "Max latency vs user count",
                        power ? "P_max (dBm)" : "N users", "max latency (ms)");
}

void emit_svg_plot(const std::vector<ResultRow>& rows, SweepKind kind,
                   const std::string& path) {
    write_file(path, svg_plot_string(rows, kind));
}

std::string svg_trace_string(const std::vector<BisectionStep>& trace) {
    Series ub, lb;
    ub.label = "tau upper bound";
    lb.label = "tau lower bound";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        ub.x.push_back(static_cast<double>(i + 1));
        ub.y.push_back(trace[i].tau_ub * 1e3);
        lb.x.push_back(static_cast<double>(i + 1));
        lb.y.push_back(trace[i].tau_lb * 1e3);
    }
    return render_chart({ub, lb}, "Bisection convergence", "iteration", "max latency (ms)");
}

void emit_svg_plot(const std::vector<BisectionStep>& trace, const std::string& path) {
    write_file(path, svg_trace_string(trace));
}

}  // namespace rsma
