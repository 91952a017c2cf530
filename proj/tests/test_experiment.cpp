#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rsma/experiment.hpp"
#include "rsma/report.hpp"
#include "rsma/scene.hpp"

using namespace rsma;

namespace {

SweepSpec small_power_spec() {
    SweepSpec spec;
    spec.kind = SweepKind::Power;
    spec.values = {10.0, 23.0};
    spec.trials = 2;
    spec.schemes = {Scheme::PairedRsma, Scheme::UnpairedNoma};
    spec.base.n_users = 4;
    spec.base.seed = 7;
    spec.eps_s = 1e-9;
    return spec;
}

// Minimal well-formedness scan: declaration, balanced tags, quoted attributes.
bool xml_well_formed(const std::string& text) {
    if (text.rfind("<?xml", 0) != 0) return false;
    std::vector<std::string> stack;
    std::size_t i = text.find("?>");
    if (i == std::string::npos) return false;
    i += 2;
    while (i < text.size()) {
        if (text[i] == '<') {
            const std::size_t end = text.find('>', i);
            if (end == std::string::npos) return false;
            std::string tag = text.substr(i + 1, end - i - 1);
            if (!tag.empty() && tag.back() == '/') {
                // self-closing
            } else if (!tag.empty() && tag.front() == '/') {
                if (stack.empty()) return false;
                const std::string name = tag.substr(1);
                if (stack.back() != name) return false;
                stack.pop_back();
            } else {
                const std::size_t sp = tag.find_first_of(" \t\n");
                stack.push_back(sp == std::string::npos ? tag : tag.substr(0, sp));
            }
            // attribute quotes must balance inside the tag
            std::size_t quotes = 0;
            for (char c : tag)
                if (c == '"') ++quotes;
            if (quotes % 2 != 0) return false;
            i = end + 1;
        } else {
            if (text[i] == '>') return false;
            ++i;
        }
    }
    return stack.empty();
}

}  // namespace

TEST_CASE("sweep cardinality and determinism") {
    const SweepSpec spec = small_power_spec();
    const auto rows = run_sweep(spec);
    CHECK(rows.size() == 2 * 2 * 2);  // points x trials x schemes

    const std::string a = csv_string(rows);
    const std::string b = csv_string(run_sweep(spec));
    CHECK(a == b);
}

TEST_CASE("sweep validates scheme caps") {
    SweepSpec spec;
    spec.kind = SweepKind::Users;
    spec.values = {4.0, 40.0};
    spec.trials = 1;
    spec.schemes = {Scheme::UnpairedRsmaOracle};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

    spec.values = {4.0};
    spec.schemes = {Scheme::RsmaEnumeration};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("power sweep latency decreases with the cap") {
    SweepSpec spec;
    spec.kind = SweepKind::Power;
    spec.values = {10.0, 16.0, 23.0, 30.0};
    spec.trials = 20;  // drops are resampled per grid point, means need support
    spec.schemes = {Scheme::PairedRsma, Scheme::PairedNoma, Scheme::UnpairedNoma};
    spec.base.n_users = 4;
    spec.base.seed = 11;
    const auto rows = run_sweep(spec);

    for (Scheme s : spec.schemes) {
        double prev = 1e300;
        for (double v : spec.values) {
            double mean = 0.0;
            int count = 0;
            for (const ResultRow& r : rows) {
                if (r.scheme == s && r.sweep_value == v) {
                    mean += r.tau_s;
                    ++count;
                }
            }
            REQUIRE(count == spec.trials);
            mean /= count;
            CHECK(mean < prev);
            prev = mean;
        }
    }
}

TEST_CASE("rows re-validate from their recorded seed") {
    const SweepSpec spec = small_power_spec();
    const auto rows = run_sweep(spec);
    for (const ResultRow& r : rows) {
        // reconstruct the drop from the row's position in the grid
        int point = -1;
        for (std::size_t p = 0; p < spec.values.size(); ++p)
            if (spec.values[p] == r.sweep_value) point = static_cast<int>(p);
        REQUIRE(point >= 0);
        const DropConfig cfg = drop_for_point(spec, point, r.trial);
        CHECK(cfg.seed == r.seed);
        const SchemeResult res = run_scheme(r.scheme, generate_drop(cfg), spec.eps_s);
        CHECK(std::abs(res.tau_s - r.tau_s) <= 10.0 * spec.eps_s);
    }
}

TEST_CASE("csv round trip") {
    const auto rows = run_sweep(small_power_spec());
    const std::string text = csv_string(rows);

    // header + one line per row, LF endings only
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == rows.size() + 1);
    CHECK(text.find('\r') == std::string::npos);

    const auto back = parse_csv(text);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].scheme == rows[i].scheme);
        CHECK(back[i].kind == rows[i].kind);
        CHECK(back[i].sweep_value == rows[i].sweep_value);
        CHECK(back[i].trial == rows[i].trial);
        CHECK(back[i].seed == rows[i].seed);
        CHECK(back[i].tau_s == rows[i].tau_s);        // bit-exact round trip
        CHECK(back[i].sum_alpha == rows[i].sum_alpha);
        CHECK(back[i].iterations == rows[i].iterations);
        CHECK(back[i].wall_time_s == rows[i].wall_time_s);
    }

    CHECK(csv_string({}) ==
          "scheme,sweep_kind,sweep_value,trial,seed,tau_s,sum_alpha,iterations,wall_time_s\n");
}

TEST_CASE("convergence trace") {
    DropConfig cfg;
    cfg.n_users = 4;
    cfg.seed = 21;
    const Scenario sc = generate_drop(cfg);

    const auto steps = run_convergence_trace(sc, {1e-9, std::nullopt});
    REQUIRE(!steps.empty());

    // upper bound never increases, bracket stays ordered
    for (std::size_t i = 1; i < steps.size(); ++i) {
        CHECK(steps[i].tau_ub <= steps[i - 1].tau_ub);
        CHECK(steps[i].tau_lb >= steps[i - 1].tau_lb);
        CHECK(steps[i].tau_lb < steps[i].tau_ub);
    }

    // dyadic bounds make the length exactly log2(width/eps)
    const double eps = std::ldexp(1.0, -40);
    const double ub = steps.back().tau_ub + 512.0 * eps;
    const double lb = ub - 1024.0 * eps;
    SolveOptions opts;
    opts.eps_s = eps;
    opts.bounds = {{lb, ub}};
    CHECK(run_convergence_trace(sc, opts).size() == 10);

    const std::string text = trace_csv_string(steps);
    const auto back = parse_trace_csv(text);
    REQUIRE(back.size() == steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        CHECK(back[i].tau_lb == steps[i].tau_lb);
        CHECK(back[i].tau_ub == steps[i].tau_ub);
        CHECK(back[i].feasible == steps[i].feasible);
    }
}

TEST_CASE("svg output is well-formed and complete") {
    const auto rows = run_sweep(small_power_spec());
    const std::string svg = svg_plot_string(rows, SweepKind::Power);
    CHECK(xml_well_formed(svg));
    CHECK(svg.find("P_max (dBm)") != std::string::npos);
    CHECK(svg.find("max latency (ms)") != std::string::npos);
    CHECK(svg.find("paired-rsma") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);

    DropConfig cfg;
    cfg.n_users = 4;
    cfg.seed = 3;
    const auto steps = run_convergence_trace(generate_drop(cfg), {1e-9, std::nullopt});
    const std::string trace_svg = svg_trace_string(steps);
    CHECK(xml_well_formed(trace_svg));
    CHECK(trace_svg.find("iteration") != std::string::npos);
}

TEST_CASE("bench runs and skips over-cap schemes") {
    DropConfig base;
    base.seed = 5;
    const auto rows = run_bench({2, 25}, 2,
                                {Scheme::PairedRsma, Scheme::UnpairedRsmaOracle,
                                 Scheme::RsmaEnumeration},
                                base, 1e-9);
    REQUIRE(rows.size() == 6);
    for (const BenchRow& r : rows) {
        if (r.n_users == 2) {
            CHECK(!r.skipped);
            CHECK(r.median_s > 0.0);
        } else if (r.scheme == Scheme::UnpairedRsmaOracle ||
                   r.scheme == Scheme::RsmaEnumeration) {
            CHECK(r.skipped);
            CHECK(r.note.find("at most") != std::string::npos);
        } else {
            CHECK(!r.skipped);
        }
    }
    const std::string table = bench_table_string(rows);
    CHECK(table.find("paired-rsma") != std::string::npos);
    CHECK(table.find("skipped") != std::string::npos);
}

TEST_CASE("scheme and kind names round trip") {
    for (Scheme s : {Scheme::PairedRsma, Scheme::UnpairedRsmaOracle, Scheme::RsmaSuboptimal,
                     Scheme::RsmaEnumeration, Scheme::PairedNoma, Scheme::UnpairedNoma})
        CHECK(scheme_from_string(to_string(s)) == s);
    for (SweepKind k : {SweepKind::Power, SweepKind::Users, SweepKind::Convergence,
                        SweepKind::Bench})
        CHECK(sweep_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(scheme_from_string("nope"), std::invalid_argument);
}
