#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holocode/entropy_rt.hpp"
#include "holocode/foliate.hpp"
#include "holocode/io_json.hpp"
#include "holocode/network.hpp"
#include "holocode/noise.hpp"
#include "holocode/version.hpp"

namespace {

using nlohmann::ordered_json;

std::string join_command_line(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; i++) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_manifest(const std::string& out_path, const std::string& command_line,
                    const ordered_json& config, uint64_t seed,
                    const std::vector<std::string>& artifacts) {
    ordered_json m;
    m["command_line"] = command_line;
    m["config_hash"] = fnv1a_hex(config.dump());
    m["seed"] = seed;
    m["artifacts"] = artifacts;
    m["tool_version"] = holocode::kVersion;
    holocode::write_text_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

std::pair<int, int> parse_schlafli(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("schlafli must look like \"5,4\"");
    }
    int p = std::stoi(s.substr(0, comma));
    int q = std::stoi(s.substr(comma + 1));
    return {p, q};
}

std::vector<double> parse_prob_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty probability list");
    }
    return out;
}

// Region specs: comma-separated items, each an index "3" or an inclusive
// range "2-6". A reversed range wraps around the end of the leg list.
std::vector<size_t> parse_region(const std::string& spec, size_t n_legs) {
    std::vector<size_t> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        auto dash = tok.find('-');
        if (dash == std::string::npos) {
            out.push_back(std::stoul(tok));
        } else {
            size_t a = std::stoul(tok.substr(0, dash));
            size_t b = std::stoul(tok.substr(dash + 1));
            size_t width = b >= a ? b - a + 1 : n_legs - a + b + 1;
            for (size_t i = 0; i < width; i++) {
                out.push_back((a + i) % n_legs);
            }
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("empty region spec");
    }
    for (size_t q : out) {
        if (q >= n_legs) {
            throw std::invalid_argument("region index out of range");
        }
    }
    return out;
}

holocode::DecoderConfig make_decoder(const std::string& name, size_t osd_order,
                                     size_t bp_iters) {
    holocode::DecoderConfig dec;
    if (name == "ml") {
        dec.method = holocode::DecoderMethod::MlErasure;
    } else if (name == "peel") {
        dec.method = holocode::DecoderMethod::Peeling;
    } else if (name == "bp") {
        dec.method = holocode::DecoderMethod::Bp;
    } else if (name == "bp+osd") {
        dec.method = holocode::DecoderMethod::BpOsd;
    } else {
        throw std::invalid_argument("decoder must be one of ml, peel, bp, bp+osd");
    }
    dec.osd_order = osd_order;
    dec.bp_max_iter = bp_iters;
    return dec;
}

// Log-log failure-rate plot, one polyline per (p_r, decoder) group. The data
// rows are embedded as comments so the plot is self-describing.
std::string svg_rate_plot(const std::vector<holocode::ResultRow>& rows) {
    const double W = 640, H = 480, L = 70, R = 20, T = 20, B = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& r : rows) {
        if (r.p_e <= 0 || r.rate <= 0) continue;
        xmin = std::min(xmin, std::log10(r.p_e));
        xmax = std::max(xmax, std::log10(r.p_e));
        ymin = std::min(ymin, std::log10(r.rate));
        ymax = std::max(ymax, std::log10(r.rate));
    }
    if (xmin > xmax) {
        xmin = -2;
        xmax = 0;
    }
    if (ymin > ymax) {
        ymin = -4;
        ymax = 0;
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double logx) { return L + (logx - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double logy) { return H - B - (logy - ymin) / (ymax - ymin) * (H - T - B); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<!-- columns: n,p_e,p_r,trials,failures,rate,ci_low,ci_high,seed,decoder -->\n";
    for (const auto& r : rows) {
        svg << "<!-- data: " << r.n << "," << holocode::format_g6(r.p_e) << ","
            << holocode::format_g6(r.p_r) << "," << r.trials << "," << r.failures << ","
            << holocode::format_g6(r.rate) << "," << holocode::format_g6(r.ci_low) << ","
            << holocode::format_g6(r.ci_high) << "," << r.seed << "," << r.decoder << " -->\n";
    }
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\""
        << H - B << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax));
         e++) {
        double x = px(e);
        svg << "<line x1=\"" << x << "\" y1=\"" << H - B << "\" x2=\"" << x << "\" y2=\""
            << H - B + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << H - B + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ymin)); e <= static_cast<int>(std::floor(ymax));
         e++) {
        double y = py(e);
        svg << "<line x1=\"" << L - 5 << "\" y1=\"" << y << "\" x2=\"" << L << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << L - 8 << "\" y=\"" << y + 4
            << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    svg << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">erasure probability</text>\n";
    svg << "<text x=\"16\" y=\"" << (T + H - B) / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (T + H - B) / 2 << ")\">logical failure rate</text>\n";

    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::vector<std::pair<double, std::string>> groups;
    for (const auto& r : rows) {
        std::pair<double, std::string> key{r.p_r, r.decoder};
        bool seen = false;
        for (const auto& g : groups) {
            if (g == key) seen = true;
        }
        if (!seen) groups.push_back(key);
    }
    for (size_t gi = 0; gi < groups.size(); gi++) {
        const char* color = colors[gi % 6];
        std::ostringstream pts;
        for (const auto& r : rows) {
            if (std::pair<double, std::string>{r.p_r, r.decoder} != groups[gi]) continue;
            if (r.p_e <= 0 || r.rate <= 0) continue;
            pts << px(std::log10(r.p_e)) << "," << py(std::log10(r.rate)) << " ";
            svg << "<circle cx=\"" << px(std::log10(r.p_e)) << "\" cy=\""
                << py(std::log10(r.rate)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        svg << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << W - R - 6 << "\" y=\"" << T + 16 + 16 * gi
            << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color << "\">"
            << groups[gi].second << " p_r=" << holocode::format_g6(groups[gi].first)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

struct EntropySource {
    holocode::LegoNetwork net;
    holocode::NetworkState ns;
};

EntropySource make_network(const std::string& kind, int p, int q, size_t n) {
    EntropySource src;
    if (kind == "code") {
        holocode::Tiling t = holocode::build_tiling(p, q, n);
        holocode::Lego lego = (p == 5) ? holocode::lego_pentagon() : holocode::lego_r4();
        src.net = holocode::assemble_network(t, lego, p == 4);
    } else if (kind == "blackhole") {
        if (p != 5 || q != 4) {
            throw std::invalid_argument("blackhole networks are built on the 5,4 tiling");
        }
        src.net = holocode::black_hole_network(n);
    } else if (kind == "wormhole") {
        if (p != 5 || q != 4) {
            throw std::invalid_argument("wormhole networks are built on the 5,4 tiling");
        }
        src.net = holocode::wormhole_network(n);
    } else {
        throw std::invalid_argument("network must be one of code, blackhole, wormhole");
    }
    src.ns = holocode::contract_state(src.net);
    return src;
}

int cmd_build(const std::string& cmdline, const std::string& schlafli, size_t n,
              const std::string& gauge, const std::string& out) {
    auto [p, q] = parse_schlafli(schlafli);
    holocode::HolographicCode code = holocode::build_code(p, q, n, gauge);
    holocode::write_text_file(out, holocode::code_to_bundle(code));
    ordered_json config;
    config["command"] = "build";
    config["schlafli"] = {p, q};
    config["n"] = n;
    config["gauge"] = gauge;
    write_manifest(out, cmdline, config, 0, {out});
    std::cout << "wrote " << out << ": " << code.n_boundary << " boundary qubits, "
              << code.n_bulk << " logical qubits, " << code.checks.num_rows() << " checks\n";
    return 0;
}

int cmd_simulate(const std::string& cmdline, const std::string& bundle, const std::string& pe,
                 const std::string& pr, const std::string& decoder, size_t osd_order,
                 size_t bp_iters, uint64_t trials, uint64_t seed, size_t threads,
                 std::string tracked, const std::string& out, const std::string& format) {
    holocode::HolographicCode code = holocode::read_bundle(bundle);
    if (tracked.empty()) {
        if (code.bulk_labels.empty()) {
            throw std::invalid_argument("bundle has no logical qubits to track");
        }
        tracked = code.bulk_labels.front();
    }
    holocode::DecoderConfig dec = make_decoder(decoder, osd_order, bp_iters);
    std::vector<holocode::NoiseSpec> grid;
    for (double r : parse_prob_list(pr)) {
        for (double e : parse_prob_list(pe)) {
            grid.push_back({e, r});
        }
    }
    auto rows = holocode::estimate_logical_rate(code, tracked, grid, dec, trials, seed, threads);
    holocode::write_text_file(out, holocode::results_csv(rows));
    std::vector<std::string> artifacts = {out};
    if (format == "svg") {
        std::string path = out + ".svg";
        holocode::write_text_file(path, svg_rate_plot(rows));
        artifacts.push_back(path);
    } else if (format == "json") {
        ordered_json jrows = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json jr;
            jr["n"] = r.n;
            jr["p_e"] = r.p_e;
            jr["p_r"] = r.p_r;
            jr["trials"] = r.trials;
            jr["failures"] = r.failures;
            jr["rate"] = r.rate;
            jr["ci_low"] = r.ci_low;
            jr["ci_high"] = r.ci_high;
            jr["seed"] = r.seed;
            jr["decoder"] = r.decoder;
            jrows.push_back(std::move(jr));
        }
        std::string path = out + ".json";
        holocode::write_text_file(path, jrows.dump(2) + "\n");
        artifacts.push_back(path);
    } else if (format != "csv") {
        throw std::invalid_argument("format must be one of csv, svg, json");
    }
    ordered_json config;
    config["command"] = "simulate";
    config["bundle"] = bundle;
    config["p_e"] = pe;
    config["p_r"] = pr;
    config["decoder"] = holocode::decoder_tag(dec);
    config["trials"] = trials;
    config["seed"] = seed;
    config["tracked"] = tracked;
    write_manifest(out, cmdline, config, seed, artifacts);
    std::cout << "wrote " << out << ": " << rows.size() << " grid points, " << trials
              << " trials each\n";
    return 0;
}

int cmd_entropy(const std::string& cmdline, const std::string& bundle,
                const std::string& schlafli, size_t n, bool n_given, const std::string& network,
                const std::string& region_spec, size_t window, const std::string& bulk_name,
                double alpha, const std::string& out) {
    int p = 5, q = 4;
    if (!bundle.empty()) {
        holocode::HolographicCode code = holocode::read_bundle(bundle);
        if (code.gauge != "none") {
            throw std::invalid_argument("entropy queries need an ungauged network bundle");
        }
        p = code.p;
        q = code.q;
        n = code.n_layers;
    } else {
        auto pq = parse_schlafli(schlafli);
        p = pq.first;
        q = pq.second;
        if (!n_given) {
            throw std::invalid_argument("entropy needs either --bundle or -n");
        }
    }
    holocode::BulkTreatment bulk;
    if (bulk_name == "open") {
        bulk = holocode::BulkTreatment::Open;
    } else if (bulk_name == "fixed_plus") {
        bulk = holocode::BulkTreatment::FixedPlus;
    } else {
        throw std::invalid_argument("bulk treatment must be open or fixed_plus");
    }
    EntropySource src = make_network(network, p, q, n);
    size_t n_cut = src.ns.n_boundary + src.ns.n_horizon;

    std::vector<std::pair<std::string, std::vector<size_t>>> regions;
    if (window > 0) {
        for (size_t start = 0; start < src.ns.n_boundary; start++) {
            auto r = holocode::contiguous_region(start, window, src.ns.n_boundary);
            std::string spec =
                std::to_string(start) + "-" + std::to_string((start + window - 1) % src.ns.n_boundary);
            regions.emplace_back(spec, std::move(r));
        }
    } else if (region_spec == "horizon") {
        if (src.ns.n_horizon == 0) {
            throw std::invalid_argument("this network has no horizon legs");
        }
        regions.emplace_back("horizon", src.ns.horizon_range());
    } else if (region_spec == "all") {
        std::vector<size_t> r(n_cut);
        for (size_t i = 0; i < n_cut; i++) r[i] = i;
        regions.emplace_back("all", std::move(r));
    } else if (!region_spec.empty()) {
        regions.emplace_back(region_spec, parse_region(region_spec, n_cut));
    } else {
        throw std::invalid_argument("entropy needs --region or --window");
    }

    std::vector<holocode::EntropyRow> rows;
    for (auto& [spec, region] : regions) {
        holocode::EntropyRow row;
        row.region_spec = spec;
        row.bulk = bulk;
        row.alpha = alpha;
        row.entropy = holocode::network_state_entropy(src.ns, region, bulk, alpha);
        row.cut = region.size() == n_cut ? 0 : holocode::min_cut(src.net, region);
        rows.push_back(std::move(row));
    }
    holocode::write_text_file(out, holocode::entropy_csv(rows));
    ordered_json config;
    config["command"] = "entropy";
    config["schlafli"] = {p, q};
    config["n"] = n;
    config["network"] = network;
    config["region"] = region_spec;
    config["window"] = window;
    config["bulk"] = bulk_name;
    config["alpha"] = alpha;
    write_manifest(out, cmdline, config, 0, {out});
    std::cout << "wrote " << out << ": " << rows.size() << " region rows\n";
    return 0;
}

int cmd_smooth(const std::string& cmdline, const std::string& bundle, size_t target_weight,
               size_t max_iters, size_t candidates, uint64_t seed, bool bit_weight,
               const std::string& out) {
    holocode::HolographicCode code = holocode::read_bundle(bundle);
    holocode::SmoothConfig cfg;
    cfg.target_weight = target_weight;
    cfg.max_iters = max_iters;
    cfg.candidates = candidates;
    cfg.seed = seed;
    cfg.bit_weight = bit_weight;
    auto weight_of = [&](const holocode::CheckMatrix& m) {
        size_t w = 0;
        for (const auto& r : m.rows) w = std::max(w, r.weight());
        return w;
    };
    size_t before = weight_of(code.checks);
    holocode::CheckMatrix smoothed = holocode::smooth_generators(code.checks, cfg);
    if (!smoothed.same_row_space_as(code.checks)) {
        throw std::runtime_error("smoothing changed the stabiliser group");
    }
    code.checks = smoothed;
    holocode::write_text_file(out, holocode::code_to_bundle(code));
    ordered_json config;
    config["command"] = "smooth";
    config["bundle"] = bundle;
    config["target_weight"] = target_weight;
    config["max_iters"] = max_iters;
    config["candidates"] = candidates;
    config["seed"] = seed;
    config["bit_weight"] = bit_weight;
    write_manifest(out, cmdline, config, seed, {out});
    std::cout << "wrote " << out << ": max check weight " << before << " -> "
              << weight_of(code.checks) << "\n";
    return 0;
}

int cmd_blackhole(const std::string& cmdline, size_t n, const std::string& out) {
    holocode::LegoNetwork net = holocode::black_hole_network(n);
    holocode::NetworkState ns = holocode::contract_state(net);
    size_t horizon_entropy =
        holocode::network_state_entropy(ns, ns.horizon_range(), holocode::BulkTreatment::Open);
    ordered_json report;
    report["n"] = n;
    report["n_boundary"] = ns.n_boundary;
    report["n_horizon"] = ns.n_horizon;
    report["n_bulk"] = ns.n_bulk;
    report["horizon_entropy"] = horizon_entropy;
    // a submaximal horizon entropy would mean some stabiliser element lives
    // entirely on the horizon legs
    report["horizon_only_elements"] = ns.n_horizon - horizon_entropy;
    holocode::write_text_file(out, report.dump(2) + "\n");
    ordered_json config;
    config["command"] = "blackhole";
    config["n"] = n;
    write_manifest(out, cmdline, config, 0, {out});
    std::cout << "wrote " << out << ": horizon entropy " << horizon_entropy << " of "
              << ns.n_horizon << "\n";
    return 0;
}

int cmd_wormhole(const std::string& cmdline, size_t n, const std::string& out) {
    holocode::LegoNetwork net = holocode::wormhole_network(n);
    holocode::HolographicCode code = holocode::contract(net);
    size_t spanning = 0;
    std::string example;
    for (const auto& row : code.checks.rows) {
        bool a = false, b = false;
        for (size_t q = 0; q < code.n_boundary; q++) {
            if (!row.x_bit(q) && !row.z_bit(q)) continue;
            if (code.boundary_labels[q].rfind("A:", 0) == 0) a = true;
            if (code.boundary_labels[q].rfind("B:", 0) == 0) b = true;
        }
        if (a && b) {
            spanning++;
            if (example.empty()) example = row.str();
        }
    }
    ordered_json report;
    report["n"] = n;
    report["n_boundary"] = code.n_boundary;
    report["n_bulk"] = code.n_bulk;
    report["n_checks"] = code.checks.num_rows();
    report["checks_spanning_both_boundaries"] = spanning;
    report["example_spanning_check"] = example;
    holocode::write_text_file(out, report.dump(2) + "\n");
    ordered_json config;
    config["command"] = "wormhole";
    config["n"] = n;
    write_manifest(out, cmdline, config, 0, {out});
    std::cout << "wrote " << out << ": " << spanning << " of " << code.checks.num_rows()
              << " checks span both boundaries\n";
    return 0;
}

int cmd_foliate(const std::string& cmdline, const std::string& bundle,
                const std::string& schlafli, size_t n, bool n_given, const std::string& gauge,
                size_t rounds, const std::string& out) {
    holocode::HolographicCode code;
    if (!bundle.empty()) {
        code = holocode::read_bundle(bundle);
    } else {
        if (!n_given) {
            throw std::invalid_argument("foliate needs either --bundle or -n");
        }
        auto [p, q] = parse_schlafli(schlafli);
        code = holocode::build_code(p, q, n, gauge);
    }
    holocode::FoliationResult f = holocode::foliate(code, rounds);
    ordered_json correlators = ordered_json::array();
    for (size_t k = 0; k < code.n_bulk; k++) {
        ordered_json c;
        c["bulk"] = code.bulk_labels[k];
        c["x"] = holocode::has_spanning_correlator(f, k, holocode::Pauli::X);
        c["z"] = holocode::has_spanning_correlator(f, k, holocode::Pauli::Z);
        correlators.push_back(std::move(c));
    }
    ordered_json report;
    report["rounds"] = rounds;
    report["n_top"] = f.n_top;
    report["n_bottom"] = f.n_bottom;
    report["n_checks"] = f.code.checks.num_rows();
    report["closed_web_dimension"] = f.closed_web_dim;
    report["spanning_correlators"] = std::move(correlators);
    holocode::write_text_file(out, report.dump(2) + "\n");
    ordered_json config;
    config["command"] = "foliate";
    config["bundle"] = bundle;
    config["schlafli"] = schlafli;
    config["n"] = n;
    config["gauge"] = gauge;
    config["rounds"] = rounds;
    write_manifest(out, cmdline, config, 0, {out});
    std::cout << "wrote " << out << ": " << f.n_top << "+" << f.n_bottom << " legs, "
              << f.closed_web_dim << " closed webs\n";
    return 0;
}

int cmd_region_map(const std::string& cmdline, const std::string& bundle_small,
                   const std::string& bundle_large, const std::string& pe, const std::string& pr,
                   const std::string& decoder, size_t osd_order, size_t bp_iters,
                   uint64_t trials, uint64_t seed, size_t threads, const std::string& out) {
    holocode::HolographicCode small_code = holocode::read_bundle(bundle_small);
    holocode::HolographicCode large_code = holocode::read_bundle(bundle_large);
    holocode::DecoderConfig dec = make_decoder(decoder, osd_order, bp_iters);
    std::vector<holocode::NoiseSpec> grid;
    for (double r : parse_prob_list(pr)) {
        for (double e : parse_prob_list(pe)) {
            grid.push_back({e, r});
        }
    }
    if (small_code.bulk_labels.empty() || large_code.bulk_labels.empty()) {
        throw std::invalid_argument("both bundles need at least one logical qubit");
    }
    auto small_rows = holocode::estimate_logical_rate(
        small_code, small_code.bulk_labels.front(), grid, dec, trials, seed, threads);
    auto large_rows =
        holocode::estimate_logical_rate(large_code, large_code.bulk_labels.front(), grid, dec,
                                        trials, seed, threads, grid.size());
    auto cells = holocode::region_map(small_rows, large_rows);
    holocode::write_text_file(out, holocode::region_csv(cells));
    ordered_json config;
    config["command"] = "region-map";
    config["bundle_small"] = bundle_small;
    config["bundle_large"] = bundle_large;
    config["p_e"] = pe;
    config["p_r"] = pr;
    config["decoder"] = holocode::decoder_tag(dec);
    config["trials"] = trials;
    config["seed"] = seed;
    write_manifest(out, cmdline, config, seed, {out});
    std::cout << "wrote " << out << ": " << cells.size() << " grid cells\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"holographic stabiliser code toolkit"};
    app.require_subcommand(1);
    std::string cmdline = join_command_line(argc, argv);

    // build
    auto* build = app.add_subcommand("build", "construct a code bundle");
    std::string b_schlafli = "5,4", b_gauge = "none", b_out;
    size_t b_n = 0;
    build->add_option("--schlafli", b_schlafli, "tessellation, e.g. 5,4 or 4,5");
    build->add_option("-n,--layers", b_n, "number of inflation layers");
    build->add_option("--gauge", b_gauge, "bulk gauge: none, x or z");
    build->add_option("--out", b_out, "output bundle path")->required();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo logical failure rates");
    std::string s_bundle, s_pe = "0.5", s_pr = "0", s_decoder = "bp+osd", s_tracked, s_out,
                s_format = "csv";
    size_t s_osd = 0, s_bp_iters = 200, s_threads = 1;
    uint64_t s_trials = 10000, s_seed = 1;
    sim->add_option("--bundle", s_bundle, "code bundle path")->required();
    sim->add_option("--pe", s_pe, "erasure probabilities, comma separated");
    sim->add_option("--pr", s_pr, "depolarising probabilities, comma separated");
    sim->add_option("--decoder", s_decoder, "ml, peel, bp or bp+osd");
    sim->add_option("--osd-order", s_osd, "OSD search order");
    sim->add_option("--bp-iters", s_bp_iters, "max BP iterations");
    sim->add_option("--trials", s_trials, "Monte-Carlo trials per grid point");
    sim->add_option("--seed", s_seed, "RNG seed");
    sim->add_option("--threads", s_threads, "worker threads");
    sim->add_option("--tracked", s_tracked, "bulk label to track (default: first)");
    sim->add_option("--out", s_out, "output CSV path")->required();
    sim->add_option("--format", s_format, "csv, svg or json (extra artifact)");

    // entropy
    auto* ent = app.add_subcommand("entropy", "region entropies and minimal cuts");
    std::string e_bundle, e_schlafli = "5,4", e_network = "code", e_region, e_bulk = "open",
                e_out;
    size_t e_n = 0, e_window = 0;
    double e_alpha = 2.0;
    ent->add_option("--bundle", e_bundle, "code bundle path (ungauged)");
    ent->add_option("--schlafli", e_schlafli, "tessellation when no bundle is given");
    auto* e_n_opt = ent->add_option("-n,--layers", e_n, "layers when no bundle is given");
    ent->add_option("--network", e_network, "code, blackhole or wormhole");
    ent->add_option("--region", e_region, "leg indices, e.g. 0-4 or 1,3,5 or horizon or all");
    ent->add_option("--window", e_window, "emit every contiguous boundary window of this width");
    ent->add_option("--bulk", e_bulk, "bulk treatment: open or fixed_plus");
    ent->add_option("--alpha", e_alpha, "Renyi order (entropy is order independent)");
    ent->add_option("--out", e_out, "output CSV path")->required();

    // smooth
    auto* smo = app.add_subcommand("smooth", "reduce stabiliser generator weights");
    std::string m_bundle, m_out;
    size_t m_target = 10, m_iters = 8000, m_candidates = 1200;
    uint64_t m_seed = 1;
    bool m_bit_weight = false;
    smo->add_option("--bundle", m_bundle, "code bundle path")->required();
    smo->add_option("--target-weight", m_target, "stop once max weight reaches this");
    smo->add_option("--max-iters", m_iters, "iteration budget");
    smo->add_option("--candidates", m_candidates, "sampled partners per iteration");
    smo->add_option("--seed", m_seed, "RNG seed");
    smo->add_flag("--bit-weight", m_bit_weight, "minimise symplectic bits instead of qubits");
    smo->add_option("--out", m_out, "output bundle path")->required();

    // blackhole
    auto* bh = app.add_subcommand("blackhole", "horizon report for a punctured network");
    size_t bh_n = 1;
    std::string bh_out;
    bh->add_option("-n,--layers", bh_n, "number of inflation layers")->required();
    bh->add_option("--out", bh_out, "output JSON path")->required();

    // wormhole
    auto* wh = app.add_subcommand("wormhole", "two-sided horizon-glued network report");
    size_t wh_n = 1;
    std::string wh_out;
    wh->add_option("-n,--layers", wh_n, "number of inflation layers")->required();
    wh->add_option("--out", wh_out, "output JSON path")->required();

    // foliate
    auto* fol = app.add_subcommand("foliate", "stack code layers into a spacetime state");
    std::string f_bundle, f_schlafli = "5,4", f_gauge = "none", f_out;
    size_t f_n = 0, f_rounds = 1;
    fol->add_option("--bundle", f_bundle, "code bundle path");
    fol->add_option("--schlafli", f_schlafli, "tessellation when no bundle is given");
    auto* f_n_opt = fol->add_option("-n,--layers", f_n, "layers when no bundle is given");
    fol->add_option("--gauge", f_gauge, "bulk gauge when building from flags");
    fol->add_option("--rounds", f_rounds, "number of stacked rounds");
    fol->add_option("--out", f_out, "output JSON path")->required();

    // region-map
    auto* reg = app.add_subcommand("region-map", "suppression map between two code sizes");
    std::string r_small, r_large, r_pe = "0.3,0.4,0.5", r_pr = "0", r_decoder = "bp+osd", r_out;
    size_t r_osd = 0, r_bp_iters = 200, r_threads = 1;
    uint64_t r_trials = 10000, r_seed = 1;
    reg->add_option("--bundle-small", r_small, "smaller code bundle")->required();
    reg->add_option("--bundle-large", r_large, "larger code bundle")->required();
    reg->add_option("--pe", r_pe, "erasure probabilities, comma separated");
    reg->add_option("--pr", r_pr, "depolarising probabilities, comma separated");
    reg->add_option("--decoder", r_decoder, "ml, peel, bp or bp+osd");
    reg->add_option("--osd-order", r_osd, "OSD search order");
    reg->add_option("--bp-iters", r_bp_iters, "max BP iterations");
    reg->add_option("--trials", r_trials, "Monte-Carlo trials per grid point");
    reg->add_option("--seed", r_seed, "RNG seed");
    reg->add_option("--threads", r_threads, "worker threads");
    reg->add_option("--out", r_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (build->parsed()) {
            return cmd_build(cmdline, b_schlafli, b_n, b_gauge, b_out);
        }
        if (sim->parsed()) {
            return cmd_simulate(cmdline, s_bundle, s_pe, s_pr, s_decoder, s_osd, s_bp_iters,
                                s_trials, s_seed, s_threads, s_tracked, s_out, s_format);
        }
        if (ent->parsed()) {
            return cmd_entropy(cmdline, e_bundle, e_schlafli, e_n, e_n_opt->count() > 0,
                               e_network, e_region, e_window, e_bulk, e_alpha, e_out);
        }
        if (smo->parsed()) {
            return cmd_smooth(cmdline, m_bundle, m_target, m_iters, m_candidates, m_seed,
                              m_bit_weight, m_out);
        }
        if (bh->parsed()) {
            return cmd_blackhole(cmdline, bh_n, bh_out);
        }
        if (wh->parsed()) {
            return cmd_wormhole(cmdline, wh_n, wh_out);
        }
        if (fol->parsed()) {
            return cmd_foliate(cmdline, f_bundle, f_schlafli, f_n, f_n_opt->count() > 0, f_gauge,
                               f_rounds, f_out);
        }
        if (reg->parsed()) {
            return cmd_region_map(cmdline, r_small, r_large, r_pe, r_pr, r_decoder, r_osd,
                                  r_bp_iters, r_trials, r_seed, r_threads, r_out);
        }
        throw std::invalid_argument("no subcommand given");
    } catch (const holocode::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
