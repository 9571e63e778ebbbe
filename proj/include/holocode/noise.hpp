#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "holocode/decoders.hpp"
#include "holocode/rng.hpp"

namespace holocode {

struct NoiseSpec {
    double p_e = 0.0;  // erasure probability per boundary qubit
    double p_r = 0.0;  // depolarising probability per non-erased qubit

    void validate() const {
        if (!(p_e >= 0.0 && p_e <= 1.0) || !(p_r >= 0.0 && p_r <= 1.0)) {
            throw std::invalid_argument("NoiseSpec: probabilities must lie in [0,1]");
        }
    }
};

enum class DecoderMethod { MlErasure, Peeling, Bp, BpOsd };

struct DecoderConfig {
    DecoderMethod method = DecoderMethod::BpOsd;
    size_t bp_max_iter = 200;
    size_t osd_order = 0;
};

inline std::string decoder_tag(const DecoderConfig& d) {
    switch (d.method) {
        case DecoderMethod::MlErasure:
            return "ml";
        case DecoderMethod::Peeling:
            return "peel";
        case DecoderMethod::Bp:
            return "bp";
        case DecoderMethod::BpOsd:
            return "bp+osd" + std::to_string(d.osd_order);
    }
    return "unknown";
}

// Erased qubits are replaced by a uniformly random Pauli at a known location;
// intact qubits depolarise with probability p_r (X, Y, Z each p_r/3).
inline std::pair<ErasurePattern, PauliString> sample_error(const NoiseSpec& noise,
                                                           size_t n_boundary, CounterRng& rng) {
    ErasurePattern pattern;
    pattern.erased.assign(n_boundary, 0);
    PauliString error(n_boundary);
    for (size_t q = 0; q < n_boundary; q++) {
        if (rng.uniform01() < noise.p_e) {
            pattern.erased[q] = 1;
            Pauli p = static_cast<Pauli>(rng.next() & 3);
            if (p != Pauli::I) error.set(q, p);
        } else if (noise.p_r > 0.0 && rng.uniform01() < noise.p_r) {
            static constexpr Pauli letters[3] = {Pauli::X, Pauli::Z, Pauli::Y};
            error.set(q, letters[rng.below(3)]);
        }
    }
    return {std::move(pattern), std::move(error)};
}

struct ResultRow {
    size_t n = 0;
    double p_e = 0.0;
    double p_r = 0.0;
    uint64_t trials = 0;
    uint64_t failures = 0;
    double rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    uint64_t seed = 0;
    std::string decoder;
};

// 95% Wilson score interval.
inline std::pair<double, double> wilson_interval(uint64_t failures, uint64_t trials,
                                                 double z = 1.959963984540054) {
    if (trials == 0) {
        throw std::invalid_argument("wilson_interval: zero trials");
    }
    double nn = static_cast<double>(trials);
    double p = static_cast<double>(failures) / nn;
    double z2 = z * z;
    double denom = 1.0 + z2 / nn;
    double center = (p + z2 / (2.0 * nn)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    double lo = center - half;
    double hi = center + half;
    return {lo < 0.0 ? 0.0 : lo, hi > 1.0 ? 1.0 : hi};
}

// One Monte-Carlo trial; decoding problems are counted as failures rather
// than aborting the run.
inline bool trial_failure(const HolographicCode& code, size_t tracked, const NoiseSpec& noise,
                          const DecoderConfig& dec, CounterRng& rng) {
    auto [erasure, error] = sample_error(noise, code.n_boundary, rng);
    try {
        switch (dec.method) {
            case DecoderMethod::MlErasure:
                return !ml_erasure_decode(code, erasure, code.bulk_labels[tracked]);
            case DecoderMethod::Peeling: {
                auto syndrome = syndrome_of(code.checks, error);
                DecodeResult r = peel_erasure_decode(code, erasure, syndrome);
                if (!r.converged) return true;
                return logical_failure(code, tracked, r.correction, error);
            }
            case DecoderMethod::Bp:
            case DecoderMethod::BpOsd: {
                size_t n = code.n_boundary;
                std::vector<double> priors(2 * n);
                double intact = std::max(2.0 * noise.p_r / 3.0, 1e-3);
                for (size_t q = 0; q < n; q++) {
                    double p = erasure.erased[q] ? 0.5 : intact;
                    priors[q] = p;
                    priors[n + q] = p;
                }
                auto syndrome = syndrome_of(code.checks, error);
                BpResult bp = bp_decode(code.checks, priors, syndrome, {dec.bp_max_iter});
                std::vector<uint8_t> decision = bp.decision;
                if (dec.method == DecoderMethod::BpOsd) {
                    decision = osd_postprocess(code.checks, bp.posterior, syndrome, dec.osd_order);
                }
                PauliString correction = correction_from_bits(decision, n);
                return logical_failure(code, tracked, correction, error);
            }
        }
    } catch (const std::exception&) {
        return true;
    }
    return true;
}

// Monte-Carlo logical failure rate over a noise grid. Trials use counter-based
// streams keyed by (seed, point index, trial index), so the result is
// independent of the thread count and worker scheduling.
inline std::vector<ResultRow> estimate_logical_rate(const HolographicCode& code,
                                                    const std::string& tracked,
                                                    const std::vector<NoiseSpec>& grid,
                                                    const DecoderConfig& dec, uint64_t trials,
                                                    uint64_t seed, size_t threads = 1,
                                                    uint64_t point_offset = 0) {
    if (trials < 1) {
        throw std::invalid_argument("estimate_logical_rate: at least one trial required");
    }
    size_t tracked_idx = bulk_index_of(code, tracked);
    if (dec.method == DecoderMethod::MlErasure) {
        for (const auto& g : grid) {
            if (g.p_r != 0.0) {
                throw std::invalid_argument("ml decoder handles pure erasure only (p_r = 0)");
            }
        }
    }
    if (threads == 0) threads = 1;
    std::vector<ResultRow> rows;
    for (size_t pi = 0; pi < grid.size(); pi++) {
        grid[pi].validate();
        uint64_t point = point_offset + pi;
        std::vector<uint64_t> fail_by_worker(threads, 0);
        auto worker = [&](size_t w) {
            uint64_t lo = trials * w / threads;
            uint64_t hi = trials * (w + 1) / threads;
            uint64_t local = 0;
            for (uint64_t t = lo; t < hi; t++) {
                CounterRng rng(seed, point, t);
                if (trial_failure(code, tracked_idx, grid[pi], dec, rng)) local++;
            }
            fail_by_worker[w] = local;
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (size_t w = 0; w < threads; w++) {
                pool.emplace_back(worker, w);
            }
            for (auto& th : pool) th.join();
        }
        uint64_t failures = 0;
        for (uint64_t f : fail_by_worker) failures += f;
        ResultRow row;
        row.n = code.n_layers;
        row.p_e = grid[pi].p_e;
        row.p_r = grid[pi].p_r;
        row.trials = trials;
        row.failures = failures;
        row.rate = static_cast<double>(failures) / static_cast<double>(trials);
        auto [lo, hi] = wilson_interval(failures, trials);
        row.ci_low = lo;
        row.ci_high = hi;
        row.seed = seed;
        row.decoder = decoder_tag(dec);
        rows.push_back(std::move(row));
    }
    return rows;
}

// Exact failure rate of the ML erasure oracle by enumeration over all 2^n
// erasure patterns. Only feasible for small boundaries.
inline double exact_ml_erasure_rate(const HolographicCode& code, const std::string& tracked,
                                    double p_e) {
    size_t n = code.n_boundary;
    if (n >= 24) {
        throw std::invalid_argument("exact_ml_erasure_rate: boundary too large to enumerate");
    }
    double total = 0.0;
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); mask++) {
        ErasurePattern pat;
        pat.erased.assign(n, 0);
        size_t w = 0;
        for (size_t q = 0; q < n; q++) {
            if ((mask >> q) & 1) {
                pat.erased[q] = 1;
                w++;
            }
        }
        if (!ml_erasure_decode(code, pat, tracked)) {
            total += std::pow(p_e, static_cast<double>(w)) *
                     std::pow(1.0 - p_e, static_cast<double>(n - w));
        }
    }
    return total;
}

struct DistanceFit {
    double prefactor = 0.0;
    double exponent = 0.0;
    size_t points_used = 0;
};

// Log-log least squares over the low-rate window.
inline DistanceFit fit_distance(const std::vector<std::pair<double, double>>& curve,
                                double rate_min, double rate_max = 0.1) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [p, rate] : curve) {
        if (p > 0.0 && rate >= rate_min && rate <= rate_max) {
            pts.emplace_back(std::log(p), std::log(rate));
        }
    }
    if (pts.size() < 3) {
        throw std::invalid_argument("fit_distance: fewer than 3 points in the fit window");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = static_cast<double>(pts.size());
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double intercept = (sy - slope * sx) / m;
    DistanceFit fit;
    fit.exponent = slope;
    fit.prefactor = std::exp(intercept);
    fit.points_used = pts.size();
    return fit;
}

enum class SuppressStatus { Suppress, No, Unknown };

inline const char* suppress_name(SuppressStatus s) {
    switch (s) {
        case SuppressStatus::Suppress:
            return "suppress";
        case SuppressStatus::No:
            return "no";
        default:
            return "unknown";
    }
}

// Suppressing iff the larger code's rate is below the smaller one's with
// 95% CI separation; CI overlap is undecided.
inline SuppressStatus suppression_status(const ResultRow& small_n, const ResultRow& large_n) {
    if (large_n.ci_high < small_n.ci_low) return SuppressStatus::Suppress;
    if (large_n.ci_low > small_n.ci_high) return SuppressStatus::No;
    return SuppressStatus::Unknown;
}

struct RegionCell {
    double p_e = 0.0;
    double p_r = 0.0;
    SuppressStatus status = SuppressStatus::Unknown;
};

inline std::vector<RegionCell> region_map(const std::vector<ResultRow>& small_rows,
                                          const std::vector<ResultRow>& large_rows) {
    if (small_rows.size() != large_rows.size()) {
        throw std::invalid_argument("region_map: row lists must cover the same grid");
    }
    std::vector<RegionCell> cells;
    for (size_t i = 0; i < small_rows.size(); i++) {
        if (small_rows[i].p_e != large_rows[i].p_e || small_rows[i].p_r != large_rows[i].p_r) {
            throw std::invalid_argument("region_map: grid mismatch");
        }
        cells.push_back(
            {small_rows[i].p_e, small_rows[i].p_r, suppression_status(small_rows[i], large_rows[i])});
    }
    return cells;
}

// Crossings of two rate curves sharing the same abscissa grid, located by
// log-linear interpolation. Grid points with a zero rate are skipped.
inline std::vector<double> crossing_points(const std::vector<std::pair<double, double>>& a,
                                           const std::vector<std::pair<double, double>>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("crossing_points: curves must share a grid");
    }
    std::vector<double> out;
    for (size_t i = 0; i + 1 < a.size(); i++) {
        if (a[i].first != b[i].first || a[i + 1].first != b[i + 1].first) {
            throw std::invalid_argument("crossing_points: grid mismatch");
        }
        double r[4] = {a[i].second, b[i].second, a[i + 1].second, b[i + 1].second};
        if (r[0] <= 0 || r[1] <= 0 || r[2] <= 0 || r[3] <= 0) continue;
        double d0 = std::log(r[0]) - std::log(r[1]);
        double d1 = std::log(r[2]) - std::log(r[3]);
        if (d0 == 0.0) {
            out.push_back(a[i].first);
            continue;
        }
        if ((d0 < 0) != (d1 < 0) && d1 != 0.0) {
            double x0 = std::log(a[i].first);
            double x1 = std::log(a[i + 1].first);
            double x = x0 + (0.0 - d0) * (x1 - x0) / (d1 - d0);
            out.push_back(std::exp(x));
        }
    }
    return out;
}

// %.6g keeps the CSV byte-stable across platforms with IEEE doubles.
inline std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string results_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "n,p_e,p_r,trials,failures,rate,ci_low,ci_high,seed,decoder\n";
    for (const auto& r : rows) {
        out << r.n << "," << format_g6(r.p_e) << "," << format_g6(r.p_r) << "," << r.trials << ","
            << r.failures << "," << format_g6(r.rate) << "," << format_g6(r.ci_low) << ","
            << format_g6(r.ci_high) << "," << r.seed << "," << r.decoder << "\n";
    }
    return out.str();
}

inline std::string region_csv(const std::vector<RegionCell>& cells) {
    std::ostringstream out;
    out << "p_e,p_r,status\n";
    for (const auto& c : cells) {
        out << format_g6(c.p_e) << "," << format_g6(c.p_r) << "," << suppress_name(c.status)
            << "\n";
    }
    return out.str();
}

}  // namespace holocode
