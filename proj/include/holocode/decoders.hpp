#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "holocode/network.hpp"

namespace holocode {

struct ErasurePattern {
    std::vector<uint8_t> erased;  // one flag per boundary qubit

    size_t count() const {
        size_t c = 0;
        for (uint8_t e : erased) c += e ? 1 : 0;
        return c;
    }
};

// Syndrome bit c is the symplectic product of the error with check row c.
inline std::vector<uint8_t> syndrome_of(const CheckMatrix& checks, const PauliString& error) {
    std::vector<uint8_t> s(checks.rows.size());
    for (size_t c = 0; c < checks.rows.size(); c++) {
        s[c] = static_cast<uint8_t>(PauliString::symplectic_product(error, checks.rows[c]));
    }
    return s;
}

struct DecodeResult {
    PauliString correction;
    bool converged = false;
};

// Failure of the tracked logical qubit: the residual (correction times true
// error) must commute with every check to count as a valid correction at all,
// and then fails exactly when it anticommutes with the tracked pair. The test
// is frame independent.
inline bool logical_failure(const HolographicCode& code, size_t tracked,
                            const PauliString& correction, const PauliString& error) {
    PauliString residual = correction * error;
    for (const auto& c : code.checks.rows) {
        if (!residual.commutes_with(c)) {
            return true;
        }
    }
    return !residual.commutes_with(code.logicals[tracked].x_rep) ||
           !residual.commutes_with(code.logicals[tracked].z_rep);
}

inline size_t bulk_index_of(const HolographicCode& code, const std::string& label) {
    for (size_t k = 0; k < code.n_bulk; k++) {
        if (code.bulk_labels[k] == label) return k;
    }
    throw std::invalid_argument("unknown bulk label '" + label + "'");
}

// Exact maximum-likelihood erasure oracle: the tracked qubit survives the
// erasure iff no element of its logical cosets is supported inside the erased
// set, i.e. the intact-column restrictions of X and Z representatives stay
// independent of the intact-column check row space.
inline bool ml_erasure_decode(const HolographicCode& code, const ErasurePattern& erasure,
                              const std::string& tracked) {
    if (erasure.erased.size() != code.n_boundary) {
        throw std::invalid_argument("ml_erasure_decode: erasure length mismatch");
    }
    size_t t = bulk_index_of(code, tracked);
    size_t n = code.n_boundary;
    std::vector<size_t> intact_cols;
    for (size_t q = 0; q < n; q++) {
        if (!erasure.erased[q]) {
            intact_cols.push_back(q);
            intact_cols.push_back(n + q);
        }
    }
    CheckMatrix stacked = code.checks;
    stacked.push(code.logicals[t].x_rep);
    stacked.push(code.logicals[t].z_rep);
    size_t rank_checks = rank_on_columns(code.checks.to_bits(), intact_cols);
    size_t rank_all = rank_on_columns(stacked.to_bits(), intact_cols);
    return rank_all == rank_checks + 2;
}

// Peeling erasure decoder over the binary symplectic picture: each erased
// qubit contributes two unknowns (its X and Z error bits); a check becomes
// peelable when exactly one incident unknown remains. Stalls are reported as
// converged=false, a contradiction on a fully resolved check means the
// syndrome was not produced by an error on the erased set.
inline DecodeResult peel_erasure_decode(const HolographicCode& code,
                                        const ErasurePattern& erasure,
                                        const std::vector<uint8_t>& syndrome) {
    size_t n = code.n_boundary;
    if (erasure.erased.size() != n) {
        throw std::invalid_argument("peel_erasure_decode: erasure length mismatch");
    }
    const auto& rows = code.checks.rows;
    if (syndrome.size() != rows.size()) {
        throw std::invalid_argument("peel_erasure_decode: syndrome length mismatch");
    }

    // variable v: v = 2q for the X bit of erased qubit q, 2q+1 for the Z bit
    auto var_in_check = [&](const PauliString& row, size_t v) {
        size_t q = v / 2;
        return v % 2 == 0 ? row.z_bit(q) : row.x_bit(q);
    };
    std::vector<size_t> vars;
    std::vector<uint8_t> is_var(2 * n, 0);
    for (size_t q = 0; q < n; q++) {
        if (erasure.erased[q]) {
            vars.push_back(2 * q);
            vars.push_back(2 * q + 1);
            is_var[2 * q] = is_var[2 * q + 1] = 1;
        }
    }
    std::vector<uint8_t> resolved(2 * n, 0);
    std::vector<uint8_t> value(2 * n, 0);
    std::vector<uint8_t> s = syndrome;
    std::vector<size_t> unresolved_count(rows.size(), 0);
    for (size_t c = 0; c < rows.size(); c++) {
        for (size_t v : vars) {
            if (var_in_check(rows[c], v)) unresolved_count[c]++;
        }
        if (unresolved_count[c] == 0 && s[c]) {
            throw std::invalid_argument("peel_erasure_decode: syndrome inconsistent with erasure");
        }
    }

    size_t remaining = vars.size();
    bool progress = true;
    while (progress && remaining > 0) {
        progress = false;
        for (size_t c = 0; c < rows.size(); c++) {
            if (unresolved_count[c] != 1) continue;
            size_t pivot = SIZE_MAX;
            for (size_t v : vars) {
                if (!resolved[v] && var_in_check(rows[c], v)) {
                    pivot = v;
                    break;
                }
            }
            if (pivot == SIZE_MAX) {
                throw std::runtime_error("peel_erasure_decode: unresolved counter out of sync");
            }
            value[pivot] = s[c];
            resolved[pivot] = 1;
            remaining--;
            progress = true;
            for (size_t c2 = 0; c2 < rows.size(); c2++) {
                if (!var_in_check(rows[c2], pivot)) continue;
                unresolved_count[c2]--;
                if (value[pivot]) s[c2] ^= 1;
                if (unresolved_count[c2] == 0 && s[c2]) {
                    throw std::invalid_argument(
                        "peel_erasure_decode: syndrome inconsistent with erasure");
                }
            }
        }
    }

    DecodeResult out;
    out.converged = remaining == 0;
    out.correction = PauliString(n);
    for (size_t q = 0; q < n; q++) {
        if (!erasure.erased[q]) continue;
        bool xb = value[2 * q] != 0;
        bool zb = value[2 * q + 1] != 0;
        if (xb || zb) {
            out.correction.set(q, static_cast<Pauli>((xb ? 1 : 0) | (zb ? 2 : 0)));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Belief propagation over the binary symplectic variables.

struct BpConfig {
    size_t max_iter = 200;
};

struct BpResult {
    std::vector<uint8_t> decision;   // 2n bits: x variables then z variables
    std::vector<double> posterior;   // log-likelihood ratios, positive means 0
    bool converged = false;
};

namespace detail {

// Decoding incidence: error bit x_q enters check c through the check's Z
// component at q and vice versa.
inline std::vector<std::vector<size_t>> decoding_adjacency(const CheckMatrix& checks) {
    size_t n = checks.num_qubits;
    std::vector<std::vector<size_t>> vars_of(checks.rows.size());
    for (size_t c = 0; c < checks.rows.size(); c++) {
        for (size_t q = 0; q < n; q++) {
            if (checks.rows[c].z_bit(q)) vars_of[c].push_back(q);
        }
        for (size_t q = 0; q < n; q++) {
            if (checks.rows[c].x_bit(q)) vars_of[c].push_back(n + q);
        }
    }
    return vars_of;
}

inline std::vector<uint8_t> syndrome_of_bits(const std::vector<std::vector<size_t>>& vars_of,
                                             const std::vector<uint8_t>& decision) {
    std::vector<uint8_t> s(vars_of.size(), 0);
    for (size_t c = 0; c < vars_of.size(); c++) {
        for (size_t v : vars_of[c]) {
            s[c] ^= decision[v];
        }
    }
    return s;
}

// Residual-syndrome repair for exactly tied variables: flip ties in index
// order whenever the flip strictly reduces the residual weight. Makes the
// all-zero-message fixed points deterministic.
inline void repair_ties(const std::vector<std::vector<size_t>>& vars_of,
                        const std::vector<std::vector<size_t>>& checks_of,
                        const std::vector<double>& posterior, std::vector<uint8_t>& decision,
                        const std::vector<uint8_t>& syndrome, double tie_eps) {
    std::vector<uint8_t> residual = syndrome_of_bits(vars_of, decision);
    for (size_t c = 0; c < residual.size(); c++) {
        residual[c] ^= syndrome[c];
    }
    size_t weight = 0;
    for (uint8_t r : residual) weight += r;
    if (weight == 0) return;
    for (size_t v = 0; v < decision.size() && weight > 0; v++) {
        if (std::abs(posterior[v]) > tie_eps) continue;
        size_t gain = 0;
        for (size_t c : checks_of[v]) {
            gain += residual[c] ? 1 : 0;
        }
        size_t loss = checks_of[v].size() - gain;
        if (gain > loss) {
            decision[v] ^= 1;
            for (size_t c : checks_of[v]) {
                residual[c] ^= 1;
                weight += residual[c] ? 1 : -1;
            }
        }
    }
}

}  // namespace detail

// Parallel-schedule product-sum BP. priors[v] is the probability that binary
// variable v equals 1 (v < n: X component of qubit v, v >= n: Z component).
// Converged means the hard decision reproduces the syndrome; zero-LLR ties
// are first held at 0 and then repaired greedily in index order.
inline BpResult bp_decode(const CheckMatrix& checks, const std::vector<double>& priors,
                          const std::vector<uint8_t>& syndrome, const BpConfig& config = {}) {
    size_t n = checks.num_qubits;
    size_t nv = 2 * n;
    if (priors.size() != nv) {
        throw std::invalid_argument("bp_decode: one prior per binary variable required");
    }
    if (syndrome.size() != checks.rows.size()) {
        throw std::invalid_argument("bp_decode: syndrome length mismatch");
    }
    for (double p : priors) {
        if (!(p > 0.0) || !(p < 1.0)) {
            throw std::invalid_argument("bp_decode: priors must lie strictly inside (0,1)");
        }
    }
    auto vars_of = detail::decoding_adjacency(checks);
    std::vector<std::vector<size_t>> checks_of(nv);
    for (size_t c = 0; c < vars_of.size(); c++) {
        for (size_t v : vars_of[c]) {
            checks_of[v].push_back(c);
        }
    }
    std::vector<double> prior_llr(nv);
    for (size_t v = 0; v < nv; v++) {
        prior_llr[v] = std::log((1.0 - priors[v]) / priors[v]);
    }

    const double tie_eps = 1e-9;
    const double msg_cap = 40.0;
    auto clamp = [&](double x) { return std::max(-msg_cap, std::min(msg_cap, x)); };

    // messages indexed by (check, position in vars_of[c])
    std::vector<std::vector<double>> v_to_c(vars_of.size());
    std::vector<std::vector<double>> c_to_v(vars_of.size());
    for (size_t c = 0; c < vars_of.size(); c++) {
        v_to_c[c].resize(vars_of[c].size());
        c_to_v[c].assign(vars_of[c].size(), 0.0);
        for (size_t k = 0; k < vars_of[c].size(); k++) {
            v_to_c[c][k] = prior_llr[vars_of[c][k]];
        }
    }

    BpResult out;
    out.decision.assign(nv, 0);
    out.posterior = prior_llr;

    for (size_t iter = 0; iter < config.max_iter; iter++) {
        for (size_t c = 0; c < vars_of.size(); c++) {
            size_t d = vars_of[c].size();
            if (d == 0) continue;
            // forward/backward partial products of tanh(msg/2)
            std::vector<double> fwd(d + 1, 1.0), bwd(d + 1, 1.0);
            for (size_t k = 0; k < d; k++) {
                fwd[k + 1] = fwd[k] * std::tanh(v_to_c[c][k] / 2.0);
            }
            for (size_t k = d; k > 0; k--) {
                bwd[k - 1] = bwd[k] * std::tanh(v_to_c[c][k - 1] / 2.0);
            }
            double sign = syndrome[c] ? -1.0 : 1.0;
            for (size_t k = 0; k < d; k++) {
                double prod = fwd[k] * bwd[k + 1];
                prod = std::max(-1.0 + 1e-14, std::min(1.0 - 1e-14, prod));
                c_to_v[c][k] = clamp(sign * 2.0 * std::atanh(prod));
            }
        }
        for (size_t v = 0; v < nv; v++) {
            out.posterior[v] = prior_llr[v];
        }
        for (size_t c = 0; c < vars_of.size(); c++) {
            for (size_t k = 0; k < vars_of[c].size(); k++) {
                out.posterior[vars_of[c][k]] += c_to_v[c][k];
            }
        }
        for (size_t c = 0; c < vars_of.size(); c++) {
            for (size_t k = 0; k < vars_of[c].size(); k++) {
                v_to_c[c][k] = clamp(out.posterior[vars_of[c][k]] - c_to_v[c][k]);
            }
        }
        for (size_t v = 0; v < nv; v++) {
            out.decision[v] = out.posterior[v] < -tie_eps ? 1 : 0;
        }
        if (detail::syndrome_of_bits(vars_of, out.decision) == syndrome) {
            out.converged = true;
            return out;
        }
    }
    detail::repair_ties(vars_of, checks_of, out.posterior, out.decision, syndrome, tie_eps);
    out.converged = detail::syndrome_of_bits(vars_of, out.decision) == syndrome;
    return out;
}

// ---------------------------------------------------------------------------
// Ordered-statistics post-processing.

// Re-solves the syndrome on a reliability-sorted information set. Columns are
// ranked most-error-prone first (ascending posterior LLR, ties by index) and
// pivots chosen greedily in that order. Order 0 sets every free variable to
// zero; order lambda > 0 additionally sweeps all 2^lambda patterns on the
// lambda most suspect free variables and keeps the candidate with the best
// posterior likelihood (ties: lowest pattern index). The result always
// satisfies the syndrome.
inline std::vector<uint8_t> osd_postprocess(const CheckMatrix& checks,
                                            const std::vector<double>& posterior,
                                            const std::vector<uint8_t>& syndrome,
                                            size_t order) {
    size_t n = checks.num_qubits;
    size_t nv = 2 * n;
    if (posterior.size() != nv) {
        throw std::invalid_argument("osd_postprocess: posterior size mismatch");
    }
    if (syndrome.size() != checks.rows.size()) {
        throw std::invalid_argument("osd_postprocess: syndrome length mismatch");
    }
    std::vector<size_t> cols(nv);
    for (size_t v = 0; v < nv; v++) cols[v] = v;
    std::stable_sort(cols.begin(), cols.end(), [&](size_t a, size_t b) {
        if (posterior[a] != posterior[b]) return posterior[a] < posterior[b];
        return a < b;
    });

    // decoding-convention bit matrix with an augmented syndrome column
    size_t m = checks.rows.size();
    BitMatrix h(m, nv + 1);
    for (size_t c = 0; c < m; c++) {
        for (size_t q = 0; q < n; q++) {
            if (checks.rows[c].z_bit(q)) h.set(c, q, true);
            if (checks.rows[c].x_bit(q)) h.set(c, n + q, true);
        }
        if (syndrome[c]) h.set(c, nv, true);
    }
    std::vector<size_t> pivot_col;
    std::vector<size_t> pivot_row;
    std::vector<uint8_t> is_pivot(nv, 0);
    size_t r = 0;
    for (size_t v : cols) {
        if (r == m) break;
        size_t hit = SIZE_MAX;
        for (size_t i = r; i < m; i++) {
            if (h.get(i, v)) {
                hit = i;
                break;
            }
        }
        if (hit == SIZE_MAX) continue;
        h.swap_rows(r, hit);
        for (size_t i = 0; i < m; i++) {
            if (i != r && h.get(i, v)) {
                h.xor_rows(i, r);
            }
        }
        pivot_col.push_back(v);
        pivot_row.push_back(r);
        is_pivot[v] = 1;
        r++;
    }
    for (size_t i = r; i < m; i++) {
        if (h.get(i, nv)) {
            throw std::runtime_error("osd_postprocess: syndrome outside the check row space");
        }
    }

    // base solution: free variables zero
    std::vector<uint8_t> base(nv, 0);
    for (size_t k = 0; k < pivot_col.size(); k++) {
        base[pivot_col[k]] = h.get(pivot_row[k], nv) ? 1 : 0;
    }
    if (order == 0 || nv == pivot_col.size()) {
        return base;
    }

    std::vector<size_t> free_cols;
    for (size_t v : cols) {
        if (!is_pivot[v]) free_cols.push_back(v);
        if (free_cols.size() == order || free_cols.size() >= 20) break;
    }
    size_t lambda = free_cols.size();
    // contribution of flipping each selected free variable to the pivots
    std::vector<std::vector<uint8_t>> contrib(lambda, std::vector<uint8_t>(pivot_col.size(), 0));
    for (size_t j = 0; j < lambda; j++) {
        for (size_t k = 0; k < pivot_col.size(); k++) {
            contrib[j][k] = h.get(pivot_row[k], free_cols[j]) ? 1 : 0;
        }
    }
    auto score_of = [&](const std::vector<uint8_t>& sol) {
        double s = 0.0;
        for (size_t v = 0; v < nv; v++) {
            if (sol[v]) s += posterior[v];
        }
        return s;  // lower is more likely
    };
    std::vector<uint8_t> best = base;
    double best_score = score_of(base);
    std::vector<uint8_t> cand(nv);
    for (uint64_t pattern = 1; pattern < (uint64_t(1) << lambda); pattern++) {
        cand = base;
        for (size_t j = 0; j < lambda; j++) {
            if ((pattern >> j) & 1) {
                cand[free_cols[j]] = 1;
                for (size_t k = 0; k < pivot_col.size(); k++) {
                    cand[pivot_col[k]] ^= contrib[j][k];
                }
            }
        }
        double sc = score_of(cand);
        if (sc < best_score) {
            best_score = sc;
            best = cand;
        }
    }
    return best;
}

inline PauliString correction_from_bits(const std::vector<uint8_t>& decision, size_t n) {
    PauliString p(n);
    for (size_t q = 0; q < n; q++) {
        bool xb = decision[q] != 0;
        bool zb = decision[n + q] != 0;
        if (xb || zb) {
            p.set(q, static_cast<Pauli>((xb ? 1 : 0) | (zb ? 2 : 0)));
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Generator smoothing.

struct SmoothConfig {
    size_t max_iters = 8000;
    size_t candidates = 1200;
    size_t target_weight = 10;
    uint64_t seed = 0;
    bool bit_weight = false;  // count symplectic bits instead of touched qubits
};

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline size_t smooth_weight(const PauliString& p, bool bit_weight) {
    if (!bit_weight) return p.weight();
    size_t w = 0;
    for (size_t i = 0; i < p.x.size(); i++) {
        w += __builtin_popcountll(p.x[i]) + __builtin_popcountll(p.z[i]);
    }
    return w;
}

inline uint64_t pauli_bits_hash(const PauliString& p) {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t w : p.x) {
        h = (h ^ w) * 1099511628211ull;
    }
    for (uint64_t w : p.z) {
        h = (h ^ w) * 1099511628211ull;
    }
    return h;
}

// Signed echelon form over the 2n symplectic columns. add() reduces the
// element against the stored pivots (exact group products, phases kept) and
// keeps it iff it increases the rank.
struct SignedEchelon {
    size_t num_qubits = 0;
    std::vector<std::pair<size_t, PauliString>> pivots;

    bool bit(const PauliString& p, size_t col) const {
        return col < num_qubits ? p.x_bit(col) : p.z_bit(col - num_qubits);
    }

    bool add(PauliString p) {
        for (auto& [col, vec] : pivots) {
            if (bit(p, col)) p *= vec;
        }
        for (size_t col = 0; col < 2 * num_qubits; col++) {
            if (bit(p, col)) {
                pivots.emplace_back(col, std::move(p));
                return true;
            }
        }
        return false;
    }
};

}  // namespace detail

// Row-weight reduction in three stages, all phase-exact (every new row is a
// product of input rows, so the signed row space is preserved and the maximum
// row weight never increases across accepted steps).
//
// Stage 1 is the plain greedy: take the currently heaviest row and XOR a
// candidate row into it whenever that strictly reduces its weight. On easy
// inputs this alone reaches target_weight and the function returns. The
// greedy stalls once the heaviest row has no single-row improvement, which
// happens far above the target on the canonical check bases of the larger
// codes (their rows mix boundary-wide sweeps into every generator).
//
// Stage 2 mines the row group for light elements directly: eliminate on the
// complement of every contiguous qubit window (width = target_weight), then
// run randomized eliminations that alternate full column shuffles with random
// qubit subsets, keeping every element within target_weight + 6. The light
// pool is assembled lightest-first into a signed echelon basis, which for a
// fixed pool minimises the maximum basis weight.
//
// Stage 3 completes the rank from the current rows (so the row space is
// preserved no matter what the pool missed), then drives each completion row
// toward its coset minimum with randomized information-set reductions and a
// single/pair product descent against the rest of the basis.
//
// Deterministic for a given config on any platform: all randomness comes from
// splitmix64 from config.seed. Cost is dominated by the randomized
// eliminations, roughly max_iters Gaussian passes over the matrix.
inline CheckMatrix smooth_generators(const CheckMatrix& checks, const SmoothConfig& config = {}) {
    CheckMatrix out = checks;
    size_t m = out.rows.size();
    size_t n = out.num_qubits;
    if (m < 2) return out;
    uint64_t rng_state = config.seed;
    auto next_rng = [&]() {
        rng_state += 0x9e3779b97f4a7c15ull;
        return detail::splitmix64(rng_state);
    };
    auto weight_of = [&](const PauliString& p) {
        return detail::smooth_weight(p, config.bit_weight);
    };

    std::vector<size_t> weights(m);
    for (size_t i = 0; i < m; i++) {
        weights[i] = weight_of(out.rows[i]);
    }
    for (size_t iter = 0; iter < config.max_iters; iter++) {
        size_t heavy = 0;
        for (size_t i = 1; i < m; i++) {
            if (weights[i] > weights[heavy]) heavy = i;
        }
        if (weights[heavy] <= config.target_weight) break;

        size_t best_j = SIZE_MAX;
        size_t best_w = weights[heavy];
        auto consider = [&](size_t j) {
            if (j == heavy) return;
            size_t w = weight_of(out.rows[heavy] * out.rows[j]);
            if (w < best_w || (w == best_w && best_j != SIZE_MAX && j < best_j)) {
                best_w = w;
                best_j = j;
            }
        };
        bool exhaustive = m - 1 <= config.candidates;
        if (exhaustive) {
            for (size_t j = 0; j < m; j++) consider(j);
        } else {
            for (size_t k = 0; k < config.candidates; k++) {
                consider(next_rng() % m);
            }
            if (best_j == SIZE_MAX) {
                // Sampling missed; only a full scan can certify a fixed point.
                for (size_t j = 0; j < m; j++) consider(j);
            }
        }
        if (best_j == SIZE_MAX) break;  // no single-row product improves the heaviest row
        out.rows[heavy] *= out.rows[best_j];
        weights[heavy] = best_w;
    }
    size_t max_w = *std::max_element(weights.begin(), weights.end());
    if (max_w <= config.target_weight) return out;

    // The greedy stalled above target: mine the group itself.
    auto sym_bit = [&](const PauliString& p, size_t col) {
        return col < n ? p.x_bit(col) : p.z_bit(col - n);
    };
    auto shuffle_tail = [&](std::vector<size_t>& v) {
        for (size_t i = v.size(); i > 1; i--) {
            std::swap(v[i - 1], v[next_rng() % i]);
        }
    };
    size_t cap = config.target_weight + 6;
    std::vector<std::vector<PauliString>> buckets(cap + 1);
    std::unordered_set<uint64_t> seen;
    auto feed = [&](const PauliString& p) {
        size_t w = weight_of(p);
        if (w == 0 || w > cap) return;
        if (seen.insert(detail::pauli_bits_hash(p)).second) buckets[w].push_back(p);
    };
    // Rows surviving an elimination on the complement of a qubit set are
    // exactly the group elements supported inside it.
    auto mine_subset = [&](const std::vector<uint8_t>& inside) {
        std::vector<size_t> comp;
        for (size_t q = 0; q < n; q++) {
            if (!inside[q]) comp.push_back(q);
        }
        std::vector<PauliString> gens = out.rows;
        size_t pivot_count = sweep_qubits_first(gens, comp, n).size();
        for (size_t i = pivot_count; i < gens.size(); i++) {
            bool clean = true;
            for (size_t q : comp) {
                if (gens[i].x_bit(q) || gens[i].z_bit(q)) {
                    clean = false;
                    break;
                }
            }
            if (clean) feed(gens[i]);
        }
    };
    if (config.target_weight < n) {
        for (size_t start = 0; start < n; start++) {
            std::vector<uint8_t> inside(n, 0);
            for (size_t k = 0; k < config.target_weight; k++) {
                inside[(start + k) % n] = 1;
            }
            mine_subset(inside);
        }
    }
    std::vector<size_t> cols(2 * n);
    std::iota(cols.begin(), cols.end(), 0);
    std::vector<size_t> qubit_ids(n);
    std::iota(qubit_ids.begin(), qubit_ids.end(), 0);
    for (size_t restart = 0; restart < config.max_iters; restart++) {
        if (restart % 2 == 0) {
            shuffle_tail(cols);
            std::vector<PauliString> gens = out.rows;
            size_t r = 0;
            for (size_t col : cols) {
                if (r >= gens.size()) break;
                size_t pivot = SIZE_MAX;
                for (size_t i = r; i < gens.size(); i++) {
                    if (sym_bit(gens[i], col)) {
                        pivot = i;
                        break;
                    }
                }
                if (pivot == SIZE_MAX) continue;
                std::swap(gens[r], gens[pivot]);
                for (size_t i = 0; i < gens.size(); i++) {
                    if (i != r && sym_bit(gens[i], col)) gens[i] *= gens[r];
                }
                r++;
            }
            for (const auto& g : gens) feed(g);
        } else if (config.target_weight + 4 < n) {
            shuffle_tail(qubit_ids);
            std::vector<uint8_t> inside(n, 0);
            for (size_t k = 0; k < config.target_weight + 4; k++) {
                inside[qubit_ids[k]] = 1;
            }
            mine_subset(inside);
        }
    }

    // Lightest-first assembly, then rank completion from the current rows.
    detail::SignedEchelon echelon{n, {}};
    std::vector<PauliString> assembled;
    for (size_t w = 1; w <= cap; w++) {
        for (const auto& p : buckets[w]) {
            if (echelon.add(p)) assembled.push_back(p);
        }
    }
    std::vector<size_t> completion;
    for (const auto& row : out.rows) {
        if (echelon.add(row)) {
            assembled.push_back(row);
            completion.push_back(assembled.size() - 1);
        }
    }
    // Randomized information-set reduction of each completion row modulo the
    // other rows: eliminate in a random column order, folding pivots into the
    // row, and keep the lightest representative seen. Budget is bounded so a
    // poor mining pool cannot make this phase quadratic in the matrix size.
    size_t prange_rows = std::min<size_t>(completion.size(), 8);
    for (size_t idx = 0; idx < prange_rows; idx++) {
        size_t target = completion[idx];
        PauliString best = assembled[target];
        for (size_t restart = 0; restart < config.candidates; restart++) {
            shuffle_tail(cols);
            std::vector<PauliString> gens;
            gens.reserve(assembled.size() - 1);
            for (size_t j = 0; j < assembled.size(); j++) {
                if (j != target) gens.push_back(assembled[j]);
            }
            PauliString s = assembled[target];
            size_t r = 0;
            for (size_t col : cols) {
                if (r >= gens.size()) break;
                size_t pivot = SIZE_MAX;
                for (size_t i = r; i < gens.size(); i++) {
                    if (sym_bit(gens[i], col)) {
                        pivot = i;
                        break;
                    }
                }
                if (pivot == SIZE_MAX) continue;
                std::swap(gens[r], gens[pivot]);
                if (sym_bit(s, col)) s *= gens[r];
                for (size_t i = 0; i < gens.size(); i++) {
                    if (i != r && sym_bit(gens[i], col)) gens[i] *= gens[r];
                }
                r++;
            }
            if (weight_of(s) < weight_of(best)) best = s;
        }
        assembled[target] = best;
    }
    // Local descent for whatever still sits above target: single then pair
    // products with the other rows, to a local minimum.
    std::vector<size_t> order(assembled.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return weight_of(assembled[a]) > weight_of(assembled[b]);
    });
    for (size_t oi : order) {
        if (weight_of(assembled[oi]) <= config.target_weight) continue;
        bool improved = true;
        while (improved) {
            improved = false;
            for (size_t j = 0; j < assembled.size() && !improved; j++) {
                if (j == oi) continue;
                PauliString cand = assembled[oi] * assembled[j];
                if (weight_of(cand) < weight_of(assembled[oi])) {
                    assembled[oi] = std::move(cand);
                    improved = true;
                }
            }
            if (improved) continue;
            for (size_t j = 0; j < assembled.size() && !improved; j++) {
                if (j == oi) continue;
                PauliString with_j = assembled[oi] * assembled[j];
                for (size_t k = j + 1; k < assembled.size() && !improved; k++) {
                    if (k == oi) continue;
                    PauliString cand = with_j * assembled[k];
                    if (weight_of(cand) < weight_of(assembled[oi])) {
                        assembled[oi] = std::move(cand);
                        improved = true;
                    }
                }
            }
        }
    }
    detail::SignedEchelon verify{n, {}};
    size_t rank = 0;
    for (const auto& p : assembled) {
        if (verify.add(p)) rank++;
    }
    if (rank != assembled.size()) {
        throw std::runtime_error("smooth_generators: internal rank loss");
    }
    CheckMatrix result(n);
    result.rows = std::move(assembled);
    return result;
}

}  // namespace holocode
