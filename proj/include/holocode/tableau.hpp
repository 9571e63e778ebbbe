#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holocode/check_matrix.hpp"
#include "holocode/pauli.hpp"

namespace holocode {

struct InconsistentProjection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Stabiliser state (or more generally a stabiliser group with signs).
// For a pure state, generators.size() == num_qubits and the generators are
// independent and mutually commuting.
class StabiliserState {
  public:
    size_t num_qubits = 0;
    std::vector<PauliString> generators;
    std::vector<std::string> leg_labels;  // optional, parallel to qubit index

    StabiliserState() = default;
    explicit StabiliserState(size_t n) : num_qubits(n) {}

    void push(PauliString g) {
        if (g.num_qubits != num_qubits) {
            throw std::invalid_argument("StabiliserState: generator size mismatch");
        }
        if (!g.is_hermitian()) {
            throw std::invalid_argument("StabiliserState: generator must be Hermitian");
        }
        generators.push_back(std::move(g));
    }

    bool is_pure() const { return generators.size() == num_qubits; }

    CheckMatrix as_checks() const {
        CheckMatrix cm(num_qubits);
        cm.rows = generators;
        return cm;
    }

    // Product state on the disjoint union of legs; other's qubits follow ours.
    static StabiliserState tensor(const StabiliserState& a, const StabiliserState& b) {
        StabiliserState r(a.num_qubits + b.num_qubits);
        PauliString pad_a = PauliString::identity(b.num_qubits);
        PauliString pad_b = PauliString::identity(a.num_qubits);
        for (const auto& g : a.generators) {
            r.generators.push_back(g.tensor(pad_a));
        }
        for (const auto& g : b.generators) {
            r.generators.push_back(pad_b.tensor(g));
        }
        r.leg_labels = a.leg_labels;
        if (!a.leg_labels.empty() || !b.leg_labels.empty()) {
            r.leg_labels.resize(a.num_qubits);
            auto bl = b.leg_labels;
            bl.resize(b.num_qubits);
            r.leg_labels.insert(r.leg_labels.end(), bl.begin(), bl.end());
        }
        return r;
    }

    // Conjugation by a (possibly multi-qubit) Pauli: flips the sign of every
    // generator that anticommutes with p.
    void apply_pauli(const PauliString& p) {
        for (auto& g : generators) {
            if (PauliString::symplectic_product(g, p)) {
                g.negate();
            }
        }
    }

    // Looks for the group element with p's bit pattern; returns it with its
    // actual sign, or nullopt when the pattern is outside the group.
    std::optional<PauliString> find_element(const PauliString& p) const {
        CheckMatrix cm = as_checks();
        if (!cm.contains_bits(p)) {
            return std::nullopt;
        }
        return cm.element_matching_bits(p);
    }
};

// Deterministic post-selection of observable -> desired_sign (+1 or -1).
//
// If some generator anticommutes with the observable, the projection succeeds
// with probability 1/2 and we post-select: one anticommuting generator is
// replaced by desired_sign * observable and the others are multiplied by it
// so they commute again. If everything commutes, the state is unchanged when
// desired_sign * observable is already in the group, and the projection has
// probability zero otherwise (InconsistentProjection).
inline void project_measure_inplace(StabiliserState& state, const PauliString& observable,
                                    int desired_sign) {
    if (observable.num_qubits != state.num_qubits) {
        throw std::invalid_argument("project_measure: observable size mismatch");
    }
    if (!observable.is_hermitian()) {
        throw std::invalid_argument("project_measure: observable must be Hermitian");
    }
    if (desired_sign != 1 && desired_sign != -1) {
        throw std::invalid_argument("project_measure: sign must be +-1");
    }
    size_t pivot = SIZE_MAX;
    for (size_t i = 0; i < state.generators.size(); i++) {
        if (PauliString::symplectic_product(state.generators[i], observable)) {
            pivot = i;
            break;
        }
    }
    if (pivot == SIZE_MAX) {
        auto elem = state.find_element(observable);
        if (!elem) {
            throw InconsistentProjection(
                "project_measure: observable commutes but is not in the group");
        }
        int have = elem->sign() * observable.sign();
        if (have != desired_sign) {
            throw InconsistentProjection("project_measure: opposite sign already fixed");
        }
        return;
    }
    for (size_t i = 0; i < state.generators.size(); i++) {
        if (i != pivot && PauliString::symplectic_product(state.generators[i], observable)) {
            state.generators[i] *= state.generators[pivot];
        }
    }
    PauliString g = observable;
    if (desired_sign < 0) {
        g.negate();
    }
    state.generators[pivot] = g;
}

inline StabiliserState project_measure(StabiliserState state, const PauliString& observable,
                                       int desired_sign) {
    project_measure_inplace(state, observable, desired_sign);
    return state;
}

// Row-reduces the generator list pivoting on the listed qubits first (x then z
// column per qubit), using group products so phases stay exact. After the
// call, generators without a pivot on those qubits have no support there.
inline std::vector<size_t> sweep_qubits_first(std::vector<PauliString>& gens,
                                              const std::vector<size_t>& qubits_first,
                                              size_t num_qubits) {
    size_t r = 0;
    std::vector<size_t> pivot_cols;
    auto bit = [&](const PauliString& p, size_t col) {
        return col < num_qubits ? p.x_bit(col) : p.z_bit(col - num_qubits);
    };
    auto sweep_col = [&](size_t col) {
        for (size_t i = r; i < gens.size(); i++) {
            if (bit(gens[i], col)) {
                std::swap(gens[r], gens[i]);
                for (size_t j = 0; j < gens.size(); j++) {
                    if (j != r && bit(gens[j], col)) {
                        gens[j] *= gens[r];
                    }
                }
                pivot_cols.push_back(col);
                r++;
                return;
            }
        }
    };
    for (size_t q : qubits_first) {
        sweep_col(q);
        sweep_col(num_qubits + q);
    }
    return pivot_cols;
}

// Drops the listed qubits from the state. Every generator must act trivially
// on them after the caller's sweep; generators still supported there are
// removed (they are the ones that carried the dropped legs).
inline StabiliserState drop_qubits(const StabiliserState& state,
                                   const std::vector<size_t>& dropped) {
    std::vector<bool> is_dropped(state.num_qubits, false);
    for (size_t q : dropped) {
        is_dropped[q] = true;
    }
    std::vector<size_t> keep;
    for (size_t q = 0; q < state.num_qubits; q++) {
        if (!is_dropped[q]) keep.push_back(q);
    }
    StabiliserState out(keep.size());
    for (const auto& g : state.generators) {
        bool touches = false;
        for (size_t q : dropped) {
            if (g.get(q) != Pauli::I) {
                touches = true;
                break;
            }
        }
        if (!touches) {
            out.generators.push_back(g.restricted_to(keep));
        }
    }
    if (!state.leg_labels.empty()) {
        for (size_t q : keep) {
            out.leg_labels.push_back(state.leg_labels[q]);
        }
    }
    return out;
}

// Entanglement entropy of `region` in a pure stabiliser state:
//   S(A) = |A| - log2 |S_A|
// where S_A is the subgroup supported inside A. The spectrum is flat, so the
// same number is the Renyi entropy for every order.
inline size_t region_entropy(const StabiliserState& state, const std::vector<size_t>& region) {
    if (!state.is_pure()) {
        throw std::invalid_argument("region_entropy: state must be pure");
    }
    std::vector<bool> in_region(state.num_qubits, false);
    for (size_t q : region) {
        if (q >= state.num_qubits) {
            throw std::invalid_argument("region_entropy: qubit out of range");
        }
        if (in_region[q]) {
            throw std::invalid_argument("region_entropy: duplicate qubit");
        }
        in_region[q] = true;
    }
    // Generators with zero restriction to the complement columns span S_A;
    // their count is n_gens - rank(complement restriction).
    std::vector<size_t> comp_cols;
    BitMatrix bits = state.as_checks().to_bits();
    for (size_t q = 0; q < state.num_qubits; q++) {
        if (!in_region[q]) {
            comp_cols.push_back(q);
            comp_cols.push_back(state.num_qubits + q);
        }
    }
    size_t rank_comp = rank_on_columns(bits, comp_cols);
    size_t s_a = state.generators.size() - rank_comp;
    return region.size() - s_a;
}

// Minimum Pauli weight over the coset logical * <checks>, by Gray-code
// enumeration of all 2^rank(checks) products. Throws BudgetExceeded when the
// subgroup is larger than max_products.
inline size_t coset_min_weight(const CheckMatrix& checks, const PauliString& logical,
                               uint64_t max_products = uint64_t(1) << 26) {
    if (logical.num_qubits != checks.num_qubits) {
        throw std::invalid_argument("coset_min_weight: qubit count mismatch");
    }
    // Independent generator set first, so the Gray code walks each element once.
    auto rr = rref_rank(checks.to_bits());
    std::vector<PauliString> gens;
    for (size_t i = 0; i < rr.rank; i++) {
        PauliString g(checks.num_qubits);
        for (size_t q = 0; q < checks.num_qubits; q++) {
            if (rr.reduced.get(i, q)) g.x[q >> 6] |= uint64_t(1) << (q & 63);
            if (rr.reduced.get(i, checks.num_qubits + q)) g.z[q >> 6] |= uint64_t(1) << (q & 63);
        }
        gens.push_back(std::move(g));
    }
    if (gens.size() >= 63 || (uint64_t(1) << gens.size()) > max_products) {
        throw BudgetExceeded("coset_min_weight: 2^rank exceeds the enumeration budget");
    }
    PauliString acc = logical;
    size_t best = acc.weight();
    uint64_t total = uint64_t(1) << gens.size();
    for (uint64_t k = 1; k < total; k++) {
        // Gray code: element k differs from k-1 in bit ctz(k).
        size_t flip = __builtin_ctzll(k);
        for (size_t w = 0; w < acc.x.size(); w++) {
            acc.x[w] ^= gens[flip].x[w];
            acc.z[w] ^= gens[flip].z[w];
        }
        size_t wgt = acc.weight();
        if (wgt < best) best = wgt;
    }
    return best;
}

}  // namespace holocode
