#pragma once

#include <string>
#include <vector>

#include "holocode/network.hpp"

namespace holocode {

// Alternating composition of the encoding map V and its adjoint: one round is
// V followed by V-dagger, so `rounds` rounds stack 2*rounds blocks. As states,
// V-dagger blocks carry the complex conjugate generators (map-state duality
// turns the adjoint into conjugation once legs are identified). Boundary legs
// of a V block are Bell-contracted with the boundary legs of the following
// V-dagger block; bulk legs of a V-dagger block are Bell-contracted with the
// bulk legs of the following V block. The first block's bulk legs stay open
// at the bottom, the last block's at the top.
struct FoliationResult {
    // composite state, qubits ordered [top legs][bottom legs]
    StabiliserState composite;
    size_t n_top = 0;
    size_t n_bottom = 0;
    // the composite viewed as a code: boundary = top, bulk = bottom
    HolographicCode code;
    // dimension of the space of closed webs: stabiliser-flow assignments that
    // match across every contracted edge and end on no open leg
    size_t closed_web_dim = 0;
};

namespace detail {

// Closed webs as the GF(2) kernel of the flow-matching system. One variable
// per (block, generator); a contracted edge forces matching Pauli components
// on its two legs, an open leg forces identity.
inline size_t closed_web_dimension(const std::vector<StabiliserState>& blocks,
                                   const std::vector<ContractionEdge>& edges) {
    std::vector<size_t> var_base(blocks.size() + 1, 0);
    for (size_t b = 0; b < blocks.size(); b++) {
        var_base[b + 1] = var_base[b] + blocks[b].generators.size();
    }
    size_t nvars = var_base.back();

    std::vector<bool> contracted_flat;
    std::vector<size_t> leg_base(blocks.size() + 1, 0);
    for (size_t b = 0; b < blocks.size(); b++) {
        leg_base[b + 1] = leg_base[b] + blocks[b].num_qubits;
    }
    contracted_flat.assign(leg_base.back(), false);
    for (const auto& e : edges) {
        contracted_flat[leg_base[e.block_a] + e.leg_a] = true;
        contracted_flat[leg_base[e.block_b] + e.leg_b] = true;
    }

    // rows: 2 per edge (x and z matching) + 2 per open leg (identity)
    size_t nrows = 2 * edges.size();
    for (bool c : contracted_flat) {
        if (!c) nrows += 2;
    }
    BitMatrix m(nrows, nvars);
    size_t row = 0;
    auto fill = [&](size_t block, size_t leg, bool x_comp, size_t r) {
        for (size_t i = 0; i < blocks[block].generators.size(); i++) {
            const auto& g = blocks[block].generators[i];
            bool bit = x_comp ? g.x_bit(leg) : g.z_bit(leg);
            if (bit) m.set(r, var_base[block] + i, true);
        }
    };
    for (const auto& e : edges) {
        // x component of side a must equal the matching component of side b
        fill(e.block_a, e.leg_a, true, row);
        fill(e.block_b, e.leg_b, !e.hadamard, row);
        row++;
        fill(e.block_a, e.leg_a, false, row);
        fill(e.block_b, e.leg_b, e.hadamard, row);
        row++;
    }
    for (size_t b = 0; b < blocks.size(); b++) {
        for (size_t q = 0; q < blocks[b].num_qubits; q++) {
            if (contracted_flat[leg_base[b] + q]) continue;
            fill(b, q, true, row++);
            fill(b, q, false, row++);
        }
    }
    return nvars - rref_rank(m).rank;
}

}  // namespace detail

inline FoliationResult foliate(const HolographicCode& code, size_t rounds) {
    if (rounds < 1) {
        throw std::invalid_argument("foliate: rounds must be at least 1");
    }
    StabiliserState v_state = code.code_state();
    StabiliserState v_dag(v_state.num_qubits);
    for (const auto& g : v_state.generators) {
        v_dag.generators.push_back(g.conj());
    }
    size_t nblocks = 2 * rounds;
    std::vector<StabiliserState> blocks;
    for (size_t t = 0; t < nblocks; t++) {
        blocks.push_back(t % 2 == 0 ? v_state : v_dag);
    }
    std::vector<ContractionEdge> edges;
    for (size_t t = 0; t + 1 < nblocks; t++) {
        if (t % 2 == 0) {
            // V boundary into V-dagger boundary
            for (size_t i = 0; i < code.n_boundary; i++) {
                edges.push_back({t, i, t + 1, i, false});
            }
        } else {
            // V-dagger bulk into the next V's bulk
            for (size_t k = 0; k < code.n_bulk; k++) {
                edges.push_back({t, code.n_boundary + k, t + 1, code.n_boundary + k, false});
            }
        }
    }

    auto contracted = detail::contract_blocks(blocks, edges);
    FoliationResult out;
    out.n_top = code.n_bulk;
    out.n_bottom = code.n_bulk;
    out.closed_web_dim = detail::closed_web_dimension(blocks, edges);

    NetworkState ns;
    ns.n_boundary = out.n_top;
    ns.n_bulk = out.n_bottom;
    std::vector<size_t> perm;
    auto survivor_index = [&](size_t block, size_t leg) {
        for (size_t i = 0; i < contracted.survivors.size(); i++) {
            if (contracted.survivors[i] == std::make_pair(block, leg)) return i;
        }
        throw std::runtime_error("foliate: expected open leg was contracted");
    };
    for (size_t k = 0; k < code.n_bulk; k++) {
        perm.push_back(survivor_index(nblocks - 1, code.n_boundary + k));
        ns.labels.push_back("top:" + code.bulk_labels[k]);
    }
    for (size_t k = 0; k < code.n_bulk; k++) {
        perm.push_back(survivor_index(0, code.n_boundary + k));
        ns.labels.push_back("bot:" + code.bulk_labels[k]);
    }
    if (perm.size() != contracted.survivors.size()) {
        throw std::runtime_error("foliate: stray open legs after contraction");
    }
    StabiliserState reordered(perm.size());
    for (const auto& g : contracted.state.generators) {
        reordered.generators.push_back(g.restricted_to(perm));
    }
    reordered.leg_labels = ns.labels;
    ns.state = std::move(reordered);
    out.composite = ns.state;
    out.code = extract_code(ns);
    out.code.p = code.p;
    out.code.q = code.q;
    out.code.n_layers = code.n_layers;
    out.code.hadamard_edges = code.hadamard_edges;
    out.code.gauge = code.gauge;
    return out;
}

// True when the composite group ties bottom leg k to top leg k through the
// given Pauli, i.e. contains +-(P_bottom P_top) for that leg pair.
inline bool has_spanning_correlator(const FoliationResult& f, size_t k, Pauli p) {
    size_t n = f.composite.num_qubits;
    PauliString probe(n);
    probe.set(k, p);                    // top leg k
    probe.set(f.n_top + k, p);          // bottom leg k
    return f.composite.find_element(probe).has_value();
}

}  // namespace holocode
