#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "holocode/maxflow.hpp"
#include "holocode/network.hpp"

namespace holocode {

enum class BulkTreatment { Open, FixedPlus };

inline const char* bulk_treatment_name(BulkTreatment b) {
    return b == BulkTreatment::Open ? "open" : "fixed_plus";
}

// Projects every bulk leg of a contracted network onto the +1 eigenstate of X
// and drops it, leaving the boundary (and horizon) legs.
inline StabiliserState fixed_plus_state(const NetworkState& ns) {
    StabiliserState st = ns.state;
    size_t first_bulk = ns.n_boundary + ns.n_horizon;
    std::vector<size_t> bulk;
    for (size_t k = 0; k < ns.n_bulk; k++) {
        size_t q = first_bulk + k;
        project_measure_inplace(st, PauliString::single(st.num_qubits, q, Pauli::X), +1);
        bulk.push_back(q);
    }
    sweep_qubits_first(st.generators, bulk, st.num_qubits);
    return drop_qubits(st, bulk);
}

// Entanglement entropy of a set of non-bulk legs (indices in the contracted
// state's order: boundary first, then horizon). The Renyi order is accepted
// for interface parity and ignored: stabiliser spectra are flat, so every
// order gives the same number of bits.
inline size_t network_state_entropy(const NetworkState& ns, const std::vector<size_t>& region,
                                    BulkTreatment bulk, double alpha = 2.0) {
    (void)alpha;
    size_t n_cut_legs = ns.n_boundary + ns.n_horizon;
    for (size_t q : region) {
        if (q >= n_cut_legs) {
            throw std::invalid_argument("network_state_entropy: region must avoid bulk legs");
        }
    }
    if (bulk == BulkTreatment::FixedPlus) {
        return region_entropy(fixed_plus_state(ns), region);
    }
    return region_entropy(ns.state, region);
}

inline size_t network_state_entropy(const LegoNetwork& net, const std::vector<size_t>& region,
                                    BulkTreatment bulk, double alpha = 2.0) {
    return network_state_entropy(contract_state(net), region, bulk, alpha);
}

// Minimum number of edges cutting the region's legs away from the remaining
// non-bulk open legs. Every lego is a star: a hub node with a unit-capacity
// edge per physical leg, so a cut may pass through a tensor at the cost of
// the smaller side of its legs. Contraction edges have unit capacity; bulk
// legs do not participate. With bond dimension 2 the cut size is directly an
// entropy bound in bits.
inline size_t min_cut(const LegoNetwork& net, const std::vector<size_t>& region) {
    // boundary legs first, then horizon legs, matching the contracted state's
    // qubit order so region indices mean the same thing in both queries
    std::vector<std::pair<size_t, size_t>> cut_legs;
    for (LegKind k : {LegKind::Boundary, LegKind::Horizon}) {
        for (const auto& l : net.open_legs) {
            if (l.kind == k) cut_legs.emplace_back(l.block, l.leg);
        }
    }
    if (region.empty() || region.size() >= cut_legs.size()) {
        throw std::invalid_argument("min_cut: region must be a proper nonempty subset");
    }
    std::vector<uint8_t> in_region(cut_legs.size(), 0);
    for (size_t q : region) {
        if (q >= cut_legs.size()) {
            throw std::invalid_argument("min_cut: region index out of range");
        }
        if (in_region[q]) {
            throw std::invalid_argument("min_cut: duplicate region index");
        }
        in_region[q] = 1;
    }

    // nodes: 0 source, 1 sink, then one hub per block, then one per leg
    std::vector<size_t> bulk_slot(net.blocks.size(), SIZE_MAX);
    size_t n_leg_nodes = 0;
    std::vector<size_t> leg_base(net.blocks.size() + 1, 0);
    for (size_t b = 0; b < net.blocks.size(); b++) {
        if (net.blocks[b].bulk_leg) bulk_slot[b] = *net.blocks[b].bulk_leg;
        leg_base[b] = n_leg_nodes;
        n_leg_nodes += net.blocks[b].num_legs;
    }
    leg_base[net.blocks.size()] = n_leg_nodes;
    size_t hub0 = 2;
    size_t leg0 = hub0 + net.blocks.size();
    MaxFlow flow(leg0 + n_leg_nodes);
    auto leg_node = [&](size_t block, size_t slot) { return leg0 + leg_base[block] + slot; };
    for (size_t b = 0; b < net.blocks.size(); b++) {
        for (size_t s = 0; s < net.blocks[b].num_legs; s++) {
            if (s == bulk_slot[b]) continue;
            flow.add_undirected_edge(hub0 + b, leg_node(b, s), 1);
        }
    }
    for (const auto& e : net.edges) {
        flow.add_undirected_edge(leg_node(e.block_a, e.leg_a), leg_node(e.block_b, e.leg_b), 1);
    }
    const uint64_t inf = uint64_t(1) << 40;
    for (size_t i = 0; i < cut_legs.size(); i++) {
        size_t node = leg_node(cut_legs[i].first, cut_legs[i].second);
        if (in_region[i]) {
            flow.add_edge(0, node, inf);
        } else {
            flow.add_edge(node, 1, inf);
        }
    }
    return static_cast<size_t>(flow.max_flow(0, 1));
}

inline std::vector<size_t> contiguous_region(size_t start, size_t width, size_t n_legs) {
    if (width == 0 || width > n_legs) {
        throw std::invalid_argument("contiguous_region: bad width");
    }
    std::vector<size_t> r(width);
    for (size_t i = 0; i < width; i++) {
        r[i] = (start + i) % n_legs;
    }
    return r;
}

struct EntropyRow {
    std::string region_spec;
    BulkTreatment bulk = BulkTreatment::Open;
    double alpha = 2.0;
    size_t entropy = 0;
    size_t cut = 0;
};

inline std::string entropy_csv(const std::vector<EntropyRow>& rows) {
    std::ostringstream out;
    out << "region_spec,bulk_treatment,alpha,entropy,min_cut\n";
    for (const auto& r : rows) {
        out << r.region_spec << "," << bulk_treatment_name(r.bulk) << "," << r.alpha << ","
            << r.entropy << "," << r.cut << "\n";
    }
    return out.str();
}

}  // namespace holocode
