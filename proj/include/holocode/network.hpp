#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "holocode/legos.hpp"
#include "holocode/tableau.hpp"
#include "holocode/tessellation.hpp"

namespace holocode {

enum class LegKind : uint8_t { Boundary, Bulk, Horizon };

struct NetworkLeg {
    size_t block = 0;
    size_t leg = 0;
    LegKind kind = LegKind::Boundary;
    std::string label;
};

struct ContractionEdge {
    size_t block_a = 0;
    size_t leg_a = 0;
    size_t block_b = 0;
    size_t leg_b = 0;
    bool hadamard = false;
};

// A network of stabiliser blocks with contraction edges between legs. Open
// legs are listed in their output order: boundary legs first (rim order),
// then horizon legs, then bulk legs.
struct LegoNetwork {
    std::vector<Lego> blocks;
    std::vector<ContractionEdge> edges;
    std::vector<NetworkLeg> open_legs;

    size_t count(LegKind k) const {
        size_t c = 0;
        for (const auto& l : open_legs) {
            if (l.kind == k) c++;
        }
        return c;
    }
};

// Places one copy of the lego on every face of the tiling (lego leg i on face
// slot i, the lego's bulk leg on the dangling bulk slot) and turns tiling
// edges into contraction edges, Hadamard-twisted when requested.
inline LegoNetwork assemble_network(const Tiling& t, const Lego& lego, bool hadamard_edges) {
    if (lego.num_legs != static_cast<size_t>(t.p) + 1 || !lego.bulk_leg ||
        *lego.bulk_leg != static_cast<size_t>(t.p)) {
        throw std::invalid_argument("assemble_network: lego legs do not match the tiling");
    }
    LegoNetwork net;
    net.blocks.assign(t.faces.size(), lego);
    for (const auto& e : t.edges) {
        net.edges.push_back({e.a, e.slot_a, e.b, e.slot_b, hadamard_edges});
    }
    for (const auto& [face, slot] : t.open_legs) {
        net.open_legs.push_back({face, slot, LegKind::Boundary,
                                 "f" + std::to_string(face) + "s" + std::to_string(slot)});
    }
    for (const auto& f : t.faces) {
        net.open_legs.push_back({f.id, t.bulk_slot(), LegKind::Bulk,
                                 "f" + std::to_string(f.id) + "b"});
    }
    return net;
}

namespace detail {

// Bell-contracts pairs of legs across a list of stabiliser blocks.
//
// Each edge is enforced by post-selecting X_i X_j -> +1 and Z_i Z_j -> +1
// (X_i Z_j and Z_i X_j for a Hadamard edge). When a post-selection is
// impossible because the opposite sign is already in the group, a Pauli frame
// correction is applied to the edge's second leg: the first of X, Y, Z there
// that anticommutes with the failing observable and commutes with the edge's
// other observable.
//
// Returns the state on the surviving legs in block-major order, plus the
// (block, leg) pair for every surviving qubit.
struct ContractedBlocks {
    StabiliserState state;
    std::vector<std::pair<size_t, size_t>> survivors;
};

inline ContractedBlocks contract_blocks(const std::vector<StabiliserState>& blocks,
                                        const std::vector<ContractionEdge>& edges) {
    std::vector<size_t> base(blocks.size() + 1, 0);
    for (size_t b = 0; b < blocks.size(); b++) {
        if (!blocks[b].is_pure()) {
            throw std::invalid_argument("contract_blocks: blocks must be pure states");
        }
        base[b + 1] = base[b] + blocks[b].num_qubits;
    }
    size_t n = base.back();
    StabiliserState state(n);
    for (size_t b = 0; b < blocks.size(); b++) {
        for (const auto& g : blocks[b].generators) {
            PauliString emb(n);
            for (size_t q = 0; q < blocks[b].num_qubits; q++) {
                Pauli p = g.get(q);
                if (p != Pauli::I) emb.set(base[b] + q, p);
            }
            emb.phase = (emb.phase + g.phase - g.count_y()) & 3;
            state.generators.push_back(std::move(emb));
        }
    }

    std::vector<bool> dead(n, false);
    auto global = [&](size_t block, size_t leg) {
        if (block >= blocks.size() || leg >= blocks[block].num_qubits) {
            throw std::invalid_argument("contract_blocks: edge leg out of range");
        }
        return base[block] + leg;
    };
    for (const auto& e : edges) {
        size_t i = global(e.block_a, e.leg_a);
        size_t j = global(e.block_b, e.leg_b);
        if (i == j || dead[i] || dead[j]) {
            throw std::invalid_argument("contract_blocks: leg used twice");
        }
        dead[i] = dead[j] = true;
        PauliString obs1(n), obs2(n);
        obs1.set(i, Pauli::X);
        obs1.set(j, e.hadamard ? Pauli::Z : Pauli::X);
        obs2.set(i, Pauli::Z);
        obs2.set(j, e.hadamard ? Pauli::X : Pauli::Z);
        for (int round = 0; round < 2; round++) {
            const PauliString& obs = round == 0 ? obs1 : obs2;
            const PauliString& other = round == 0 ? obs2 : obs1;
            try {
                project_measure_inplace(state, obs, +1);
            } catch (const InconsistentProjection&) {
                PauliString fix(n);
                bool found = false;
                for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                    fix = PauliString::single(n, j, p);
                    if (!fix.commutes_with(obs) && fix.commutes_with(other)) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    throw std::runtime_error("contract_blocks: no frame correction found");
                }
                state.apply_pauli(fix);
                project_measure_inplace(state, obs, +1);
            }
        }
    }

    std::vector<size_t> dead_list;
    for (size_t q = 0; q < n; q++) {
        if (dead[q]) dead_list.push_back(q);
    }
    sweep_qubits_first(state.generators, dead_list, n);
    ContractedBlocks out;
    out.state = drop_qubits(state, dead_list);
    if (out.state.generators.size() != out.state.num_qubits) {
        throw std::runtime_error("contract_blocks: contracted state is not pure");
    }
    for (size_t b = 0; b < blocks.size(); b++) {
        for (size_t q = 0; q < blocks[b].num_qubits; q++) {
            if (!dead[base[b] + q]) {
                out.survivors.emplace_back(b, q);
            }
        }
    }
    return out;
}

}  // namespace detail

// The contracted network as a pure state on the open legs, qubits ordered
// boundary (rim order), horizon, bulk.
struct NetworkState {
    StabiliserState state;
    size_t n_boundary = 0;
    size_t n_horizon = 0;
    size_t n_bulk = 0;
    std::vector<std::string> labels;

    std::vector<size_t> boundary_range() const {
        std::vector<size_t> r(n_boundary);
        for (size_t i = 0; i < n_boundary; i++) r[i] = i;
        return r;
    }
    std::vector<size_t> horizon_range() const {
        std::vector<size_t> r(n_horizon);
        for (size_t i = 0; i < n_horizon; i++) r[i] = n_boundary + i;
        return r;
    }
};

inline NetworkState contract_state(const LegoNetwork& net) {
    std::vector<StabiliserState> blocks;
    blocks.reserve(net.blocks.size());
    for (const auto& l : net.blocks) {
        blocks.push_back(l.state());
    }
    auto contracted = detail::contract_blocks(blocks, net.edges);

    auto survivor_index = [&](size_t block, size_t leg) {
        auto it = std::find(contracted.survivors.begin(), contracted.survivors.end(),
                            std::make_pair(block, leg));
        if (it == contracted.survivors.end()) {
            throw std::runtime_error("contract_state: open leg was contracted away");
        }
        return static_cast<size_t>(it - contracted.survivors.begin());
    };
    if (net.open_legs.size() != contracted.survivors.size()) {
        throw std::runtime_error("contract_state: open leg list does not cover the survivors");
    }

    NetworkState out;
    std::vector<size_t> perm;
    auto take = [&](LegKind k, size_t& counter) {
        for (const auto& leg : net.open_legs) {
            if (leg.kind == k) {
                perm.push_back(survivor_index(leg.block, leg.leg));
                out.labels.push_back(leg.label);
                counter++;
            }
        }
    };
    take(LegKind::Boundary, out.n_boundary);
    take(LegKind::Horizon, out.n_horizon);
    take(LegKind::Bulk, out.n_bulk);

    StabiliserState reordered(perm.size());
    for (const auto& g : contracted.state.generators) {
        reordered.generators.push_back(g.restricted_to(perm));
    }
    reordered.leg_labels = out.labels;
    out.state = std::move(reordered);
    return out;
}

// An extracted holographic code: boundary-only checks plus one signed logical
// representative pair per bulk leg. Representatives are canonical: checks are
// in reduced row echelon form (columns interleaved x_0, z_0, x_1, z_1, ...)
// and each representative's boundary part is reduced against the check rows.
struct LogicalPair {
    std::string bulk_label;
    PauliString x_rep;  // boundary operator implementing bulk X
    PauliString z_rep;  // boundary operator implementing bulk Z
};

struct HolographicCode {
    size_t n_boundary = 0;
    size_t n_bulk = 0;
    CheckMatrix checks;
    std::vector<LogicalPair> logicals;
    std::vector<std::string> boundary_labels;
    std::vector<std::string> bulk_labels;

    // provenance, carried into bundles
    int p = 0;
    int q = 0;
    size_t n_layers = 0;
    bool hadamard_edges = false;
    std::string gauge = "none";

    // The code as a pure state on boundary + bulk legs: checks act on the
    // boundary alone; each logical pair Bell-ties its bulk leg to the
    // boundary representative.
    StabiliserState code_state() const {
        size_t n = n_boundary + n_bulk;
        StabiliserState s(n);
        for (const auto& c : checks.rows) {
            PauliString g(n);
            for (size_t q2 = 0; q2 < n_boundary; q2++) {
                Pauli p2 = c.get(q2);
                if (p2 != Pauli::I) g.set(q2, p2);
            }
            g.phase = (g.phase + c.phase - c.count_y()) & 3;
            s.generators.push_back(std::move(g));
        }
        for (size_t k = 0; k < n_bulk; k++) {
            for (int which = 0; which < 2; which++) {
                const PauliString& rep = which == 0 ? logicals[k].x_rep : logicals[k].z_rep;
                PauliString g(n);
                for (size_t q2 = 0; q2 < n_boundary; q2++) {
                    Pauli p2 = rep.get(q2);
                    if (p2 != Pauli::I) g.set(q2, p2);
                }
                g.phase = (g.phase + rep.phase - rep.count_y()) & 3;
                g.set(n_boundary + k, which == 0 ? Pauli::X : Pauli::Z);
                s.generators.push_back(std::move(g));
            }
        }
        s.leg_labels = boundary_labels;
        s.leg_labels.insert(s.leg_labels.end(), bulk_labels.begin(), bulk_labels.end());
        return s;
    }
};

// Splits a pure state ordered [boundary][bulk] into boundary checks and
// logical representative pairs by pivoting on the bulk columns first. Every
// bulk leg must be fully addressable (both its X and Z columns take a pivot),
// otherwise the network does not define an encoding isometry.
inline HolographicCode extract_code(const NetworkState& ns) {
    if (ns.n_horizon != 0) {
        throw std::invalid_argument("extract_code: horizon legs have no code role");
    }
    size_t n_b = ns.n_boundary;
    size_t n_k = ns.n_bulk;
    size_t n = n_b + n_k;
    std::vector<PauliString> gens = ns.state.generators;
    std::vector<size_t> bulk_qubits(n_k);
    for (size_t k = 0; k < n_k; k++) {
        bulk_qubits[k] = n_b + k;
    }
    auto pivot_cols = sweep_qubits_first(gens, bulk_qubits, n);
    if (pivot_cols.size() != 2 * n_k) {
        throw std::runtime_error("extract_code: a bulk leg is not independently addressable");
    }
    for (size_t i = 0; i < pivot_cols.size(); i++) {
        size_t expect = (i % 2 == 0) ? n_b + i / 2 : n + n_b + i / 2;
        if (pivot_cols[i] != expect) {
            throw std::runtime_error("extract_code: bulk pivot pattern is broken");
        }
    }

    HolographicCode code;
    code.n_boundary = n_b;
    code.n_bulk = n_k;
    code.checks.num_qubits = n_b;
    code.boundary_labels.assign(ns.labels.begin(), ns.labels.begin() + n_b);
    code.bulk_labels.assign(ns.labels.begin() + n_b, ns.labels.end());

    std::vector<size_t> boundary(n_b);
    for (size_t q = 0; q < n_b; q++) {
        boundary[q] = q;
    }
    auto boundary_part = [&](const PauliString& g) {
        PauliString h = g;
        for (size_t k = 0; k < n_k; k++) {
            size_t q = n_b + k;
            uint64_t mask = ~(uint64_t(1) << (q & 63));
            h.x[q >> 6] &= mask;
            h.z[q >> 6] &= mask;
        }
        return h.restricted_to(boundary);
    };

    for (size_t i = 2 * n_k; i < gens.size(); i++) {
        code.checks.push(boundary_part(gens[i]));
    }
    // Canonicalise the checks (interleaved column sweep on the boundary) and
    // reduce the logical representatives against them.
    std::vector<size_t> all_boundary(n_b);
    for (size_t q = 0; q < n_b; q++) {
        all_boundary[q] = q;
    }
    auto check_pivots = sweep_qubits_first(code.checks.rows, all_boundary, n_b);
    auto reduce_rep = [&](PauliString rep) {
        for (size_t i = 0; i < check_pivots.size(); i++) {
            size_t col = check_pivots[i];
            bool bit = col < n_b ? rep.x_bit(col) : rep.z_bit(col - n_b);
            if (bit) {
                rep *= code.checks.rows[i];
            }
        }
        return rep;
    };
    for (size_t k = 0; k < n_k; k++) {
        LogicalPair pair;
        pair.bulk_label = code.bulk_labels[k];
        pair.x_rep = reduce_rep(boundary_part(gens[2 * k]));
        pair.z_rep = reduce_rep(boundary_part(gens[2 * k + 1]));
        if (gens[2 * k].get(n_b + k) != Pauli::X || gens[2 * k + 1].get(n_b + k) != Pauli::Z) {
            throw std::runtime_error("extract_code: unexpected bulk pivot Pauli");
        }
        code.logicals.push_back(std::move(pair));
    }
    return code;
}

inline HolographicCode contract(const LegoNetwork& net) {
    return extract_code(contract_state(net));
}

// Builds the full holographic code for one family. hadamard_edges follows the
// family default: plain edges for {5,4}, Hadamard edges for {4,5}.
inline HolographicCode build_code(int p, int q, size_t n) {
    Tiling t = build_tiling(p, q, n);
    bool hadamard = (p == 4);
    Lego lego = (p == 5) ? lego_pentagon() : lego_r4();
    HolographicCode code = contract(assemble_network(t, lego, hadamard));
    code.p = p;
    code.q = q;
    code.n_layers = n;
    code.hadamard_edges = hadamard;
    return code;
}

// Projects every bulk leg except `kept` onto the +1 eigenstate of X (basis
// 'x', state |+>) or Z (basis 'z', state |0>), then re-extracts the code. The
// projected logicals are absorbed into the checks; the result keeps a single
// bulk leg.
inline HolographicCode gauge_fix(const HolographicCode& code, const std::string& kept,
                                 char basis) {
    if (basis != 'x' && basis != 'z') {
        throw std::invalid_argument("gauge_fix: basis must be 'x' or 'z'");
    }
    size_t kept_idx = SIZE_MAX;
    for (size_t k = 0; k < code.n_bulk; k++) {
        if (code.bulk_labels[k] == kept) {
            kept_idx = k;
        }
    }
    if (kept_idx == SIZE_MAX) {
        throw std::invalid_argument("gauge_fix: unknown bulk label '" + kept + "'");
    }
    StabiliserState state = code.code_state();
    size_t n = state.num_qubits;
    std::vector<size_t> projected;
    for (size_t k = 0; k < code.n_bulk; k++) {
        if (k == kept_idx) continue;
        size_t q = code.n_boundary + k;
        PauliString obs = PauliString::single(n, q, basis == 'x' ? Pauli::X : Pauli::Z);
        project_measure_inplace(state, obs, +1);
        projected.push_back(q);
    }
    sweep_qubits_first(state.generators, projected, n);
    StabiliserState rest = drop_qubits(state, projected);

    NetworkState ns;
    ns.state = std::move(rest);
    ns.n_boundary = code.n_boundary;
    ns.n_bulk = 1;
    ns.labels = code.boundary_labels;
    ns.labels.push_back(code.bulk_labels[kept_idx]);
    HolographicCode out = extract_code(ns);
    out.p = code.p;
    out.q = code.q;
    out.n_layers = code.n_layers;
    out.hadamard_edges = code.hadamard_edges;
    out.gauge = std::string(1, basis);
    return out;
}

inline HolographicCode build_code(int p, int q, size_t n, const std::string& gauge) {
    HolographicCode code = build_code(p, q, n);
    if (gauge == "none" || gauge.empty()) {
        return code;
    }
    if (gauge != "x" && gauge != "z") {
        throw std::invalid_argument("build_code: gauge must be none, x or z");
    }
    return gauge_fix(code, "f0b", gauge[0]);
}

// Pentagon network with the central lego removed. The five legs that pointed
// at the centre become horizon legs; all remaining bulk legs stay open.
inline LegoNetwork black_hole_network(size_t n) {
    if (n < 1) {
        throw std::invalid_argument("black_hole_network: needs at least one layer");
    }
    Tiling t = build_tiling(5, 4, n);
    Lego lego = lego_pentagon();
    LegoNetwork net;
    // block b hosts tiling face b+1
    net.blocks.assign(t.faces.size() - 1, lego);
    auto block_of = [&](size_t face) { return face - 1; };
    std::vector<std::pair<size_t, size_t>> horizon;
    for (const auto& e : t.edges) {
        if (e.a == 0) {
            horizon.emplace_back(block_of(e.b), e.slot_b);
        } else if (e.b == 0) {
            horizon.emplace_back(block_of(e.a), e.slot_a);
        } else {
            net.edges.push_back({block_of(e.a), e.slot_a, block_of(e.b), e.slot_b, false});
        }
    }
    for (const auto& [face, slot] : t.open_legs) {
        net.open_legs.push_back({block_of(face), slot, LegKind::Boundary,
                                 "f" + std::to_string(face) + "s" + std::to_string(slot)});
    }
    for (const auto& [block, slot] : horizon) {
        net.open_legs.push_back({block, slot, LegKind::Horizon,
                                 "f" + std::to_string(block + 1) + "s" + std::to_string(slot) + "h"});
    }
    for (size_t face = 1; face < t.faces.size(); face++) {
        net.open_legs.push_back({block_of(face), t.bulk_slot(), LegKind::Bulk,
                                 "f" + std::to_string(face) + "b"});
    }
    return net;
}

// Two black holes glued along their horizons (horizon leg k of side A fused
// with horizon leg k of side B). Both boundaries and all bulk legs stay open.
inline LegoNetwork wormhole_network(size_t n) {
    LegoNetwork half = black_hole_network(n);
    size_t nb = half.blocks.size();
    LegoNetwork net;
    net.blocks = half.blocks;
    net.blocks.insert(net.blocks.end(), half.blocks.begin(), half.blocks.end());
    for (const auto& e : half.edges) {
        net.edges.push_back(e);
        net.edges.push_back({e.block_a + nb, e.leg_a, e.block_b + nb, e.leg_b, e.hadamard});
    }
    std::vector<NetworkLeg> horizon_a;
    for (const auto& l : half.open_legs) {
        if (l.kind == LegKind::Horizon) horizon_a.push_back(l);
    }
    for (const auto& l : horizon_a) {
        net.edges.push_back({l.block, l.leg, l.block + nb, l.leg, false});
    }
    for (int side = 0; side < 2; side++) {
        std::string prefix = side == 0 ? "A:" : "B:";
        size_t shift = side == 0 ? 0 : nb;
        for (const auto& l : half.open_legs) {
            if (l.kind == LegKind::Boundary) {
                net.open_legs.push_back({l.block + shift, l.leg, l.kind, prefix + l.label});
            }
        }
    }
    for (int side = 0; side < 2; side++) {
        std::string prefix = side == 0 ? "A:" : "B:";
        size_t shift = side == 0 ? 0 : nb;
        for (const auto& l : half.open_legs) {
            if (l.kind == LegKind::Bulk) {
                net.open_legs.push_back({l.block + shift, l.leg, l.kind, prefix + l.label});
            }
        }
    }
    return net;
}

}  // namespace holocode
