#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holocode/bitmat.hpp"
#include "holocode/pauli.hpp"
#include "holocode/tableau.hpp"

namespace holocode {

// A lego is a small stabiliser state used as a tensor-network block. Legs
// 0..num_legs-1 are qubits; bulk_leg (when present) is the dangling logical
// leg and the remaining legs are the contractible ones.
struct Lego {
    std::string name;
    size_t num_legs = 0;
    std::vector<PauliString> stabilisers;
    std::optional<size_t> bulk_leg;

    StabiliserState state() const {
        StabiliserState s(num_legs);
        for (const auto& g : stabilisers) {
            s.push(g);
        }
        return s;
    }
};

// Six-leg perfect-tensor block: the [[5,1,3]] code with its logical leg
// exposed as leg 5. On the five contractible legs the group restricts to the
// usual cyclic XZZXI stabilisers; the last two generators Bell-pair the bulk
// leg with the logical operators XXXXX and ZZZZZ.
inline Lego lego_pentagon() {
    Lego l;
    l.name = "pentagon";
    l.num_legs = 6;
    l.bulk_leg = 5;
    for (const char* s :
         {"XZZXII", "IXZZXI", "XIXZZI", "ZXIXZI", "XXXXXX", "ZZZZZZ"}) {
        l.stabilisers.push_back(PauliString::from_string(s));
    }
    return l;
}

// Five-leg block of the {4,5} family: four contractible corner legs plus the
// bulk leg 4. Generators: ZZYY, XIXI, IXIX on the corners, and the two
// Bell-type rows ZIZX x Z and IIXX x X tying the bulk leg to the corners.
inline Lego lego_r4() {
    Lego l;
    l.name = "r4";
    l.num_legs = 5;
    l.bulk_leg = 4;
    for (const char* s : {"ZZYYI", "XIXII", "IXIXI", "ZIZXZ", "IIXXX"}) {
        l.stabilisers.push_back(PauliString::from_string(s));
    }
    return l;
}

// Graph-state generators: one X_v prod_{u ~ v} Z_u per vertex.
inline std::vector<PauliString> graph_state_stabilisers(const std::vector<std::vector<uint8_t>>& adj) {
    size_t n = adj.size();
    for (const auto& row : adj) {
        if (row.size() != n) {
            throw std::invalid_argument("graph_state_stabilisers: adjacency must be square");
        }
    }
    std::vector<PauliString> gens;
    for (size_t v = 0; v < n; v++) {
        if (adj[v][v]) {
            throw std::invalid_argument("graph_state_stabilisers: no self loops");
        }
        PauliString g(n);
        g.set(v, Pauli::X);
        for (size_t u = 0; u < n; u++) {
            if (adj[v][u] != adj[u][v]) {
                throw std::invalid_argument("graph_state_stabilisers: adjacency must be symmetric");
            }
            if (adj[v][u] && u != v) {
                g.set(u, Pauli::Z);
            }
        }
        gens.push_back(std::move(g));
    }
    return gens;
}

// Wheel graph: ring 0..4 plus hub 5. The wheel graph state is the pentagon
// block conjugated by a Hadamard on the bulk leg (its group contains
// XXXXX x Z and ZZZZZ x X).
inline std::vector<std::vector<uint8_t>> pentagon_wheel_adjacency() {
    std::vector<std::vector<uint8_t>> adj(6, std::vector<uint8_t>(6, 0));
    for (size_t v = 0; v < 5; v++) {
        size_t w = (v + 1) % 5;
        adj[v][w] = adj[w][v] = 1;
        adj[v][5] = adj[5][v] = 1;
    }
    return adj;
}

inline Lego lego_pentagon_graph_state() {
    Lego l;
    l.name = "pentagon_graph_state";
    l.num_legs = 6;
    l.bulk_leg = 5;
    l.stabilisers = graph_state_stabilisers(pentagon_wheel_adjacency());
    return l;
}

}  // namespace holocode
