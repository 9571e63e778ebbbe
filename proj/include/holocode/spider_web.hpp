#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holocode/bitmat.hpp"
#include "holocode/pauli.hpp"

namespace holocode {

// Clifford spider diagrams restricted to what the toolkit needs: Z/X spiders
// with phase 0 or pi, plain or Hadamard edges, and labelled open legs.

enum class SpiderKind : uint8_t { Z, X };

struct Spider {
    SpiderKind kind = SpiderKind::Z;
    int half_turns = 0;  // phase as a multiple of pi: 0 or 1
};

struct SpiderEdge {
    size_t a = 0;
    size_t b = 0;
    bool hadamard = false;
};

struct SpiderGraph {
    std::vector<Spider> spiders;
    std::vector<SpiderEdge> edges;
    std::vector<size_t> open_legs;  // spider carrying each open leg
    std::vector<std::string> leg_labels;

    void validate() const {
        for (const auto& s : spiders) {
            if (s.half_turns != 0 && s.half_turns != 1) {
                throw std::invalid_argument("SpiderGraph: phases restricted to 0 and pi");
            }
        }
        for (const auto& e : edges) {
            if (e.a >= spiders.size() || e.b >= spiders.size()) {
                throw std::invalid_argument("SpiderGraph: edge endpoint out of range");
            }
        }
        for (size_t s : open_legs) {
            if (s >= spiders.size()) {
                throw std::invalid_argument("SpiderGraph: open leg spider out of range");
            }
        }
    }
};

// A Pauli labelling of every edge and open leg. Edge labels are recorded as
// seen from endpoint a; crossing a Hadamard edge swaps the label's X and Z
// components, so endpoint b sees the conjugated letter.
struct PauliWeb {
    std::vector<Pauli> edge_labels;
    std::vector<Pauli> leg_labels;
};

namespace detail {

inline Pauli hadamard_conj(Pauli p) {
    switch (p) {
        case Pauli::X:
            return Pauli::Z;
        case Pauli::Z:
            return Pauli::X;
        default:
            return p;
    }
}

inline bool x_component(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
inline bool z_component(Pauli p) { return p == Pauli::Z || p == Pauli::Y; }

}  // namespace detail

// Validity of a Pauli web: at every Z-spider the X components of the incident
// labels (as seen from that spider) must all be equal and the Z components
// must have even parity; X-spiders impose the dual conditions. A phase-pi
// spider only flips the sign bookkeeping of the web, never its validity.
inline bool verify_pauli_web(const SpiderGraph& g, const PauliWeb& web) {
    g.validate();
    if (web.edge_labels.size() != g.edges.size() || web.leg_labels.size() != g.open_legs.size()) {
        throw std::invalid_argument("verify_pauli_web: label list sizes do not match the graph");
    }
    size_t ns = g.spiders.size();
    // per spider: has_ref/ref for the all-equal component, parity for the other
    std::vector<int> ref(ns, -1);
    std::vector<uint8_t> parity(ns, 0);
    bool ok = true;
    auto visit = [&](size_t s, Pauli label) {
        bool eq_comp, par_comp;
        if (g.spiders[s].kind == SpiderKind::Z) {
            eq_comp = detail::x_component(label);
            par_comp = detail::z_component(label);
        } else {
            eq_comp = detail::z_component(label);
            par_comp = detail::x_component(label);
        }
        if (ref[s] == -1) {
            ref[s] = eq_comp ? 1 : 0;
        } else if (ref[s] != (eq_comp ? 1 : 0)) {
            ok = false;
        }
        parity[s] ^= par_comp ? 1 : 0;
    };
    for (size_t e = 0; e < g.edges.size(); e++) {
        Pauli from_a = web.edge_labels[e];
        Pauli from_b = g.edges[e].hadamard ? detail::hadamard_conj(from_a) : from_a;
        visit(g.edges[e].a, from_a);
        visit(g.edges[e].b, from_b);
    }
    for (size_t l = 0; l < g.open_legs.size(); l++) {
        visit(g.open_legs[l], web.leg_labels[l]);
    }
    for (size_t s = 0; s < ns; s++) {
        if (parity[s] & 1) {
            ok = false;
        }
    }
    return ok;
}

// Sign carried by a valid web. Three contributions multiply:
//  - a phase-pi spider flips the sign when the all-equal component flows
//    through it;
//  - a spider with 2k incident Y labels contributes (-1)^k, because the
//    local group element written over X^a Z^z letters picks up (-i) per Y
//    and a valid web always has an even Y count per spider;
//  - a plain edge labelled Y flips the sign (a Bell pair is stabilised by
//    -Y(x)Y, while a Hadamard edge glues Y to Y with +1).
inline int web_sign(const SpiderGraph& g, const PauliWeb& web) {
    if (!verify_pauli_web(g, web)) {
        throw std::invalid_argument("web_sign: web is not valid");
    }
    size_t ns = g.spiders.size();
    std::vector<uint8_t> flows(ns, 0);
    std::vector<size_t> y_count(ns, 0);
    auto visit = [&](size_t s, Pauli label) {
        bool comp = g.spiders[s].kind == SpiderKind::Z ? detail::x_component(label)
                                                       : detail::z_component(label);
        if (comp) flows[s] = 1;
        if (label == Pauli::Y) y_count[s]++;
    };
    int sign = 1;
    for (size_t e = 0; e < g.edges.size(); e++) {
        Pauli from_a = web.edge_labels[e];
        Pauli from_b = g.edges[e].hadamard ? detail::hadamard_conj(from_a) : from_a;
        visit(g.edges[e].a, from_a);
        visit(g.edges[e].b, from_b);
        if (!g.edges[e].hadamard && from_a == Pauli::Y) sign = -sign;
    }
    for (size_t l = 0; l < g.open_legs.size(); l++) {
        visit(g.open_legs[l], web.leg_labels[l]);
    }
    for (size_t s = 0; s < ns; s++) {
        if (g.spiders[s].half_turns == 1 && flows[s]) sign = -sign;
        if ((y_count[s] / 2) % 2 == 1) sign = -sign;
    }
    return sign;
}

// Completes fixed open-leg labels to a full valid web when one exists. The
// interior labels are the solution of a GF(2) system with two unknowns per
// edge (the X and Z components seen from endpoint a); free components are
// set to zero, so the result is deterministic.
inline std::optional<PauliWeb> extend_web(const SpiderGraph& g,
                                          const std::vector<Pauli>& leg_labels) {
    g.validate();
    if (leg_labels.size() != g.open_legs.size()) {
        throw std::invalid_argument("extend_web: one label per open leg required");
    }
    size_t ne = g.edges.size();
    size_t nvars = 2 * ne;  // vars 2e, 2e+1: x and z component of edge e, a-side view

    // Incidence of each item at each spider, expressed over the variables.
    // An item contributes (x_comp, z_comp) as affine forms: a set of variables
    // plus a constant.
    struct Form {
        std::vector<size_t> vars;
        uint8_t constant = 0;
    };
    struct Item {
        Form xc, zc;
    };
    std::vector<std::vector<Item>> incident(g.spiders.size());
    for (size_t e = 0; e < ne; e++) {
        Item a_view, b_view;
        a_view.xc.vars = {2 * e};
        a_view.zc.vars = {2 * e + 1};
        if (g.edges[e].hadamard) {
            b_view.xc.vars = {2 * e + 1};
            b_view.zc.vars = {2 * e};
        } else {
            b_view = a_view;
        }
        incident[g.edges[e].a].push_back(a_view);
        incident[g.edges[e].b].push_back(b_view);
    }
    for (size_t l = 0; l < g.open_legs.size(); l++) {
        Item leg;
        leg.xc.constant = detail::x_component(leg_labels[l]) ? 1 : 0;
        leg.zc.constant = detail::z_component(leg_labels[l]) ? 1 : 0;
        incident[g.open_legs[l]].push_back(leg);
    }

    // Collect constraints: for each spider, all-equal on one component and
    // even parity on the other.
    std::vector<std::pair<std::vector<size_t>, uint8_t>> constraints;
    for (size_t s = 0; s < g.spiders.size(); s++) {
        const auto& items = incident[s];
        if (items.empty()) continue;
        bool z_kind = g.spiders[s].kind == SpiderKind::Z;
        auto eq_of = [&](const Item& it) -> const Form& { return z_kind ? it.xc : it.zc; };
        auto par_of = [&](const Item& it) -> const Form& { return z_kind ? it.zc : it.xc; };
        for (size_t i = 1; i < items.size(); i++) {
            std::vector<size_t> vars = eq_of(items[0]).vars;
            vars.insert(vars.end(), eq_of(items[i]).vars.begin(), eq_of(items[i]).vars.end());
            constraints.emplace_back(std::move(vars),
                                     eq_of(items[0]).constant ^ eq_of(items[i]).constant);
        }
        std::vector<size_t> vars;
        uint8_t c = 0;
        for (const auto& it : items) {
            vars.insert(vars.end(), par_of(it).vars.begin(), par_of(it).vars.end());
            c ^= par_of(it).constant;
        }
        constraints.emplace_back(std::move(vars), c);
    }

    // Solve A v = b by expressing it as a row-combination problem over the
    // transpose: rows = variables, columns = constraints.
    BitMatrix m(nvars, constraints.size());
    std::vector<uint8_t> target(constraints.size(), 0);
    for (size_t c = 0; c < constraints.size(); c++) {
        for (size_t v : constraints[c].first) {
            m.set(v, c, !m.get(v, c));  // repeated vars cancel mod 2
        }
        target[c] = constraints[c].second;
    }
    auto combo = solve_row_combination(m, target);
    if (!combo) {
        return std::nullopt;
    }
    PauliWeb web;
    web.leg_labels = leg_labels;
    web.edge_labels.resize(ne, Pauli::I);
    for (size_t e = 0; e < ne; e++) {
        bool xb = (*combo)[2 * e];
        bool zb = (*combo)[2 * e + 1];
        web.edge_labels[e] = static_cast<Pauli>((xb ? 1 : 0) | (zb ? 2 : 0));
    }
    return web;
}

// The spider diagram of a graph state: one phase-free Z-spider per vertex
// with an open leg, Hadamard edges along the graph.
inline SpiderGraph graph_state_spider_graph(const std::vector<std::vector<uint8_t>>& adj) {
    SpiderGraph g;
    size_t n = adj.size();
    for (size_t v = 0; v < n; v++) {
        if (adj[v].size() != n) {
            throw std::invalid_argument("graph_state_spider_graph: adjacency must be square");
        }
        g.spiders.push_back({SpiderKind::Z, 0});
        g.open_legs.push_back(v);
        g.leg_labels.push_back("q" + std::to_string(v));
    }
    for (size_t v = 0; v < n; v++) {
        for (size_t u = v + 1; u < n; u++) {
            if (adj[v][u] != adj[u][v]) {
                throw std::invalid_argument("graph_state_spider_graph: adjacency must be symmetric");
            }
            if (adj[v][u]) {
                g.edges.push_back({v, u, true});
            }
        }
    }
    return g;
}

}  // namespace holocode
