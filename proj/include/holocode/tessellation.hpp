#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace holocode {

// A face-centred patch of a hyperbolic {p,q} tessellation, built layer by
// layer around a central face. Every face carries p contractible slots,
// numbered 0..p-1 counterclockwise, plus one dangling bulk slot (index p).
// Each contraction edge joins two slots of different faces; slots not used
// by any edge are the open (boundary) legs, listed in counterclockwise order
// around the outer rim.

struct Face {
    size_t id = 0;
    size_t layer = 0;
    char type = 'c';  // 'c' centre, 'f'/'g' for {5,4}, 'e'/'v' for {4,5}
};

struct TileEdge {
    size_t a = 0;
    size_t slot_a = 0;
    size_t b = 0;
    size_t slot_b = 0;
};

struct Tiling {
    int p = 0;
    int q = 0;
    size_t n_layers = 0;
    std::vector<Face> faces;
    std::vector<TileEdge> edges;
    std::vector<std::pair<size_t, size_t>> open_legs;  // (face, slot), rim order

    size_t bulk_slot() const { return static_cast<size_t>(p); }
};

struct LayerCensus {
    // (f_k, g_k) per layer, 1-based layers at index k-1.
    std::vector<std::pair<uint64_t, uint64_t>> fg;
    uint64_t n_boundary = 0;
    uint64_t n_bulk = 0;
};

// Face census of the {5,4} patch. Layer 1 holds (5, 0); deeper layers follow
// (f_k, g_k) = (2 f_{k-1} + g_{k-1}, f_{k-1} + g_{k-1}). An f face keeps four
// open slots on the rim, a g face three, so N_boundary = 4 f_n + 3 g_n and
// N_bulk counts every face including the centre.
inline LayerCensus layer_census(size_t n) {
    LayerCensus c;
    uint64_t f = 5, g = 0;
    uint64_t faces = 1;
    for (size_t k = 1; k <= n; k++) {
        if (k > 1) {
            uint64_t nf = 2 * f + g;
            uint64_t ng = f + g;
            f = nf;
            g = ng;
        }
        c.fg.emplace_back(f, g);
        faces += f + g;
    }
    c.n_bulk = faces;
    c.n_boundary = (n == 0) ? 5 : 4 * c.fg.back().first + 3 * c.fg.back().second;
    return c;
}

namespace detail {

// {5,4}: layers are face-graph distance from the centre. The rim is a cycle
// of faces; between each pair of cyclically adjacent rim faces the next layer
// grows one shared g child (two parent edges), and each remaining forward
// slot grows one f child.
inline Tiling build_pentagon_tiling(size_t n) {
    Tiling t;
    t.p = 5;
    t.q = 4;
    t.n_layers = n;
    t.faces.push_back({0, 0, 'c'});

    struct RimFace {
        size_t id;
        std::vector<size_t> forward;  // unclaimed slots, ccw
    };
    std::vector<RimFace> rim{{0, {0, 1, 2, 3, 4}}};

    for (size_t layer = 1; layer <= n; layer++) {
        std::vector<RimFace> next;
        auto new_face = [&](char type, std::vector<size_t> fwd) {
            size_t id = t.faces.size();
            t.faces.push_back({id, layer, type});
            next.push_back({id, std::move(fwd)});
            return id;
        };
        if (rim.size() == 1) {
            for (size_t s : rim[0].forward) {
                size_t id = new_face('f', {1, 2, 3, 4});
                t.edges.push_back({rim[0].id, s, id, 0});
            }
        } else {
            for (size_t i = 0; i < rim.size(); i++) {
                RimFace& prev = rim[(i + rim.size() - 1) % rim.size()];
                RimFace& cur = rim[i];
                size_t gid = new_face('g', {2, 3, 4});
                t.edges.push_back({prev.id, prev.forward.back(), gid, 0});
                t.edges.push_back({cur.id, cur.forward.front(), gid, 1});
                for (size_t k = 1; k + 1 < cur.forward.size(); k++) {
                    size_t fid = new_face('f', {1, 2, 3, 4});
                    t.edges.push_back({cur.id, cur.forward[k], fid, 0});
                }
            }
        }
        rim = std::move(next);
    }
    for (const auto& rf : rim) {
        for (size_t s : rf.forward) {
            t.open_legs.emplace_back(rf.id, s);
        }
    }
    return t;
}

// {4,5}: layers are vertex inflation. The rim alternates edges and vertices;
// each rim edge grows one e child across it, and a rim vertex already touched
// by m faces grows a fan of 3-m v children between the two flanking e
// children (vertices end up with q = 5 faces). e child slots: 0 back, 1 next
// fan, 2 open, 3 previous fan. v child slots: 0/3 fan neighbours, 1/2 open.
inline Tiling build_square_tiling(size_t n) {
    Tiling t;
    t.p = 4;
    t.q = 5;
    t.n_layers = n;
    t.faces.push_back({0, 0, 'c'});

    struct EdgeRef {
        size_t face;
        size_t slot;
    };
    // rim_m[i] is the vertex between rim_edges[i] and rim_edges[i+1].
    std::vector<EdgeRef> rim_edges{{0, 0}, {0, 1}, {0, 2}, {0, 3}};
    std::vector<int> rim_m{1, 1, 1, 1};

    for (size_t layer = 1; layer <= n; layer++) {
        size_t R = rim_edges.size();
        // Walk-order ids: E_i, then the fan after it, then E_{i+1}, ...
        std::vector<size_t> e_id(R);
        std::vector<size_t> fan_base(R);
        size_t id = t.faces.size();
        for (size_t i = 0; i < R; i++) {
            e_id[i] = id++;
            fan_base[i] = id;
            id += static_cast<size_t>(3 - rim_m[i]);
        }
        std::vector<EdgeRef> next_edges;
        std::vector<int> next_m;
        for (size_t i = 0; i < R; i++) {
            t.faces.push_back({e_id[i], layer, 'e'});
            t.edges.push_back({rim_edges[i].face, rim_edges[i].slot, e_id[i], 0});
            next_edges.push_back({e_id[i], 2});
            next_m.push_back(2);
            size_t fan = static_cast<size_t>(3 - rim_m[i]);
            size_t right = e_id[(i + 1) % R];
            if (fan == 0) {
                t.edges.push_back({e_id[i], 1, right, 3});
            } else {
                for (size_t k = 0; k < fan; k++) {
                    size_t vid = fan_base[i] + k;
                    t.faces.push_back({vid, layer, 'v'});
                    if (k == 0) {
                        t.edges.push_back({e_id[i], 1, vid, 0});
                    } else {
                        t.edges.push_back({vid - 1, 3, vid, 0});
                    }
                    next_edges.push_back({vid, 1});
                    next_m.push_back(1);
                    next_edges.push_back({vid, 2});
                    next_m.push_back(2);
                }
                t.edges.push_back({fan_base[i] + fan - 1, 3, right, 3});
            }
        }
        rim_edges = std::move(next_edges);
        rim_m = std::move(next_m);
    }
    for (const auto& e : rim_edges) {
        t.open_legs.emplace_back(e.face, e.slot);
    }
    return t;
}

}  // namespace detail

// Builds the n-layer {5,4} or {4,5} patch. Construction is deterministic
// (no randomness); repeated calls give identical tilings.
inline Tiling build_tiling(int p, int q, size_t n) {
    if (p == 5 && q == 4) {
        return detail::build_pentagon_tiling(n);
    }
    if (p == 4 && q == 5) {
        return detail::build_square_tiling(n);
    }
    throw std::invalid_argument("build_tiling: only {5,4} and {4,5} are supported");
}

}  // namespace holocode
