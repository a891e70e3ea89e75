#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "sl2kit/euclid.hpp"
#include "sl2kit/projline.hpp"

namespace sl2 {

// Two vertices form an edge iff the stacked canonical rows have unit
// determinant; independent of the orbit representatives.
inline bool is_edge(const Vertex& x, const Vertex& y) {
    require(x.ring() == y.ring(), errc::RingMismatch, "edge test across rings");
    RingElem det = x.a() * y.b() - x.b() * y.a();
    return is_unit(det);
}

// Neighbours of x within the bound: {[a:1] * complete_row(x)} over enumerated
// a. Complete for finite rings, a truncation otherwise.
inline std::vector<Vertex> neighbors(const Vertex& x, const HeightBound& bound) {
    Mat2 X = complete_row(x);
    std::set<Vertex> seen;
    std::vector<Vertex> out;
    for (const RingElem& a : enumerate_elements(x.ring(), bound)) {
        Vertex v = act(Vertex::canonical(a, x.ring().one()), X);
        if (seen.insert(v).second) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Apexes completing the edge {x,y} to a triangle: u -> [row(x) + u*row(y)],
// a bijection from the units enumerated within the bound.
inline std::vector<Vertex> triangle_apexes(const Vertex& x, const Vertex& y,
                                           const HeightBound& bound) {
    require(is_edge(x, y), errc::NotAnEdge,
            x.str() + "," + y.str() + " is not an edge");
    std::set<Vertex> seen;
    std::vector<Vertex> out;
    for (const RingElem& u : enumerate_units(x.ring(), bound)) {
        Vertex v = Vertex::canonical(x.a() + u * y.a(), x.b() + u * y.b());
        if (seen.insert(v).second) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// 4-clique witness search through w(A) = {u unit : 1-u unit}.
struct FourCliqueResult {
    bool found = false;
    bool search_complete = false; // unit enumeration known exhaustive
    std::vector<RingElem> w_set;  // units u with 1-u a unit, within bound
    std::vector<Vertex> witness;  // {inf, 0, [u:1], [1-u:1]} for the first u
};

inline FourCliqueResult has_4_clique(const Ring& ring, const HeightBound& bound) {
    FourCliqueResult res;
    res.search_complete = ring.family() != RingFamily::LocalizedIntegers;
    for (const RingElem& u : enumerate_units(ring, bound)) {
        if (!is_unit(ring.one() - u)) continue;
        res.w_set.push_back(u);
        if (!res.found) {
            res.found = true;
            res.witness = {Vertex::infinity(ring), Vertex::zero(ring),
                           Vertex::canonical(u, ring.one()),
                           Vertex::canonical(ring.one() - u, ring.one())};
        }
    }
    return res;
}

// Finite materialization of the graph; exhaustive for finite rings, an
// honestly-labelled truncation otherwise.
struct Graph {
    Ring ring;
    HeightBound bound;
    std::vector<Vertex> vertices; // sorted by the deterministic vertex order
    std::vector<std::pair<int, int>> edges; // i<j, lexicographic
    bool complete = false;

    int index_of(const Vertex& v) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
        if (it == vertices.end() || !(*it == v)) return -1;
        return static_cast<int>(it - vertices.begin());
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(vertices.size());
        for (auto [i, j] : edges) {
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
        return adj;
    }
};

inline Graph build_graph(const Ring& ring, const HeightBound& bound) {
    std::set<Vertex> vs;
    std::vector<RingElem> elems = enumerate_elements(ring, bound);
    for (const RingElem& a : elems) {
        for (const RingElem& b : elems) {
            if (!is_unimodular(ring, a, b)) continue;
            Vertex v = Vertex::canonical(a, b);
            if (ring.is_finite() ||
                (elem_height(v.a()) <= bound.elem_height &&
                 elem_height(v.b()) <= bound.elem_height))
                vs.insert(v);
        }
    }
    Graph g{ring, bound, std::vector<Vertex>(vs.begin(), vs.end()), {}, ring.is_finite()};
    for (size_t i = 0; i < g.vertices.size(); ++i)
        for (size_t j = i + 1; j < g.vertices.size(); ++j)
            if (is_edge(g.vertices[i], g.vertices[j]))
                g.edges.emplace_back((int)i, (int)j);
    return g;
}

// Builds the graph on an explicit vertex list (used by the planar model).
inline Graph graph_on_vertices(const Ring& ring, std::vector<Vertex> verts) {
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    Graph g{ring, HeightBound{0, 0}, std::move(verts), {}, false};
    for (size_t i = 0; i < g.vertices.size(); ++i)
        for (size_t j = i + 1; j < g.vertices.size(); ++j)
            if (is_edge(g.vertices[i], g.vertices[j]))
                g.edges.emplace_back((int)i, (int)j);
    return g;
}

// Connected components by BFS; component ids ordered by least contained
// vertex, vertices listed in discovery order from that least vertex.
inline std::vector<std::vector<int>> components(const Graph& g) {
    auto adj = g.adjacency();
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    std::vector<bool> seen(g.vertices.size(), false);
    std::vector<std::vector<int>> comps;
    for (size_t s = 0; s < g.vertices.size(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push((int)s);
        seen[s] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comp.push_back(v);
            for (int w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    q.push(w);
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// All k-cliques, k >= 3, in lexicographic vertex-id order.
struct CliqueSet {
    int k;
    std::vector<std::vector<int>> members;
};

inline CliqueSet cliques(const Graph& g, int k) {
    require(k >= 3, errc::ParseError, "cliques(k) requires k >= 3");
    CliqueSet out{k, {}};
    std::vector<std::set<int>> adj(g.vertices.size());
    for (auto [i, j] : g.edges) {
        adj[i].insert(j);
        adj[j].insert(i);
    }
    std::vector<int> cur;
    std::vector<int> cand;
    for (size_t i = 0; i < g.vertices.size(); ++i) cand.push_back((int)i);

    // recursive extension over sorted candidate sets
    auto extend = [&](auto&& self, const std::vector<int>& candidates) -> void {
        if ((int)cur.size() == k) {
            out.members.push_back(cur);
            return;
        }
        for (size_t idx = 0; idx < candidates.size(); ++idx) {
            int v = candidates[idx];
            // prune: not enough candidates left to reach size k
            if ((int)(cur.size() + candidates.size() - idx) < k) break;
            std::vector<int> next;
            for (size_t j = idx + 1; j < candidates.size(); ++j)
                if (adj[v].count(candidates[j])) next.push_back(candidates[j]);
            cur.push_back(v);
            self(self, next);
            cur.pop_back();
        }
    };
    extend(extend, cand);
    return out;
}

} // namespace sl2
