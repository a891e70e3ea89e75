#pragma once

#include <array>
#include <map>
#include <numeric>
#include <queue>
#include <vector>

#include "sl2kit/graph.hpp"
#include "sl2kit/pathword.hpp"

namespace sl2 {

// 2-skeleton chain data: oriented (sorted-tuple) cells with the alternating
// boundary convention d2(x0x1x2) = x1x2 - x0x2 + x0x1.
struct Complex2 {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;    // i<j, lexicographic
    std::vector<std::array<int, 3>> triangles; // i<j<k, lexicographic
    bool complete = false;
    std::vector<Vertex> vertex_set; // labels when built from a graph

    int edge_index(int i, int j) const {
        if (i > j) std::swap(i, j);
        auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(i, j));
        if (it == edges.end() || *it != std::make_pair(i, j)) return -1;
        return static_cast<int>(it - edges.begin());
    }
};

inline Complex2 build_complex(const Graph& g) {
    Complex2 c;
    c.n_vertices = static_cast<int>(g.vertices.size());
    c.edges = g.edges;
    std::sort(c.edges.begin(), c.edges.end());
    for (const auto& t : cliques(g, 3).members)
        c.triangles.push_back({t[0], t[1], t[2]});
    std::sort(c.triangles.begin(), c.triangles.end());
    c.complete = g.complete;
    c.vertex_set = g.vertices;
    return c;
}

using IMat = std::vector<std::vector<Int>>;

inline IMat boundary1(const Complex2& c) {
    IMat m(c.n_vertices, std::vector<Int>(c.edges.size(), 0));
    for (size_t e = 0; e < c.edges.size(); ++e) {
        m[c.edges[e].first][e] -= 1;
        m[c.edges[e].second][e] += 1;
    }
    return m;
}

inline IMat boundary2(const Complex2& c) {
    IMat m(c.edges.size(), std::vector<Int>(c.triangles.size(), 0));
    for (size_t t = 0; t < c.triangles.size(); ++t) {
        auto [i, j, k] = c.triangles[t];
        m[c.edge_index(j, k)][t] += 1;
        m[c.edge_index(i, k)][t] -= 1;
        m[c.edge_index(i, j)][t] += 1;
    }
    return m;
}

// ---- exact Smith normal form ----

struct SnfResult {
    std::vector<Int> factors; // nonzero invariant factors, d1 | d2 | ...
    int rank = 0;
    IMat row_transform; // U with S = U*M*V, only if requested
};

namespace detail {

inline SnfResult snf_impl(IMat m, bool want_row_transform) {
    SnfResult res;
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    IMat U;
    if (want_row_transform) {
        U.assign(rows, std::vector<Int>(rows, 0));
        for (int i = 0; i < rows; ++i) U[i][i] = 1;
    }
    auto row_swap = [&](int i, int j) {
        std::swap(m[i], m[j]);
        if (want_row_transform) std::swap(U[i], U[j]);
    };
    auto row_addmul = [&](int dst, int src, const Int& q) {
        for (int t = 0; t < cols; ++t) m[dst][t] += q * m[src][t];
        if (want_row_transform)
            for (int t = 0; t < rows; ++t) U[dst][t] += q * U[src][t];
    };
    auto row_negate = [&](int i) {
        for (int t = 0; t < cols; ++t) m[i][t] = -m[i][t];
        if (want_row_transform)
            for (int t = 0; t < rows; ++t) U[i][t] = -U[i][t];
    };
    auto col_swap = [&](int i, int j) {
        for (int t = 0; t < rows; ++t) std::swap(m[t][i], m[t][j]);
    };
    auto col_addmul = [&](int dst, int src, const Int& q) {
        for (int t = 0; t < rows; ++t) m[t][dst] += q * m[t][src];
    };

    int r = 0;
    while (r < rows && r < cols) {
        // minimal-absolute-value pivot in the remaining block
        int pi = -1, pj = -1;
        for (int i = r; i < rows; ++i) {
            for (int j = r; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                if (pi < 0 || abs_int(m[i][j]) < abs_int(m[pi][pj])) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0) break;
        if (pi != r) row_swap(pi, r);
        if (pj != r) col_swap(pj, r);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = r + 1; i < rows; ++i) {
                if (m[i][r] == 0) continue;
                Int q = m[i][r] / m[r][r];
                row_addmul(i, r, -q);
                if (m[i][r] != 0) {
                    row_swap(i, r); // smaller remainder becomes the pivot
                    clean = false;
                }
            }
            for (int j = r + 1; j < cols; ++j) {
                if (m[r][j] == 0) continue;
                Int q = m[r][j] / m[r][r];
                col_addmul(j, r, -q);
                if (m[r][j] != 0) {
                    col_swap(j, r);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility sweep: pivot must divide the remaining block
            for (int i = r + 1; i < rows && clean; ++i) {
                for (int j = r + 1; j < cols && clean; ++j) {
                    if (m[i][j] % m[r][r] != 0) {
                        row_addmul(r, i, 1);
                        clean = false;
                    }
                }
            }
        }
        if (m[r][r] < 0) row_negate(r);
        ++r;
    }
    res.rank = r;
    for (int i = 0; i < r; ++i) res.factors.push_back(m[i][i]);
    if (want_row_transform) res.row_transform = std::move(U);
    return res;
}

} // namespace detail

inline SnfResult smith_normal_form(const IMat& m) { return detail::snf_impl(m, false); }

// ---- homology of the 2-skeleton ----

struct HomologyResult {
    int h0_rank = 0;
    int h1_rank = 0;
    std::vector<Int> h1_torsion; // invariant factors > 1, divisibility chain
    bool truncated = false;
    bool lemma_h1_hypothesis = false; // every edge lies in a triangle
};

namespace detail {
inline int component_count(const Complex2& c) {
    std::vector<int> parent(c.n_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [i, j] : c.edges) parent[find(i)] = find(j);
    int count = 0;
    for (int i = 0; i < c.n_vertices; ++i)
        if (find(i) == i) ++count;
    return count;
}
} // namespace detail

inline HomologyResult homology(const Complex2& c) {
    HomologyResult out;
    out.truncated = !c.complete;
    out.h0_rank = detail::component_count(c);

    std::vector<bool> edge_in_triangle(c.edges.size(), false);
    for (const auto& t : c.triangles) {
        edge_in_triangle[c.edge_index(t[0], t[1])] = true;
        edge_in_triangle[c.edge_index(t[0], t[2])] = true;
        edge_in_triangle[c.edge_index(t[1], t[2])] = true;
    }
    out.lemma_h1_hypothesis = std::all_of(edge_in_triangle.begin(),
                                          edge_in_triangle.end(),
                                          [](bool b) { return b; });

    SnfResult s = smith_normal_form(boundary2(c));
    out.h1_rank = static_cast<int>(c.edges.size()) - c.n_vertices + out.h0_rank - s.rank;
    for (const Int& d : s.factors)
        if (d > 1) out.h1_torsion.push_back(d);
    return out;
}

// ---- fundamental group of the 2-complex from a spanning tree ----

struct Pi1Presentation {
    int basepoint = 0;
    std::vector<int> parent;     // BFS tree parent, -1 = root or unreached
    std::vector<bool> in_component;
    std::vector<std::pair<int, int>> generators; // non-tree edges, i<j
    // relator = boundary word of a triangle, tree edges dropped
    std::vector<std::vector<std::pair<int, int>>> relators; // (gen, +-1)

    // abelianization: (free rank, invariant factors > 1)
    std::pair<int, std::vector<Int>> abelian_invariants() const {
        IMat m(generators.size(), std::vector<Int>(relators.size(), 0));
        for (size_t j = 0; j < relators.size(); ++j)
            for (auto [g, e] : relators[j]) m[g][j] += e;
        SnfResult s = smith_normal_form(m);
        std::vector<Int> torsion;
        for (const Int& d : s.factors)
            if (d > 1) torsion.push_back(d);
        return {static_cast<int>(generators.size()) - s.rank, torsion};
    }
};

inline Pi1Presentation pi1_presentation(const Complex2& c, int base) {
    require(base >= 0 && base < c.n_vertices, errc::VertexNotFound,
            "basepoint outside the complex");
    Pi1Presentation out;
    out.basepoint = base;
    out.parent.assign(c.n_vertices, -1);
    out.in_component.assign(c.n_vertices, false);

    std::vector<std::vector<int>> adj(c.n_vertices);
    for (auto [i, j] : c.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());

    std::queue<int> q;
    q.push(base);
    out.in_component[base] = true;
    std::map<std::pair<int, int>, bool> tree_edge;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v]) {
            if (out.in_component[w]) continue;
            out.in_component[w] = true;
            out.parent[w] = v;
            tree_edge[{std::min(v, w), std::max(v, w)}] = true;
            q.push(w);
        }
    }

    std::map<std::pair<int, int>, int> gen_of_edge;
    for (const auto& e : c.edges) {
        if (!out.in_component[e.first]) continue;
        if (tree_edge.count(e)) continue;
        gen_of_edge[e] = static_cast<int>(out.generators.size());
        out.generators.push_back(e);
    }

    for (const auto& t : c.triangles) {
        if (!out.in_component[t[0]]) continue;
        std::vector<std::pair<int, int>> word;
        // boundary loop t0 -> t1 -> t2 -> t0
        const std::array<std::pair<int, int>, 3> walk{
            std::make_pair(t[0], t[1]), std::make_pair(t[1], t[2]),
            std::make_pair(t[2], t[0])};
        for (auto [x, y] : walk) {
            auto key = std::make_pair(std::min(x, y), std::max(x, y));
            auto it = gen_of_edge.find(key);
            if (it == gen_of_edge.end()) continue; // tree edge, trivial
            word.emplace_back(it->second, x < y ? 1 : -1);
        }
        out.relators.push_back(std::move(word));
    }
    return out;
}

// ---- the class map for loops, in the SNF basis of H1 ----

// Coordinates of 1-cycles in H1 = ker d1 / im d2: torsion residues (mod the
// invariant factors > 1) followed by the free coordinates. Two cycles get
// equal vectors iff they are homologous.
class H1Basis {
public:
    explicit H1Basis(const Complex2& c) : complex_(&c) {
        snf_ = detail::snf_impl(boundary2(c), true);
    }

    std::vector<Int> class_of_cycle(const std::vector<Int>& z) const {
        const int e = static_cast<int>(complex_->edges.size());
        std::vector<Int> w(e, 0);
        for (int i = 0; i < e; ++i) {
            Int acc = 0;
            for (int j = 0; j < e; ++j) {
                if (snf_.row_transform[i][j] != 0 && z[j] != 0)
                    acc += snf_.row_transform[i][j] * z[j];
            }
            w[i] = acc;
        }
        std::vector<Int> out;
        for (int i = 0; i < snf_.rank; ++i) {
            const Int& d = snf_.factors[i];
            if (d > 1) {
                Int v = w[i] % d;
                if (v < 0) v += d;
                out.push_back(v);
            }
        }
        for (int i = snf_.rank; i < e; ++i) out.push_back(w[i]);
        return out;
    }

    std::vector<Int> class_of_loop(const PathWord& p) const;

private:
    const Complex2* complex_;
    SnfResult snf_;
};

// Edge chain of a closed path inside the complex.
inline std::vector<Int> loop_edge_chain(const Complex2& c, const PathWord& p) {
    require(!c.vertex_set.empty(), errc::LoopNotInComplex,
            "complex carries no vertex labels");
    std::vector<Vertex> vs = path_vertices(p);
    require(vs.front() == vs.back(), errc::NotALoop, "path is not closed");
    auto index_of = [&](const Vertex& v) {
        auto it = std::lower_bound(c.vertex_set.begin(), c.vertex_set.end(), v);
        require(it != c.vertex_set.end() && *it == v, errc::LoopNotInComplex,
                "vertex " + v.str() + " missing from the truncation");
        return static_cast<int>(it - c.vertex_set.begin());
    };
    std::vector<Int> z(c.edges.size(), 0);
    for (size_t i = 0; i + 1 < vs.size(); ++i) {
        int a = index_of(vs[i]);
        int b = index_of(vs[i + 1]);
        int e = c.edge_index(a, b);
        require(e >= 0, errc::LoopNotInComplex,
                "edge " + vs[i].str() + "," + vs[i + 1].str() +
                    " missing from the truncation");
        z[e] += (a < b) ? 1 : -1;
    }
    return z;
}

inline std::vector<Int> H1Basis::class_of_loop(const PathWord& p) const {
    return class_of_cycle(loop_edge_chain(*complex_, p));
}

inline std::vector<Int> loop_class(const Complex2& c, const PathWord& p) {
    return H1Basis(c).class_of_loop(p);
}

} // namespace sl2
