#pragma once

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sl2kit/graph.hpp"
#include "sl2kit/homology.hpp"

namespace sl2 {

// Ascending reduced fractions in [0,1] with denominator at most n.
struct FareyLevel {
    int n;
    std::vector<Rat> fractions;
};

inline FareyLevel farey(int n) {
    require(n >= 1, errc::ParseError, "Farey level requires n >= 1");
    std::set<Rat> fr;
    for (Int q = 1; q <= n; ++q)
        for (Int p = 0; p <= q; ++p)
            if (gcd_int(p, q) == 1) fr.insert(Rat(p, q));
    return FareyLevel{n, std::vector<Rat>(fr.begin(), fr.end())};
}

// Planar model of the level-n truncation over the strips [0, window]:
// vertices are infinity plus the integer translates of F_n with x-coordinate
// in [0, window]; infinity sits at (0,0) and p/q at (p/q, q).
struct PlanarEmbedding {
    int level = 1;
    int window = 1;
    Graph graph; // over Z; infinity is the vertex [1:0]

    std::pair<Rat, Rat> coords(const Vertex& v) const {
        if (v.b().is_zero()) return {Rat(0), Rat(0)};
        return {Rat(v.a().as_int(), v.b().as_int()), Rat(v.b().as_int())};
    }
};

inline PlanarEmbedding embed(int n, int window) {
    require(n >= 1 && window >= 1, errc::ParseError, "embed requires n, window >= 1");
    Ring z = Ring::integers();
    std::vector<Vertex> verts{Vertex::infinity(z)};
    FareyLevel f = farey(n);
    for (int k = 0; k < window; ++k) {
        for (const Rat& x : f.fractions) {
            Rat t = x + k;
            verts.push_back(Vertex::canonical(
                z.from_int(boost::multiprecision::numerator(t)),
                z.from_int(boost::multiprecision::denominator(t))));
        }
    }
    PlanarEmbedding e;
    e.level = n;
    e.window = window;
    e.graph = graph_on_vertices(z, std::move(verts));
    return e;
}

// ---- deterministic SVG emission ----

struct SvgStyle {
    int scale = 100;     // pixels per unit
    int precision = 12;  // decimal digits; exactness preserved internally
    bool fill = true;    // paint triangles
};

namespace detail {

// Exact decimal serialization of a rational, trailing zeros trimmed.
inline std::string rat_to_decimal(const Rat& r, int digits) {
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    std::ostringstream os;
    if (num < 0) {
        os << "-";
        num = -num;
    }
    os << num / den;
    Int rem = num % den;
    if (rem != 0 && digits > 0) {
        std::string frac;
        for (int i = 0; i < digits && rem != 0; ++i) {
            rem *= 10;
            frac += static_cast<char>('0' + static_cast<int>(Int(rem / den)));
            rem %= den;
        }
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) os << "." << frac;
    }
    return os.str();
}

} // namespace detail

inline std::string render_svg(const PlanarEmbedding& e, const SvgStyle& style = {}) {
    const Rat margin(1, 2);
    Rat xmin = 0, xmax = e.window, ymax = e.level;
    for (size_t i = 0; i < e.graph.vertices.size(); ++i) {
        auto [x, y] = e.coords(e.graph.vertices[i]);
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymax = std::max(ymax, y);
    }
    Rat s(style.scale);
    auto px = [&](const Rat& x) { return detail::rat_to_decimal((x - xmin + margin) * s, style.precision); };
    auto py = [&](const Rat& y) { return detail::rat_to_decimal((ymax - y + margin) * s, style.precision); };
    Rat width = (xmax - xmin + 2 * margin) * s;
    Rat height = (ymax + 2 * margin) * s;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << detail::rat_to_decimal(width, style.precision) << "\" height=\""
        << detail::rat_to_decimal(height, style.precision) << "\">\n";
    svg << "<!-- Farey strip model: level=" << e.level << " window=" << e.window
        << "; infinity clamped at (0,0); out-of-window geometry omitted -->\n";

    Complex2 c = build_complex(e.graph);
    if (style.fill) {
        for (const auto& t : c.triangles) {
            svg << "<polygon points=\"";
            for (int i = 0; i < 3; ++i) {
                auto [x, y] = e.coords(e.graph.vertices[t[i]]);
                if (i) svg << " ";
                svg << px(x) << "," << py(y);
            }
            svg << "\" fill=\"#dce6f2\" stroke=\"none\"/>\n";
        }
    }
    for (const auto& [i, j] : c.edges) {
        auto [x1, y1] = e.coords(e.graph.vertices[i]);
        auto [x2, y2] = e.coords(e.graph.vertices[j]);
        svg << "<line x1=\"" << px(x1) << "\" y1=\"" << py(y1) << "\" x2=\"" << px(x2)
            << "\" y2=\"" << py(y2) << "\" stroke=\"#20303c\" stroke-width=\"1\"/>\n";
    }
    for (size_t i = 0; i < e.graph.vertices.size(); ++i) {
        auto [x, y] = e.coords(e.graph.vertices[i]);
        svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
            << "\" r=\"3\" fill=\"#b03a2e\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace sl2
