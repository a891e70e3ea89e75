// Command-line surface over the library: graphs, Euclid traces, continued
// fractions, path/word calculus, homology and the Farey plane, with stable
// text/JSON output.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "sl2kit/euclid.hpp"
#include "sl2kit/farey.hpp"
#include "sl2kit/graph.hpp"
#include "sl2kit/homology.hpp"
#include "sl2kit/jsonio.hpp"
#include "sl2kit/pathword.hpp"
#include "sl2kit/words.hpp"

using namespace sl2;

namespace {

struct Options {
    std::string ring_spec = "Z";
    std::string height = "8";
    int unit_exp = 1;
    int max_steps = 64;
    std::string format; // per-command default when empty
    std::string out;
    int level = 1;
    int window = 1;
    int k = 3;
    int svg_size = 100;
    int svg_precision = 12;
    bool svg_fill = true;
    std::string base_vertex;
    std::vector<std::string> args;
};

Ring ring_of(const Options& o) { return parse_ring(o.ring_spec); }

HeightBound bound_of(const Options& o) { return HeightBound{Int(o.height), o.unit_exp}; }

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    require(f.good(), errc::ParseError, "cannot open output file " + o.out);
    f << text;
}

std::string payload(const std::string& arg) {
    if (arg != "-") return arg;
    std::string all, line;
    while (std::getline(std::cin, line)) {
        if (!all.empty()) all += "\n";
        all += line;
    }
    return all;
}

// ---- payload grammars ----

std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\n");
    return s.substr(a, b - a + 1);
}

struct Atom {
    std::string name;
    bool inverted = false;
    std::vector<std::string> params;
};

Atom parse_atom(const std::string& text) {
    std::string t = strip(text);
    auto open = t.find('(');
    require(open != std::string::npos && t.back() == ')', errc::ParseError,
            "bad word letter: " + t);
    Atom a;
    a.name = t.substr(0, open);
    if (a.name.size() > 3 && a.name.substr(a.name.size() - 3) == "^-1") {
        a.inverted = true;
        a.name = a.name.substr(0, a.name.size() - 3);
    }
    for (const std::string& p : split_top(t.substr(open + 1, t.size() - open - 2), ','))
        a.params.push_back(strip(p));
    return a;
}

CWord parse_cword(const Ring& r, const std::string& text) {
    CWord w(r);
    std::string t = strip(text);
    if (t.empty() || t == "1") return w;
    for (const std::string& part : split_top(t, '*')) {
        Atom a = parse_atom(part);
        CWord piece(r);
        auto arg = [&](size_t i) {
            require(i < a.params.size(), errc::ParseError,
                    a.name + " needs more parameters");
            return parse_elem(r, a.params[i]);
        };
        if (a.name == "e")
            piece = CWord::eps(arg(0));
        else if (a.name == "h")
            piece = h_word(arg(0));
        else if (a.name == "y")
            piece = y_word(arg(0));
        else if (a.name == "ybar")
            piece = ybar_word(arg(0));
        else if (a.name == "beta")
            piece = beta_word(arg(0), arg(1));
        else if (a.name == "w")
            piece = w_word(arg(0));
        else if (a.name == "wbar")
            piece = wbar_word(arg(0));
        else
            fail(errc::ParseError, "unknown C-word letter: " + a.name);
        w = w * (a.inverted ? piece.inverse() : piece);
    }
    return w;
}

StWord parse_stword(const Ring& r, const std::string& text) {
    StWord w(r);
    std::string t = strip(text);
    if (t.empty() || t == "1") return w;
    for (const std::string& part : split_top(t, '*')) {
        Atom a = parse_atom(part);
        auto arg = [&](size_t i) {
            require(i < a.params.size(), errc::ParseError,
                    a.name + " needs more parameters");
            return parse_elem(r, a.params[i]);
        };
        StWord piece(r);
        if (a.name == "x12")
            piece = StWord::x12(arg(0));
        else if (a.name == "x21")
            piece = StWord::x21(arg(0));
        else if (a.name == "w12")
            piece = w12_word(arg(0));
        else if (a.name == "w21")
            piece = w21_word(arg(0));
        else if (a.name == "h12")
            piece = h12_word(arg(0));
        else if (a.name == "h21")
            piece = h21_word(arg(0));
        else if (a.name == "c")
            piece = c_symbol(arg(0), arg(1));
        else if (a.name == "DS")
            piece = ds_symbol(arg(0), arg(1));
        else
            fail(errc::ParseError, "unknown Steinberg letter: " + a.name);
        w = w * (a.inverted ? piece.inverse() : piece);
    }
    return w;
}

Vertex parse_vertex(const Ring& r, const std::string& text) {
    std::string t = strip(text);
    if (t == "inf") return Vertex::infinity(r);
    if (t.size() >= 2 && t.front() == '[' && t.back() == ']') {
        auto colon = t.find(':');
        require(colon != std::string::npos, errc::ParseError, "bad vertex: " + t);
        RingElem a = parse_elem(r, strip(t.substr(1, colon - 1)));
        RingElem b = parse_elem(r, strip(t.substr(colon + 1, t.size() - colon - 2)));
        return Vertex::canonical(a, b);
    }
    // plain fraction over a domain
    if (r.family() == RingFamily::Integers ||
        r.family() == RingFamily::LocalizedIntegers) {
        auto slash = t.find('/');
        Int num(strip(slash == std::string::npos ? t : t.substr(0, slash)));
        Int den = slash == std::string::npos ? Int(1) : Int(strip(t.substr(slash + 1)));
        return vertex_from_fraction(r, Rat(num, den));
    }
    fail(errc::ParseError, "bad vertex literal: " + t);
}

// PathWord text form: m11,m12,m21,m22 ; (a1,...,an)
PathWord parse_pathword(const Ring& r, const std::string& text) {
    auto semi = text.find(';');
    require(semi != std::string::npos, errc::ParseError,
            "path word form is '<4 base entries> ; (letters)'");
    auto base_parts = split_top(strip(text.substr(0, semi)), ',');
    require(base_parts.size() == 4, errc::ParseError, "base needs 4 entries");
    Mat2 base(parse_elem(r, strip(base_parts[0])), parse_elem(r, strip(base_parts[1])),
              parse_elem(r, strip(base_parts[2])), parse_elem(r, strip(base_parts[3])));
    std::string rest = strip(text.substr(semi + 1));
    require(rest.size() >= 2 && rest.front() == '(' && rest.back() == ')',
            errc::ParseError, "letters must be parenthesized");
    std::vector<RingElem> letters;
    std::string inner = strip(rest.substr(1, rest.size() - 2));
    if (!inner.empty())
        for (const std::string& p : split_top(inner, ','))
            letters.push_back(parse_elem(r, strip(p)));
    return PathWord(base, std::move(letters));
}

std::string cf_brackets(const std::vector<RingElem>& digits) {
    if (digits.empty()) return "[]";
    std::string s = "[" + digits[0].str();
    for (size_t i = 1; i < digits.size(); ++i)
        s += (i == 1 ? "; " : ", ") + digits[i].str();
    return s + "]";
}

json vertices_json(const std::vector<Vertex>& vs) {
    json out = json::array();
    for (const Vertex& v : vs) out.push_back(v.str());
    return out;
}

std::string loop_vertex_line(const std::vector<Vertex>& vs) {
    std::string line;
    for (size_t i = 0; i < vs.size(); ++i) {
        if (i) line += ", ";
        line += bezout_point(vs[i]).str();
    }
    return line;
}

int run(const Options& o, const std::string& cmd, const std::string& sub) {
    Ring ring = ring_of(o);
    HeightBound bound = bound_of(o);

    if (cmd == "graph") {
        Graph g = build_graph(ring, bound);
        if (sub == "build") {
            emit(o, graph_to_json(g));
        } else if (sub == "components") {
            auto comps = components(g);
            if (o.format == "table") {
                std::string out;
                for (size_t i = 0; i < comps.size(); ++i) {
                    out += "component " + std::to_string(i) + ":";
                    for (int v : comps[i]) out += " " + g.vertices[v].str();
                    out += "\n";
                }
                emit(o, out);
            } else {
                json j;
                j["ring"] = ring.str();
                j["bound"] = bound_to_json(bound);
                j["count"] = comps.size();
                j["vertex_count"] = g.vertices.size();
                json cs = json::array();
                for (const auto& comp : comps) {
                    json one = json::array();
                    for (int v : comp) one.push_back(g.vertices[v].str());
                    cs.push_back(one);
                }
                j["components"] = cs;
                emit(o, j.dump(2) + "\n");
            }
        } else if (sub == "cliques") {
            CliqueSet cs = cliques(g, o.k);
            json j;
            j["ring"] = ring.str();
            j["k"] = cs.k;
            j["count"] = cs.members.size();
            json ms = json::array();
            for (const auto& m : cs.members) {
                json one = json::array();
                for (int v : m) one.push_back(g.vertices[v].str());
                ms.push_back(one);
            }
            j["cliques"] = ms;
            emit(o, j.dump(2) + "\n");
        } else {
            fail(errc::ParseError, "unknown graph subcommand");
        }
        return 0;
    }

    if (cmd == "euclid") {
        if (sub == "trace") {
            require(o.args.size() == 2, errc::ParseError, "euclid trace needs a b");
            RingElem a = parse_elem(ring, o.args[0]);
            RingElem b = parse_elem(ring, o.args[1]);
            EuclidTrace t = weak_euclid(ring, a, b, o.max_steps);
            if (o.format == "json") {
                json j;
                j["ring"] = ring.str();
                json q = json::array(), r = json::array();
                for (const auto& x : t.quotients) q.push_back(x.str());
                for (const auto& x : t.remainders) r.push_back(x.str());
                j["quotients"] = q;
                j["remainders"] = r;
                j["terminal_unit"] = t.terminal_unit.str();
                emit(o, j.dump(2) + "\n");
            } else {
                std::string out = "k\ta_k\tr_k\n";
                out += "-2\t\t" + t.remainders[0].str() + "\n";
                out += "-1\t\t" + t.remainders[1].str() + "\n";
                for (size_t k = 0; k < t.quotients.size(); ++k)
                    out += std::to_string(k) + "\t" + t.quotients[k].str() + "\t" +
                           t.remainders[k + 2].str() + "\n";
                emit(o, out);
            }
        } else if (sub == "cf") {
            require(o.args.size() == 1, errc::ParseError, "euclid cf needs a fraction");
            std::optional<Rat> x;
            std::string t = strip(o.args[0]);
            if (t != "inf") {
                auto slash = t.find('/');
                Int num(slash == std::string::npos ? t : t.substr(0, slash));
                Int den = slash == std::string::npos ? Int(1) : Int(t.substr(slash + 1));
                x = Rat(num, den);
            }
            auto digits = continued_fraction(ring, x, o.max_steps);
            emit(o, cf_brackets(digits) + "\n");
        } else {
            fail(errc::ParseError, "unknown euclid subcommand");
        }
        return 0;
    }

    if (cmd == "factor") {
        require(o.args.size() == 4, errc::ParseError, "factor needs 4 matrix entries");
        Mat2 M(parse_elem(ring, o.args[0]), parse_elem(ring, o.args[1]),
               parse_elem(ring, o.args[2]), parse_elem(ring, o.args[3]));
        Ge2Factorization f = ge2_factor(M, o.max_steps);
        json j;
        j["ring"] = ring.str();
        j["matrix"] = M.str();
        json letters = json::array();
        for (const GenLetter& g : f.word.letters) letters.push_back(g.param.str());
        j["e_letters"] = letters;
        j["residual"] = f.residual.str();
        emit(o, j.dump(2) + "\n");
        return 0;
    }

    if (cmd == "path") {
        if (sub == "reduce") {
            require(o.args.size() == 1, errc::ParseError, "path reduce needs a path word");
            PathWord p = parse_pathword(ring, payload(o.args[0]));
            auto [rp, trace] = reduce(p);
            json j;
            j["ring"] = ring.str();
            j["input"] = p.str();
            j["reduced"] = rp.str();
            j["trace"] = trace_json(trace);
            j["vertices"] = vertices_json(path_vertices(rp));
            emit(o, j.dump(2) + "\n");
        } else if (sub == "concat") {
            require(o.args.size() == 2, errc::ParseError, "path concat needs two words");
            PathWord p = parse_pathword(ring, payload(o.args[0]));
            PathWord q = parse_pathword(ring, payload(o.args[1]));
            PathWord pq = concat(p, q);
            json j;
            j["ring"] = ring.str();
            j["result"] = pq.str();
            j["vertices"] = vertices_json(path_vertices(pq));
            emit(o, j.dump(2) + "\n");
        } else if (sub == "verify") {
            require(o.args.size() == 1, errc::ParseError, "path verify needs a path word");
            PathWord p = parse_pathword(ring, payload(o.args[0]));
            auto vs = path_vertices(p);
            json j;
            j["ring"] = ring.str();
            j["word"] = p.str();
            j["vertices"] = vertices_json(vs);
            j["loop_at_infinity"] = p.loop_at_infinity();
            bool edges_ok = true;
            for (size_t i = 0; i + 1 < vs.size(); ++i)
                edges_ok = edges_ok && is_edge(vs[i], vs[i + 1]);
            j["edges_valid"] = edges_ok;
            j["terminal"] = p.terminal().str();
            emit(o, j.dump(2) + "\n");
        } else {
            fail(errc::ParseError, "unknown path subcommand");
        }
        return 0;
    }

    if (cmd == "word") {
        if (sub == "psi") {
            require(o.args.size() == 1, errc::ParseError, "word psi needs a word");
            CWord w = parse_cword(ring, payload(o.args[0]));
            emit(o, psi(w).str() + "\n");
        } else if (sub == "phi") {
            require(o.args.size() == 1, errc::ParseError, "word phi needs a word");
            StWord w = parse_stword(ring, payload(o.args[0]));
            emit(o, phi(w).str() + "\n");
        } else if (sub == "lambda") {
            require(o.args.size() == 1, errc::ParseError, "word lambda needs a path word");
            PathWord p = parse_pathword(ring, payload(o.args[0]));
            CWord w = lambda_word(p);
            json j;
            j["ring"] = ring.str();
            j["word"] = w.str();
            j["psi"] = psi(w).str();
            emit(o, j.dump(2) + "\n");
        } else if (sub == "theta") {
            require(o.args.size() == 1, errc::ParseError, "word theta needs a word");
            CWord w = parse_cword(ring, payload(o.args[0]));
            PathWord p = theta_word(w);
            json j;
            j["ring"] = ring.str();
            j["path"] = p.str();
            j["vertices"] = vertices_json(path_vertices(p));
            emit(o, j.dump(2) + "\n");
        } else if (sub == "relator") {
            require(o.args.size() >= 3, errc::ParseError,
                    "word relator needs family and two parameters");
            RingElem x = parse_elem(ring, o.args[1]);
            RingElem y = parse_elem(ring, o.args[2]);
            CWord w(ring);
            if (o.args[0] == "alpha")
                w = relator_alpha(x, y);
            else if (o.args[0] == "gamma")
                w = relator_gamma(x, y);
            else if (o.args[0] == "delta")
                w = relator_delta(x, y);
            else
                fail(errc::ParseError, "relator family is alpha|gamma|delta");
            json j;
            j["ring"] = ring.str();
            j["word"] = w.str();
            j["psi"] = psi(w).str();
            emit(o, j.dump(2) + "\n");
        } else if (sub == "symbol") {
            require(o.args.size() >= 3, errc::ParseError,
                    "word symbol needs kind and two parameters");
            RingElem x = parse_elem(ring, o.args[1]);
            RingElem y = parse_elem(ring, o.args[2]);
            StWord w(ring);
            if (o.args[0] == "c")
                w = c_symbol(x, y);
            else if (o.args[0] == "DS")
                w = ds_symbol(x, y);
            else
                fail(errc::ParseError, "symbol kind is c|DS");
            json j;
            j["ring"] = ring.str();
            j["word"] = w.str();
            j["phi"] = phi(w).str();
            emit(o, j.dump(2) + "\n");
        } else {
            fail(errc::ParseError, "unknown word subcommand");
        }
        return 0;
    }

    if (cmd == "loop") {
        require(sub == "dennis-stein", errc::ParseError, "unknown loop subcommand");
        require(o.args.size() == 2, errc::ParseError, "loop dennis-stein needs a b");
        RingElem a = parse_elem(ring, o.args[0]);
        RingElem b = parse_elem(ring, o.args[1]);
        auto [loop, trace] = dennis_stein_loop(ring, a, b);
        auto vs = path_vertices(loop);
        if (o.format == "json") {
            json j;
            j["ring"] = ring.str();
            j["loop"] = loop.str();
            j["vertices"] = vertices_json(vs);
            j["bezout_points"] = loop_vertex_line(vs);
            j["trace"] = trace_json(trace);
            j["lambda"] = lambda_word(loop).str();
            emit(o, j.dump(2) + "\n");
        } else {
            emit(o, loop_vertex_line(vs) + "\n");
        }
        return 0;
    }

    if (cmd == "homology" || cmd == "pi1") {
        Complex2 c;
        if (o.level > 1 || o.window > 1) {
            require(ring.family() == RingFamily::Integers, errc::ParseError,
                    "farey-level truncations are defined over Z");
            c = build_complex(embed(o.level, o.window).graph);
        } else {
            c = build_complex(build_graph(ring, bound));
        }
        if (cmd == "homology") {
            json j = homology_json(homology(c));
            j["ring"] = ring.str();
            emit(o, j.dump(2) + "\n");
        } else {
            int base = 0;
            if (!o.base_vertex.empty()) {
                Vertex v = parse_vertex(ring, o.base_vertex);
                auto it = std::lower_bound(c.vertex_set.begin(), c.vertex_set.end(), v);
                require(it != c.vertex_set.end() && *it == v, errc::VertexNotFound,
                        "basepoint not in the complex");
                base = (int)(it - c.vertex_set.begin());
            }
            Pi1Presentation p = pi1_presentation(c, base);
            auto [rank, torsion] = p.abelian_invariants();
            json j;
            j["ring"] = ring.str();
            j["basepoint"] = c.vertex_set[p.basepoint].str();
            j["generator_count"] = p.generators.size();
            j["relator_count"] = p.relators.size();
            json gens = json::array();
            for (auto [x, y] : p.generators)
                gens.push_back(json::array(
                    {c.vertex_set[x].str(), c.vertex_set[y].str()}));
            j["generators"] = gens;
            j["abelianization_rank"] = rank;
            json tj = json::array();
            for (const Int& d : torsion) tj.push_back(d.str());
            j["abelianization_torsion"] = tj;
            emit(o, j.dump(2) + "\n");
        }
        return 0;
    }

    if (cmd == "farey") {
        if (sub == "svg") {
            PlanarEmbedding e = embed(o.level, o.window);
            SvgStyle style;
            style.scale = o.svg_size;
            style.precision = o.svg_precision;
            style.fill = o.svg_fill;
            emit(o, render_svg(e, style));
        } else if (sub == "check") {
            FareyLevel f = farey(o.level);
            bool neighbours_ok = true;
            for (size_t i = 0; i + 1 < f.fractions.size(); ++i) {
                Int a = boost::multiprecision::numerator(f.fractions[i]);
                Int b = boost::multiprecision::denominator(f.fractions[i]);
                Int cnum = boost::multiprecision::numerator(f.fractions[i + 1]);
                Int d = boost::multiprecision::denominator(f.fractions[i + 1]);
                neighbours_ok = neighbours_ok && abs_int(a * d - b * cnum) == 1;
            }
            HomologyResult h = homology(build_complex(embed(o.level, o.window).graph));
            json j;
            j["level"] = o.level;
            j["window"] = o.window;
            j["fraction_count"] = f.fractions.size();
            j["new_at_level"] =
                o.level == 1
                    ? 2
                    : (int)(f.fractions.size() - farey(o.level - 1).fractions.size());
            j["phi_level"] = euler_phi(o.level).str();
            j["neighbour_law"] = neighbours_ok;
            j["h1_trivial"] = h.h1_rank == 0 && h.h1_torsion.empty();
            emit(o, j.dump(2) + "\n");
        } else {
            fail(errc::ParseError, "unknown farey subcommand");
        }
        return 0;
    }

    fail(errc::ParseError, "unknown command " + cmd);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus on the unimodular-row graph of a commutative ring"};
    app.require_subcommand(1);

    Options o;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--ring", o.ring_spec, "ring spec: Z | Z/<n> | Z[1/<m>] | quad(<d>)");
        c->add_option("--height", o.height, "element height bound");
        c->add_option("--unit-exp", o.unit_exp, "unit exponent bound for Z[1/m]");
        c->add_option("--max-steps", o.max_steps, "step bound for Euclid searches");
        c->add_option("--format", o.format, "output format: json|table|svg");
        c->add_option("--out", o.out, "write output to a file");
    };

    std::vector<std::pair<std::string, std::vector<std::string>>> plan{
        {"graph", {"build", "components", "cliques"}},
        {"euclid", {"trace", "cf"}},
        {"factor", {}},
        {"path", {"reduce", "concat", "verify"}},
        {"word", {"psi", "phi", "lambda", "theta", "relator", "symbol"}},
        {"loop", {"dennis-stein"}},
        {"homology", {}},
        {"pi1", {}},
        {"farey", {"svg", "check"}},
    };

    std::string picked_cmd, picked_sub;
    for (const auto& [cmd, subs] : plan) {
        CLI::App* c = app.add_subcommand(cmd);
        if (subs.empty()) {
            add_common(c);
            c->add_option("args", o.args, "positional payload");
            if (cmd == "pi1") c->add_option("--base", o.base_vertex, "basepoint vertex");
            if (cmd == "homology" || cmd == "pi1") {
                c->add_option("--farey-level", o.level, "use the level-n planar model");
                c->add_option("--window", o.window, "strip count of the planar model");
            }
            c->callback([&picked_cmd, cmd = cmd]() { picked_cmd = cmd; });
            continue;
        }
        c->require_subcommand(1);
        for (const std::string& s : subs) {
            CLI::App* sc = c->add_subcommand(s);
            add_common(sc);
            sc->add_option("args", o.args, "positional payload");
            if (cmd == "graph") sc->add_option("--k", o.k, "clique size");
            if (cmd == "farey") {
                sc->add_option("--level", o.level, "Farey level n");
                sc->add_option("--window", o.window, "strip count");
                sc->add_option("--size", o.svg_size, "pixels per unit");
                sc->add_option("--precision", o.svg_precision, "decimal digits");
                sc->add_flag("--fill,!--no-fill", o.svg_fill, "paint triangles");
            }
            sc->callback([&picked_cmd, &picked_sub, cmd = cmd, s = s]() {
                picked_cmd = cmd;
                picked_sub = s;
            });
        }
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return run(o, picked_cmd, picked_sub);
    } catch (const Error& e) {
        json j;
        j["error"] = e.code();
        j["message"] = e.what();
        std::cout << j.dump(2) << "\n";
        return e.code() == errc::ParseError ? 2 : 1;
    } catch (const std::exception& e) {
        json j;
        j["error"] = "InternalError";
        j["message"] = e.what();
        std::cout << j.dump(2) << "\n";
        return 1;
    }
}
