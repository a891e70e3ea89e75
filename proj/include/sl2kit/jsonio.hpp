#pragma once

#include <json.hpp>

#include "sl2kit/farey.hpp"
#include "sl2kit/graph.hpp"
#include "sl2kit/homology.hpp"
#include "sl2kit/pathword.hpp"

namespace sl2 {

using json = nlohmann::json;

inline json bound_to_json(const HeightBound& b) {
    return json{{"height", b.elem_height.str()}, {"unit_exp", b.unit_exp}};
}

inline json graph_json(const Graph& g) {
    json j;
    j["ring"] = g.ring.str();
    j["bound"] = bound_to_json(g.bound);
    json vs = json::array();
    for (const Vertex& v : g.vertices) vs.push_back(v.str());
    j["vertices"] = vs;
    json es = json::array();
    for (auto [a, b] : g.edges) es.push_back(json::array({a, b}));
    j["edges"] = es;
    j["complete"] = g.complete;
    return j;
}

inline std::string graph_to_json(const Graph& g) { return graph_json(g).dump(2) + "\n"; }

inline json embedding_json(const PlanarEmbedding& e) {
    json j = graph_json(e.graph);
    j.erase("bound");
    j["farey_level"] = e.level;
    j["window"] = e.window;
    return j;
}

inline json homology_json(const HomologyResult& h) {
    json t = json::array();
    for (const Int& d : h.h1_torsion) t.push_back(d.str());
    return json{{"h0", h.h0_rank},
                {"h1_rank", h.h1_rank},
                {"h1_torsion", t},
                {"truncated", h.truncated},
                {"lemma_h1_hypothesis", h.lemma_h1_hypothesis}};
}

inline json move_json(const Move& m) {
    json j;
    j["kind"] = move_kind_name(m.kind);
    j["index"] = m.index;
    if (m.kind == MoveKind::Expand1 || m.kind == MoveKind::Expand2)
        j["param"] = m.param.str();
    return j;
}

inline json trace_json(const MoveTrace& t) {
    json steps = json::array();
    for (const auto& [mv, res] : t.steps) {
        json s = move_json(mv);
        s["result"] = res.str();
        steps.push_back(s);
    }
    return json{{"start", t.start.str()}, {"steps", steps}};
}

} // namespace sl2
