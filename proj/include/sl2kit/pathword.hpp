#pragma once

#include <string>
#include <vector>

#include "sl2kit/euclid.hpp"
#include "sl2kit/graph.hpp"

namespace sl2 {

// Algebraic path (X, (a_1,...,a_n)): T_0 = X, T_i = E(a_i)...E(a_1)X, and the
// represented vertex path is x_i = infinity * T_i.
class PathWord {
public:
    PathWord(Mat2 base, std::vector<RingElem> letters)
        : base_(std::move(base)), letters_(std::move(letters)) {
        require(base_.in_sl(), errc::NotInSL, "path base must lie in SL2");
    }

    static PathWord trivial(const Ring& r) { return PathWord(Mat2::identity(r), {}); }

    const Ring& ring() const { return base_.ring(); }
    const Mat2& base() const { return base_; }
    const std::vector<RingElem>& letters() const { return letters_; }
    size_t length() const { return letters_.size(); }

    Mat2 t_matrix(size_t i) const {
        Mat2 T = base_;
        for (size_t k = 0; k < i; ++k) T = mat_E(letters_[k]) * T;
        return T;
    }

    Mat2 terminal() const { return t_matrix(letters_.size()); }

    bool loop_at_infinity() const { return base_.in_b() && terminal().in_b(); }

    bool operator==(const PathWord& o) const {
        return base_ == o.base_ && letters_ == o.letters_;
    }
    bool operator!=(const PathWord& o) const { return !(*this == o); }

    std::string str() const {
        std::string s = base_.m11().str() + "," + base_.m12().str() + "," +
                        base_.m21().str() + "," + base_.m22().str() + " ; (";
        for (size_t i = 0; i < letters_.size(); ++i) {
            if (i) s += ",";
            s += letters_[i].str();
        }
        return s + ")";
    }

private:
    Mat2 base_;
    std::vector<RingElem> letters_;
};

inline std::vector<Vertex> path_vertices(const PathWord& p) {
    std::vector<Vertex> out;
    Mat2 T = p.base();
    out.push_back(act(Vertex::infinity(p.ring()), T));
    for (const RingElem& a : p.letters()) {
        T = mat_E(a) * T;
        out.push_back(act(Vertex::infinity(p.ring()), T));
    }
    return out;
}

// The unique letters representing a vertex path from a chosen base (Lemma-path
// recursion: a_i is read off x_i * T_{i-1}^{-1} = [a_i : 1]).
inline PathWord word_from_path(const std::vector<Vertex>& vs, const Mat2& base) {
    require(!vs.empty(), errc::BaseMismatch, "empty vertex path");
    require(act(Vertex::infinity(base.ring()), base) == vs.front(), errc::BaseMismatch,
            "base row does not represent the initial vertex");
    Mat2 T = base;
    std::vector<RingElem> letters;
    for (size_t i = 1; i < vs.size(); ++i) {
        Mat2 Ti = T.inverse();
        RingElem alpha = vs[i].a() * Ti.m11() + vs[i].b() * Ti.m21();
        RingElem beta = vs[i].a() * Ti.m12() + vs[i].b() * Ti.m22();
        require(is_unit(beta), errc::NotAnEdge,
                vs[i - 1].str() + "," + vs[i].str() + " is not an edge");
        RingElem a = alpha * unit_inverse(beta);
        letters.push_back(a);
        T = mat_E(a) * T;
    }
    return PathWord(base, std::move(letters));
}

// Re-bases the same vertex path: b_1 = a_1 * Z and b_i = u^{(-1)^{i-1} 2} a_i,
// where Z = X * Y^{-1} must stabilize infinity.
inline PathWord change_rep(const PathWord& p, const Mat2& Y) {
    require(Y.in_sl(), errc::NotInSL, "new base must lie in SL2");
    Mat2 Z = p.base() * Y.inverse();
    require(Z.in_b(), errc::NotInB, "bases are not B-equivalent");
    if (p.letters().empty()) return PathWord(Y, {});
    RingElem u = Z.m11();
    RingElem u2 = u * u;
    RingElem ui = unit_inverse(u);
    RingElem ui2 = ui * ui;
    std::vector<RingElem> out;
    out.push_back(act_B(p.letters()[0], Z));
    for (size_t i = 2; i <= p.letters().size(); ++i)
        out.push_back((i % 2 == 0 ? ui2 : u2) * p.letters()[i - 1]);
    return PathWord(Y, std::move(out));
}

// Concatenation with connection matrix Z_{p,q} = I(q) T(p)^{-1}, defined when
// the terminal vertex of p is the initial vertex of q.
inline PathWord concat(const PathWord& p, const PathWord& q) {
    Mat2 Z = q.base() * p.terminal().inverse();
    require(Z.in_b(), errc::NotComposable,
            "paths do not compose: connection matrix not in B");
    std::vector<RingElem> out = p.letters();
    if (!q.letters().empty()) {
        RingElem u = Z.m11();
        RingElem u2 = u * u;
        RingElem ui = unit_inverse(u);
        RingElem ui2 = ui * ui;
        out.push_back(act_B(q.letters()[0], Z));
        for (size_t j = 2; j <= q.letters().size(); ++j)
            out.push_back((j % 2 == 0 ? ui2 : u2) * q.letters()[j - 1]);
    }
    return PathWord(p.base(), std::move(out));
}

// ---- homotopy moves ----

enum class MoveKind { Contract1, Expand1, Contract2, Expand2 };

inline const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::Contract1: return "contract1";
        case MoveKind::Expand1: return "expand1";
        case MoveKind::Contract2: return "contract2";
        case MoveKind::Expand2: return "expand2";
    }
    return "?";
}

// index is the 1-based position of the distinguished letter: the zero (type 1)
// or the unit (type 2) for contractions; the insertion point for expansions.
struct Move {
    MoveKind kind;
    int index;
    RingElem param; // expansions only
};

inline PathWord apply_move(const PathWord& p, const Move& m) {
    const std::vector<RingElem>& a = p.letters();
    const int n = static_cast<int>(a.size());
    const Ring& ring = p.ring();
    std::vector<RingElem> out;
    switch (m.kind) {
        case MoveKind::Contract1: {
            require(m.index >= 2 && m.index <= n, errc::MoveNotApplicable,
                    "contract1 position out of range");
            require(a[m.index - 1].is_zero(), errc::MoveNotApplicable,
                    "contract1 needs a zero letter");
            if (m.index == n) {
                out.assign(a.begin(), a.end() - 2);
            } else {
                out.assign(a.begin(), a.begin() + (m.index - 2));
                out.push_back(a[m.index - 2] + a[m.index]);
                out.insert(out.end(), a.begin() + (m.index + 1), a.end());
            }
            return PathWord(p.base(), std::move(out));
        }
        case MoveKind::Contract2: {
            require(m.index >= 2 && m.index <= n, errc::MoveNotApplicable,
                    "contract2 position out of range");
            const RingElem& u = a[m.index - 1];
            require(is_unit(u), errc::MoveNotApplicable, "contract2 needs a unit letter");
            RingElem ui = unit_inverse(u);
            if (m.index == n) {
                out.assign(a.begin(), a.end() - 2);
                out.push_back(a[n - 2] - ui);
            } else {
                RingElem u2 = u * u;
                RingElem ui2 = ui * ui;
                out.assign(a.begin(), a.begin() + (m.index - 2));
                out.push_back(a[m.index - 2] - ui);
                out.push_back(u2 * a[m.index] - u);
                bool shrink = true; // alternate u^{-2}, u^{2}, ...
                for (int j = m.index + 1; j < n; ++j) {
                    out.push_back((shrink ? ui2 : u2) * a[j]);
                    shrink = !shrink;
                }
            }
            return PathWord(p.base(), std::move(out));
        }
        case MoveKind::Expand1: {
            require(m.index >= 1 && m.index <= n + 1, errc::MoveNotApplicable,
                    "expand1 position out of range");
            if (m.index == n + 1) {
                out = a;
                out.push_back(m.param);
                out.push_back(ring.zero());
            } else {
                out.assign(a.begin(), a.begin() + (m.index - 1));
                out.push_back(m.param);
                out.push_back(ring.zero());
                out.push_back(a[m.index - 1] - m.param);
                out.insert(out.end(), a.begin() + m.index, a.end());
            }
            return PathWord(p.base(), std::move(out));
        }
        case MoveKind::Expand2: {
            require(is_unit(m.param), errc::MoveNotApplicable,
                    "expand2 parameter must be a unit");
            require(m.index >= 1 && m.index <= n, errc::MoveNotApplicable,
                    "expand2 position out of range");
            const RingElem& u = m.param;
            RingElem ui = unit_inverse(u);
            if (m.index == n) {
                out = a;
                out.back() = a[n - 1] + ui;
                out.push_back(u);
            } else {
                RingElem u2 = u * u;
                RingElem ui2 = ui * ui;
                out.assign(a.begin(), a.begin() + (m.index - 1));
                out.push_back(a[m.index - 1] + ui);
                out.push_back(u);
                out.push_back(ui2 * (a[m.index] + u));
                bool grow = true; // alternate u^{2}, u^{-2}, ...
                for (int j = m.index + 1; j < n; ++j) {
                    out.push_back((grow ? u2 : ui2) * a[j]);
                    grow = !grow;
                }
            }
            return PathWord(p.base(), std::move(out));
        }
    }
    fail(errc::MoveNotApplicable, "unknown move kind");
}

// Replayable rewrite log.
struct MoveTrace {
    PathWord start;
    std::vector<std::pair<Move, PathWord>> steps;

    const PathWord& result() const { return steps.empty() ? start : steps.back().second; }

    bool replays() const {
        PathWord cur = start;
        for (const auto& [mv, res] : steps) {
            cur = apply_move(cur, mv);
            if (cur != res) return false;
        }
        return true;
    }
};

// Greedy normalization: leftmost applicable contraction, type 1 before type 2,
// until none applies. A test normalizer, not a decision procedure.
inline std::pair<PathWord, MoveTrace> reduce(const PathWord& p) {
    MoveTrace trace{p, {}};
    PathWord cur = p;
    while (true) {
        const auto& a = cur.letters();
        int n = static_cast<int>(a.size());
        int pos = -1;
        MoveKind kind = MoveKind::Contract1;
        for (int j = 2; j <= n; ++j) {
            if (a[j - 1].is_zero()) {
                pos = j;
                kind = MoveKind::Contract1;
                break;
            }
        }
        if (pos < 0) {
            for (int j = 2; j <= n; ++j) {
                if (is_unit(a[j - 1])) {
                    pos = j;
                    kind = MoveKind::Contract2;
                    break;
                }
            }
        }
        if (pos < 0) break;
        Move mv{kind, pos, cur.ring().zero()};
        cur = apply_move(cur, mv);
        trace.steps.emplace_back(mv, cur);
    }
    return {cur, trace};
}

// Loop avatar of the Dennis-Stein symbol D(a,b), defined when u = 1-ab is a
// unit: the 9-letter preimage (u^{-1},u,u^{-1},0,-au^{-1},b,a,-bu^{-1},0)
// contracted mechanically to (0,-ua,u^{-2}b,u^2a), with vertex path
// (inf, 0, (ua)_-, (u^{-1}b)_+, inf).
inline std::pair<PathWord, MoveTrace> dennis_stein_loop(const Ring& ring,
                                                        const RingElem& a,
                                                        const RingElem& b) {
    RingElem u = ring.one() - a * b;
    require(is_unit(u), errc::NotAUnit, "1-ab = " + u.str() + " is not a unit");
    RingElem ui = unit_inverse(u);
    PathWord start(Mat2::identity(ring),
                   {ui, u, ui, ring.zero(), -(a * ui), b, a, -(b * ui), ring.zero()});

    MoveTrace trace{start, {}};
    PathWord cur = start;
    for (const Move& mv : {Move{MoveKind::Contract2, 2, ring.zero()},
                           Move{MoveKind::Contract1, 2, ring.zero()},
                           Move{MoveKind::Contract1, 6, ring.zero()}}) {
        cur = apply_move(cur, mv);
        trace.steps.emplace_back(mv, cur);
    }

    // all four edges of the reduced loop must be genuine edges
    std::vector<Vertex> vs = path_vertices(cur);
    for (size_t i = 0; i + 1 < vs.size(); ++i)
        require(is_edge(vs[i], vs[i + 1]), errc::NotAnEdge,
                "degenerate Dennis-Stein loop edge");
    require(cur.loop_at_infinity(), errc::NotALoop, "Dennis-Stein word is not a loop");
    return {cur, trace};
}

} // namespace sl2
