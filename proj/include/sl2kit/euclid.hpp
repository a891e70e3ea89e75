#pragma once

#include <optional>
#include <vector>

#include "sl2kit/projline.hpp"

namespace sl2 {

// ---- the standard matrices of the elementary calculus ----

inline Mat2 mat_E21(const RingElem& a) {
    const Ring& r = a.ring();
    return Mat2(r.one(), r.zero(), a, r.one());
}

inline Mat2 mat_E12(const RingElem& a) {
    const Ring& r = a.ring();
    return Mat2(r.one(), a, r.zero(), r.one());
}

// E(a) = [[a,1],[-1,0]] = W*E21(a) = E12(-a)*W
inline Mat2 mat_E(const RingElem& a) {
    const Ring& r = a.ring();
    return Mat2(a, r.one(), r.from_int(-1), r.zero());
}

inline Mat2 mat_W(const Ring& r) { return mat_E(r.zero()); }

// S(a) = [[a,1],[1,0]] = diag(1,-1)*E(a), determinant -1
inline Mat2 mat_S(const RingElem& a) {
    const Ring& r = a.ring();
    return Mat2(a, r.one(), r.one(), r.zero());
}

inline Mat2 mat_D(const RingElem& u) {
    require(is_unit(u), errc::NotAUnit, "D(u) requires a unit");
    const Ring& r = u.ring();
    return Mat2(u, r.zero(), r.zero(), unit_inverse(u));
}

// ---- generator words ----

enum class GenKind { E, S, D, E12, E21, W };

struct GenLetter {
    GenKind kind;
    RingElem param;
};

struct GenWord {
    Ring ring;
    std::vector<GenLetter> letters;
};

// Left-to-right product of the letter matrices; empty word is the identity.
inline Mat2 eval_gen(const GenWord& w) {
    Mat2 out = Mat2::identity(w.ring);
    for (const GenLetter& g : w.letters) {
        switch (g.kind) {
            case GenKind::E: out = out * mat_E(g.param); break;
            case GenKind::S: out = out * mat_S(g.param); break;
            case GenKind::D: out = out * mat_D(g.param); break;
            case GenKind::E12: out = out * mat_E12(g.param); break;
            case GenKind::E21: out = out * mat_E21(g.param); break;
            case GenKind::W: out = out * mat_W(w.ring); break;
        }
    }
    return out;
}

// Action of B on A through the a_+ coordinates: a * [[u,0],[b,u^-1]] = a*u^2 + b*u.
inline RingElem act_B(const RingElem& a, const Mat2& Z) {
    require(Z.in_b(), errc::NotInB, "act_B requires a lower-triangular SL2 matrix");
    return a * Z.m11() * Z.m11() + Z.m21() * Z.m11();
}

// ---- weak Euclidean algorithm ----

// Quotient/remainder chain r_{k-2} = a_k * r_{k-1} + r_k with r_n = 0 and
// r_{n-1} a unit. Remainders are indexed from -2 as in the source recursion,
// so remainders[0] = r_{-2} = a and remainders.back() = r_n.
struct EuclidTrace {
    Ring ring;
    std::vector<RingElem> quotients;  // a_0, ..., a_n (possibly empty)
    std::vector<RingElem> remainders; // r_{-2}, r_{-1}, ..., r_n
    RingElem terminal_unit;           // r_{n-1}

    // (a,b) * S(a_0)^{-1} ... S(a_n)^{-1} = (u, 0), checked exactly.
    bool reconstructs() const {
        RingElem x = remainders[0], y = remainders[1];
        for (const RingElem& q : quotients) {
            // (x,y) * S(q)^{-1} = (y, x - q*y)
            RingElem nx = y, ny = x - q * y;
            x = nx;
            y = ny;
        }
        return y.is_zero() && x == terminal_unit && is_unit(x);
    }

    bool recursion_holds() const {
        for (size_t k = 0; k < quotients.size(); ++k) {
            if (remainders[k] != quotients[k] * remainders[k + 1] + remainders[k + 2])
                return false;
        }
        return !remainders.empty() && remainders.back().is_zero();
    }
};

namespace detail {

inline void push_step(EuclidTrace& t, const RingElem& q, const RingElem& r) {
    t.quotients.push_back(q);
    t.remainders.push_back(r);
}

inline EuclidTrace finish_trace(EuclidTrace t) {
    require(t.remainders.size() >= 2 && t.remainders.back().is_zero(),
            errc::NoAlgorithmFound, "trace did not terminate at zero");
    RingElem last = t.remainders[t.remainders.size() - 2];
    require(is_unit(last), errc::NotUnimodular,
            "weak Euclid terminated at a non-unit " + last.str());
    t.terminal_unit = last;
    return t;
}

// Symmetric-remainder division over Z: |r| <= |b|/2, shortening traces.
inline std::pair<Int, Int> div_symmetric(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (r != 0) {
        Int ab = abs_int(b);
        if (2 * abs_int(r) > ab) {
            Int step = (r > 0) == (b > 0) ? 1 : -1;
            q += step;
            r = a - q * b;
        }
    }
    return {q, r};
}

inline std::optional<RingElem> quad_divide_step(const RingElem& x, const RingElem& y) {
    // candidate quotients near the exact x/y = x*conj(y)/N(y)
    const Ring& r = x.ring();
    Int ny = quad_norm(y);
    RingElem prod = x * quad_conj(y);
    Int px = prod.as_quad().x, py = prod.as_quad().y;
    auto rounded = [](const Int& num, const Int& den) {
        // nearest integers to num/den: floor and floor+1
        Int f = num / den;
        if ((num % den != 0) && ((num < 0) != (den < 0))) --f;
        return f;
    };
    Int fx = rounded(px, ny), fy = rounded(py, ny);
    std::optional<RingElem> best;
    Int best_norm = 0;
    for (Int dx = 0; dx <= 1; ++dx) {
        for (Int dy = 0; dy <= 1; ++dy) {
            RingElem q = r.quad(fx + dx, fy + dy);
            RingElem rem = x - q * y;
            Int nr = abs_int(quad_norm(rem));
            if (nr < abs_int(ny) && (!best || nr < best_norm)) {
                best = q;
                best_norm = nr;
            }
        }
    }
    return best;
}

} // namespace detail

// Weak Euclidean algorithm for a unimodular pair. Guaranteed for Z, Z/n and
// Z[1/m]; norm-guided bounded search for quadratic orders, which may fail
// (NoAlgorithmFound) -- an expected outcome for non-GE2 rings.
inline EuclidTrace weak_euclid(const Ring& ring, const RingElem& a, const RingElem& b,
                               int max_steps = 64) {
    require(is_unimodular(ring, a, b), errc::NotUnimodular,
            "weak_euclid requires a unimodular pair");
    EuclidTrace t{ring, {}, {a, b}, ring.one()};
    switch (ring.family()) {
        case RingFamily::Integers: {
            Int x = a.as_int(), y = b.as_int();
            while (y != 0) {
                require((int)t.quotients.size() < max_steps, errc::NoAlgorithmFound,
                        "step limit exhausted");
                auto [q, r] = detail::div_symmetric(x, y);
                detail::push_step(t, ring.from_int(q), ring.from_int(r));
                x = y;
                y = r;
            }
            return detail::finish_trace(t);
        }
        case RingFamily::LocalizedIntegers: {
            // clear denominators by a positive smooth unit and mirror the
            // integer algorithm; remainders scale back exactly
            Int kappa = a.rat_den() / gcd_int(a.rat_den(), b.rat_den()) * b.rat_den();
            Int x = a.rat_num() * (kappa / a.rat_den());
            Int y = b.rat_num() * (kappa / b.rat_den());
            while (y != 0) {
                require((int)t.quotients.size() < max_steps, errc::NoAlgorithmFound,
                        "step limit exhausted");
                auto [q, r] = detail::div_symmetric(x, y);
                detail::push_step(t, ring.from_int(q),
                                  RingElem::make_fraction(ring, r, kappa));
                x = y;
                y = r;
            }
            return detail::finish_trace(t);
        }
        case RingFamily::ModN: {
            if (b.is_zero()) return detail::finish_trace(t);
            if (is_unit(b)) {
                detail::push_step(t, a * unit_inverse(b), ring.zero());
                return detail::finish_trace(t);
            }
            for (Int q = 0; q < ring.desc().n; ++q) {
                RingElem rem = a - ring.from_int(q) * b;
                if (!is_unit(rem)) continue;
                detail::push_step(t, ring.from_int(q), rem);
                detail::push_step(t, b * unit_inverse(rem), ring.zero());
                return detail::finish_trace(t);
            }
            fail(errc::NoAlgorithmFound, "no unit remainder exists mod n");
        }
        case RingFamily::QuadraticOrder: {
            RingElem x = a, y = b;
            while (!y.is_zero()) {
                require((int)t.quotients.size() < max_steps, errc::NoAlgorithmFound,
                        "step limit exhausted");
                auto q = detail::quad_divide_step(x, y);
                require(q.has_value(), errc::NoAlgorithmFound,
                        "no norm-decreasing quotient near " + x.str() + "/" + y.str());
                RingElem rem = x - *q * y;
                detail::push_step(t, *q, rem);
                x = y;
                y = rem;
            }
            return detail::finish_trace(t);
        }
    }
    fail(errc::UnsupportedRing, "unknown ring family");
}

// Continued-fraction digits of a Bezout point: infinity * S(a_n)...S(a_0) = x.
// The digits are exactly the weak-Euclid quotients of the vertex row.
inline std::vector<RingElem> continued_fraction(const Ring& ring,
                                                const std::optional<Rat>& x,
                                                int max_steps = 64) {
    if (!x.has_value()) return {}; // infinity
    Vertex v = vertex_from_fraction(ring, *x);
    RingElem a = v.a(), b = v.b();
    return weak_euclid(ring, a, b, max_steps).quotients;
}

// Exact evaluation of a digit tower via the matrix product S(a_n)...S(a_0);
// returns nullopt for infinity.
inline std::optional<Rat> cf_eval(const Ring& ring, const std::vector<RingElem>& digits) {
    Mat2 P = Mat2::identity(ring);
    for (const RingElem& d : digits) P = mat_S(d) * P;
    Vertex v = act(Vertex::infinity(ring), P);
    BezoutPoint bp = bezout_point(v);
    if (bp.is_infinity()) return std::nullopt;
    return bp.value;
}

// ---- bounded factorization over the E-generators ----

// Witnesses membership of M in E2(A): a word w over E-letters and a residual
// Z in B with eval_gen(w) * M^{-1} = Z exactly. Search is weak Euclid on the
// first row of M^{-1}; bounded failure is inconclusive for non-GE2 rings.
struct Ge2Factorization {
    GenWord word;
    Mat2 residual;
};

inline Ge2Factorization ge2_factor(const Mat2& M, int max_len = 64) {
    require(M.in_sl(), errc::NotInSL, "ge2_factor expects det 1");
    const Ring& ring = M.ring();
    Mat2 N = M.inverse();
    EuclidTrace trace = weak_euclid(ring, N.m11(), N.m12(), max_len);
    require((int)trace.quotients.size() <= max_len, errc::NoAlgorithmFound,
            "factorization longer than the requested bound");

    // convergent path from infinity to [first row of N]
    std::vector<Vertex> path{Vertex::infinity(ring)};
    Mat2 P = Mat2::identity(ring);
    for (const RingElem& q : trace.quotients) {
        P = mat_S(q) * P;
        path.push_back(act(Vertex::infinity(ring), P));
    }
    std::reverse(path.begin(), path.end());

    // Lemma-path letters along the reversed path, base N
    Mat2 T = N;
    std::vector<RingElem> letters;
    if (!(act(Vertex::infinity(ring), N) == path.front()))
        fail(errc::NoAlgorithmFound, "trace does not start at the row of M^{-1}");
    for (size_t j = 1; j < path.size(); ++j) {
        Mat2 Ti = T.inverse();
        RingElem alpha = path[j].a() * Ti.m11() + path[j].b() * Ti.m21();
        RingElem beta = path[j].a() * Ti.m12() + path[j].b() * Ti.m22();
        require(is_unit(beta), errc::NotAnEdge, "consecutive vertices are not an edge");
        RingElem c = alpha * unit_inverse(beta);
        letters.push_back(c);
        T = mat_E(c) * T;
    }
    require(T.in_b(), errc::NoAlgorithmFound, "residual did not land in B");

    GenWord w{ring, {}};
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        w.letters.push_back(GenLetter{GenKind::E, *it});
    return Ge2Factorization{std::move(w), T};
}

} // namespace sl2
