#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sl2kit/ring.hpp"

namespace sl2 {

// 2x2 matrix over a ring, row-vector convention (vectors act from the left,
// matrices multiply on the right). Determinant is cached at construction.
class Mat2 {
public:
    Mat2(RingElem m11, RingElem m12, RingElem m21, RingElem m22)
        : m11_(std::move(m11)), m12_(std::move(m12)), m21_(std::move(m21)),
          m22_(std::move(m22)), det_(m11_ * m22_ - m12_ * m21_) {}

    static Mat2 identity(const Ring& r) {
        return Mat2(r.one(), r.zero(), r.zero(), r.one());
    }

    const Ring& ring() const { return m11_.ring(); }
    const RingElem& m11() const { return m11_; }
    const RingElem& m12() const { return m12_; }
    const RingElem& m21() const { return m21_; }
    const RingElem& m22() const { return m22_; }
    const RingElem& det() const { return det_; }

    bool in_gl() const { return is_unit(det_); }
    bool in_sl() const { return det_.is_one(); }
    // Stabilizer of infinity in SL2: lower triangular with unit diagonal pair.
    bool in_b() const { return in_sl() && m12_.is_zero(); }

    bool is_identity() const {
        return m11_.is_one() && m12_.is_zero() && m21_.is_zero() && m22_.is_one();
    }

    Mat2 operator*(const Mat2& o) const {
        return Mat2(m11_ * o.m11_ + m12_ * o.m21_, m11_ * o.m12_ + m12_ * o.m22_,
                    m21_ * o.m11_ + m22_ * o.m21_, m21_ * o.m12_ + m22_ * o.m22_);
    }

    Mat2 inverse() const {
        require(in_gl(), errc::NonUnitDeterminant,
                "matrix with non-unit determinant has no inverse");
        RingElem di = unit_inverse(det_);
        return Mat2(di * m22_, -(di * m12_), -(di * m21_), di * m11_);
    }

    bool operator==(const Mat2& o) const {
        return m11_ == o.m11_ && m12_ == o.m12_ && m21_ == o.m21_ && m22_ == o.m22_;
    }
    bool operator!=(const Mat2& o) const { return !(*this == o); }

    std::string str() const {
        return "[[" + m11_.str() + "," + m12_.str() + "],[" + m21_.str() + "," +
               m22_.str() + "]]";
    }

private:
    RingElem m11_, m12_, m21_, m22_;
    RingElem det_;
};

namespace detail {

// Column Hermite reduction of the 2x4 integer matrix whose columns generate
// the ideal <a,b> of a quadratic order as a Z-module. Tracks the column
// transform so Bezout coefficients can be read back.
struct QuadIdeal {
    bool unimodular = false;
    // r*a + s*b = 1 when unimodular
    Int rx, ry, sx, sy;
};

inline QuadIdeal quad_ideal_test(const RingElem& a, const RingElem& b) {
    const Ring& R = a.ring();
    auto theta_mul = [&R](const QuadPair& q) {
        if (R.desc().half_basis) return QuadPair{R.quad_c() * q.y, q.x + q.y};
        return QuadPair{R.desc().d * q.y, q.x};
    };
    QuadPair cols[4] = {a.as_quad(), theta_mul(a.as_quad()), b.as_quad(),
                        theta_mul(b.as_quad())};
    Int M[2][4];
    for (int j = 0; j < 4; ++j) {
        M[0][j] = cols[j].x;
        M[1][j] = cols[j].y;
    }
    Int V[4][4] = {};
    for (int j = 0; j < 4; ++j) V[j][j] = 1;

    auto col_addmul = [&](int dst, int src, const Int& q) {
        for (int i = 0; i < 2; ++i) M[i][dst] += q * M[i][src];
        for (int i = 0; i < 4; ++i) V[i][dst] += q * V[i][src];
    };
    auto col_swap = [&](int j, int k) {
        for (int i = 0; i < 2; ++i) std::swap(M[i][j], M[i][k]);
        for (int i = 0; i < 4; ++i) std::swap(V[i][j], V[i][k]);
    };

    for (int row = 0; row < 2; ++row) {
        while (true) {
            int pivot = -1;
            for (int j = row; j < 4; ++j) {
                if (M[row][j] == 0) continue;
                if (pivot < 0 || abs_int(M[row][j]) < abs_int(M[row][pivot])) pivot = j;
            }
            if (pivot < 0) break;
            col_swap(row, pivot);
            bool clean = true;
            for (int j = row + 1; j < 4; ++j) {
                if (M[row][j] == 0) continue;
                Int q = M[row][j] / M[row][row]; // truncated
                col_addmul(j, row, -q);
                if (M[row][j] != 0) clean = false;
            }
            if (clean) break;
        }
    }

    QuadIdeal out;
    const Int& p00 = M[0][0];
    const Int& p11 = M[1][1];
    if (abs_int(p00) != 1 || abs_int(p11) != 1) return out; // lattice != Z^2
    // Solve lower-triangular L*t = (1,0)
    Int t0 = p00; // 1/p00
    Int t1 = -(M[1][0] * t0) * p11;
    out.unimodular = true;
    out.rx = V[0][0] * t0 + V[0][1] * t1;
    out.ry = V[1][0] * t0 + V[1][1] * t1;
    out.sx = V[2][0] * t0 + V[2][1] * t1;
    out.sy = V[3][0] * t0 + V[3][1] * t1;
    return out;
}

// Clears denominators of a Z[1/m] pair by a positive smooth unit and divides
// out the smooth part of the gcd, leaving an integer pair in the same orbit.
inline std::pair<Int, Int> localized_integer_pair(const RingElem& a, const RingElem& b) {
    Int kappa = a.rat_den() / gcd_int(a.rat_den(), b.rat_den()) * b.rat_den();
    Int A = a.rat_num() * (kappa / a.rat_den());
    Int B = b.rat_num() * (kappa / b.rat_den());
    Int g = smooth_part(gcd_int(A, B), a.ring().desc().primes);
    if (g > 1) {
        A /= g;
        B /= g;
    }
    return {A, B};
}

} // namespace detail

inline bool is_unimodular(const Ring& r, const RingElem& a, const RingElem& b) {
    require(a.ring() == r && b.ring() == r, errc::RingMismatch,
            "row entries from a different ring");
    if (a.is_zero() && b.is_zero()) return false;
    switch (r.family()) {
        case RingFamily::Integers: return gcd_int(a.as_int(), b.as_int()) == 1;
        case RingFamily::ModN:
            return gcd_int(gcd_int(a.as_int(), b.as_int()), r.desc().n) == 1;
        case RingFamily::LocalizedIntegers: {
            auto [A, B] = detail::localized_integer_pair(a, b);
            return gcd_int(A, B) == 1;
        }
        case RingFamily::QuadraticOrder: return detail::quad_ideal_test(a, b).unimodular;
    }
    return false;
}

// Unit-orbit canonical unimodular row [a:b].
class Vertex {
public:
    static Vertex canonical(const RingElem& a, const RingElem& b) {
        require(is_unimodular(a.ring(), a, b), errc::NotUnimodular,
                "(" + a.str() + "," + b.str() + ") is not unimodular");
        return Vertex(a, b);
    }

    static Vertex infinity(const Ring& r) { return canonical(r.one(), r.zero()); }
    static Vertex zero(const Ring& r) { return canonical(r.zero(), r.one()); }
    static Vertex one(const Ring& r) { return canonical(r.one(), r.one()); }
    static Vertex minus_one(const Ring& r) { return canonical(r.from_int(-1), r.one()); }

    const Ring& ring() const { return a_.ring(); }
    const RingElem& a() const { return a_; }
    const RingElem& b() const { return b_; }

    bool is_infinity() const { return *this == infinity(ring()); }

    bool operator==(const Vertex& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const Vertex& o) const { return !(*this == o); }
    bool operator<(const Vertex& o) const {
        int c = cmp_order(a_, o.a_);
        return c != 0 ? c < 0 : cmp_order(b_, o.b_) < 0;
    }

    std::string str() const { return "[" + a_.str() + ":" + b_.str() + "]"; }

private:
    Vertex(const RingElem& a, const RingElem& b) : a_(a), b_(b) { canonicalize(); }

    void canonicalize() {
        const Ring& r = a_.ring();
        switch (r.family()) {
            case RingFamily::Integers: {
                bool flip = b_.as_int() < 0 || (b_.as_int() == 0 && a_.as_int() < 0);
                if (flip) {
                    a_ = -a_;
                    b_ = -b_;
                }
                return;
            }
            case RingFamily::LocalizedIntegers: {
                auto [A, B] = detail::localized_integer_pair(a_, b_);
                if (B < 0 || (B == 0 && A < 0)) {
                    A = -A;
                    B = -B;
                }
                a_ = r.from_int(A);
                b_ = r.from_int(B);
                return;
            }
            case RingFamily::ModN: {
                // lexicographically least orbit element under the element order
                RingElem best_a = a_, best_b = b_;
                for (const RingElem& u : enumerate_units(r, HeightBound{})) {
                    RingElem ua = u * a_, ub = u * b_;
                    int c = cmp_order(ua, best_a);
                    if (c < 0 || (c == 0 && cmp_order(ub, best_b) < 0)) {
                        best_a = ua;
                        best_b = ub;
                    }
                }
                a_ = best_a;
                b_ = best_b;
                return;
            }
            case RingFamily::QuadraticOrder: {
                // unit multiple with lexicographically greatest (y_b, x_b, y_a, x_a);
                // reduces to the "(y,x) of b nonnegative" sign rule when units are +-1
                auto key_less = [](const RingElem& a1, const RingElem& b1,
                                   const RingElem& a2, const RingElem& b2) {
                    auto t1 = std::array<const Int*, 4>{&b1.as_quad().y, &b1.as_quad().x,
                                                        &a1.as_quad().y, &a1.as_quad().x};
                    auto t2 = std::array<const Int*, 4>{&b2.as_quad().y, &b2.as_quad().x,
                                                        &a2.as_quad().y, &a2.as_quad().x};
                    for (int i = 0; i < 4; ++i) {
                        if (*t1[i] != *t2[i]) return *t1[i] < *t2[i];
                    }
                    return false;
                };
                RingElem best_a = a_, best_b = b_;
                for (const RingElem& u : enumerate_units(r, HeightBound{})) {
                    RingElem ua = u * a_, ub = u * b_;
                    if (key_less(best_a, best_b, ua, ub)) {
                        best_a = ua;
                        best_b = ub;
                    }
                }
                a_ = best_a;
                b_ = best_b;
                return;
            }
        }
    }

    RingElem a_, b_;
};

inline Vertex canonical_vertex(const Ring& r, const RingElem& a, const RingElem& b) {
    require(a.ring() == r && b.ring() == r, errc::RingMismatch,
            "row entries from a different ring");
    return Vertex::canonical(a, b);
}

// Right action of GL2 on vertices: [row] * X.
inline Vertex act(const Vertex& v, const Mat2& X) {
    require(X.in_gl(), errc::NonUnitDeterminant, "action requires det in A^x");
    RingElem na = v.a() * X.m11() + v.b() * X.m21();
    RingElem nb = v.a() * X.m12() + v.b() * X.m22();
    return Vertex::canonical(na, nb);
}

namespace detail {

// Deterministic SL2 completion of a coprime integer pair (A,B) != (0,0):
// second row (C,D) with A*D - B*C = 1, C normalized into [0,|A|).
inline std::pair<Int, Int> complete_int_pair(const Int& A, const Int& B) {
    if (A == 0) {
        // B = +-1; pick (-B^{-1}, 0) = (-B, 0)
        return {Int(-B), Int(0)};
    }
    ExtGcd e = ext_gcd(A, B); // A*x + B*y = 1
    // base solution (C0,D0) = (-y,x); shift by t*(A,B) to land C in [0,|A|)
    Int C0 = -e.y;
    Int C = C0 % abs_int(A);
    if (C < 0) C += abs_int(A);
    Int t = (C - C0) / A;
    Int D = e.x + t * B;
    return {C, D};
}

} // namespace detail

// Completes a vertex to an SL2 matrix whose first row represents it, so that
// infinity * X = v. Deterministic: same vertex, same matrix.
inline Mat2 complete_row(const Vertex& v) {
    const Ring& r = v.ring();
    switch (r.family()) {
        case RingFamily::Integers: {
            auto [C, D] = detail::complete_int_pair(v.a().as_int(), v.b().as_int());
            return Mat2(v.a(), v.b(), r.from_int(C), r.from_int(D));
        }
        case RingFamily::LocalizedIntegers: {
            // canonical entries are already an integer pair with gcd 1
            auto [C, D] = detail::complete_int_pair(v.a().rat_num(), v.b().rat_num());
            return Mat2(v.a(), v.b(), r.from_int(C), r.from_int(D));
        }
        case RingFamily::ModN: {
            // minimize (m21, m22) in the element order over all Bezout solutions
            ExtGcd f = ext_gcd(v.a().as_int(), v.b().as_int());
            RingElem gi = unit_inverse(r.from_int(f.g));
            RingElem C0 = -(gi * r.from_int(f.y));
            RingElem D0 = gi * r.from_int(f.x);
            RingElem bestC = C0, bestD = D0;
            for (Int t = 0; t < r.desc().n; ++t) {
                RingElem C = C0 + r.from_int(t) * v.a();
                RingElem D = D0 + r.from_int(t) * v.b();
                int c = cmp_order(C, bestC);
                if (c < 0 || (c == 0 && cmp_order(D, bestD) < 0)) {
                    bestC = C;
                    bestD = D;
                }
            }
            return Mat2(v.a(), v.b(), bestC, bestD);
        }
        case RingFamily::QuadraticOrder: {
            detail::QuadIdeal w = detail::quad_ideal_test(v.a(), v.b());
            require(w.unimodular, errc::NotUnimodular, "vertex row is not unimodular");
            RingElem C0 = -r.quad(w.sx, w.sy);
            RingElem D0 = r.quad(w.rx, w.ry);
            // reduce deterministically over a small shift box
            RingElem bestC = C0, bestD = D0;
            auto better = [&](const RingElem& C, const RingElem& D) {
                int c = cmp_order(C, bestC);
                return c < 0 || (c == 0 && cmp_order(D, bestD) < 0);
            };
            for (Int y = -4; y <= 4; ++y) {
                for (Int x = -4; x <= 4; ++x) {
                    RingElem t = r.quad(x, y);
                    RingElem C = C0 + t * v.a();
                    RingElem D = D0 + t * v.b();
                    if (better(C, D)) {
                        bestC = C;
                        bestD = D;
                    }
                }
            }
            return Mat2(v.a(), v.b(), bestC, bestD);
        }
    }
    fail(errc::UnsupportedRing, "unknown ring family");
}

// Image of a vertex in P^1(F) for domains (Lemma-bezout view).
struct BezoutPoint {
    enum class Kind { Infinity, Rational, Residue, Formal } kind;
    Rat value;             // Kind::Rational
    std::optional<RingElem> residue; // Kind::Residue
    std::string formal;    // Kind::Formal

    bool is_infinity() const { return kind == Kind::Infinity; }

    std::string str() const {
        switch (kind) {
            case Kind::Infinity: return "inf";
            case Kind::Rational: {
                std::ostringstream os;
                os << boost::multiprecision::numerator(value);
                if (boost::multiprecision::denominator(value) != 1)
                    os << "/" << boost::multiprecision::denominator(value);
                return os.str();
            }
            case Kind::Residue: return residue->str();
            case Kind::Formal: return formal;
        }
        return "";
    }
};

inline BezoutPoint bezout_point(const Vertex& v) {
    const Ring& r = v.ring();
    require(r.is_domain(), errc::NotADomain,
            r.str() + " is not a domain; Bezout points undefined");
    BezoutPoint out{BezoutPoint::Kind::Infinity, Rat(0), std::nullopt, ""};
    if (v.b().is_zero()) return out;
    switch (r.family()) {
        case RingFamily::Integers:
            out.kind = BezoutPoint::Kind::Rational;
            out.value = Rat(v.a().as_int(), v.b().as_int());
            return out;
        case RingFamily::LocalizedIntegers:
            out.kind = BezoutPoint::Kind::Rational;
            out.value = Rat(v.a().rat_num(), v.b().rat_num());
            return out;
        case RingFamily::ModN:
            out.kind = BezoutPoint::Kind::Residue;
            out.residue = v.a() * unit_inverse(v.b());
            return out;
        case RingFamily::QuadraticOrder:
            out.kind = BezoutPoint::Kind::Formal;
            out.formal = "(" + v.a().str() + ")/(" + v.b().str() + ")";
            return out;
    }
    fail(errc::UnsupportedRing, "unknown ring family");
}

// Inverse lookup for fractions that are Bezout points (Z and Z[1/m]).
inline Vertex vertex_from_fraction(const Ring& r, const Rat& x) {
    Int p = boost::multiprecision::numerator(x);
    Int q = boost::multiprecision::denominator(x);
    switch (r.family()) {
        case RingFamily::Integers:
        case RingFamily::LocalizedIntegers:
            return Vertex::canonical(r.from_int(p), r.from_int(q));
        default:
            fail(errc::NotADomain, "fraction lookup is supported over Z and Z[1/m]");
    }
}

} // namespace sl2
