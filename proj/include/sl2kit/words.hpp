#pragma once

#include <string>
#include <vector>

#include "sl2kit/pathword.hpp"

namespace sl2 {

// ---- free words over the eps(a) generators of C(A) ----

struct CLetter {
    RingElem a;
    bool inv = false;
};

class CWord {
public:
    explicit CWord(Ring r) : ring_(std::move(r)) {}

    static CWord eps(const RingElem& a) {
        CWord w(a.ring());
        w.letters_.push_back({a, false});
        return w;
    }
    static CWord eps_inv(const RingElem& a) {
        CWord w(a.ring());
        w.letters_.push_back({a, true});
        return w;
    }

    const Ring& ring() const { return ring_; }
    const std::vector<CLetter>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    size_t size() const { return letters_.size(); }

    CWord operator*(const CWord& o) const {
        require(ring_ == o.ring_, errc::RingMismatch, "word concatenation across rings");
        CWord w(ring_);
        w.letters_ = letters_;
        w.letters_.insert(w.letters_.end(), o.letters_.begin(), o.letters_.end());
        return w;
    }

    CWord inverse() const {
        CWord w(ring_);
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            w.letters_.push_back({it->a, !it->inv});
        return w;
    }

    bool all_positive() const {
        for (const CLetter& l : letters_)
            if (l.inv) return false;
        return true;
    }

    bool operator==(const CWord& o) const {
        if (!(ring_ == o.ring_) || letters_.size() != o.letters_.size()) return false;
        for (size_t i = 0; i < letters_.size(); ++i)
            if (letters_[i].a != o.letters_[i].a || letters_[i].inv != o.letters_[i].inv)
                return false;
        return true;
    }

    std::string str() const {
        if (letters_.empty()) return "1";
        std::string s;
        for (size_t i = 0; i < letters_.size(); ++i) {
            if (i) s += "*";
            s += letters_[i].inv ? "e^-1(" : "e(";
            s += letters_[i].a.str() + ")";
        }
        return s;
    }

private:
    Ring ring_;
    std::vector<CLetter> letters_;
};

// Evaluation homomorphism psi: eps(a) -> E(a).
inline Mat2 psi(const CWord& w) {
    Mat2 out = Mat2::identity(w.ring());
    for (const CLetter& l : w.letters()) {
        Mat2 m = mat_E(l.a);
        out = out * (l.inv ? m.inverse() : m);
    }
    return out;
}

// ---- the derived elements of C(A) ----

// h(u) = eps(-u) eps(-u^{-1}) eps(-u), psi-image D(u)
inline CWord h_word(const RingElem& u) {
    require(is_unit(u), errc::NotAUnit, "h(u) requires a unit");
    return CWord::eps(-u) * CWord::eps(-unit_inverse(u)) * CWord::eps(-u);
}

// y(a) = eps(0)^3 eps(a), psi-image E21(a)
inline CWord y_word(const RingElem& a) {
    const Ring& r = a.ring();
    CWord z = CWord::eps(r.zero());
    return z * z * z * CWord::eps(a);
}

// ybar(a) = eps(-a) eps(0)^3, psi-image E12(a)
inline CWord ybar_word(const RingElem& a) {
    const Ring& r = a.ring();
    CWord z = CWord::eps(r.zero());
    return CWord::eps(-a) * z * z * z;
}

// beta(u,a) = h(u) y(ua), psi-image [[u,0],[a,u^-1]]
inline CWord beta_word(const RingElem& u, const RingElem& a) {
    return h_word(u) * y_word(u * a);
}

// w(u) = ybar(u) y(-u^{-1}) ybar(u) = h(u) eps(0) in C(A)
inline CWord w_word(const RingElem& u) {
    require(is_unit(u), errc::NotAUnit, "w(u) requires a unit");
    return ybar_word(u) * y_word(-unit_inverse(u)) * ybar_word(u);
}

// wbar(u) = y(u) ybar(-u^{-1}) y(u) = eps(0) h(-u) in C(A)
inline CWord wbar_word(const RingElem& u) {
    require(is_unit(u), errc::NotAUnit, "wbar(u) requires a unit");
    return y_word(u) * ybar_word(-unit_inverse(u)) * y_word(u);
}

// Standard embedding st: B -> C(A), reading (u, b) off the matrix. The
// identity matrix embeds as the empty word.
inline CWord st_word(const Mat2& Z) {
    require(Z.in_b(), errc::NotInB, "st is defined on B only");
    if (Z.is_identity()) return CWord(Z.ring());
    return beta_word(Z.m11(), Z.m21());
}

// The subgroup of C(A) isomorphic to B: beta(u,a) with the closed-form
// multiplication beta(u,a) beta(v,b) = beta(uv, av + u^{-1} b).
class BElem {
public:
    BElem(RingElem u, RingElem a) : u_(std::move(u)), a_(std::move(a)) {
        require(is_unit(u_), errc::NotAUnit, "beta(u,a) requires a unit u");
    }

    static BElem identity(const Ring& r) { return BElem(r.one(), r.zero()); }

    const RingElem& u() const { return u_; }
    const RingElem& a() const { return a_; }

    BElem operator*(const BElem& o) const {
        return BElem(u_ * o.u_, a_ * o.u_ + unit_inverse(u_) * o.a_);
    }

    BElem inverse() const { return BElem(unit_inverse(u_), -a_); }

    Mat2 psi_image() const {
        const Ring& r = u_.ring();
        return Mat2(u_, r.zero(), a_, unit_inverse(u_));
    }

    CWord word() const { return beta_word(u_, a_); }

    bool operator==(const BElem& o) const { return u_ == o.u_ && a_ == o.a_; }

private:
    RingElem u_, a_;
};

inline BElem mult_B(const BElem& x, const BElem& y) { return x * y; }

// ---- Lambda: loops at infinity to words in U(A) ----

// Lambda(p) = st(T(p))^{-1} eps(a_n)...eps(a_1) st(I(p)), with st-inverse
// realized as st of the matrix inverse; lands in ker(psi) by construction.
inline CWord lambda_word(const PathWord& p) {
    require(p.loop_at_infinity(), errc::NotALoop,
            "Lambda is defined on loops at infinity (I, T in B)");
    CWord w = st_word(p.terminal().inverse());
    for (auto it = p.letters().rbegin(); it != p.letters().rend(); ++it)
        w = w * CWord::eps(*it);
    w = w * st_word(p.base());
    require(psi(w).is_identity(), errc::NotInKernel,
            "internal: Lambda word escaped ker(psi)");
    return w;
}

// ---- Theta: kernel words to loops at infinity ----

// Theta(word) = <1, (s_{c_n}(b_n), ..., s_{c_1}(b_1))> with s_1(b) = b and
// s_{-1}(b) the string 0, -b, 0.
inline PathWord theta_word(const CWord& w) {
    require(psi(w).is_identity(), errc::NotInKernel,
            "Theta requires a word with identity psi-image");
    const Ring& r = w.ring();
    std::vector<RingElem> letters;
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
        if (it->inv) {
            letters.push_back(r.zero());
            letters.push_back(-it->a);
            letters.push_back(r.zero());
        } else {
            letters.push_back(it->a);
        }
    }
    return PathWord(Mat2::identity(r), std::move(letters));
}

// ---- the three relator families presenting U(A) inside the free group ----

enum class RelatorFamily { Alpha, Gamma, Delta };

inline CWord h_tilde(const RingElem& u) { return h_word(u); }

// alpha(u,v) = h~(u) h~(v) h~(uv)^{-1}
inline CWord relator_alpha(const RingElem& u, const RingElem& v) {
    CWord w = h_tilde(u) * h_tilde(v) * h_tilde(u * v).inverse();
    require(psi(w).is_identity(), errc::NotInKernel, "internal: alpha relator");
    return w;
}

// gamma(a,b) = eps(a) eps(0) eps(b) eps(a+b)^{-1} h~(-1)^{-1}
inline CWord relator_gamma(const RingElem& a, const RingElem& b) {
    const Ring& r = a.ring();
    CWord w = CWord::eps(a) * CWord::eps(r.zero()) * CWord::eps(b) *
              CWord::eps(a + b).inverse() * h_tilde(r.from_int(-1)).inverse();
    require(psi(w).is_identity(), errc::NotInKernel, "internal: gamma relator");
    return w;
}

// delta(u,a) = h~(u) eps(a) h~(u) eps(u^2 a)^{-1}
inline CWord relator_delta(const RingElem& u, const RingElem& a) {
    CWord w = h_tilde(u) * CWord::eps(a) * h_tilde(u) *
              CWord::eps(u * u * a).inverse();
    require(psi(w).is_identity(), errc::NotInKernel, "internal: delta relator");
    return w;
}

// ---- rank one Steinberg words ----

struct StLetter {
    bool row12; // x12 vs x21
    RingElem t;
    bool inv = false;
};

class StWord {
public:
    explicit StWord(Ring r) : ring_(std::move(r)) {}

    static StWord x12(const RingElem& t) { return single(true, t, false); }
    static StWord x21(const RingElem& t) { return single(false, t, false); }
    static StWord x12_inv(const RingElem& t) { return single(true, t, true); }
    static StWord x21_inv(const RingElem& t) { return single(false, t, true); }

    const Ring& ring() const { return ring_; }
    const std::vector<StLetter>& letters() const { return letters_; }

    StWord operator*(const StWord& o) const {
        require(ring_ == o.ring_, errc::RingMismatch, "word concatenation across rings");
        StWord w(ring_);
        w.letters_ = letters_;
        w.letters_.insert(w.letters_.end(), o.letters_.begin(), o.letters_.end());
        return w;
    }

    StWord inverse() const {
        StWord w(ring_);
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            w.letters_.push_back({it->row12, it->t, !it->inv});
        return w;
    }

    std::string str() const {
        if (letters_.empty()) return "1";
        std::string s;
        for (size_t i = 0; i < letters_.size(); ++i) {
            if (i) s += "*";
            s += letters_[i].row12 ? "x12" : "x21";
            if (letters_[i].inv) s += "^-1";
            s += "(" + letters_[i].t.str() + ")";
        }
        return s;
    }

private:
    static StWord single(bool row12, const RingElem& t, bool inv) {
        StWord w(t.ring());
        w.letters_.push_back({row12, t, inv});
        return w;
    }

    Ring ring_;
    std::vector<StLetter> letters_;
};

// Evaluation homomorphism phi: x_ij(t) -> E_ij(t), onto E2(A).
inline Mat2 phi(const StWord& w) {
    Mat2 out = Mat2::identity(w.ring());
    for (const StLetter& l : w.letters()) {
        RingElem t = l.inv ? -l.t : l.t;
        out = out * (l.row12 ? mat_E12(t) : mat_E21(t));
    }
    return out;
}

// w_ij(u) = x_ij(u) x_ji(-u^{-1}) x_ij(u)
inline StWord w12_word(const RingElem& u) {
    require(is_unit(u), errc::NotAUnit, "w12(u) requires a unit");
    return StWord::x12(u) * StWord::x21(-unit_inverse(u)) * StWord::x12(u);
}

inline StWord w21_word(const RingElem& u) {
    require(is_unit(u), errc::NotAUnit, "w21(u) requires a unit");
    return StWord::x21(u) * StWord::x12(-unit_inverse(u)) * StWord::x21(u);
}

// h_ij(u) = w_ij(u) w_ij(-1)
inline StWord h12_word(const RingElem& u) {
    return w12_word(u) * w12_word(u.ring().from_int(-1));
}

inline StWord h21_word(const RingElem& u) {
    return w21_word(u) * w21_word(u.ring().from_int(-1));
}

// Steinberg symbol c(u,v) = h12(u) h12(v) h12(uv)^{-1}, central in K2(2,A).
inline StWord c_symbol(const RingElem& u, const RingElem& v) {
    return h12_word(u) * h12_word(v) * h12_word(u * v).inverse();
}

// Dennis-Stein symbol D(a,b), defined when u = 1-ab is a unit.
inline StWord ds_symbol(const RingElem& a, const RingElem& b) {
    const Ring& r = a.ring();
    RingElem u = r.one() - a * b;
    require(is_unit(u), errc::NotAUnit, "D(a,b) needs 1-ab to be a unit");
    RingElem ui = unit_inverse(u);
    return StWord::x21(-(b * ui)) * StWord::x12(-a) * StWord::x21(b) *
           StWord::x12(a * ui) * h12_word(u).inverse();
}

// alpha: St(2,A) -> C(A), x21(a) -> y(a), x12(a) -> ybar(a); psi o alpha = phi.
inline CWord alpha_map(const StWord& w) {
    CWord out(w.ring());
    for (const StLetter& l : w.letters()) {
        CWord img = l.row12 ? ybar_word(l.t) : y_word(l.t);
        out = out * (l.inv ? img.inverse() : img);
    }
    return out;
}

// gamma: C(A) -> St(2,A)/C(2,A), eps(a) -> w21(-1) x21(a) (as a free word).
inline StWord gamma_map(const CWord& w) {
    StWord out(w.ring());
    const RingElem minus_one = w.ring().from_int(-1);
    for (const CLetter& l : w.letters()) {
        StWord img = w21_word(minus_one) * StWord::x21(l.a);
        out = out * (l.inv ? img.inverse() : img);
    }
    return out;
}

} // namespace sl2
