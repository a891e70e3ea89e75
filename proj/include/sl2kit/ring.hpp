#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "sl2kit/error.hpp"
#include "sl2kit/intutil.hpp"

namespace sl2 {

enum class RingFamily { Integers, ModN, LocalizedIntegers, QuadraticOrder };

// Immutable description of one of the four supported ring families.
struct RingDesc {
    RingFamily family = RingFamily::Integers;
    Int n;                   // ModN modulus, n >= 2
    Int m;                   // LocalizedIntegers base, m >= 2
    std::vector<Int> primes; // distinct primes dividing m, ascending
    Int d;                   // QuadraticOrder parameter, squarefree, != 0,1
    bool half_basis = false; // theta = (1+sqrt(d))/2 instead of sqrt(d)

    bool operator==(const RingDesc& o) const {
        return family == o.family && n == o.n && m == o.m && d == o.d &&
               half_basis == o.half_basis;
    }
};

class RingElem;

// Cheap-to-copy handle on a shared immutable RingDesc.
class Ring {
public:
    Ring() : desc_(std::make_shared<const RingDesc>()) {}

    static Ring integers() { return Ring(RingDesc{}); }

    static Ring mod_n(const Int& n) {
        require(n >= 2, errc::UnsupportedRing, "Z/n requires n >= 2");
        RingDesc d;
        d.family = RingFamily::ModN;
        d.n = n;
        return Ring(d);
    }

    static Ring localized(const Int& m) {
        require(m >= 2, errc::UnsupportedRing, "Z[1/m] requires m >= 2");
        RingDesc d;
        d.family = RingFamily::LocalizedIntegers;
        d.m = m;
        for (const auto& [p, e] : factorize(m)) d.primes.push_back(p);
        return Ring(d);
    }

    // quad(d) picks the half basis automatically when d = 1 mod 4.
    static Ring quadratic(const Int& d) {
        Int r = d % 4;
        if (r < 0) r += 4;
        return quadratic(d, r == 1);
    }

    static Ring quadratic(const Int& d, bool half_basis) {
        require(d != 0 && d != 1, errc::UnsupportedRing, "quad(d) requires d != 0,1");
        require(is_squarefree(d), errc::UnsupportedRing, "quad(d) requires squarefree d");
        if (half_basis) {
            Int r = d % 4;
            if (r < 0) r += 4;
            require(r == 1, errc::UnsupportedRing,
                    "half-basis quadratic order requires d = 1 mod 4");
        }
        RingDesc desc;
        desc.family = RingFamily::QuadraticOrder;
        desc.d = d;
        desc.half_basis = half_basis;
        return Ring(desc);
    }

    const RingDesc& desc() const { return *desc_; }
    RingFamily family() const { return desc_->family; }

    bool operator==(const Ring& o) const { return *desc_ == *o.desc_; }
    bool operator!=(const Ring& o) const { return !(*this == o); }

    bool is_finite() const { return family() == RingFamily::ModN; }

    bool is_domain() const {
        switch (family()) {
            case RingFamily::ModN: return factorize(desc_->n).size() == 1 &&
                                          factorize(desc_->n)[0].second == 1;
            default: return true;
        }
    }

    // theta^2 = d, or theta^2 = theta + (d-1)/4 on the half basis.
    Int quad_c() const { return (desc_->d - 1) / 4; }

    std::string str() const {
        std::ostringstream os;
        switch (family()) {
            case RingFamily::Integers: os << "Z"; break;
            case RingFamily::ModN: os << "Z/" << desc_->n; break;
            case RingFamily::LocalizedIntegers: os << "Z[1/" << desc_->m << "]"; break;
            case RingFamily::QuadraticOrder: os << "quad(" << desc_->d << ")"; break;
        }
        return os.str();
    }

    RingElem zero() const;
    RingElem one() const;
    RingElem from_int(const Int& v) const;
    RingElem fraction(const Int& num, const Int& den) const; // LocalizedIntegers
    RingElem quad(const Int& x, const Int& y) const;         // x + y*theta

private:
    explicit Ring(RingDesc d) : desc_(std::make_shared<const RingDesc>(std::move(d))) {}
    std::shared_ptr<const RingDesc> desc_;
};

struct QuadPair {
    Int x, y; // x + y*theta
    bool operator==(const QuadPair& o) const { return x == o.x && y == o.y; }
};

// Exact element of a ring, always held in canonical reduced form:
// residues in [0,n), fractions reduced with positive m-smooth denominator.
class RingElem {
public:
    RingElem() = default;

    static RingElem make_int(const Ring& r, Int v) {
        switch (r.family()) {
            case RingFamily::Integers: return RingElem(r, std::move(v));
            case RingFamily::ModN: {
                Int w = v % r.desc().n;
                if (w < 0) w += r.desc().n;
                return RingElem(r, std::move(w));
            }
            case RingFamily::LocalizedIntegers: return RingElem(r, Rat(v));
            case RingFamily::QuadraticOrder: return RingElem(r, QuadPair{std::move(v), 0});
        }
        fail(errc::UnsupportedRing, "unknown ring family");
    }

    static RingElem make_fraction(const Ring& r, const Int& num, const Int& den) {
        require(r.family() == RingFamily::LocalizedIntegers, errc::RingMismatch,
                "fractions live in Z[1/m]");
        require(den != 0, errc::ParseError, "zero denominator");
        Rat q(num, den);
        require(boost::multiprecision::denominator(q) == 1 ||
                    is_smooth(boost::multiprecision::denominator(q), r.desc().primes),
                errc::ParseError,
                "denominator is not a product of primes dividing m");
        return RingElem(r, std::move(q));
    }

    static RingElem make_quad(const Ring& r, Int x, Int y) {
        require(r.family() == RingFamily::QuadraticOrder, errc::RingMismatch,
                "x+y*t elements live in quadratic orders");
        return RingElem(r, QuadPair{std::move(x), std::move(y)});
    }

    const Ring& ring() const { return ring_; }

    const Int& as_int() const { return std::get<Int>(payload_); }
    const Rat& as_rat() const { return std::get<Rat>(payload_); }
    const QuadPair& as_quad() const { return std::get<QuadPair>(payload_); }

    Int rat_num() const { return boost::multiprecision::numerator(as_rat()); }
    Int rat_den() const { return boost::multiprecision::denominator(as_rat()); }

    bool is_zero() const {
        switch (ring_.family()) {
            case RingFamily::Integers:
            case RingFamily::ModN: return as_int() == 0;
            case RingFamily::LocalizedIntegers: return as_rat() == 0;
            case RingFamily::QuadraticOrder: return as_quad().x == 0 && as_quad().y == 0;
        }
        return false;
    }

    bool is_one() const { return *this == ring_.one(); }

    bool operator==(const RingElem& o) const {
        return ring_ == o.ring_ && payload_ == o.payload_;
    }
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    RingElem operator-() const {
        switch (ring_.family()) {
            case RingFamily::Integers: return RingElem(ring_, Int(-as_int()));
            case RingFamily::ModN: {
                Int w = (ring_.desc().n - as_int()) % ring_.desc().n;
                return RingElem(ring_, std::move(w));
            }
            case RingFamily::LocalizedIntegers: return RingElem(ring_, Rat(-as_rat()));
            case RingFamily::QuadraticOrder:
                return RingElem(ring_, QuadPair{-as_quad().x, -as_quad().y});
        }
        fail(errc::UnsupportedRing, "unknown ring family");
    }

    RingElem operator+(const RingElem& o) const {
        check_same_ring(o);
        switch (ring_.family()) {
            case RingFamily::Integers: return RingElem(ring_, Int(as_int() + o.as_int()));
            case RingFamily::ModN: {
                Int w = (as_int() + o.as_int()) % ring_.desc().n;
                return RingElem(ring_, std::move(w));
            }
            case RingFamily::LocalizedIntegers:
                return RingElem(ring_, Rat(as_rat() + o.as_rat()));
            case RingFamily::QuadraticOrder:
                return RingElem(ring_, QuadPair{as_quad().x + o.as_quad().x,
                                                as_quad().y + o.as_quad().y});
        }
        fail(errc::UnsupportedRing, "unknown ring family");
    }

    RingElem operator-(const RingElem& o) const { return *this + (-o); }

    RingElem operator*(const RingElem& o) const {
        check_same_ring(o);
        switch (ring_.family()) {
            case RingFamily::Integers: return RingElem(ring_, Int(as_int() * o.as_int()));
            case RingFamily::ModN: {
                Int w = (as_int() * o.as_int()) % ring_.desc().n;
                return RingElem(ring_, std::move(w));
            }
            case RingFamily::LocalizedIntegers:
                return RingElem(ring_, Rat(as_rat() * o.as_rat()));
            case RingFamily::QuadraticOrder: {
                const QuadPair& a = as_quad();
                const QuadPair& b = o.as_quad();
                Int yy = a.y * b.y;
                Int cross = a.x * b.y + a.y * b.x;
                if (ring_.desc().half_basis) {
                    // theta^2 = theta + c with c = (d-1)/4
                    return RingElem(ring_, QuadPair{a.x * b.x + ring_.quad_c() * yy,
                                                    cross + yy});
                }
                return RingElem(ring_, QuadPair{a.x * b.x + ring_.desc().d * yy, cross});
            }
        }
        fail(errc::UnsupportedRing, "unknown ring family");
    }

    std::string str() const {
        std::ostringstream os;
        switch (ring_.family()) {
            case RingFamily::Integers:
            case RingFamily::ModN: os << as_int(); break;
            case RingFamily::LocalizedIntegers:
                os << rat_num();
                if (rat_den() != 1) os << "/" << rat_den();
                break;
            case RingFamily::QuadraticOrder: {
                const QuadPair& q = as_quad();
                if (q.y == 0) {
                    os << q.x;
                } else {
                    if (q.x != 0) os << q.x << (q.y > 0 ? "+" : "");
                    if (q.y == 1)
                        os << "t";
                    else if (q.y == -1)
                        os << "-t";
                    else
                        os << q.y << "*t";
                }
                break;
            }
        }
        return os.str();
    }

private:
    RingElem(Ring r, Int v) : ring_(std::move(r)), payload_(std::move(v)) {}
    RingElem(Ring r, Rat v) : ring_(std::move(r)), payload_(std::move(v)) {}
    RingElem(Ring r, QuadPair v) : ring_(std::move(r)), payload_(std::move(v)) {}

    void check_same_ring(const RingElem& o) const {
        require(ring_ == o.ring_, errc::RingMismatch,
                "operands from different rings: " + ring_.str() + " vs " + o.ring_.str());
    }

    Ring ring_;
    std::variant<Int, Rat, QuadPair> payload_;
};

inline RingElem Ring::zero() const { return RingElem::make_int(*this, 0); }
inline RingElem Ring::one() const { return RingElem::make_int(*this, 1); }
inline RingElem Ring::from_int(const Int& v) const { return RingElem::make_int(*this, v); }
inline RingElem Ring::fraction(const Int& num, const Int& den) const {
    return RingElem::make_fraction(*this, num, den);
}
inline RingElem Ring::quad(const Int& x, const Int& y) const {
    return RingElem::make_quad(*this, x, y);
}

// Field norm of a quadratic-order element.
inline Int quad_norm(const RingElem& a) {
    const QuadPair& q = a.as_quad();
    const RingDesc& d = a.ring().desc();
    if (d.half_basis) return q.x * q.x + q.x * q.y - a.ring().quad_c() * q.y * q.y;
    return q.x * q.x - d.d * q.y * q.y;
}

inline RingElem quad_conj(const RingElem& a) {
    const QuadPair& q = a.as_quad();
    if (a.ring().desc().half_basis)
        return a.ring().quad(q.x + q.y, -q.y); // conj(theta) = 1 - theta
    return a.ring().quad(q.x, -q.y);
}

inline bool is_unit(const RingElem& a) {
    switch (a.ring().family()) {
        case RingFamily::Integers: return a.as_int() == 1 || a.as_int() == -1;
        case RingFamily::ModN: return gcd_int(a.as_int(), a.ring().desc().n) == 1;
        case RingFamily::LocalizedIntegers: {
            Int num = a.rat_num();
            return num != 0 && is_smooth(num, a.ring().desc().primes);
        }
        case RingFamily::QuadraticOrder:
            require(a.ring().desc().d < 0, errc::UnsupportedRing,
                    "unit tests for real quadratic orders are out of scope");
            return quad_norm(a) == 1;
    }
    return false;
}

inline RingElem unit_inverse(const RingElem& u) {
    require(is_unit(u), errc::NotAUnit, "unit_inverse of a non-unit " + u.str());
    switch (u.ring().family()) {
        case RingFamily::Integers: return u; // +-1 are self-inverse
        case RingFamily::ModN: {
            ExtGcd e = ext_gcd(u.as_int(), u.ring().desc().n);
            return u.ring().from_int(e.x);
        }
        case RingFamily::LocalizedIntegers:
            return RingElem::make_fraction(u.ring(), u.rat_den(), u.rat_num());
        case RingFamily::QuadraticOrder: return quad_conj(u); // norm 1
    }
    fail(errc::UnsupportedRing, "unknown ring family");
}

// Total order used for canonical-representative selection: integers by value,
// residues by representative, fractions by (denominator, numerator), quadratic
// elements by (y, x).
inline int cmp_order(const RingElem& a, const RingElem& b) {
    auto c3 = [](const Int& x, const Int& y) { return x < y ? -1 : (x > y ? 1 : 0); };
    switch (a.ring().family()) {
        case RingFamily::Integers:
        case RingFamily::ModN: return c3(a.as_int(), b.as_int());
        case RingFamily::LocalizedIntegers: {
            int c = c3(a.rat_den(), b.rat_den());
            return c != 0 ? c : c3(a.rat_num(), b.rat_num());
        }
        case RingFamily::QuadraticOrder: {
            int c = c3(a.as_quad().y, b.as_quad().y);
            return c != 0 ? c : c3(a.as_quad().x, b.as_quad().x);
        }
    }
    return 0;
}

struct ElemOrder {
    bool operator()(const RingElem& a, const RingElem& b) const {
        return cmp_order(a, b) < 0;
    }
};

// Enumeration bounds that finitize the infinite families: elem_height caps
// numerators/denominators/coordinates, unit_exp caps unit exponents in Z[1/m].
struct HeightBound {
    Int elem_height = 8;
    int unit_exp = 1;
};

namespace detail {
// Ascending-by-value comparison used only for enumeration output order.
inline bool value_less(const RingElem& a, const RingElem& b) {
    switch (a.ring().family()) {
        case RingFamily::Integers:
        case RingFamily::ModN: return a.as_int() < b.as_int();
        case RingFamily::LocalizedIntegers: return a.as_rat() < b.as_rat();
        case RingFamily::QuadraticOrder: return cmp_order(a, b) < 0;
    }
    return false;
}

// Positive divisors s of m^e, ascending.
inline std::vector<Int> smooth_denominators(const Int& m, int e) {
    Int me = 1;
    for (int i = 0; i < e; ++i) me *= m;
    std::vector<std::pair<Int, int>> fac = me == 1 ? std::vector<std::pair<Int, int>>{}
                                                   : factorize(me);
    std::vector<Int> out{1};
    for (const auto& [p, k] : fac) {
        std::vector<Int> next;
        Int pw = 1;
        for (int i = 0; i <= k; ++i) {
            for (const Int& s : out) next.push_back(s * pw);
            pw *= p;
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}
} // namespace detail

// Deterministic finite element listing; exhaustive for Z/n regardless of bound.
inline std::vector<RingElem> enumerate_elements(const Ring& r, const HeightBound& bound) {
    std::vector<RingElem> out;
    const Int& h = bound.elem_height;
    switch (r.family()) {
        case RingFamily::ModN:
            for (Int v = 0; v < r.desc().n; ++v) out.push_back(r.from_int(v));
            return out;
        case RingFamily::Integers:
            for (Int v = -h; v <= h; ++v) out.push_back(r.from_int(v));
            return out;
        case RingFamily::LocalizedIntegers: {
            for (const Int& s : detail::smooth_denominators(r.desc().m, bound.unit_exp)) {
                for (Int a = -h; a <= h; ++a) {
                    if (s != 1 && (a == 0 || gcd_int(a, s) != 1)) continue;
                    out.push_back(r.fraction(a, s));
                }
            }
            std::sort(out.begin(), out.end(), detail::value_less);
            return out;
        }
        case RingFamily::QuadraticOrder:
            for (Int y = -h; y <= h; ++y)
                for (Int x = -h; x <= h; ++x) out.push_back(r.quad(x, y));
            return out;
    }
    return out;
}

// All units within the bound; complete for Z/n, Z ({1,-1}) and imaginary
// quadratic orders. 1 and -1 always lead the listing.
inline std::vector<RingElem> enumerate_units(const Ring& r, const HeightBound& bound) {
    std::vector<RingElem> out;
    switch (r.family()) {
        case RingFamily::Integers:
            out.push_back(r.one());
            out.push_back(r.from_int(-1));
            return out;
        case RingFamily::ModN:
            for (Int v = 1; v < r.desc().n; ++v)
                if (gcd_int(v, r.desc().n) == 1) out.push_back(r.from_int(v));
            return out;
        case RingFamily::LocalizedIntegers: {
            out.push_back(r.one());
            out.push_back(r.from_int(-1));
            const auto& primes = r.desc().primes;
            int e = bound.unit_exp;
            std::vector<int> exp(primes.size(), -e);
            if (e == 0 || primes.empty()) return out;
            while (true) {
                bool all_zero = std::all_of(exp.begin(), exp.end(),
                                            [](int v) { return v == 0; });
                if (!all_zero) {
                    Int num = 1, den = 1;
                    for (size_t i = 0; i < primes.size(); ++i) {
                        for (int k = 0; k < exp[i]; ++k) num *= primes[i];
                        for (int k = 0; k < -exp[i]; ++k) den *= primes[i];
                    }
                    out.push_back(r.fraction(num, den));
                    out.push_back(r.fraction(-num, den));
                }
                size_t i = 0;
                while (i < exp.size() && exp[i] == e) exp[i++] = -e;
                if (i == exp.size()) break;
                ++exp[i];
            }
            return out;
        }
        case RingFamily::QuadraticOrder: {
            require(r.desc().d < 0, errc::UnsupportedRing,
                    "unit enumeration for real quadratic orders is out of scope");
            out.push_back(r.one());
            out.push_back(r.from_int(-1));
            for (Int y = -1; y <= 1; ++y) {
                for (Int x = -1; x <= 1; ++x) {
                    if (y == 0) continue; // +-1 already listed
                    RingElem u = r.quad(x, y);
                    if (quad_norm(u) == 1) out.push_back(u);
                }
            }
            return out;
        }
    }
    return out;
}

// ---- ring-spec grammar: Z | Z/<n> | Z[1/<m>] | quad(<d>), whitespace-free ----

namespace detail {
inline bool parse_decimal(const std::string& s, Int& out) {
    if (s.empty()) return false;
    size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    out = Int(s);
    return true;
}
} // namespace detail

inline Ring parse_ring(const std::string& spec) {
    if (spec == "Z") return Ring::integers();
    if (spec.rfind("Z/", 0) == 0) {
        Int n;
        require(detail::parse_decimal(spec.substr(2), n), errc::ParseError,
                "bad modulus in " + spec);
        require(n >= 2, errc::UnsupportedRing, "Z/n requires n >= 2");
        return Ring::mod_n(n);
    }
    if (spec.rfind("Z[1/", 0) == 0 && spec.size() > 5 && spec.back() == ']') {
        Int m;
        require(detail::parse_decimal(spec.substr(4, spec.size() - 5), m),
                errc::ParseError, "bad base in " + spec);
        require(m >= 2, errc::UnsupportedRing, "Z[1/m] requires m >= 2");
        return Ring::localized(m);
    }
    if (spec.rfind("quad(", 0) == 0 && spec.size() > 6 && spec.back() == ')') {
        Int d;
        require(detail::parse_decimal(spec.substr(5, spec.size() - 6), d),
                errc::ParseError, "bad parameter in " + spec);
        require(d < 0, errc::UnsupportedRing,
                "real quadratic orders (d > 0) are rejected at parse time");
        return Ring::quadratic(d);
    }
    fail(errc::ParseError, "unrecognized ring spec: " + spec);
}

// ---- ring-element literals: integers, p/q, x+y*t ----

inline RingElem parse_elem(const Ring& r, const std::string& text) {
    require(!text.empty(), errc::ParseError, "empty element literal");
    Int v;
    if (detail::parse_decimal(text, v)) return r.from_int(v);
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int num, den;
        require(detail::parse_decimal(text.substr(0, slash), num) &&
                    detail::parse_decimal(text.substr(slash + 1), den),
                errc::ParseError, "bad fraction literal: " + text);
        require(r.family() == RingFamily::LocalizedIntegers, errc::ParseError,
                "fraction literal outside Z[1/m]: " + text);
        return r.fraction(num, den);
    }
    if (text.find('t') != std::string::npos) {
        require(r.family() == RingFamily::QuadraticOrder, errc::ParseError,
                "x+y*t literal outside a quadratic order: " + text);
        // forms: t, -t, y*t, x+y*t, x-y*t, x+t, x-t
        size_t tpos = text.find('t');
        require(tpos == text.size() - 1, errc::ParseError, "bad quadratic literal: " + text);
        std::string head = text.substr(0, tpos);
        Int x = 0, y = 1;
        if (!head.empty()) {
            if (head.back() == '*') head.pop_back();
            // split at the last +/- that is not a leading sign
            size_t split = std::string::npos;
            for (size_t i = head.size(); i-- > 1;) {
                if (head[i] == '+' || head[i] == '-') {
                    split = i;
                    break;
                }
            }
            if (split == std::string::npos) {
                if (head.empty() || head == "-") {
                    y = head.empty() ? 1 : -1;
                } else {
                    require(detail::parse_decimal(head, y), errc::ParseError,
                            "bad quadratic literal: " + text);
                }
            } else {
                std::string xs = head.substr(0, split);
                std::string ys = head.substr(split);
                require(detail::parse_decimal(xs, x), errc::ParseError,
                        "bad quadratic literal: " + text);
                if (ys == "+")
                    y = 1;
                else if (ys == "-")
                    y = -1;
                else {
                    if (ys[0] == '+') ys = ys.substr(1);
                    require(detail::parse_decimal(ys, y), errc::ParseError,
                            "bad quadratic literal: " + text);
                }
            }
        }
        return r.quad(x, y);
    }
    fail(errc::ParseError, "unrecognized element literal: " + text);
}

// Height of the canonical payload, used by graph truncation filters.
inline Int elem_height(const RingElem& a) {
    switch (a.ring().family()) {
        case RingFamily::Integers: return abs_int(a.as_int());
        case RingFamily::ModN: return a.as_int();
        case RingFamily::LocalizedIntegers:
            return std::max(abs_int(a.rat_num()), a.rat_den());
        case RingFamily::QuadraticOrder:
            return std::max(abs_int(a.as_quad().x), abs_int(a.as_quad().y));
    }
    return 0;
}

} // namespace sl2
