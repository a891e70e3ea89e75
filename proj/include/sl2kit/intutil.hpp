#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <utility>
#include <vector>

#include "sl2kit/error.hpp"

namespace sl2 {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

struct ExtGcd {
    Int g; // gcd(a,b) >= 0
    Int x; // a*x + b*y = g
    Int y;
};

inline ExtGcd ext_gcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b; // truncated division; sign handled by final fixup
        Int r = a - q * b;
        a = b;
        b = r;
        Int nx = x0 - q * x1, ny = y0 - q * y1;
        x0 = x1;
        y0 = y1;
        x1 = nx;
        y1 = ny;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    return {a, x0, y0};
}

// Trial-division factorization of n >= 1, ascending primes with multiplicity.
inline std::vector<std::pair<Int, int>> factorize(Int n) {
    require(n >= 1, errc::ParseError, "factorize expects a positive integer");
    std::vector<std::pair<Int, int>> out;
    Int p = 2;
    while (p * p <= n) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        p += (p == 2) ? 1 : 2;
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool is_squarefree(const Int& n) {
    for (const auto& [p, e] : factorize(abs_int(n)))
        if (e > 1) return false;
    return true;
}

// Largest divisor of |a| supported on the given primes; smooth_part(0) = 0.
inline Int smooth_part(Int a, const std::vector<Int>& primes) {
    if (a == 0) return 0;
    a = abs_int(a);
    Int out = 1;
    for (const Int& p : primes) {
        while (a % p == 0) {
            a /= p;
            out *= p;
        }
    }
    return out;
}

inline bool is_smooth(const Int& a, const std::vector<Int>& primes) {
    if (a == 0) return false;
    Int rest = abs_int(a);
    for (const Int& p : primes)
        while (rest % p == 0) rest /= p;
    return rest == 1;
}

// Euler phi, trial-division based (desk scale).
inline Int euler_phi(const Int& n) {
    Int out = n;
    for (const auto& [p, e] : factorize(n)) out = out / p * (p - 1);
    return out;
}

} // namespace sl2
