#pragma once

// Exact rational re-derivation of the revision rule, used to freeze expected
// values. Deliberately shares nothing with the library's floating-point path.

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace oracle {

struct Q {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Q() = default;
    Q(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den == 0) throw std::domain_error("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend Q operator+(Q a, Q b) { return Q(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Q operator-(Q a, Q b) { return Q(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Q operator*(Q a, Q b) { return Q(a.num * b.num, a.den * b.den); }
    friend bool operator==(Q a, Q b) { return a.num == b.num && a.den == b.den; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Q f2(Q x, Q up) { return x + up * (Q(1) - x); }
inline Q f1(Q x, Q down) { return (Q(1) - down) * x; }
inline Q blend(Q x, Q d, Q up, Q down) { return d * f2(x, up) + (Q(1) - d) * f1(x, down); }
inline Q revise(Q x, Q d, Q q, Q up, Q down) { return (Q(1) - q) * x + q * blend(x, d, up, down); }

} // namespace oracle
