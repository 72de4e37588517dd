#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace aperiodica {

// Exact rational with 64-bit numerator/denominator, always reduced, q > 0.
// Intermediates widen to 128 bits; a result that does not fit back into
// 64 bits after reduction throws std::overflow_error. Coefficient growth in
// this library is bounded by the inflation depth, which keeps values small.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        i128 nn = n, dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        normalize(nn, dd);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { Rational r; r.num_ = -num_; r.den_ = den_; return r; }

    Rational operator+(const Rational& o) const {
        return make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return make(i128(num_) * o.num_, i128(den_) * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return make(i128(num_) * o.den_, i128(den_) * o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return i128(num_) * o.den_ < i128(o.num_) * den_;
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const { return double(num_) / double(den_); }

    // Canonical text form: "p" for integers, "p/q" otherwise.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rational parse(const std::string& s) {
        std::size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        }
    }

    std::size_t hash() const {
        std::size_t h = std::hash<std::int64_t>()(num_);
        return h ^ (std::hash<std::int64_t>()(den_) + 0x9e3779b97f4a7c15ULL + (h << 6));
    }

private:
    using i128 = __int128;

    static i128 gcd128(i128 a, i128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a;
    }

    static Rational make(i128 n, i128 d) {
        Rational r;
        if (d < 0) { n = -n; d = -d; }
        r.normalize(n, d);
        return r;
    }

    void normalize(i128 n, i128 d) {
        if (n == 0) { num_ = 0; den_ = 1; return; }
        i128 g = gcd128(n, d);
        n /= g; d /= g;
        constexpr i128 lo = i128(INT64_MIN), hi = i128(INT64_MAX);
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        num_ = std::int64_t(n);
        den_ = std::int64_t(d);
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace aperiodica
