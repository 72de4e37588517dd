#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aperiodica/rational.hpp"

namespace aperiodica {

// Exact element of the cyclotomic field Q(zeta_n) for n in {4, 5, 8},
// written over the power basis {zeta_n^k : 0 <= k < phi(n)}.
// Convention: zeta_n = exp(2*pi*i/n), so the embedding into C is fixed.
//
// phi(4) = 2 with zeta_4^2 = -1,
// phi(5) = 4 with zeta_5^4 = -(1 + zeta_5 + zeta_5^2 + zeta_5^3),
// phi(8) = 4 with zeta_8^4 = -1.
//
// Q(zeta_5) also contains the 10th roots of unity via zeta_10 = -zeta_5^3,
// which carries the Penrose D10 operations; Q(zeta_8) carries the octagonal
// ones and sqrt(2) = zeta_8 - zeta_8^3; Q(zeta_4) = Q(i) hosts the pinwheel.
class Cyclo {
public:
    Cyclo() : n_(4) {}
    explicit Cyclo(int n) : n_(check_index(n)) {}
    Cyclo(int n, Rational c0) : n_(check_index(n)) { c_[0] = c0; }

    static Cyclo from_rational(int n, const Rational& r) { return Cyclo(n, r); }
    static Cyclo integer(int n, std::int64_t v) { return Cyclo(n, Rational(v)); }

    static int phi(int n) { return n == 4 ? 2 : 4; }

    // zeta_n^k, reduced.
    static Cyclo zeta(int n, int k = 1) {
        check_index(n);
        Cyclo z(n);
        k %= n;
        if (k < 0) k += n;
        z.add_power(k, Rational(1));
        return z;
    }

    // Largest order of a root of unity contained in Q(zeta_n).
    static int max_rotation_order(int n) {
        check_index(n);
        return n == 5 ? 10 : n;
    }

    // exp(2*pi*i*j / max_rotation_order(n)), exact.
    static Cyclo rotation(int n, int j) {
        int m = max_rotation_order(n);
        j %= m;
        if (j < 0) j += m;
        if (n != 5) return zeta(n, j);
        // zeta_10 = -zeta_5^3, so zeta_10^j = (-1)^j zeta_5^(3j mod 5).
        Cyclo z = zeta(5, (3 * j) % 5);
        return (j % 2 == 0) ? z : -z;
    }

    int n() const { return n_; }
    const std::array<Rational, 4>& coeffs() const { return c_; }
    Rational coeff(int k) const { return c_[std::size_t(k)]; }
    void set_coeff(int k, const Rational& v) { c_[std::size_t(k)] = v; }

    bool is_zero() const {
        for (int k = 0; k < phi(n_); ++k)
            if (!c_[std::size_t(k)].is_zero()) return false;
        return true;
    }

    bool is_rational() const {
        for (int k = 1; k < phi(n_); ++k)
            if (!c_[std::size_t(k)].is_zero()) return false;
        return true;
    }

    bool operator==(const Cyclo& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    Cyclo operator-() const {
        Cyclo r(n_);
        for (int k = 0; k < phi(n_); ++k) r.c_[std::size_t(k)] = -c_[std::size_t(k)];
        return r;
    }

    Cyclo operator+(const Cyclo& o) const {
        require_same_field(o);
        Cyclo r(n_);
        for (int k = 0; k < phi(n_); ++k)
            r.c_[std::size_t(k)] = c_[std::size_t(k)] + o.c_[std::size_t(k)];
        return r;
    }

    Cyclo operator-(const Cyclo& o) const { return *this + (-o); }

    Cyclo operator*(const Cyclo& o) const {
        require_same_field(o);
        const int m = phi(n_);
        std::array<Rational, 7> raw{};
        for (int i = 0; i < m; ++i) {
            if (c_[std::size_t(i)].is_zero()) continue;
            for (int j = 0; j < m; ++j) {
                if (o.c_[std::size_t(j)].is_zero()) continue;
                raw[std::size_t(i + j)] += c_[std::size_t(i)] * o.c_[std::size_t(j)];
            }
        }
        Cyclo r(n_);
        switch (n_) {
        case 4: // x^2 = -1
            r.c_[0] = raw[0] - raw[2];
            r.c_[1] = raw[1];
            break;
        case 8: // x^4 = -1
            for (int k = 0; k < 4; ++k) r.c_[std::size_t(k)] = raw[std::size_t(k)];
            for (int k = 4; k <= 6; ++k) r.c_[std::size_t(k - 4)] -= raw[std::size_t(k)];
            break;
        case 5: { // fold x^5 = 1, then x^4 = -(1+x+x^2+x^3)
            std::array<Rational, 5> d{};
            for (int k = 0; k <= 6; ++k) d[std::size_t(k % 5)] += raw[std::size_t(k)];
            for (int k = 0; k < 4; ++k) r.c_[std::size_t(k)] = d[std::size_t(k)] - d[4];
            break;
        }
        }
        return r;
    }

    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    Cyclo operator*(const Rational& s) const {
        Cyclo r(n_);
        for (int k = 0; k < phi(n_); ++k) r.c_[std::size_t(k)] = c_[std::size_t(k)] * s;
        return r;
    }

    // Complex conjugation: zeta_n^k -> zeta_n^(n-k).
    Cyclo conj() const {
        Cyclo r(n_);
        for (int k = 0; k < phi(n_); ++k) {
            if (c_[std::size_t(k)].is_zero()) continue;
            r.add_power(k == 0 ? 0 : n_ - k, c_[std::size_t(k)]);
        }
        return r;
    }

    // Multiplicative inverse via Gaussian elimination on the multiplication
    // matrix in the power basis. Throws on zero.
    Cyclo inverse() const {
        if (is_zero()) throw std::domain_error("Cyclo: inverse of zero");
        const int m = phi(n_);
        // Columns of M are the basis images zeta^j * (*this).
        std::array<std::array<Rational, 4>, 4> M{};
        for (int j = 0; j < m; ++j) {
            Cyclo col = *this * zeta(n_, j);
            for (int i = 0; i < m; ++i) M[std::size_t(i)][std::size_t(j)] = col.coeff(i);
        }
        std::array<Rational, 4> rhs{};
        rhs[0] = Rational(1);
        // Solve M x = e0.
        std::array<int, 4> perm{0, 1, 2, 3};
        for (int col = 0; col < m; ++col) {
            int piv = -1;
            for (int row = col; row < m; ++row)
                if (!M[std::size_t(row)][std::size_t(col)].is_zero()) { piv = row; break; }
            if (piv < 0) throw std::domain_error("Cyclo: singular inverse system");
            std::swap(M[std::size_t(col)], M[std::size_t(piv)]);
            std::swap(rhs[std::size_t(col)], rhs[std::size_t(piv)]);
            Rational p = M[std::size_t(col)][std::size_t(col)];
            for (int row = 0; row < m; ++row) {
                if (row == col) continue;
                Rational f = M[std::size_t(row)][std::size_t(col)] / p;
                if (f.is_zero()) continue;
                for (int k = col; k < m; ++k)
                    M[std::size_t(row)][std::size_t(k)] -= f * M[std::size_t(col)][std::size_t(k)];
                rhs[std::size_t(row)] -= f * rhs[std::size_t(col)];
            }
        }
        (void)perm;
        Cyclo r(n_);
        for (int k = 0; k < m; ++k)
            r.c_[std::size_t(k)] = rhs[std::size_t(k)] / M[std::size_t(k)][std::size_t(k)];
        return r;
    }

    Cyclo pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclo acc = integer(n_, 1);
        Cyclo base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    // |z|^2 as an exact (real) field element.
    Cyclo abs2() const { return *this * conj(); }

    // z + conj(z) = 2*Re(z), a real-subfield element.
    Cyclo twice_re() const { return *this + conj(); }

    bool is_real() const { return *this == conj(); }

    // Exact sign of a real-subfield element. The real subfields are
    // Q (n=4), Q(sqrt2) (n=8), Q(tau) (n=5); sign reduces to integer
    // comparisons against the square of the irrationality.
    int sign_real() const {
        if (!is_real()) throw std::domain_error("Cyclo: sign_real on non-real element");
        switch (n_) {
        case 4:
            return c_[0].sign();
        case 8: {
            // z = a + b*sqrt(2) with a = c0, b = c1 (c2 = 0, c3 = -c1).
            return sign_quadratic(c_[0], c_[1], 2);
        }
        default: {
            // z = c0 + c2*(zeta^2+zeta^3) = c0 - c2*tau,
            // tau = (1+sqrt5)/2: z = (c0 - c2/2) - (c2/2)*sqrt(5).
            Rational a = c_[0] - c_[2] / Rational(2);
            Rational b = -(c_[2] / Rational(2));
            return sign_quadratic(a, b, 5);
        }
        }
    }

    // Exact sign of Im(z): (z - conj z) is purely imaginary; multiplying by
    // zeta_n - zeta_n^(n-1) = 2i*sin(2pi/n) (positive imaginary part) lands
    // in the real subfield with the sign of -Im flipped.
    int sign_im() const {
        Cyclo u = *this - conj();
        if (u.is_zero()) return 0;
        Cyclo v = zeta(n_, 1) - zeta(n_, n_ - 1);
        return -((u * v).sign_real());
    }

    int sign_re() const { return twice_re().sign_real(); }

    std::complex<double> embed() const {
        const double ang = 2.0 * M_PI / double(n_);
        const std::complex<double> z(std::cos(ang), std::sin(ang));
        std::complex<double> acc(0.0, 0.0);
        for (int k = phi(n_) - 1; k >= 0; --k)
            acc = acc * z + std::complex<double>(c_[std::size_t(k)].to_double(), 0.0);
        return acc;
    }

    double abs_embed() const { return std::sqrt(std::max(0.0, abs2().embed().real())); }

    // Text form "n:[c0,c1,...]" with phi(n) rational coefficients.
    std::string str() const {
        std::ostringstream os;
        os << n_ << ":[";
        for (int k = 0; k < phi(n_); ++k) {
            if (k) os << ",";
            os << c_[std::size_t(k)].str();
        }
        os << "]";
        return os.str();
    }

    static Cyclo parse(const std::string& s) {
        std::size_t colon = s.find(':');
        if (colon == std::string::npos || s.size() < colon + 3 ||
            s[colon + 1] != '[' || s.back() != ']')
            throw std::invalid_argument("Cyclo: cannot parse '" + s + "'");
        int n = 0;
        try {
            n = std::stoi(s.substr(0, colon));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("Cyclo: cannot parse index in '" + s + "'");
        }
        Cyclo r(n);
        std::string body = s.substr(colon + 2, s.size() - colon - 3);
        std::istringstream is(body);
        std::string item;
        int k = 0;
        while (std::getline(is, item, ',')) {
            if (k >= phi(n)) throw std::invalid_argument("Cyclo: too many coefficients");
            r.c_[std::size_t(k++)] = Rational::parse(item);
        }
        if (k != phi(n)) throw std::invalid_argument("Cyclo: wrong coefficient count");
        return r;
    }

    std::size_t hash() const {
        std::size_t h = std::hash<int>()(n_);
        for (int k = 0; k < phi(n_); ++k)
            h = h * 1000003u ^ c_[std::size_t(k)].hash();
        return h;
    }

    // Total syntactic order (field index, then coefficient-lexicographic);
    // used for canonical forms and deterministic orderings, not magnitude.
    bool lex_less(const Cyclo& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        for (int k = 0; k < phi(n_); ++k) {
            if (c_[std::size_t(k)] != o.c_[std::size_t(k)])
                return c_[std::size_t(k)] < o.c_[std::size_t(k)];
        }
        return false;
    }

private:
    static int check_index(int n) {
        if (n != 4 && n != 5 && n != 8)
            throw std::invalid_argument("Cyclo: index must be 4, 5 or 8");
        return n;
    }

    void require_same_field(const Cyclo& o) const {
        if (n_ != o.n_)
            throw std::invalid_argument("Cyclo: cyclotomic index mismatch");
    }

    // sign of a + b*sqrt(d), d in {2, 5}, exact.
    static int sign_quadratic(const Rational& a, const Rational& b, int d) {
        int sa = a.sign(), sb = b.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // Mixed signs: compare a^2 vs d*b^2.
        Rational lhs = a * a, rhs = b * b * Rational(d);
        if (lhs == rhs) return 0; // only possible when a = b = 0
        return (lhs > rhs) ? sa : sb;
    }

    // Adds v * zeta_n^k (any 0 <= k < n) in reduced form.
    void add_power(int k, const Rational& v) {
        const int m = phi(n_);
        if (k < m) { c_[std::size_t(k)] += v; return; }
        switch (n_) {
        case 4: // zeta^2 = -1, zeta^3 = -zeta
            c_[std::size_t(k - 2)] -= v;
            break;
        case 8: // zeta^k = -zeta^(k-4)
            c_[std::size_t(k - 4)] -= v;
            break;
        case 5: // zeta^4 = -(1+zeta+zeta^2+zeta^3)
            for (int j = 0; j < 4; ++j) c_[std::size_t(j)] -= v;
            break;
        }
    }

    int n_;
    std::array<Rational, 4> c_;
};

inline Cyclo operator*(const Rational& s, const Cyclo& z) { return z * s; }

inline std::ostream& operator<<(std::ostream& os, const Cyclo& z) { return os << z.str(); }

struct CycloHash {
    std::size_t operator()(const Cyclo& z) const { return z.hash(); }
};

} // namespace aperiodica
