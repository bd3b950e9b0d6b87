#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hyperlab {

// Exact rational over int64 with __int128 intermediates. Throws on overflow
// instead of wrapping; operator degrees in this project stay small enough
// that this never fires in practice.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }

    double to_double() const { return (double)num_ / (double)den_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lim = INT64_MAX;
        if (n > lim || n < -lim || d > lim)
            throw std::overflow_error("Rational: overflow");
        Rational r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void normalize() { *this = make(num_, den_); }

    long long num_, den_;
};

// Element of the quadratic field Q(sqrt 2): r + s*sqrt(2). The rotated
// operator variants (quarter-turn conjugates, the ln(1/sqrt2) hyperbolic
// rotation) all live here, so operator-level checks stay exact.
class Coef {
public:
    Coef() {}
    Coef(long long n) : r_(n) {}
    Coef(const Rational& r) : r_(r) {}
    Coef(const Rational& r, const Rational& s) : r_(r), s_(s) {}

    static Coef sqrt2(const Rational& mult = Rational(1)) { return Coef(Rational(0), mult); }

    const Rational& rat() const { return r_; }
    const Rational& irr() const { return s_; }
    bool is_zero() const { return r_.is_zero() && s_.is_zero(); }
    bool is_rational() const { return s_.is_zero(); }

    friend Coef operator+(const Coef& a, const Coef& b) { return Coef(a.r_ + b.r_, a.s_ + b.s_); }
    friend Coef operator-(const Coef& a, const Coef& b) { return Coef(a.r_ - b.r_, a.s_ - b.s_); }
    friend Coef operator*(const Coef& a, const Coef& b) {
        return Coef(a.r_ * b.r_ + Rational(2) * a.s_ * b.s_, a.r_ * b.s_ + a.s_ * b.r_);
    }
    friend Coef operator/(const Coef& a, const Coef& b) {
        Rational nrm = b.r_ * b.r_ - Rational(2) * b.s_ * b.s_;
        if (nrm.is_zero()) throw std::domain_error("Coef: division by zero");
        Coef conj(b.r_, -b.s_);
        Coef t = a * conj;
        return Coef(t.r_ / nrm, t.s_ / nrm);
    }
    Coef operator-() const { return Coef(-r_, -s_); }

    Coef& operator+=(const Coef& o) { return *this = *this + o; }
    Coef& operator-=(const Coef& o) { return *this = *this - o; }
    Coef& operator*=(const Coef& o) { return *this = *this * o; }

    friend bool operator==(const Coef& a, const Coef& b) { return a.r_ == b.r_ && a.s_ == b.s_; }
    friend bool operator!=(const Coef& a, const Coef& b) { return !(a == b); }

    double to_double() const { return r_.to_double() + s_.to_double() * 1.4142135623730950488; }

    friend std::ostream& operator<<(std::ostream& os, const Coef& c) {
        if (c.s_.is_zero()) return os << c.r_;
        if (c.r_.is_zero()) return os << c.s_ << "*sqrt2";
        return os << '(' << c.r_ << '+' << c.s_ << "*sqrt2)";
    }

private:
    Rational r_, s_;
};

}  // namespace hyperlab
