#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <ostream>

#include "hyperlab/rational.hpp"

namespace hyperlab {

// Variable slots. Slots 0..2 are coordinates (their meaning depends on the
// generator space: ambient (u0,u1,u2), Beltrami H2 (x1,x2,-), Beltrami
// one-sheeted (y0,y1,-), flat planes likewise). Slot 3 is the formal
// contraction parameter eps = 1/R; it is never differentiated.
constexpr int kNumVars = 4;
constexpr int kEps = 3;

using Monomial = std::array<std::uint8_t, kNumVars>;

// Sparse multivariate polynomial over Q(sqrt2), canonically ordered by the
// monomial map; zero coefficients are never stored, so equality is structural.
class MultiPoly {
public:
    MultiPoly() {}
    MultiPoly(const Coef& c) {
        if (!c.is_zero()) terms_[Monomial{0, 0, 0, 0}] = c;
    }
    MultiPoly(long long n) : MultiPoly(Coef(n)) {}

    static MultiPoly var(int i, int pow = 1) {
        MultiPoly p;
        Monomial m{0, 0, 0, 0};
        m[i] = (std::uint8_t)pow;
        p.terms_[m] = Coef(1);
        return p;
    }
    static MultiPoly eps(int pow = 1) { return var(kEps, pow); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Coef>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Coef& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                for (int i = 0; i < kNumVars; ++i) m[i] = (std::uint8_t)(ma[i] + mb[i]);
                r.add_term(m, ca * cb);
            }
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    friend MultiPoly operator*(const Coef& c, const MultiPoly& p) { return MultiPoly(c) * p; }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly derivative(int var) const {
        MultiPoly r;
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d = m;
            d[var] -= 1;
            r.add_term(d, Coef(Rational((long long)m[var])) * c);
        }
        return r;
    }

    // eps <- 0: keeps only eps-free terms.
    MultiPoly at_eps_zero() const {
        MultiPoly r;
        for (const auto& [m, c] : terms_)
            if (m[kEps] == 0) r.terms_[m] = c;
        return r;
    }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) {
            (void)c;
            int t = 0;
            for (int i = 0; i < kNumVars; ++i) t += m[i];
            if (t > d) d = t;
        }
        return d;
    }

    double eval(const std::array<double, kNumVars>& x) const {
        double s = 0;
        for (const auto& [m, c] : terms_) {
            double t = c.to_double();
            for (int i = 0; i < kNumVars; ++i)
                for (int k = 0; k < m[i]; ++k) t *= x[i];
            s += t;
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
        if (p.terms_.empty()) return os << '0';
        static const char* names[kNumVars] = {"v0", "v1", "v2", "e"};
        bool first = true;
        for (const auto& [m, c] : p.terms_) {
            if (!first) os << " + ";
            first = false;
            os << c;
            for (int i = 0; i < kNumVars; ++i) {
                if (m[i] == 0) continue;
                os << '*' << names[i];
                if (m[i] > 1) os << '^' << (int)m[i];
            }
        }
        return os;
    }

private:
    std::map<Monomial, Coef> terms_;
};

}  // namespace hyperlab
