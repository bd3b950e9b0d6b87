#pragma once

#include <array>
#include <map>
#include <ostream>
#include <stdexcept>

#include "hyperlab/multipoly.hpp"

namespace hyperlab {

// Derivative multi-index over the three coordinate slots.
using DIdx = std::array<std::uint8_t, 3>;

inline int didx_order(const DIdx& d) { return d[0] + d[1] + d[2]; }

// First-order operator c0*d/dv0 + c1*d/dv1 + c2*d/dv2 with polynomial
// coefficients. Closed under commutator.
struct PolyVectorField {
    std::array<MultiPoly, 3> c;

    MultiPoly apply(const MultiPoly& f) const {
        MultiPoly r;
        for (int i = 0; i < 3; ++i) r += c[i] * f.derivative(i);
        return r;
    }

    friend PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
        PolyVectorField r;
        for (int i = 0; i < 3; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) {
        PolyVectorField r;
        for (int i = 0; i < 3; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend PolyVectorField operator*(const MultiPoly& f, const PolyVectorField& v) {
        PolyVectorField r;
        for (int i = 0; i < 3; ++i) r.c[i] = f * v.c[i];
        return r;
    }
    PolyVectorField operator-() const {
        PolyVectorField r;
        for (int i = 0; i < 3; ++i) r.c[i] = -c[i];
        return r;
    }
    friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) { return a.c == b.c; }

    bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
};

// [x,y] acting on functions: (x.y - y.x)_i = x(y_i) - y(x_i).
inline PolyVectorField vf_commutator(const PolyVectorField& x, const PolyVectorField& y) {
    PolyVectorField r;
    for (int i = 0; i < 3; ++i) r.c[i] = x.apply(y.c[i]) - y.apply(x.c[i]);
    return r;
}

// Differential operator in normal form: sum of coeff(v) * d^alpha with the
// derivatives rightmost and multi-indices map-ordered, so equality is
// structural.
class DiffOperator {
public:
    DiffOperator() {}
    DiffOperator(const PolyVectorField& v) {
        add_term(DIdx{1, 0, 0}, v.c[0]);
        add_term(DIdx{0, 1, 0}, v.c[1]);
        add_term(DIdx{0, 0, 1}, v.c[2]);
    }
    explicit DiffOperator(const MultiPoly& f) { add_term(DIdx{0, 0, 0}, f); }

    static DiffOperator identity() { return DiffOperator(MultiPoly(1)); }

    const std::map<DIdx, MultiPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int order() const {
        int d = 0;
        for (const auto& [a, f] : terms_) {
            (void)f;
            if (didx_order(a) > d) d = didx_order(a);
        }
        return d;
    }

    void add_term(const DIdx& a, const MultiPoly& f) {
        if (f.is_zero()) return;
        auto it = terms_.find(a);
        if (it == terms_.end()) {
            terms_[a] = f;
        } else {
            it->second += f;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
        DiffOperator r = a;
        for (const auto& [d, f] : b.terms_) r.add_term(d, f);
        return r;
    }
    friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) {
        DiffOperator r = a;
        for (const auto& [d, f] : b.terms_) r.add_term(d, -f);
        return r;
    }
    DiffOperator operator-() const {
        DiffOperator r;
        for (const auto& [d, f] : terms_) r.terms_[d] = -f;
        return r;
    }
    friend DiffOperator operator*(const MultiPoly& f, const DiffOperator& op) {
        DiffOperator r;
        for (const auto& [d, g] : op.terms_) r.add_term(d, f * g);
        return r;
    }
    friend DiffOperator operator*(const Coef& c, const DiffOperator& op) {
        return MultiPoly(c) * op;
    }

    DiffOperator& operator+=(const DiffOperator& o) { return *this = *this + o; }
    DiffOperator& operator-=(const DiffOperator& o) { return *this = *this - o; }

    friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const DiffOperator& a, const DiffOperator& b) { return !(a == b); }

    DiffOperator at_eps_zero() const {
        DiffOperator r;
        for (const auto& [d, f] : terms_) {
            MultiPoly g = f.at_eps_zero();
            if (!g.is_zero()) r.terms_[d] = g;
        }
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const DiffOperator& op) {
        if (op.terms_.empty()) return os << '0';
        bool first = true;
        for (const auto& [d, f] : op.terms_) {
            if (!first) os << "  +  ";
            first = false;
            os << '[' << f << ']';
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < d[i]; ++k) os << " D" << i;
        }
        return os;
    }

private:
    std::map<DIdx, MultiPoly> terms_;
};

// a o b via Leibniz: (f d^a)(g d^b) = f * sum_{c<=a} binom(a,c) d^{a-c}(g) d^{c+b}.
DiffOperator op_compose(const DiffOperator& a, const DiffOperator& b);

// [a,b] = a o b - b o a. For order-2 inputs the order-4 part of the two
// compositions cancels exactly; asserted here.
DiffOperator op_commutator(const DiffOperator& a, const DiffOperator& b);

// {a,b} = a o b + b o a.
inline DiffOperator op_anticommutator(const DiffOperator& a, const DiffOperator& b) {
    return op_compose(a, b) + op_compose(b, a);
}

}  // namespace hyperlab
