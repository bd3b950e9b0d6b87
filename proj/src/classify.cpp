#include "hyperlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hyperlab {

namespace {

// Branch predicates are decided on forms normalized to unit max-entry.
// Absolute values below kZeroTol are treated as exact zeros; values between
// kZeroTol and kGrayTol are ambiguous and rejected.
constexpr double kZeroTol = 1e-12;

bool is_zero(double x) { return std::fabs(x) <= kZeroTol; }

struct Reducer {
    SecondOrderForm m;
    AutomorphismWord word;

    void push(const Move& mv) {
        m = apply_move(m, mv);
        word.push_back(mv);
    }
    void rotK1(double t) { push({Move::RotK1, t, 0}); }
    void rotK2(double t) { push({Move::RotK2, t, 0}); }
    void rotL(double t) { push({Move::RotL, t, 0}); }
    void reflect(int i) {
        push({i == 0 ? Move::Reflect0 : (i == 1 ? Move::Reflect1 : Move::Reflect2), 0, 0});
    }
    void shift(double a1, double a2) { push({Move::CasimirShift, a1, a2}); }
    void scale(double s) { push({Move::Scale, s, 0}); }
};

// Real roots of det(M - mu*Ac) = mu^3 - I1 mu^2 - I2 mu + I3.
//
// Multiple roots matter: I2 of the shifted form equals -p'(mu), so a merely
// sqrt(eps)-accurate double root would poison every later branch predicate.
// Near-double roots are therefore re-polished on p' (where they are simple)
// and a near-triple root is taken as I1/3 outright.
std::vector<double> pencil_real_roots(const SecondOrderForm& m) {
    double b = -m.I1(), c = -m.I2(), d = m.I3();
    auto p = [&](double x) { return ((x + b) * x + c) * x + d; };
    auto dp = [&](double x) { return (3 * x + 2 * b) * x + c; };

    double scale0 = std::max({1.0, std::fabs(b), std::fabs(c), std::fabs(d)});
    {
        // near-triple root: p ~ (mu - I1/3)^3, detected on the coefficients
        double t = -b / 3.0;
        if (std::fabs(c - 3 * t * t) < 1e-9 * scale0 * scale0 &&
            std::fabs(d + t * t * t) < 1e-9 * scale0 * scale0 * scale0)
            return {t};
    }

    std::vector<double> roots;
    double q = (3 * c - b * b) / 9.0;
    double r = (9 * b * c - 27 * d - 2 * b * b * b) / 54.0;
    double disc = q * q * q + r * r;
    if (disc > 0) {
        double s = std::cbrt(r + std::sqrt(disc));
        double t = std::cbrt(r - std::sqrt(disc));
        roots.push_back(s + t - b / 3.0);
    } else {
        double rho = std::sqrt(std::max(0.0, -q * q * q));
        double theta = std::acos(std::clamp(rho == 0 ? 1.0 : r / rho, -1.0, 1.0));
        double mag = 2 * std::sqrt(std::max(0.0, -q));
        for (int k = 0; k < 3; ++k)
            roots.push_back(mag * std::cos((theta + 2 * M_PI * k) / 3.0) - b / 3.0);
    }
    for (double& x : roots)
        for (int it = 0; it < 6; ++it) {
            double der = dp(x);
            if (der != 0) x -= p(x) / der;
        }

    double scale = std::max({1.0, std::fabs(b), std::fabs(c), std::fabs(d)});

    // stationary points of p that are (near-)double roots; p'-polished these
    // are accurate to full precision and take precedence over the nearby
    // closed-form values
    std::vector<double> uniq;
    double sdisc = 4 * b * b - 12 * c;
    if (sdisc >= 0) {
        for (double mu : {(-2 * b + std::sqrt(sdisc)) / 6, (-2 * b - std::sqrt(sdisc)) / 6}) {
            if (std::fabs(p(mu)) < 1e-9 * scale * scale * scale) {
                for (int it = 0; it < 6; ++it) {
                    double der = 6 * mu + 2 * b;
                    if (der != 0) mu -= dp(mu) / der;
                }
                bool dup = false;
                for (double u : uniq) dup = dup || std::fabs(mu - u) < 1e-5 * scale;
                if (!dup) uniq.push_back(mu);
            }
        }
    }
    // Closed-form roots must survive a residual check: near a double root the
    // closed form scatters and Newton stalls, leaving quasi-roots with large
    // |p|; those are covered by the stationary candidates above instead.
    for (double x : roots) {
        if (std::fabs(p(x)) > 1e-12 * scale * scale * scale) continue;
        bool dup = false;
        for (double u : uniq) dup = dup || std::fabs(x - u) < 1e-5 * scale;
        if (!dup) uniq.push_back(x);
    }
    if (uniq.empty()) {
        // fall back to the best closed-form value
        double best = roots[0];
        for (double x : roots)
            if (std::fabs(p(x)) < std::fabs(p(best))) best = x;
        uniq.push_back(best);
    }
    std::sort(uniq.begin(), uniq.end());
    return uniq;
}

// Applies the reflection (or none) minimizing a pattern residual.
template <typename F>
void best_reflection(Reducer& red, F residual) {
    int best = -1;
    double best_r = residual(red.m);
    for (int i = 0; i < 3; ++i) {
        Move mv{i == 0 ? Move::Reflect0 : (i == 1 ? Move::Reflect1 : Move::Reflect2), 0, 0};
        double r = residual(apply_move(red.m, mv));
        if (r < best_r) {
            best_r = r;
            best = i;
        }
    }
    if (best >= 0) red.reflect(best);
}

SecondOrderResult finish(Reducer& red, OrbitTag tag, double param) {
    SecondOrderResult res;
    res.cls = {tag, param};
    res.word = std::move(red.word);
    res.canonical = red.m;
    return res;
}

// EP/HP carry no orbit modulus: [K2, K1+L] = K1+L, so a K2-rotation rescales
// the (K1+L)^2 part at will. Fold gamma to 1 so the result is deterministic.
SecondOrderResult finish_parabolic_family(Reducer& red, double g) {
    OrbitTag tag = g > 0 ? OrbitTag::EP : OrbitTag::HP;
    double ag = std::fabs(g);
    if (std::fabs(ag - 1) > 1e-14) {
        double t = 0.5 * std::log(ag);
        red.rotK2(t);
        red.scale(std::exp(-2 * t));
    }
    red.m = SecondOrderForm{1, 0, g > 0 ? 1.0 : -1.0, 1, 0, 1};
    return finish(red, tag, 1.0);
}

// Landing form (0 0 0; 0 cbar 0; 0 0 1): SPH / E / H, with the interval
// (-1,0) folded back into E by a Casimir shift.
SecondOrderResult branch_diag_cf(Reducer& red) {
    double cbar = red.m.c;
    // cbar is a quotient of reduced entries; its noise floor exceeds the raw
    // predicate band, so the SPH decision gets a wider threshold.
    if (std::fabs(cbar) <= 1e-10) {
        red.m = SecondOrderForm{0, 0, 0, 0, 0, 1};
        return finish(red, OrbitTag::SPH, 0);
    }
    if (cbar > 0) return finish(red, OrbitTag::E, cbar);
    if (is_zero(cbar + 1)) throw NumericalInstability("cbar at -1");
    if (cbar < -1) {
        double s2a = -1.0 / cbar;  // sin^2 alpha in (0,1)
        red.scale(-s2a);           // (0, 1, -s2a)
        if (s2a > 0.5) {
            // alias sin^2 <-> 1-sin^2: Casimir shift to -K1^2 + (1-s)L^2,
            // quarter turn and sign flip restore the canonical slotting.
            red.shift(1, -1);
            red.rotL(M_PI / 2);
            red.scale(-1);
            red.m = SecondOrderForm{0, 0, 1, 0, 0, -(1 - s2a)};
            return finish(red, OrbitTag::H, 1 - s2a);
        }
        red.m = SecondOrderForm{0, 0, 1, 0, 0, -s2a};
        return finish(red, OrbitTag::H, s2a);
    }
    // -1 < cbar < 0: shift into the elliptic family; sinh^2 g = -cbar/(1+cbar)
    double g2 = -cbar / (1 + cbar);
    red.rotL(M_PI / 2);             // diag(cbar, 0, 1)
    red.shift(1 / (1 + cbar), g2);  // slot a becomes 0, slot f stays 1
    red.m = SecondOrderForm{0, 0, g2, 0, 0, 1};
    return finish(red, OrbitTag::E, g2);
}

// Form (a 0 d; 0 0 0; d 0 f): the J = (a+f)^2 - 4d^2 analysis.
SecondOrderResult branch_m2(Reducer& red) {
    red.m.b = red.m.c = red.m.e = 0;
    double scl = std::max(1.0, red.m.max_abs());
    double J = ((red.m.a + red.m.f) * (red.m.a + red.m.f) - 4 * red.m.d * red.m.d) / (scl * scl);

    if (!is_zero(J) && J > 0) {
        if (std::fabs(red.m.d) > 1e-15 * scl) {
            double t = 0.5 * std::atanh(-2 * red.m.d / (red.m.a + red.m.f));
            red.rotK2(t);
        }
        red.m.d = 0;
        red.rotL(M_PI / 2);  // diag(a,0,f) -> diag(0,a,f)
        red.m.b = red.m.d = red.m.e = 0;
        double nrm = std::max(1.0, red.m.max_abs());
        if (is_zero(red.m.f / nrm)) {
            red.scale(1.0 / red.m.c);
            red.m = SecondOrderForm{0, 0, 1, 0, 0, 0};
            return finish(red, OrbitTag::EQ, 0);
        }
        red.scale(1.0 / red.m.f);
        red.m.a = red.m.b = red.m.d = red.m.e = 0;
        red.m.f = 1;
        return branch_diag_cf(red);
    }
    if (is_zero(J)) {
        double nrm = std::max(1.0, red.m.max_abs());
        if (is_zero(red.m.d / nrm)) {
            // a = -f: the Casimir shift lands directly on -K2^2
            red.scale(1.0 / red.m.a);
            red.shift(1, -1);
            red.scale(-1);
            red.m = SecondOrderForm{0, 0, 1, 0, 0, 0};
            return finish(red, OrbitTag::EQ, 0);
        }
        red.scale(1.0 / red.m.d);  // d = 1, |a+f| = 2
        if (red.m.a + red.m.f < 0) {
            red.scale(-1);
            red.reflect(1);  // restore d = +1
        }
        if (is_zero(red.m.I1() / std::max(1.0, red.m.max_abs()))) {
            red.m = SecondOrderForm{1, 0, 0, 1, 0, 1};
            return finish(red, OrbitTag::HO, 0);
        }
        double g = 1 - red.m.a;  // f = 2 - a
        red.shift(1, g);
        red.m = SecondOrderForm{1, 0, g, 1, 0, 1};
        return finish_parabolic_family(red, g);
    }
    // J < 0 (so d != 0): rotate to a = -f, then Casimir-shift onto {K1,L}+cK2^2
    double t = 0.5 * std::atanh(-(red.m.a + red.m.f) / (2 * red.m.d));
    red.rotK2(t);
    red.shift(1 / red.m.d, -red.m.a / red.m.d);
    red.m.a = red.m.f = red.m.b = red.m.e = 0;
    red.m.d = 1;
    if (red.m.c < -kZeroTol) {
        red.reflect(1);  // flips d
        red.scale(-1);   // flips everything: d back to +1, c to -c
    }
    if (std::fabs(red.m.c) <= kZeroTol) red.m.c = 0;
    red.m = SecondOrderForm{0, 0, red.m.c, 1, 0, 0};
    return finish(red, OrbitTag::SH, red.m.c);
}

// Form (a b -a; b c -b; -a -b a): the parabolic-type family.
SecondOrderResult branch_m4(Reducer& red) {
    best_reflection(red, [](const SecondOrderForm& q) {
        return std::fabs(q.d + q.a) + std::fabs(q.e + q.b);
    });
    double nrm = std::max(1.0, red.m.max_abs());
    bool c_nonzero;
    try {
        c_nonzero = !is_zero(red.m.c / nrm);
    } catch (const NumericalInstability&) {
        throw;
    }
    double sigma = c_nonzero ? -red.m.b / red.m.c : -red.m.a / (2 * red.m.b);
    if (std::fabs(sigma) > 0) {
        double s3 = sigma / std::sqrt(sigma * sigma + 4);
        double a3 = std::asin(std::clamp(s3, -1.0, 1.0));
        double a1 = std::asinh(-sigma * std::sqrt(sigma * sigma + 4) / 2);
        red.rotL(a3);
        red.rotK1(a1);
        red.rotL(a3);
    }
    if (c_nonzero) {
        // (a 0 -a; 0 c 0; -a 0 a)
        red.m.b = red.m.e = 0;
        red.m.d = -red.m.a;
        red.m.f = red.m.a;
        double nn = std::max(1.0, red.m.max_abs());
        if (is_zero(red.m.a / nn) || is_zero(red.m.c / nn))
            throw NumericalInstability("degenerate parabolic-family pivot");
        double g = red.m.c / red.m.a;
        red.scale(1.0 / red.m.a);
        red.reflect(1);  // d: -1 -> +1 (b is zero here)
        red.m = SecondOrderForm{1, 0, g, 1, 0, 1};
        return finish_parabolic_family(red, g);
    }
    // c = 0, b != 0: (0 b 0; b 0 -b; 0 -b 0)
    red.m.a = red.m.c = red.m.d = red.m.f = 0;
    red.scale(1.0 / red.m.b);
    best_reflection(red, [](const SecondOrderForm& q) {
        return std::fabs(q.b - 1) + std::fabs(q.e - 1);
    });
    red.m = SecondOrderForm{0, 1, 0, 0, 1, 0};
    return finish(red, OrbitTag::SCP, 0);
}

}  // namespace

std::string orbit_tag_name(OrbitTag t) {
    switch (t) {
        case OrbitTag::EQ: return "EQ";
        case OrbitTag::SPH: return "SPH";
        case OrbitTag::HO: return "HO";
        case OrbitTag::SCP: return "SCP";
        case OrbitTag::EP: return "EP";
        case OrbitTag::HP: return "HP";
        case OrbitTag::E: return "E";
        case OrbitTag::H: return "H";
        case OrbitTag::SH: return "SH";
        case OrbitTag::CasimirDegenerate: return "CASIMIR-degenerate";
    }
    return "?";
}

std::string first_order_type_name(FirstOrderType t) {
    switch (t) {
        case FirstOrderType::HOType: return "HO-type";
        case FirstOrderType::EQType: return "EQ-type";
        case FirstOrderType::SPHType: return "SPH-type";
    }
    return "?";
}

double SecondOrderForm::I3() const {
    return a * (c * f - e * e) - b * (b * f - d * e) + d * (b * e - c * d);
}

double SecondOrderForm::max_abs() const {
    return std::max({std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d), std::fabs(e),
                     std::fabs(f)});
}

SecondOrderInvariants invariants_second_order(const SecondOrderForm& m) {
    return {m.I1(), m.I2(), m.I3(), m.mA(), m.mB(), m.mC(), m.mD(), m.mE(), m.mF()};
}

double first_order_invariant(const FirstOrderElement& v) {
    return v.a * v.a + v.b * v.b - v.c * v.c;
}

namespace {

// M' = A^T M A
SecondOrderForm conjugate(const SecondOrderForm& m, const double A[3][3]) {
    double M[3][3] = {{m.a, m.b, m.d}, {m.b, m.c, m.e}, {m.d, m.e, m.f}};
    double T[3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) T[i][j] += M[i][k] * A[k][j];
    double R[3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) R[i][j] += A[k][i] * T[k][j];
    return {R[0][0], R[0][1], R[1][1], R[0][2], R[1][2], R[2][2]};
}

}  // namespace

SecondOrderForm apply_move(const SecondOrderForm& m, const Move& mv) {
    switch (mv.kind) {
        case Move::RotK1: {
            double ch = std::cosh(mv.p1), sh = std::sinh(mv.p1);
            double A[3][3] = {{1, 0, 0}, {0, ch, sh}, {0, sh, ch}};
            return conjugate(m, A);
        }
        case Move::RotK2: {
            double ch = std::cosh(mv.p1), sh = std::sinh(mv.p1);
            double A[3][3] = {{ch, 0, sh}, {0, 1, 0}, {sh, 0, ch}};
            return conjugate(m, A);
        }
        case Move::RotL: {
            double cs = std::cos(mv.p1), sn = std::sin(mv.p1);
            double A[3][3] = {{cs, -sn, 0}, {sn, cs, 0}, {0, 0, 1}};
            return conjugate(m, A);
        }
        case Move::Reflect0: return {m.a, m.b, m.c, -m.d, -m.e, m.f};
        case Move::Reflect1: return {m.a, -m.b, m.c, -m.d, m.e, m.f};
        case Move::Reflect2: return {m.a, -m.b, m.c, m.d, -m.e, m.f};
        case Move::CasimirShift:
            if (mv.p1 == 0) throw std::invalid_argument("CasimirShift: alpha1 must be nonzero");
            return {mv.p1 * m.a + mv.p2, mv.p1 * m.b, mv.p1 * m.c + mv.p2,
                    mv.p1 * m.d, mv.p1 * m.e, mv.p1 * m.f - mv.p2};
        case Move::Scale:
            if (mv.p1 == 0) throw std::invalid_argument("Scale: factor must be nonzero");
            return {mv.p1 * m.a, mv.p1 * m.b, mv.p1 * m.c, mv.p1 * m.d, mv.p1 * m.e, mv.p1 * m.f};
    }
    return m;
}

SecondOrderForm apply_automorphism(const SecondOrderForm& m, const AutomorphismWord& w) {
    SecondOrderForm r = m;
    for (const Move& mv : w) r = apply_move(r, mv);
    return r;
}

FirstOrderElement apply_move(const FirstOrderElement& v, const Move& mv) {
    switch (mv.kind) {
        case Move::RotK1: {
            double ch = std::cosh(mv.p1), sh = std::sinh(mv.p1);
            return {v.a, v.b * ch + v.c * sh, v.b * sh + v.c * ch};
        }
        case Move::RotK2: {
            double ch = std::cosh(mv.p1), sh = std::sinh(mv.p1);
            return {v.a * ch + v.c * sh, v.b, v.a * sh + v.c * ch};
        }
        case Move::RotL: {
            double cs = std::cos(mv.p1), sn = std::sin(mv.p1);
            return {v.a * cs + v.b * sn, -v.a * sn + v.b * cs, v.c};
        }
        case Move::Reflect0: return {-v.a, -v.b, v.c};
        case Move::Reflect1: return {v.a, -v.b, -v.c};
        case Move::Reflect2: return {-v.a, v.b, -v.c};
        case Move::Scale:
            if (mv.p1 == 0) throw std::invalid_argument("Scale: factor must be nonzero");
            return {mv.p1 * v.a, mv.p1 * v.b, mv.p1 * v.c};
        case Move::CasimirShift:
            throw std::invalid_argument("CasimirShift does not act on first-order elements");
    }
    return v;
}

FirstOrderElement apply_automorphism(const FirstOrderElement& v, const AutomorphismWord& w) {
    FirstOrderElement r = v;
    for (const Move& mv : w) r = apply_move(r, mv);
    return r;
}

FirstOrderResult classify_first_order(const FirstOrderElement& v0) {
    double nrm = std::max({std::fabs(v0.a), std::fabs(v0.b), std::fabs(v0.c)});
    if (nrm == 0) throw std::invalid_argument("classify_first_order: zero element");

    struct Red {
        FirstOrderElement v;
        AutomorphismWord word;
        void push(Move mv) {
            v = apply_move(v, mv);
            word.push_back(mv);
        }
    } red{{v0.a, v0.b, v0.c}, {}};
    red.push({Move::Scale, 1.0 / nrm, 0});

    double I = first_order_invariant(red.v);
    if (std::fabs(I) <= 1e-12) {
        // null vector -> K1 + L
        if (std::fabs(red.v.a) <= 1e-13) red.push({Move::RotL, M_PI / 4, 0});
        red.push({Move::RotK1, -std::atanh(red.v.b / red.v.c), 0});
        red.push({Move::Scale, 1.0 / red.v.a, 0});
        if (red.v.c < 0) {
            red.push({Move::Reflect0, 0, 0});
            red.push({Move::Scale, -1, 0});
        }
        red.v = {1, 0, 1};
        return {FirstOrderType::HOType, std::move(red.word), red.v};
    }
    if (I > 0) {
        // spacelike -> K2
        if (std::fabs(red.v.a) > 1e-13) red.push({Move::RotL, -std::atan2(red.v.a, red.v.b), 0});
        if (std::fabs(red.v.c) > 1e-13)
            red.push({Move::RotK1, -std::atanh(red.v.c / red.v.b), 0});
        red.push({Move::Scale, 1.0 / red.v.b, 0});
        red.v = {0, 1, 0};
        return {FirstOrderType::EQType, std::move(red.word), red.v};
    }
    // timelike -> L
    if (std::fabs(red.v.a) > 1e-13) red.push({Move::RotL, -std::atan2(red.v.a, red.v.b), 0});
    if (std::fabs(red.v.b) > 1e-13) red.push({Move::RotK1, -std::atanh(red.v.b / red.v.c), 0});
    red.push({Move::Scale, 1.0 / red.v.c, 0});
    red.v = {0, 0, 1};
    return {FirstOrderType::SPHType, std::move(red.word), red.v};
}

SecondOrderResult classify_second_order(const SecondOrderForm& m0) {
    double nrm = m0.max_abs();
    if (nrm == 0) return {{OrbitTag::CasimirDegenerate, 0}, {}, {}};
    {
        double al = (m0.a + m0.c - m0.f) / 3.0;
        SecondOrderForm r{m0.a - al, m0.b, m0.c - al, m0.d, m0.e, m0.f + al};
        if (r.max_abs() <= 1e-12 * nrm) return {{OrbitTag::CasimirDegenerate, 0}, {}, m0};
    }

    Reducer red{m0, {}};
    red.scale(1.0 / nrm);

    // Casimir-shift onto the I3 = 0 stratum, smallest-|mu| real root. Even a
    // formally tiny I3 is shifted away: an input offset beta from the stratum
    // perturbs I2 by O(beta^2), so skipping small shifts would poison the
    // branch predicates downstream.
    {
        auto roots = pencil_real_roots(red.m);
        double mu = roots[0];
        for (double r : roots)
            if (std::fabs(r) < std::fabs(mu) - 1e-14) mu = r;
        if (mu != 0) red.shift(1, -mu);
        if (red.m.max_abs() > 1) red.scale(1.0 / red.m.max_abs());
    }

    // Rotate the minor B away, then prefer the gauge with minor A = 0.
    // Under an element rotation by theta the plain minor matrix rotates by
    // -theta (adjugate of the inverse), hence the reversed difference below.
    {
        double A = red.m.mA(), B = red.m.mB(), C = red.m.mC();
        if (std::fabs(B) > 1e-15) red.rotL(0.5 * std::atan2(2 * B, C - A));
        if (std::fabs(red.m.mA()) > std::fabs(red.m.mC())) red.rotL(M_PI / 2);
    }

    double nn = std::max(1.0, red.m.max_abs());
    double A = red.m.mA() / (nn * nn), C = red.m.mC() / (nn * nn), F = red.m.mF() / (nn * nn);
    if (std::fabs(A) > 1e-9) throw NumericalInstability("minor A not eliminated");

    double I2 = red.m.I2() / (nn * nn);
    if (!is_zero(I2)) {
        // kill minor E by a K1-rotation, then CF = 0 decides the form
        double E = red.m.mE();
        if (std::fabs(E) > 1e-15 * nn * nn) {
            double num = red.m.mF() + red.m.mC() - 2 * E;
            double den = red.m.mF() + red.m.mC() + 2 * E;
            if (!(num * den > 0))
                throw NumericalInstability("minor-E rotation parameter undefined");
            double t = 0.25 * std::log(num / den);
            if (std::fabs(t) > 25)
                throw NumericalInstability("minor-E rotation parameter diverging");
            red.rotK1(t);
        }
        double Cc = red.m.mC() / (nn * nn), Ff = red.m.mF() / (nn * nn);
        if (std::fabs(Cc) <= std::fabs(Ff)) {
            if (is_zero(Ff)) throw NumericalInstability("minors C and F both vanish with I2 != 0");
            // diag(a, c, 0) after rotating element b away
            red.m.f = red.m.e = red.m.d = 0;
            if (std::fabs(red.m.b) > 1e-15) {
                red.rotL(0.5 * std::atan2(2 * red.m.b, red.m.a - red.m.c));
                red.m.b = red.m.d = red.m.e = red.m.f = 0;
            }
            red.shift(1.0 / red.m.c, -1);  // diag(a/c - 1, 0, 1)
            red.rotL(M_PI / 2);            // diag(0, abar, 1)
            double cbar = red.m.c / red.m.f;
            red.scale(1.0 / red.m.f);
            red.m = SecondOrderForm{0, 0, cbar, 0, 0, 1};
            return branch_diag_cf(red);
        }
        return branch_m2(red);
    }

    // I2 = 0
    if (is_zero(C) && is_zero(F)) {
        // rank <= 1 stratum: all minors vanish
        if (std::fabs(red.m.b) > 1e-15)
            red.rotL(0.5 * std::atan2(2 * red.m.b, red.m.a - red.m.c));
        if (std::fabs(red.m.a) < std::fabs(red.m.c)) red.rotL(M_PI / 2);
        red.m.b = red.m.c = red.m.e = 0;
        return branch_m2(red);
    }
    // C = F != 0: M3 pattern, quarter turn into M4
    red.rotL(M_PI / 2);
    return branch_m4(red);
}

SecondOrderForm canonical_form(const OrbitClass& cls) {
    switch (cls.tag) {
        case OrbitTag::EQ: return {0, 0, 1, 0, 0, 0};
        case OrbitTag::SPH: return {0, 0, 0, 0, 0, 1};
        case OrbitTag::HO: return {1, 0, 0, 1, 0, 1};
        case OrbitTag::SCP: return {0, 1, 0, 0, 1, 0};
        case OrbitTag::EP:
            if (!(cls.param > 0)) throw std::invalid_argument("EP: gamma must be > 0");
            return {1, 0, cls.param, 1, 0, 1};
        case OrbitTag::HP:
            if (!(cls.param > 0)) throw std::invalid_argument("HP: gamma must be > 0");
            return {1, 0, -cls.param, 1, 0, 1};
        case OrbitTag::E:
            if (!(cls.param > 0)) throw std::invalid_argument("E: sinh^2 beta must be > 0");
            return {0, 0, cls.param, 0, 0, 1};
        case OrbitTag::H:
            if (!(cls.param > 0 && cls.param < 1))
                throw std::invalid_argument("H: sin^2 alpha must lie in (0,1)");
            return {0, 0, 1, 0, 0, -cls.param};
        case OrbitTag::SH: return {0, 0, cls.param, 1, 0, 0};
        case OrbitTag::CasimirDegenerate: return {1, 0, 1, 0, 0, -1};
    }
    throw std::invalid_argument("canonical_form: bad tag");
}

SecondOrderForm random_orbit_sample(const OrbitClass& cls, std::uint64_t seed) {
    SecondOrderForm m = canonical_form(cls);
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 12345);
    std::uniform_real_distribution<double> uni(0, 1);

    int n_rot = 3 + (int)(uni(rng) * 3);
    for (int i = 0; i < n_rot; ++i) {
        int k = (int)(uni(rng) * 3);
        double th = (k == 2) ? (2 * uni(rng) - 1) * M_PI : (2 * uni(rng) - 1);
        Move::Kind kind = (k == 0) ? Move::RotK1 : (k == 1 ? Move::RotK2 : Move::RotL);
        m = apply_move(m, {kind, th, 0});
    }
    if (uni(rng) < 0.5) {
        int r = (int)(uni(rng) * 3);
        m = apply_move(m, {r == 0 ? Move::Reflect0 : (r == 1 ? Move::Reflect1 : Move::Reflect2), 0, 0});
    }
    if (uni(rng) < 0.7) {
        double a1 = (uni(rng) < 0.5 ? -1 : 1) * (0.5 + 1.5 * uni(rng));
        double a2 = 2 * uni(rng) - 1;
        m = apply_move(m, {Move::CasimirShift, a1, a2});
    }
    if (uni(rng) < 0.5) {
        double s = (uni(rng) < 0.5 ? -1 : 1) * (0.5 + 1.5 * uni(rng));
        m = apply_move(m, {Move::Scale, s, 0});
    }
    return m;
}

}  // namespace hyperlab
