#include "hyperlab/elliptic.hpp"

#include <cmath>

namespace hyperlab {

EllipticModulus::EllipticModulus(double k_) : k(k_) {
    if (k < 0 || k > 1) throw std::domain_error("modulus k must lie in [0,1]");
    kprime = std::sqrt((1 - k) * (1 + k));
}

EllipticModulus EllipticModulus::from_k2(double k2) {
    if (k2 < 0 || k2 > 1) throw std::domain_error("k^2 must lie in [0,1]");
    return EllipticModulus(std::sqrt(k2));
}

double complete_K(const EllipticModulus& m) {
    if (m.k == 1 || m.kprime == 0)
        throw std::domain_error("K(k) diverges at k = 1");
    double a = 1.0, b = m.kprime;
    for (int i = 0; i < 60 && std::fabs(a - b) > 1e-17 * a; ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (2 * a);
}

JacobiTripleReal jacobi_real(double u, const EllipticModulus& m) {
    if (m.k < 1e-10) {
        // k -> 0: trigonometric limit with the leading k^2 correction
        double s = std::sin(u), c = std::cos(u);
        double k2 = m.k * m.k;
        return {s - 0.25 * k2 * (u - s * c) * c, c + 0.25 * k2 * (u - s * c) * s,
                1 - 0.5 * k2 * s * s};
    }
    if (m.kprime < 1e-10) {
        // k -> 1: hyperbolic limit
        double t = std::tanh(u), se = 1.0 / std::cosh(u);
        return {t, se, se};
    }

    // AGM scale, then the amplitude back-recursion
    constexpr int kMax = 32;
    double a[kMax], c[kMax];
    double an = 1.0, bn = m.kprime, cn = m.k;
    int n = 0;
    for (;;) {
        a[n] = an;
        c[n] = cn;
        if (std::fabs(cn) <= 1e-17 * an || n == kMax - 1) break;
        double a1 = 0.5 * (an + bn);
        cn = 0.5 * (an - bn);
        bn = std::sqrt(an * bn);
        an = a1;
        ++n;
    }
    double phi = std::ldexp(a[n] * u, n);
    for (int i = n; i >= 1; --i)
        phi = 0.5 * (phi + std::asin(std::fmin(1.0, std::fmax(-1.0, c[i] / a[i] * std::sin(phi)))));

    double sn = std::sin(phi), cnv = std::cos(phi);
    double dn = std::sqrt(std::fmax(0.0, 1 - m.k * m.k * sn * sn));
    return {sn, cnv, dn};
}

JacobiTripleReal jacobi_landen(double u, const EllipticModulus& m) {
    if (m.k < 1e-8) {
        double s = std::sin(u), c = std::cos(u);
        return {s, c, std::sqrt(std::fmax(0.0, 1 - m.k * m.k * s * s))};
    }
    if (m.kprime < 1e-8) {
        double t = std::tanh(u), se = 1.0 / std::cosh(u);
        return {t, se, se};
    }
    // descend k -> k1 = (1 - k')/(1 + k'), quadratically smaller
    double k1 = (1 - m.kprime) / (1 + m.kprime);
    JacobiTripleReal inner = jacobi_landen(u / (1 + k1), EllipticModulus(k1));
    double den = 1 + k1 * inner.sn * inner.sn;
    return {(1 + k1) * inner.sn / den, inner.cn * inner.dn / den,
            (1 - k1 * inner.sn * inner.sn) / den};
}

JacobiTriple jacobi_shifted(double u, JacobiShift shift, const EllipticModulus& m) {
    JacobiTripleReal t = jacobi_real(u, m);
    const std::complex<double> I(0, 1);
    switch (shift) {
        case JacobiShift::IKPrime: {
            if (std::fabs(t.sn) < 1e-300 || m.k == 0)
                throw std::domain_error("pole: sn(u + iK') with sn(u,k) = 0");
            // sn -> 1/(k sn), cn -> -(i/k) dn/sn, dn -> -i cn/sn
            return {std::complex<double>(1.0 / (m.k * t.sn), 0), -I * (t.dn / (m.k * t.sn)),
                    -I * (t.cn / t.sn)};
        }
        case JacobiShift::KReal:
            // sn -> cn/dn, cn -> -k' sn/dn, dn -> k'/dn
            return {std::complex<double>(t.cn / t.dn, 0),
                    std::complex<double>(-m.kprime * t.sn / t.dn, 0),
                    std::complex<double>(m.kprime / t.dn, 0)};
        case JacobiShift::TwoKReal:
            return {std::complex<double>(-t.sn, 0), std::complex<double>(-t.cn, 0),
                    std::complex<double>(t.dn, 0)};
    }
    throw std::logic_error("jacobi_shifted: bad shift");
}

}  // namespace hyperlab
