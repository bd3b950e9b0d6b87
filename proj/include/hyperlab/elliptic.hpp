#pragma once

#include <complex>
#include <stdexcept>

namespace hyperlab {

// Modulus pair with k^2 + k'^2 = 1. k' is computed as sqrt((1-k)(1+k)) to
// protect values near k = 1, where the degeneration tests live.
struct EllipticModulus {
    double k;
    double kprime;

    explicit EllipticModulus(double k_);
    static EllipticModulus from_k2(double k2);
};

struct JacobiTriple {
    std::complex<double> sn, cn, dn;
};

struct JacobiTripleReal {
    double sn, cn, dn;
};

// Complete elliptic integral K(k) by the arithmetic-geometric mean.
// Throws std::domain_error at k = 1 (logarithmic divergence).
double complete_K(const EllipticModulus& m);

// sn, cn, dn at real argument via the AGM/amplitude recursion.
JacobiTripleReal jacobi_real(double u, const EllipticModulus& m);

// Independent evaluation path: descending Landen recursion on function
// values. Used as the cross-check oracle against jacobi_real.
JacobiTripleReal jacobi_landen(double u, const EllipticModulus& m);

enum class JacobiShift {
    IKPrime,   // u -> u + i K'(k): complex triple, pole at sn(u,k) = 0
    KReal,     // u -> u + K(k): the real quarter-period shift of the given
               // modulus (for the complementary family pass k' as the modulus)
    TwoKReal,  // u -> u + 2K(k)
};

// Triple at the shifted argument, via the standard shift identities.
JacobiTriple jacobi_shifted(double u, JacobiShift shift, const EllipticModulus& m);

}  // namespace hyperlab
