#include "hyperlab/generators.hpp"

namespace hyperlab {

namespace {

MultiPoly v(int i) { return MultiPoly::var(i); }

PolyVectorField vf(MultiPoly c0, MultiPoly c1, MultiPoly c2) {
    PolyVectorField f;
    f.c[0] = std::move(c0);
    f.c[1] = std::move(c1);
    f.c[2] = std::move(c2);
    return f;
}

}  // namespace

GeneratorBasis build_generators(GenSpace space) {
    MultiPoly zero;
    switch (space) {
        case GenSpace::AmbientH: {
            // K1 = -(u0 d2 + u2 d0), K2 = -(u0 d1 + u1 d0), L = u1 d2 - u2 d1
            PolyVectorField K1 = vf(-v(2), zero, -v(0));
            PolyVectorField K2 = vf(-v(1), -v(0), zero);
            PolyVectorField L = vf(zero, -v(2), v(1));
            return {K1, K2, L};
        }
        case GenSpace::BeltramiH2: {
            // Coordinates (x1, x2) in slots 0,1.
            MultiPoly e2 = MultiPoly::eps(2);
            MultiPoly pi2_0 = -(e2 * v(1) * v(0));          // -e^2 x2 x1
            MultiPoly pi2_1 = MultiPoly(1) - e2 * v(1) * v(1);
            MultiPoly pi1_0 = MultiPoly(1) - e2 * v(0) * v(0);
            MultiPoly pi1_1 = -(e2 * v(0) * v(1));
            PolyVectorField pi2 = vf(pi2_0, pi2_1, zero);   // = -K1/R
            PolyVectorField pi1 = vf(pi1_0, pi1_1, zero);   // = -K2/R
            PolyVectorField L = vf(-v(1), v(0), zero);      // x1 d2 - x2 d1
            return {pi2, pi1, L};
        }
        case GenSpace::BeltramiH1: {
            // Coordinates (y0, y1) in slots 0,1.
            MultiPoly e2 = MultiPoly::eps(2);
            MultiPoly pi0_0 = MultiPoly(1) - e2 * v(0) * v(0);
            MultiPoly pi0_1 = -(e2 * v(0) * v(1));
            MultiPoly pi1_0 = e2 * v(1) * v(0);
            MultiPoly pi1_1 = MultiPoly(1) + e2 * v(1) * v(1);
            PolyVectorField pi0 = vf(pi0_0, pi0_1, zero);   // = -K1/R
            PolyVectorField pi1 = vf(pi1_0, pi1_1, zero);   // = -L/R
            PolyVectorField K2 = vf(-v(1), -v(0), zero);    // -(y0 d1 + y1 d0) = -N
            return {pi0, pi1, K2};
        }
        case GenSpace::FlatE2: {
            PolyVectorField p2 = vf(zero, MultiPoly(1), zero);
            PolyVectorField p1 = vf(MultiPoly(1), zero, zero);
            PolyVectorField mM = vf(-v(1), v(0), zero);  // -M = x1 d2 - x2 d1
            return {p2, p1, mM};
        }
        case GenSpace::FlatE11: {
            PolyVectorField p0 = vf(MultiPoly(1), zero, zero);
            PolyVectorField p1 = vf(zero, MultiPoly(1), zero);
            PolyVectorField mN = vf(-v(1), -v(0), zero);  // -N = -(y0 d1 + y1 d0)
            return {p0, p1, mN};
        }
    }
    throw std::logic_error("build_generators: bad space");
}

std::string operator_class_name(OperatorClass c) {
    switch (c) {
        case OperatorClass::EQ: return "EQ";
        case OperatorClass::SPH: return "SPH";
        case OperatorClass::HO: return "HO";
        case OperatorClass::SCP: return "SCP";
        case OperatorClass::EP: return "EP";
        case OperatorClass::HP: return "HP";
        case OperatorClass::E: return "E";
        case OperatorClass::ERot: return "E-rot";
        case OperatorClass::H: return "H";
        case OperatorClass::SH: return "SH";
        case OperatorClass::HRot: return "H-rot";
        case OperatorClass::SCPRot: return "SCP-rot";
        case OperatorClass::SCPTilde: return "SCP-tilde";
        case OperatorClass::EQPerm: return "EQ-perm";
        case OperatorClass::HOPerm: return "HO-perm";
        case OperatorClass::SHPerm: return "SH-perm";
        case OperatorClass::EPPerm: return "EP-perm";
        case OperatorClass::HPPerm: return "HP-perm";
        case OperatorClass::SCPPerm: return "SCP-perm";
        case OperatorClass::ParabolicII: return "parabolic-II";
    }
    return "?";
}

SymbolMatrix canonical_matrix(OperatorClass cls, const Coef& param) {
    SymbolMatrix m;  // all zero
    const MultiPoly one(1);
    const MultiPoly p(param);
    auto positive = [&](const char* what) {
        if (!(param.to_double() > 0.0))
            throw std::invalid_argument(std::string(what) + " must be > 0");
    };
    switch (cls) {
        case OperatorClass::EQ:
            m.c = one;
            break;
        case OperatorClass::SPH:
            m.f = one;
            break;
        case OperatorClass::HO:  // (K1+L)^2
            m.a = one; m.d = one; m.f = one;
            break;
        case OperatorClass::SCP:  // {K1,K2} + {K2,L}
            m.b = one; m.e = one;
            break;
        case OperatorClass::EP:  // (K1+L)^2 + g K2^2, g > 0
            positive("gamma");
            m.a = one; m.d = one; m.f = one; m.c = p;
            break;
        case OperatorClass::HP:  // (K1+L)^2 - g K2^2, g > 0
            positive("gamma");
            m.a = one; m.d = one; m.f = one; m.c = -p;
            break;
        case OperatorClass::E:  // L^2 + sinh^2(beta) K2^2, sinh^2(beta) > 0
            positive("sinh^2 beta");
            m.f = one; m.c = p;
            break;
        case OperatorClass::ERot: {
            // cosh(2b) L^2 + (1/2) sinh(2b) {K1,L} with sinh^2 b = param:
            // cosh(2b) = 1 + 2*param; the sinh(2b) factor must be supplied
            // exactly, so only param values with sinh(2b) in Q(sqrt2) are
            // accepted (param = 1 gives sinh(2b) = 2*sqrt2 ... no: 2*sqrt2/2).
            positive("sinh^2 beta");
            // sinh 2b = 2 sqrt(param (1+param)). Exact only when that square
            // root lands in Q(sqrt2); param = 1 -> 2 sqrt2.
            if (!(param == Coef(1)))
                throw std::invalid_argument("E-rot: only sinh^2 beta = 1 is exactly representable");
            m.f = MultiPoly(Coef(3));
            m.d = MultiPoly(Coef::sqrt2());  // (1/2) * 2 sqrt2
            break;
        }
        case OperatorClass::H:  // K2^2 - sin^2(alpha) L^2, sin^2 in (0,1)
            if (!(param.to_double() > 0.0) || !(param.to_double() < 1.0))
                throw std::invalid_argument("sin^2 alpha must lie in (0,1)");
            m.c = one; m.f = -p;
            break;
        case OperatorClass::SH:  // c K2^2 + {K1,L}
            m.c = p; m.d = one;
            break;
        case OperatorClass::HRot:  // c K2^2 + {K2,L}
            m.c = p; m.e = one;
            break;
        case OperatorClass::SCPRot: {
            // K2^2 - K1^2 - {K1,L}/sqrt2 + {K2,L}/sqrt2
            Coef inv_s2 = Coef(1) / Coef::sqrt2();
            m.a = MultiPoly(Coef(-1)); m.c = one;
            m.d = MultiPoly(-inv_s2); m.e = MultiPoly(inv_s2);
            break;
        }
        case OperatorClass::SCPTilde: {
            // K1^2/4 + {K1,K2}/4 - 3 K2^2/4 + {K2,L}/sqrt2 - L^2/2
            Coef q(Rational(1, 4));
            m.a = MultiPoly(q); m.b = MultiPoly(q);
            m.c = MultiPoly(Coef(Rational(-3, 4)));
            m.e = MultiPoly(Coef(1) / Coef::sqrt2());
            m.f = MultiPoly(Coef(Rational(-1, 2)));
            break;
        }
        case OperatorClass::EQPerm:
            m.a = one;
            break;
        case OperatorClass::HOPerm:  // (K2-L)^2 = K2^2 - {K2,L} + L^2
            m.c = one; m.e = -one; m.f = one;
            break;
        case OperatorClass::SHPerm:  // c K1^2 - {K2,L}
            m.a = p; m.e = -one;
            break;
        case OperatorClass::EPPerm:
            positive("gamma");
            m.a = p; m.c = one; m.e = -one; m.f = one;
            break;
        case OperatorClass::HPPerm:
            positive("gamma");
            m.a = -p; m.c = one; m.e = -one; m.f = one;
            break;
        case OperatorClass::SCPPerm:  // {K1,K2} - {K1,L}
            m.b = one; m.d = -one;
            break;
        case OperatorClass::ParabolicII: {
            // {K1,K2} + {L,K2} + a*eps*(L-K1)^2, a != 0
            if (param.is_zero()) throw std::invalid_argument("alpha must be nonzero");
            MultiPoly ae = MultiPoly(param) * MultiPoly::eps();
            m.b = one; m.e = one;
            m.a = ae; m.f = ae; m.d = -ae;
            break;
        }
    }
    return m;
}

DiffOperator operator_from_matrix(const SymbolMatrix& m, const PolyVectorField& K1,
                                  const PolyVectorField& K2, const PolyVectorField& L) {
    DiffOperator k1(K1), k2(K2), l(L);
    DiffOperator s;
    if (!m.a.is_zero()) s += m.a * op_compose(k1, k1);
    if (!m.b.is_zero()) s += m.b * op_anticommutator(k1, k2);
    if (!m.c.is_zero()) s += m.c * op_compose(k2, k2);
    if (!m.d.is_zero()) s += m.d * op_anticommutator(k1, l);
    if (!m.e.is_zero()) s += m.e * op_anticommutator(k2, l);
    if (!m.f.is_zero()) s += m.f * op_compose(l, l);
    return s;
}

DiffOperator canonical_operator(OperatorClass cls, const Coef& param) {
    GeneratorBasis b = build_generators(GenSpace::AmbientH);
    return operator_from_matrix(canonical_matrix(cls, param), b.g1, b.g2, b.g3);
}

DiffOperator casimir(const PolyVectorField& K1, const PolyVectorField& K2,
                     const PolyVectorField& L) {
    DiffOperator k1(K1), k2(K2), l(L);
    return op_compose(k1, k1) + op_compose(k2, k2) - op_compose(l, l);
}

}  // namespace hyperlab
