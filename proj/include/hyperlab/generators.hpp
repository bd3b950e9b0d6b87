#pragma once

#include <stdexcept>
#include <string>

#include "hyperlab/diffops.hpp"

namespace hyperlab {

// Generator spaces. AmbientH covers both hyperboloids (the vector fields do
// not depend on the sheet count). The Beltrami spaces carry eps = 1/R as a
// formal polynomial variable.
enum class GenSpace { AmbientH, BeltramiH2, BeltramiH1, FlatE2, FlatE11 };

struct GeneratorBasis {
    // Ordered to mirror (K1, K2, L):
    //   AmbientH    : K1, K2, L
    //   BeltramiH2  : pi2 (= -K1/R), pi1 (= -K2/R), L      -> (p2, p1, -M) at eps=0
    //   BeltramiH1  : pi0 (= -K1/R), pi1 (= -L/R),  K2     -> (p0, p1, -N) at eps=0
    //   FlatE2      : p2, p1, -M  (contraction images of the row above)
    //   FlatE11     : p0, p1, -N
    PolyVectorField g1, g2, g3;
};

GeneratorBasis build_generators(GenSpace space);

// Second-order symmetry operator classes, named after the coordinate system
// each one separates. The *Perm variants are the u1<->u2 conjugates used on
// the one-sheeted hyperboloid, the Rot variants the explicit rotation
// conjugates, ParabolicII the eps-weighted compound operator.
enum class OperatorClass {
    EQ,
    SPH,
    HO,
    SCP,
    EP,
    HP,
    E,
    ERot,
    H,
    SH,
    HRot,
    SCPRot,       // trig rotation of SCP by -pi/4 about u0
    SCPTilde,     // double hyperbolic rotation of SCP (one-sheeted case)
    EQPerm,       // K1^2
    HOPerm,       // K2^2 - {K2,L} + L^2
    SHPerm,       // c K1^2 - {K2,L}
    EPPerm,       // g K1^2 + (K2-L)^2
    HPPerm,       // -g K1^2 + (K2-L)^2
    SCPPerm,      // {K1,K2} - {K1,L}
    ParabolicII,  // {K1,K2} + {L,K2} + a*eps*(L-K1)^2
};

std::string operator_class_name(OperatorClass c);

// Symmetric coefficient matrix of a second-order element:
//   S = a K1^2 + b{K1,K2} + c K2^2 + d{K1,L} + e{K2,L} + f L^2.
// Entries are eps-polynomials so the compound operator fits too.
struct SymbolMatrix {
    MultiPoly a, b, c, d, e, f;
};

// Canonical matrix for a class; param is gamma (EP/HP), sinh^2 beta (E),
// sin^2 alpha (H), c = sinh 2beta (SH, HRot), alpha (ParabolicII).
// Throws std::invalid_argument naming the violated constraint.
SymbolMatrix canonical_matrix(OperatorClass cls, const Coef& param = Coef(0));

// The operator S for a coefficient matrix over a generator triple ordered as
// (K1, K2, L)-equivalents.
DiffOperator operator_from_matrix(const SymbolMatrix& m, const PolyVectorField& K1,
                                  const PolyVectorField& K2, const PolyVectorField& L);

// Canonical operator in ambient coordinates.
DiffOperator canonical_operator(OperatorClass cls, const Coef& param = Coef(0));

// Casimir K1^2 + K2^2 - L^2 over a triple.
DiffOperator casimir(const PolyVectorField& K1, const PolyVectorField& K2,
                     const PolyVectorField& L);

}  // namespace hyperlab
