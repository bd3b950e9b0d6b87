#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlab {

// Orbit tags of second-order elements under inner automorphisms, reflections,
// scaling and Casimir shifts. Parametric classes carry their canonical
// parameter: gamma (EP/HP), sinh^2 beta (E), sin^2 alpha (H, canonicalized to
// (0,1/2]), sinh 2beta >= 0 (SH).
enum class OrbitTag { EQ, SPH, HO, SCP, EP, HP, E, H, SH, CasimirDegenerate };

std::string orbit_tag_name(OrbitTag t);

struct OrbitClass {
    OrbitTag tag;
    double param = 0.0;
};

// a K1 + b K2 + c L
struct FirstOrderElement {
    double a = 0, b = 0, c = 0;
};

enum class FirstOrderType { HOType, EQType, SPHType };
std::string first_order_type_name(FirstOrderType t);

// One step of the reduction group. Rotations carry their group parameter,
// CasimirShift is M -> p1*M + p2*diag(1,1,-1) with p1 != 0, Scale is M -> p1*M.
struct Move {
    enum Kind { RotK1, RotK2, RotL, Reflect0, Reflect1, Reflect2, CasimirShift, Scale } kind;
    double p1 = 0, p2 = 0;
};

using AutomorphismWord = std::vector<Move>;

// Symmetric matrix [[a,b,d],[b,c,e],[d,e,f]] of a second-order element.
struct SecondOrderForm {
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

    // minors of the corresponding entries
    double mA() const { return c * f - e * e; }
    double mB() const { return b * f - d * e; }
    double mC() const { return a * f - d * d; }
    double mD() const { return b * e - c * d; }
    double mE() const { return a * e - b * d; }
    double mF() const { return a * c - b * b; }

    double I1() const { return a + c - f; }
    double I2() const { return mA() + mC() - mF(); }
    double I3() const;

    double max_abs() const;
};

struct SecondOrderInvariants {
    double I1, I2, I3;
    double A, B, C, D, E, F;
};

SecondOrderInvariants invariants_second_order(const SecondOrderForm& m);

double first_order_invariant(const FirstOrderElement& v);

SecondOrderForm apply_move(const SecondOrderForm& m, const Move& mv);
SecondOrderForm apply_automorphism(const SecondOrderForm& m, const AutomorphismWord& w);
FirstOrderElement apply_move(const FirstOrderElement& v, const Move& mv);
FirstOrderElement apply_automorphism(const FirstOrderElement& v, const AutomorphismWord& w);

// Raised when a branch predicate falls inside the declared gray band where
// the discrete case analysis cannot be decided reliably in doubles.
class NumericalInstability : public std::runtime_error {
public:
    explicit NumericalInstability(const std::string& what) : std::runtime_error(what) {}
};

struct FirstOrderResult {
    FirstOrderType type;
    AutomorphismWord word;  // maps the input to the canonical vector (up to nothing: exact target)
    FirstOrderElement canonical;
};

// sign(I) selects the class; the word maps v onto (1,0,1), (0,1,0) or (0,0,1).
FirstOrderResult classify_first_order(const FirstOrderElement& v);

struct SecondOrderResult {
    OrbitClass cls;
    AutomorphismWord word;      // maps the input to `canonical`
    SecondOrderForm canonical;  // the class's canonical matrix, pivot-normalized
};

SecondOrderResult classify_second_order(const SecondOrderForm& m);

// Canonical matrix of a class (validates parameter ranges).
SecondOrderForm canonical_form(const OrbitClass& cls);

// Canonical form conjugated by a seeded random bounded word.
SecondOrderForm random_orbit_sample(const OrbitClass& cls, std::uint64_t seed);

}  // namespace hyperlab
