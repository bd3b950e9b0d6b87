#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperlab/charts.hpp"
#include "hyperlab/classify.hpp"
#include "hyperlab/generators.hpp"

namespace hyperlab {

// Coefficients of a second-order element as a quadratic form in the
// pseudo-spherical momenta (p_tau, p_phi), expressed through ambient
// coordinates: S = A p_tau^2 + 2B p_tau p_phi + C p_phi^2.
struct ClassicalSymbol {
    double A, B, C;
};

struct CharRoots {
    double re1, im1, re2, im2;  // lambda_1, lambda_2 (conjugate pair if complex)
    bool real_pair;
    bool double_root;
    double discriminant;

    double lambda1() const { return re1; }
    double lambda2() const { return re2; }
};

// Symbol of the form with matrix entries (a..f) at an ambient point.
ClassicalSymbol classical_symbol(const SecondOrderForm& form, const AmbientPoint& p);

// Symbol of a canonical operator class; param as in classify (gamma,
// sinh^2 beta, sin^2 alpha, c). Throws on the u1 = u2 = 0 axis.
ClassicalSymbol classical_coeffs(OperatorClass cls, double param, const AmbientPoint& p);

// Roots of det(a^ik - lambda g^ik) = 0 via the trace/product system.
CharRoots char_roots(OperatorClass cls, double param, const AmbientPoint& p);
CharRoots char_roots_of_form(const SecondOrderForm& form, const AmbientPoint& p);

struct CheckReport {
    std::string name;
    double max_residual = 0;
    double tolerance = 0;
    bool pass = false;
    std::string detail;
};

// Liouville gauge check for orthogonal charts: after per-variable monotone
// reparametrizations u = U(xi1), v = V(xi2), |g11| = |g22| and the conformal
// factor splits additively (mixed partial vanishes). The box must avoid the
// chart's envelope curves, where the conformal factor vanishes; liouville_box
// supplies a suitable off-diagonal region for the charts that need one.
CheckReport liouville_check(const Chart& chart, int samples = 120,
                            std::optional<DomainBox> box = std::nullopt);
DomainBox liouville_box(const Chart& chart);

// Exact [Casimir, S] in polyops; empty normal form on success.
CheckReport commutation_certificate(OperatorClass cls, const Coef& param = Coef(0));

// lambda_1 depends only on xi1 and lambda_2 only on xi2 along chart lines.
// The chart must be the one built from (cls, param).
CheckReport lambda_consistency(const Chart& chart, OperatorClass cls, double param,
                               int samples = 60);

std::string report_json(const std::vector<CheckReport>& reports);

}  // namespace hyperlab
