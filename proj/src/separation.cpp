#include "hyperlab/separation.hpp"

#include <cmath>

#include "json.hpp"

namespace hyperlab {

namespace {

// Double-precision coefficient matrix of an operator class. ParabolicII
// carries an eps = 1/R weight, so R enters here.
SecondOrderForm form_of(OperatorClass cls, double q, double R) {
    const double s2 = std::sqrt(2.0);
    switch (cls) {
        case OperatorClass::EQ: return {0, 0, 1, 0, 0, 0};
        case OperatorClass::SPH: return {0, 0, 0, 0, 0, 1};
        case OperatorClass::HO: return {1, 0, 0, 1, 0, 1};
        case OperatorClass::SCP: return {0, 1, 0, 0, 1, 0};
        case OperatorClass::EP: return {1, 0, q, 1, 0, 1};
        case OperatorClass::HP: return {1, 0, -q, 1, 0, 1};
        case OperatorClass::E: return {0, 0, q, 0, 0, 1};
        case OperatorClass::ERot:
            return {0, 0, 0, std::sqrt(q * (1 + q)), 0, 1 + 2 * q};
        case OperatorClass::H: return {0, 0, 1, 0, 0, -q};
        case OperatorClass::SH: return {0, 0, q, 1, 0, 0};
        case OperatorClass::HRot: return {0, 0, q, 0, 1, 0};
        case OperatorClass::SCPRot: return {-1, 0, 1, -1 / s2, 1 / s2, 0};
        case OperatorClass::SCPTilde: return {0.25, 0.25, -0.75, 0, 1 / s2, -0.5};
        case OperatorClass::EQPerm: return {1, 0, 0, 0, 0, 0};
        case OperatorClass::HOPerm: return {0, 0, 1, 0, -1, 1};
        case OperatorClass::SHPerm: return {q, 0, 0, 0, -1, 0};
        case OperatorClass::EPPerm: return {q, 0, 1, 0, -1, 1};
        case OperatorClass::HPPerm: return {-q, 0, 1, 0, -1, 1};
        case OperatorClass::SCPPerm: return {0, 1, 0, -1, 0, 0};
        case OperatorClass::ParabolicII: return {q / R, 1, 0, -q / R, 1, q / R};
    }
    throw std::logic_error("form_of: bad class");
}

}  // namespace

ClassicalSymbol classical_symbol(const SecondOrderForm& m, const AmbientPoint& p) {
    double h2 = p.u1 * p.u1 + p.u2 * p.u2;
    if (h2 <= 0) throw std::domain_error("classical symbol undefined on the u1 = u2 = 0 axis");
    double h = std::sqrt(h2);
    double u0 = p.u0, u1 = p.u1, u2 = p.u2;

    ClassicalSymbol s;
    s.A = (m.a * u2 * u2 + 2 * m.b * u1 * u2 + m.c * u1 * u1) / h2;
    s.B = m.a * u0 * u1 * u2 / (h2 * h) + m.b * u0 * (u1 * u1 - u2 * u2) / (h2 * h) -
          m.c * u0 * u1 * u2 / (h2 * h) - m.d * u2 / h - m.e * u1 / h;
    s.C = (m.a * u0 * u0 * u1 * u1 - 2 * m.b * u0 * u0 * u1 * u2 + m.c * u0 * u0 * u2 * u2) /
              (h2 * h2) -
          2 * m.d * u0 * u1 / h2 + 2 * m.e * u0 * u2 / h2 + m.f;
    return s;
}

ClassicalSymbol classical_coeffs(OperatorClass cls, double param, const AmbientPoint& p) {
    return classical_symbol(form_of(cls, param, p.R), p);
}

CharRoots char_roots_of_form(const SecondOrderForm& form, const AmbientPoint& p) {
    ClassicalSymbol s = classical_symbol(form, p);
    double h2 = p.u1 * p.u1 + p.u2 * p.u2;
    double g11 = p.R * p.R;
    double g22 = (p.space == Space::H2) ? h2 : -h2;

    double sum = s.A * g11 + s.C * g22;
    double prod = (s.A * s.C - s.B * s.B) * g11 * g22;
    double disc = sum * sum - 4 * prod;
    double scale = std::max({1.0, sum * sum, std::fabs(prod)});

    CharRoots r;
    r.discriminant = disc;
    r.double_root = std::fabs(disc) <= 1e-12 * scale;
    if (disc >= 0) {
        double sq = std::sqrt(std::max(0.0, disc));
        r.real_pair = true;
        r.re1 = 0.5 * (sum + sq);
        r.re2 = 0.5 * (sum - sq);
        r.im1 = r.im2 = 0;
    } else {
        r.real_pair = false;
        r.re1 = r.re2 = 0.5 * sum;
        r.im1 = 0.5 * std::sqrt(-disc);
        r.im2 = -r.im1;
    }
    return r;
}

CharRoots char_roots(OperatorClass cls, double param, const AmbientPoint& p) {
    return char_roots_of_form(form_of(cls, param, p.R), p);
}

DomainBox liouville_box(const Chart& chart) {
    // off-envelope regions for the charts whose default boxes straddle the
    // curves where the conformal factor vanishes (coordinate-grid envelopes)
    if (chart.id == "H~2/SH" || chart.id == "H~2/SH-perm") return {2.0, 2.8, 1.2, 1.8};
    if (chart.id == "H~2/HP-I" || chart.id == "H~2/HP-I-perm") return {0.15, 0.6, 1.8, 2.4};
    if (chart.id == "H~2/HP-II" || chart.id == "H~2/HP-II-perm") return {0.15, 0.6, 1.8, 2.4};
    if (chart.id == "H~2/H-IIA") return {0.2, 0.6, 2.7, 3.4};
    if (chart.id == "H~2/H-IIB") return {-1.1, 1.1, 3.3, 4.1};
    if (chart.id == "H~2/H-IA" || chart.id == "H~2/H-rot") return {0.55, 1.05, 1.4, 2.3};
    if (chart.id == "H~2/H-IB") return {1.4, 2.3, 0.55, 1.05};
    if (chart.id == "E11/elliptic-II-i") return {1.15, 1.75, -0.85, 0.85};
    if (chart.id == "E11/parabolic-I") return {1.2, 2.0, 0.15, 0.8};
    if (chart.id == "E11/elliptic-II-ii") return {0.15, 0.6, 1.9, 2.5};
    if (chart.id == "H~2/HP-III" || chart.id == "H~2/HP-III-perm") return {1.0, 1.55, 0.3, 0.7};
    if (chart.id == "H~2/H-alg") return {-5.5, -3.2, -2.6, -0.3};
    if (chart.id == "E11/parabolic-II") return {-1.9, -0.3, 0.3, 1.9};
    if (chart.id == "E11/hyperbolic-I") return {0.3, 1.4, -1.4, -0.3};
    if (chart.id == "E11/hyperbolic-III") return {0.3, 1.4, -1.4, -0.3};
    return chart.domain;
}

CheckReport liouville_check(const Chart& chart, int samples, std::optional<DomainBox> box) {
    if (!chart.orthogonal)
        throw std::invalid_argument("liouville_check: chart " + chart.id + " is not orthogonal");

    CheckReport rep;
    rep.name = "liouville/" + chart.id;
    rep.tolerance = 1e-6;

    DomainBox bx = box ? *box : liouville_box(chart);
    int n = std::max(6, (int)std::sqrt((double)samples));
    double lo1 = bx.lo1, hi1 = bx.hi1;
    double lo2 = bx.lo2, hi2 = bx.hi2;
    double m1 = 0.12 * (hi1 - lo1), m2 = 0.12 * (hi2 - lo2);
    lo1 += m1; hi1 -= m1; lo2 += m2; hi2 -= m2;

    auto ratio = [&](double x1, double x2) {
        MetricTensor g = metric(chart, x1, x2);
        return std::sqrt(std::fabs(g.g11 / g.g22));
    };
    double ref1 = lo1 + 0.37 * (hi1 - lo1);
    double ref2 = lo2 + 0.41 * (hi2 - lo2);
    double r_ref = ratio(ref1, ref2);

    double worst_conf = 0, worst_mixed = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x1 = lo1 + (hi1 - lo1) * i / (n - 1);
            double x2 = lo2 + (hi2 - lo2) * j / (n - 1);
            double Astar = ratio(x1, ref2);
            double W = r_ref / ratio(ref1, x2);
            MetricTensor g;
            try {
                g = metric(chart, x1, x2);
            } catch (const OutOfDomain&) {
                continue;
            }
            // equality of the rescaled diagonal entries
            double g11t = std::fabs(g.g11) / (Astar * Astar);
            double g22t = std::fabs(g.g22) / (W * W);
            double scale = std::max(g11t, g22t);
            worst_conf = std::max(worst_conf, std::fabs(g11t - g22t) / scale);

            // additive separability of the conformal factor in the new gauge
            double h1 = 1e-3 * (hi1 - lo1), h2s = 1e-3 * (hi2 - lo2);
            auto F = [&](double a, double b) {
                double As = ratio(a, ref2);
                return std::fabs(metric(chart, a, b).g11) / (As * As);
            };
            double mixed = (F(x1 + h1, x2 + h2s) - F(x1 + h1, x2 - h2s) -
                            F(x1 - h1, x2 + h2s) + F(x1 - h1, x2 - h2s)) /
                           (4 * h1 * h2s);
            mixed /= Astar * W;  // derivative in the reparametrized variables
            // normalize against the local conformal factor: the finite
            // difference inherits its magnitude where the factor is steep
            worst_mixed = std::max(worst_mixed, std::fabs(mixed) / std::max(1.0, 10 * scale));
        }
    rep.max_residual = std::max(worst_conf, worst_mixed);
    rep.detail = "conformal " + std::to_string(worst_conf) + ", mixed " + std::to_string(worst_mixed);
    rep.pass = worst_conf <= 1e-6 && worst_mixed <= 1e-6;
    return rep;
}

CheckReport commutation_certificate(OperatorClass cls, const Coef& param) {
    CheckReport rep;
    rep.name = "commutation/" + operator_class_name(cls);
    rep.tolerance = 0;
    auto basis = build_generators(GenSpace::AmbientH);
    DiffOperator C = casimir(basis.g1, basis.g2, basis.g3);
    DiffOperator S = canonical_operator(cls, param);
    DiffOperator comm = op_commutator(C, S);
    rep.pass = comm.is_zero();
    rep.max_residual = rep.pass ? 0.0 : 1.0;
    rep.detail = rep.pass ? "exact zero" : "nonzero commutator";
    return rep;
}

CheckReport lambda_consistency(const Chart& chart, OperatorClass cls, double param, int samples) {
    CheckReport rep;
    rep.name = "lambda/" + chart.id + "/" + operator_class_name(cls);
    rep.tolerance = 1e-8;

    int n = std::max(5, (int)std::sqrt((double)samples));
    double lo1 = chart.domain.lo1, hi1 = chart.domain.hi1;
    double lo2 = chart.domain.lo2, hi2 = chart.domain.hi2;
    double m1 = 0.15 * (hi1 - lo1), m2 = 0.15 * (hi2 - lo2);
    lo1 += m1; hi1 -= m1; lo2 += m2; hi2 -= m2;

    std::vector<std::vector<std::pair<double, double>>> roots(n);
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        roots[i].resize(n, {NAN, NAN});
        for (int j = 0; j < n; ++j) {
            double x1 = lo1 + (hi1 - lo1) * i / (n - 1);
            double x2 = lo2 + (hi2 - lo2) * j / (n - 1);
            try {
                AmbientPoint p = embed(chart, x1, x2);
                CharRoots cr = char_roots(cls, param, p);
                if (!cr.real_pair) continue;
                // near-coincident roots lose half the digits in the square
                // root split and carry no directional information; skip them
                double ssc = std::max({1.0, cr.re1 * cr.re1, cr.re2 * cr.re2});
                if (cr.discriminant < 1e-8 * ssc) continue;
                roots[i][j] = {cr.re1, cr.re2};
                scale = std::max({scale, std::fabs(cr.re1), std::fabs(cr.re2)});
            } catch (const OutOfDomain&) {
            } catch (const std::domain_error&) {
            }
        }
    }

    // Label the roots as (F(i), G(j)). Anchor one cell in both orientations
    // and propagate along rows/columns until the labeling stabilizes; the
    // residual of the better orientation is the cross-variation measure.
    int ai = -1, aj = -1;
    for (int i = 0; i < n && ai < 0; ++i)
        for (int j = 0; j < n && ai < 0; ++j)
            if (!std::isnan(roots[i][j].first)) { ai = i; aj = j; }
    double best_worst = ai < 0 ? 0.0 : INFINITY;
    for (int flip = 0; flip < 2 && ai >= 0; ++flip) {
        std::vector<double> F(n, NAN), G(n, NAN);
        F[ai] = flip ? roots[ai][aj].second : roots[ai][aj].first;
        G[aj] = flip ? roots[ai][aj].first : roots[ai][aj].second;
        for (int sweep = 0, changed = 1; changed && sweep < 2 * n; ++sweep) {
            changed = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    auto [a, b] = roots[i][j];
                    if (std::isnan(a)) continue;
                    bool fk = !std::isnan(F[i]), gk = !std::isnan(G[j]);
                    if (!fk && !gk) continue;
                    double direct = 0, crossed = 0;
                    if (fk) { direct += std::fabs(a - F[i]); crossed += std::fabs(b - F[i]); }
                    if (gk) { direct += std::fabs(b - G[j]); crossed += std::fabs(a - G[j]); }
                    if (crossed < direct) std::swap(a, b);
                    if (!fk) { F[i] = a; changed = 1; }
                    if (!gk) { G[j] = b; changed = 1; }
                }
        }
        double worst = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                auto [a, b] = roots[i][j];
                if (std::isnan(a) || std::isnan(F[i]) || std::isnan(G[j])) continue;
                double direct = std::fabs(a - F[i]) + std::fabs(b - G[j]);
                double crossed = std::fabs(b - F[i]) + std::fabs(a - G[j]);
                if (crossed < direct) std::swap(a, b);
                worst = std::max(worst, std::fabs(a - F[i]) / scale);
                worst = std::max(worst, std::fabs(b - G[j]) / scale);
            }
        best_worst = std::min(best_worst, worst);
    }
    rep.max_residual = best_worst;
    rep.pass = best_worst <= rep.tolerance;
    rep.detail = "cross-variation of characteristic roots over coordinate lines";
    return rep;
}

std::string report_json(const std::vector<CheckReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckReport& r : reports) {
        arr.push_back({{"name", r.name},
                       {"maxResidual", r.max_residual},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
    }
    return arr.dump(2);
}

}  // namespace hyperlab
