// Acceptance suite: one line per criterion, exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <vector>

#include "hyperlab/classify.hpp"
#include "hyperlab/contraction.hpp"
#include "hyperlab/elliptic.hpp"
#include "hyperlab/separation.hpp"

using namespace hyperlab;

namespace {

int failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %d [%s]: %s%s%s\n", idx, name, pass ? "PASS" : "FAIL",
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = (int)xs.size();
    for (int i = 0; i < n; ++i) {
        sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// 1. exact operator algebra
void criterion_exact_algebra() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;

    auto [K1, K2, L] = build_generators(GenSpace::AmbientH);
    ok = ok && vf_commutator(K1, K2) == -L && vf_commutator(L, K1) == K2 &&
         vf_commutator(K2, L) == K1 && vf_commutator(K2, K1) == L &&
         vf_commutator(K1, L) == -K2 && vf_commutator(L, K2) == -K1 &&
         vf_commutator(K1, K1).is_zero() && vf_commutator(K2, K2).is_zero() &&
         vf_commutator(L, L).is_zero();
    if (!ok) why = "commutation table";

    DiffOperator C = casimir(K1, K2, L);
    struct P { OperatorClass c; Coef q; };
    std::vector<P> grid = {
        {OperatorClass::EQ, Coef(0)},  {OperatorClass::SPH, Coef(0)},
        {OperatorClass::HO, Coef(0)},  {OperatorClass::SCP, Coef(0)},
        {OperatorClass::EP, Coef(1)},  {OperatorClass::EP, Coef(2)},
        {OperatorClass::EP, Coef(3)},  {OperatorClass::HP, Coef(1)},
        {OperatorClass::HP, Coef(2)},  {OperatorClass::HP, Coef(3)},
        {OperatorClass::SH, Coef(0)},  {OperatorClass::SH, Coef(1)},
        {OperatorClass::SH, Coef(2)},  {OperatorClass::H, Coef(Rational(1, 2))},
        {OperatorClass::E, Coef(1)},   {OperatorClass::E, Coef(3)},
    };
    for (const P& p : grid) {
        DiffOperator comm = op_commutator(C, canonical_operator(p.c, p.q));
        if (!comm.is_zero()) {
            ok = false;
            why = "nonzero commutator for " + operator_class_name(p.c);
        }
    }
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(1, "exact algebra", ok, "grid of 16 certificates in " + std::to_string(dt) + " s");
}

// 2. classification round-trip
void criterion_round_trip() {
    auto t0 = std::chrono::steady_clock::now();
    struct E { OrbitClass cls; bool param; };
    std::vector<E> table = {
        {{OrbitTag::EQ, 0}, false},  {{OrbitTag::SPH, 0}, false}, {{OrbitTag::HO, 0}, false},
        {{OrbitTag::SCP, 0}, false}, {{OrbitTag::EP, 2.0}, false}, {{OrbitTag::HP, 0.7}, false},
        {{OrbitTag::E, 1.5}, true},  {{OrbitTag::H, 0.3}, true},  {{OrbitTag::SH, 1.0}, true},
    };
    int bad = 0;
    std::string first_bad;
    for (const E& e : table)
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            SecondOrderForm m = random_orbit_sample(e.cls, seed);
            try {
                auto res = classify_second_order(m);
                bool ok = res.cls.tag == e.cls.tag;
                if (e.param)
                    ok = ok && std::fabs(res.cls.param - e.cls.param) <=
                                   1e-8 * std::max(1.0, e.cls.param);
                if ((e.cls.tag == OrbitTag::EP || e.cls.tag == OrbitTag::HP))
                    ok = ok && std::fabs(res.cls.param - 1.0) <= 1e-8;
                if (!ok) {
                    ++bad;
                    if (first_bad.empty())
                        first_bad = orbit_tag_name(e.cls.tag) + " seed " + std::to_string(seed);
                }
            } catch (const std::exception& ex) {
                ++bad;
                if (first_bad.empty())
                    first_bad = orbit_tag_name(e.cls.tag) + " seed " + std::to_string(seed) +
                                ": " + ex.what();
            }
        }
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(2, "classification round-trip", bad == 0,
           "9000 conjugations in " + std::to_string(dt) + " s" +
               (bad ? "; first failure " + first_bad : ""));
}

// 3. chart integrity
void criterion_chart_integrity() {
    bool ok = true;
    std::string why;
    const int kPoints = 10000;
    for (const Chart& c : chart_catalog()) {
        if (c.space == Space::E2 || c.space == Space::E11) continue;
        double R = c.params.get("R", 1.0);
        double w_emb = 0, w_orth = 0;
        for (auto [x1, x2] : domain_samples(c, kPoints)) {
            try {
                AmbientPoint p = embed(c, x1, x2);
                w_emb = std::max(w_emb, std::fabs(p.embedding_residual()));
            } catch (const OutOfDomain&) {
            }
        }
        if (c.orthogonal)
            for (auto [x1, x2] : domain_samples(c, kPoints / 10)) {
                try {
                    MetricTensor g = metric(c, x1, x2);
                    w_orth = std::max(w_orth, std::fabs(g.g12) /
                                                  std::max(std::fabs(g.g11), std::fabs(g.g22)));
                } catch (const OutOfDomain&) {
                }
            }
        if (w_emb > 1e-9 * R * R) { ok = false; why = "embedding " + c.id; }
        if (w_orth > 1e-8) { ok = false; why = "orthogonality " + c.id; }
    }

    // Jacobi vs algebraic gauge agreement
    double k = std::sqrt(0.5), kp = std::sqrt(0.5);
    double a1 = 2, a2 = 1, a3 = 0;
    double w_agree = 0;
    auto agree = [&](const char* jid, const char* aid, auto rho_map) {
        const Chart& cj = find_chart(jid);
        const Chart& ca = find_chart(aid);
        for (auto [x1, x2] : domain_samples(cj, kPoints)) {
            try {
                AmbientPoint pj = embed(cj, x1, x2);
                auto [r1, r2] = rho_map(x1, x2);
                AmbientPoint pa = embed(ca, r1, r2);
                w_agree = std::max({w_agree, std::fabs(std::fabs(pj.u0) - std::fabs(pa.u0)),
                                    std::fabs(std::fabs(pj.u1) - std::fabs(pa.u1)),
                                    std::fabs(std::fabs(pj.u2) - std::fabs(pa.u2))});
            } catch (const OutOfDomain&) {
            }
        }
    };
    agree("H2/E", "H2/E-alg", [&](double nu, double b) {
        auto jn = jacobi_real(nu, EllipticModulus(k));
        auto jb = jacobi_real(b, EllipticModulus(kp));
        return std::pair<double, double>{a1 + (a1 - a3) * jn.cn * jn.cn / (jn.sn * jn.sn),
                                         a1 - (a1 - a2) * jb.sn * jb.sn};
    });
    agree("H2/H", "H2/H-alg", [&](double nu, double mu) {
        auto jn = jacobi_real(nu, EllipticModulus(k));
        auto jm = jacobi_real(mu, EllipticModulus(kp));
        return std::pair<double, double>{a1 + (a1 - a3) * jn.cn * jn.cn / (jn.sn * jn.sn),
                                         a1 - (a1 - a2) / (kp * kp * jm.sn * jm.sn)};
    });
    agree("H~2/E", "H~2/E-alg", [&](double t, double mu) {
        auto jt = jacobi_real(t, EllipticModulus(kp));
        auto jm = jacobi_real(mu, EllipticModulus(kp));
        double dn2a = kp * kp * jt.cn * jt.cn / (jt.dn * jt.dn);
        return std::pair<double, double>{a1 - (a1 - a3) * dn2a,
                                         a1 - (a1 - a2) / (kp * kp * jm.sn * jm.sn)};
    });
    {
        const Chart& cj = find_chart("H~2/H-IA");
        const Chart& ca = find_chart("H~2/H-alg");
        for (auto [t, mu] : domain_samples(cj, kPoints)) {
            try {
                AmbientPoint pj = embed(cj, t, mu);
                auto jt = jacobi_real(t, EllipticModulus(kp));
                auto jm = jacobi_real(mu, EllipticModulus(kp));
                double r1 = a1 - (a1 - a3) * jt.dn * jt.dn / (jt.cn * jt.cn);
                double r2 = a1 - (a1 - a2) / (kp * kp * jm.sn * jm.sn);
                if (r1 < r2) std::swap(r1, r2);
                AmbientPoint pa = embed(ca, r1, r2);
                w_agree = std::max({w_agree, std::fabs(std::fabs(pj.u0) - std::fabs(pa.u0)),
                                    std::fabs(std::fabs(pj.u1) - std::fabs(pa.u1)),
                                    std::fabs(std::fabs(pj.u2) - std::fabs(pa.u2))});
            } catch (const OutOfDomain&) {
            }
        }
    }
    if (w_agree > 1e-10) { ok = false; why = "gauge agreement " + std::to_string(w_agree); }
    report(3, "chart integrity", ok, why.empty() ? "all charts within tolerance" : why);
}

// 4. characteristic systems
void criterion_characteristic_systems() {
    bool ok = true;
    std::string why;
    auto sys_check = [&](const char* name, const char* sph_id, OperatorClass cls, double q,
                         double sigma, auto sumf, auto prodf) {
        const Chart& sph = find_chart(sph_id);
        double worst = 0;
        for (auto [x1, x2] : domain_samples(sph, 400)) {
            AmbientPoint p = embed(sph, x1, x2);
            CharRoots r = char_roots(cls, q, p);
            double sum_raw = r.real_pair ? r.re1 + r.re2 : 2 * r.re1;
            double prod_raw = r.real_pair ? r.re1 * r.re2 : r.re1 * r.re1 + r.im1 * r.im1;
            double es = sumf(p, q), epr = prodf(p, q);
            worst = std::max(worst,
                             std::fabs(sigma * sum_raw - es) / std::max(1.0, std::fabs(es)));
            worst = std::max(worst, std::fabs(prod_raw - epr) / std::max(1.0, std::fabs(epr)));
        }
        if (worst > 1e-10) { ok = false; why = std::string(name) + " " + std::to_string(worst); }
    };
    auto sh_sum = [](const AmbientPoint& p, double c) {
        return 2 * p.u0 * p.u1 + c * (p.u1 * p.u1 - p.u0 * p.u0);
    };
    auto scp_sum = [](const AmbientPoint& p, double) { return 2 * p.u2 * (p.u1 - p.u0); };
    auto ep_sum = [](const AmbientPoint& p, double g) {
        double d = p.u0 - p.u1;
        return d * d + g * (p.u0 * p.u0 - p.u1 * p.u1);
    };
    auto hp_sum = [](const AmbientPoint& p, double g) {
        double d = p.u0 - p.u1;
        return d * d - g * (p.u0 * p.u0 - p.u1 * p.u1);
    };
    sys_check("sh-two-sheeted", "H2/SPH", OperatorClass::SH, 1.0, -1, sh_sum,
              [](const AmbientPoint& p, double c) {
                  return -(p.u2 * p.u2 + 2 * c * p.u0 * p.u1);
              });
    sys_check("sh-one-sheeted", "H~2/SPH", OperatorClass::SH, 1.0, +1, sh_sum,
              [](const AmbientPoint& p, double c) {
                  return p.u2 * p.u2 + 2 * c * p.u0 * p.u1;
              });
    sys_check("scp-two-sheeted", "H2/SPH", OperatorClass::SCP, 0.0, -1, scp_sum,
              [](const AmbientPoint& p, double) {
                  return -(p.u1 - p.u0) * (p.u1 - p.u0);
              });
    sys_check("scp-one-sheeted", "H~2/SPH", OperatorClass::SCP, 0.0, +1, scp_sum,
              [](const AmbientPoint& p, double) { return (p.u1 - p.u0) * (p.u1 - p.u0); });
    sys_check("ep-two-sheeted", "H2/SPH", OperatorClass::EP, 2.0, +1, ep_sum,
              [](const AmbientPoint& p, double g) {
                  double d = p.u0 - p.u1;
                  return g * d * d;
              });
    sys_check("ep-one-sheeted", "H~2/SPH", OperatorClass::EP, 2.0, -1, ep_sum,
              [](const AmbientPoint& p, double g) {
                  double d = p.u0 - p.u1;
                  return -g * d * d;
              });
    sys_check("hp-one-sheeted", "H~2/SPH", OperatorClass::HP, 2.0, -1, hp_sum,
              [](const AmbientPoint& p, double g) {
                  double d = p.u0 - p.u1;
                  return g * d * d;
              });
    sys_check("e-two-sheeted", "H2/SPH", OperatorClass::E, 1.0, -1,
              [](const AmbientPoint& p, double s) {
                  return -p.u1 * p.u1 - p.u2 * p.u2 * (1 + s) - s;
              },
              [](const AmbientPoint& p, double s) { return p.u1 * p.u1 * s; });
    sys_check("h-two-sheeted", "H2/SPH", OperatorClass::H, 0.5, -1,
              [](const AmbientPoint& p, double s) {
                  return p.u1 * p.u1 * s - p.u2 * p.u2 * (1 - s) - 1;
              },
              [](const AmbientPoint& p, double s) { return -p.u1 * p.u1 * s; });

    // root reality vs covered predicates on the one-sheeted surface
    struct Pair { OperatorClass cls; double q; const char* chart; };
    for (const Pair& q : {Pair{OperatorClass::SH, 1.0, "H~2/SH"},
                          Pair{OperatorClass::SCP, 0.0, "H~2/SCP"},
                          Pair{OperatorClass::HP, 2.0, "H~2/HP-I"},
                          Pair{OperatorClass::H, 0.5, "H~2/H-IA"}}) {
        const Chart& chart = find_chart(q.chart);
        const Chart& sph = find_chart("H~2/SPH");
        for (auto [x1, x2] : domain_samples(sph, 600)) {
            AmbientPoint p = embed(sph, x1, x2);
            CharRoots r = char_roots(q.cls, q.q, p);
            if (std::fabs(r.discriminant) < 1e-9) continue;
            if (covered(chart, p) != (r.discriminant > 0)) {
                ok = false;
                why = std::string("reality mismatch ") + q.chart;
            }
        }
    }
    report(4, "characteristic systems", ok, why.empty() ? "9 systems + reality census" : why);
}

// 5. operator contractions
void criterion_operator_contractions() {
    int total = 0, zero = 0;
    std::string why;
    for (const auto& c : contraction_cases()) {
        if (!c.op) continue;
        ++total;
        if (operator_contraction(c).exact_zero) ++zero;
        else why = c.id;
    }
    report(5, "operator contractions", total == zero,
           std::to_string(zero) + "/" + std::to_string(total) + " exactly zero" +
               (why.empty() ? "" : "; first residual " + why));
}

// 6. coordinate contractions
void criterion_coordinate_contractions() {
    auto t0 = std::chrono::steady_clock::now();
    int pos = 0, passed = 0, neg = 0, neg_ok = 0;
    std::string why;
    for (const auto& c : contraction_cases()) {
        if (c.negative) {
            ++neg;
            try {
                run_contraction(c, default_R_list());
                why = "negative case ran: " + c.id;
            } catch (const NegativeCaseError&) {
                ++neg_ok;
            }
            continue;
        }
        ++pos;
        ConvergenceReport rep;
        if (!c.schedule) {
            rep = parabolic_II_compound(1.0, c.flat_points, default_R_list());
        } else {
            rep = run_contraction(c, default_R_list());
        }
        bool ok = rep.fitted_order >= 0.9 && rep.pass && c.flat_points.size() >= 20;
        if (ok) ++passed;
        else if (why.empty()) why = c.id + " " + rep.detail;
    }
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(6, "coordinate contractions", passed == pos && neg_ok == neg,
           std::to_string(passed) + "/" + std::to_string(pos) + " positive, " +
               std::to_string(neg_ok) + "/" + std::to_string(neg) + " negative in " +
               std::to_string(dt) + " s" + (why.empty() ? "" : "; " + why));
}

// 7. special functions
void criterion_special_functions() {
    bool ok = true;
    std::string why;
    double w_id = 0, w_cross = 0;
    for (double k = 0.1; k < 0.95; k += 0.1) {
        EllipticModulus m(k);
        double K = complete_K(m);
        for (double u = -4 * K; u <= 4 * K; u += K / 4.1) {
            auto t = jacobi_real(u, m);
            w_id = std::max({w_id, std::fabs(t.sn * t.sn + t.cn * t.cn - 1),
                             std::fabs(k * k * t.sn * t.sn + t.dn * t.dn - 1)});
        }
        for (double u = -3; u <= 3; u += 0.21) {
            auto a = jacobi_real(u, m);
            auto l = jacobi_landen(u, m);
            w_cross = std::max({w_cross, std::fabs(a.sn - l.sn), std::fabs(a.cn - l.cn),
                                std::fabs(a.dn - l.dn)});
        }
    }
    if (w_id > 1e-12) { ok = false; why = "identities " + std::to_string(w_id); }
    if (w_cross > 1e-12) { ok = false; why = "cross-check " + std::to_string(w_cross); }

    auto slope_to = [&](bool to_one) {
        std::vector<double> xs, ys;
        for (double q : {0.2, 0.1, 0.05, 0.025}) {
            EllipticModulus m(to_one ? std::sqrt(1 - q * q) : q);
            double worst = 0;
            double hi = to_one ? 2.0 : M_PI;
            for (double u = 0; u <= hi; u += 0.01) {
                double ref = to_one ? std::tanh(u) : std::sin(u);
                worst = std::max(worst, std::fabs(jacobi_real(u, m).sn - ref));
            }
            xs.push_back(std::log(q));
            ys.push_back(std::log(worst));
        }
        return fit_slope(xs, ys);
    };
    double s0 = slope_to(false), s1 = slope_to(true);
    if (s0 < 1.9 || s1 < 1.9) {
        ok = false;
        why = "degeneration slopes " + std::to_string(s0) + ", " + std::to_string(s1);
    }
    report(7, "special functions", ok,
           why.empty() ? "identities, cross-check, slopes " + std::to_string(s0) + "/" +
                             std::to_string(s1)
                       : why);
}

// 8. coverage census
void criterion_coverage_census() {
    std::set<std::string> ids;
    for (const auto& c : contraction_cases()) ids.insert(c.id);
    bool ok = true;
    std::string why;
    int rows = 0;
    for (const auto& row : contraction_manifest()) {
        ++rows;
        if (row.case_ids.empty()) { ok = false; why = row.row + ": no case"; }
        for (const auto& cid : row.case_ids)
            if (!ids.count(cid)) { ok = false; why = row.row + ": missing " + cid; }
    }
    report(8, "coverage census", ok,
           std::to_string(rows) + " table rows all witnessed" + (why.empty() ? "" : "; " + why));
}

}  // namespace

int main() {
    criterion_exact_algebra();
    criterion_round_trip();
    criterion_chart_integrity();
    criterion_characteristic_systems();
    criterion_operator_contractions();
    criterion_coordinate_contractions();
    criterion_special_functions();
    criterion_coverage_census();
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    else std::printf("%d criteria failed\n", failures);
    return failures;
}
