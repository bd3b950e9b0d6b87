#include <cmath>

#include "doctest.h"
#include "hyperlab/charts.hpp"
#include "hyperlab/elliptic.hpp"

using namespace hyperlab;

TEST_CASE("catalog size and lookups") {
    CHECK(chart_catalog().size() >= 30);
    CHECK(find_chart("H~2/EQ-IIa").contraction_targets.empty());
    CHECK(find_chart("H2/E").contraction_targets.size() == 3);
    CHECK(find_chart("E11/parabolic-II").space == Space::E11);
    CHECK_THROWS_AS(find_chart("H2/NOPE"), std::invalid_argument);
}

TEST_CASE("named embedding values") {
    // apex of the two-sheeted hyperboloid, phi-independent
    AmbientPoint apex = embed(find_chart("H2/SPH"), 1e-300, 0.7);
    CHECK(apex.u0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(apex.u1) < 1e-12);

    AmbientPoint eq = embed(find_chart("H2/EQ"), 0.4, -0.3);
    CHECK(eq.u0 == doctest::Approx(std::cosh(0.4) * std::cosh(-0.3)).epsilon(1e-14));
    CHECK(eq.u1 == doctest::Approx(std::cosh(0.4) * std::sinh(-0.3)).epsilon(1e-14));
    CHECK(eq.u2 == doctest::Approx(std::sinh(0.4)).epsilon(1e-14));
}

TEST_CASE("embedding residual at quasi-random points, all curved charts") {
    for (const Chart& c : chart_catalog()) {
        if (c.space == Space::E2 || c.space == Space::E11) continue;
        double R = c.params.get("R", 1.0);
        int bad = 0;
        for (auto [x1, x2] : domain_samples(c, 400)) {
            try {
                AmbientPoint p = embed(c, x1, x2);
                if (std::fabs(p.embedding_residual()) > 1e-9 * R * R) ++bad;
            } catch (const OutOfDomain&) {
                // boxes may clip region corners for the region-limited charts
            }
        }
        CHECK_MESSAGE(bad == 0, c.id);
    }
}

TEST_CASE("metric pullback of the named spherical charts") {
    MetricTensor g2 = metric(find_chart("H2/SPH"), 0.8, 1.1);
    CHECK(g2.g11 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g2.g22 == doctest::Approx(std::sinh(0.8) * std::sinh(0.8)).epsilon(1e-12));
    CHECK(std::fabs(g2.g12) < 1e-14);

    MetricTensor g1 = metric(find_chart("H~2/SPH"), 0.8, 1.1);
    CHECK(g1.g11 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g1.g22 == doctest::Approx(-std::cosh(0.8) * std::cosh(0.8)).epsilon(1e-12));

    // flat metrics
    MetricTensor ge = metric(find_chart("E2/polar"), 1.3, 0.4);
    CHECK(ge.g11 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ge.g22 == doctest::Approx(1.3 * 1.3).epsilon(1e-12));
    MetricTensor gp = metric(find_chart("E11/pseudo-polar-Ia"), 1.3, 0.4);
    CHECK(gp.g11 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gp.g22 == doctest::Approx(-1.3 * 1.3).epsilon(1e-12));
}

TEST_CASE("AD metric agrees with Richardson divided differences") {
    auto fd_metric = [](const Chart& c, double x1, double x2) {
        auto gsign = [&](int i) {
            if (c.space == Space::H2 || c.space == Space::H1) return i == 0 ? -1.0 : 1.0;
            if (c.space == Space::E11) return i == 1 ? -1.0 : (i == 2 ? 0.0 : 1.0);
            return i == 2 ? 0.0 : 1.0;
        };
        double eps = (c.space == Space::H1) ? -1.0 : 1.0;
        if (c.space == Space::E2 || c.space == Space::E11) eps = 1.0;
        double h = 1e-5;
        auto d = [&](int var, double hh) {
            AmbientPoint a = embed(c, x1 + (var == 0 ? hh : 0), x2 + (var == 1 ? hh : 0));
            AmbientPoint b = embed(c, x1 - (var == 0 ? hh : 0), x2 - (var == 1 ? hh : 0));
            return std::array<double, 3>{(a.u0 - b.u0) / (2 * hh), (a.u1 - b.u1) / (2 * hh),
                                         (a.u2 - b.u2) / (2 * hh)};
        };
        auto rich = [&](int var) {
            auto c1 = d(var, h), c2 = d(var, h / 2);
            return std::array<double, 3>{(4 * c2[0] - c1[0]) / 3, (4 * c2[1] - c1[1]) / 3,
                                         (4 * c2[2] - c1[2]) / 3};
        };
        auto d1 = rich(0), d2 = rich(1);
        MetricTensor g;
        for (int i = 0; i < 3; ++i) {
            g.g11 += eps * gsign(i) * d1[i] * d1[i];
            g.g12 += eps * gsign(i) * d1[i] * d2[i];
            g.g22 += eps * gsign(i) * d2[i] * d2[i];
        }
        return g;
    };

    for (const char* id : {"H2/EP", "H2/SCP", "H~2/EP", "H~2/H-IIA", "H2/E", "H~2/SH"}) {
        const Chart& c = find_chart(id);
        double x1 = 0.6 * c.domain.lo1 + 0.4 * c.domain.hi1;
        double x2 = 0.3 * c.domain.lo2 + 0.7 * c.domain.hi2;
        MetricTensor ga = metric(c, x1, x2);
        MetricTensor gf = fd_metric(c, x1, x2);
        double scale = std::max({std::fabs(ga.g11), std::fabs(ga.g22), 1.0});
        CHECK_MESSAGE(std::fabs(ga.g11 - gf.g11) / scale < 1e-7, id);
        CHECK_MESSAGE(std::fabs(ga.g12 - gf.g12) / scale < 1e-7, id);
        CHECK_MESSAGE(std::fabs(ga.g22 - gf.g22) / scale < 1e-7, id);
    }
}

TEST_CASE("orthogonality flags hold at sampled points") {
    for (const Chart& c : chart_catalog()) {
        if (!c.orthogonal) continue;
        int bad = 0;
        for (auto [x1, x2] : domain_samples(c, 250)) {
            try {
                MetricTensor g = metric(c, x1, x2);
                double scale = std::max(std::fabs(g.g11), std::fabs(g.g22));
                if (std::fabs(g.g12) > 1e-8 * scale) ++bad;
            } catch (const OutOfDomain&) {
            }
        }
        CHECK_MESSAGE(bad == 0, c.id);
    }
}

TEST_CASE("nonorthogonal charts have genuinely nonzero g12") {
    for (const char* id : {"H2/SPH-NO", "H2/EQ-NO", "H2/HO-NO", "H~2/SPH-NO", "H~2/EQ-Ia-NO",
                           "H~2/HO-NO", "E2/polar-NO"}) {
        const Chart& c = find_chart(id);
        double x1 = 0.5 * (c.domain.lo1 + c.domain.hi1);
        double x2 = 0.4 * c.domain.lo2 + 0.6 * c.domain.hi2;
        MetricTensor g = metric(c, x1, x2);
        CHECK_MESSAGE(std::fabs(g.g12) > 1e-6, id);
    }
}

TEST_CASE("g12 of the rotating nonorthogonal charts decays like 1/alpha") {
    for (const char* id : {"H2/SPH-NO", "H2/EQ-NO", "H~2/SPH-NO", "H~2/EQ-IIb-NO"}) {
        const Chart& c = find_chart(id);
        double x1 = 0.5 * (c.domain.lo1 + c.domain.hi1);
        double x2 = 0.4 * c.domain.lo2 + 0.6 * c.domain.hi2;
        double g_prev = 0;
        double alphas[3] = {10, 100, 1000};
        double vals[3];
        for (int i = 0; i < 3; ++i) {
            ChartParams p = c.params;
            p.set("alpha", alphas[i]);
            vals[i] = std::fabs(metric(c, x1, x2, p).g12);
        }
        // fitted slope of log|g12| vs log(alpha) should be near -1
        double s1 = std::log(vals[1] / vals[0]) / std::log(alphas[1] / alphas[0]);
        double s2 = std::log(vals[2] / vals[1]) / std::log(alphas[2] / alphas[1]);
        CHECK_MESSAGE(std::fabs(s1 + 1) < 0.05, id);
        CHECK_MESSAGE(std::fabs(s2 + 1) < 0.05, id);
        (void)g_prev;
    }
}

TEST_CASE("Jacobi-form and algebraic-form charts agree through the root substitution") {
    double k2 = 0.5;
    double k = std::sqrt(k2), kp = std::sqrt(1 - k2);
    double a1 = 2, a2 = 1, a3 = 0;  // (a2-a3)/(a1-a3) = k^2 = 1/2

    auto check_pair = [&](const char* jac_id, const char* alg_id, auto rho_map, int n) {
        const Chart& cj = find_chart(jac_id);
        const Chart& ca = find_chart(alg_id);
        for (auto [x1, x2] : domain_samples(cj, n)) {
            AmbientPoint pj = embed(cj, x1, x2);
            auto [r1, r2] = rho_map(x1, x2);
            AmbientPoint pa = embed(ca, r1, r2);
            CHECK_MESSAGE(std::fabs(std::fabs(pj.u0) - std::fabs(pa.u0)) < 1e-10, jac_id);
            CHECK_MESSAGE(std::fabs(std::fabs(pj.u1) - std::fabs(pa.u1)) < 1e-10, jac_id);
            CHECK_MESSAGE(std::fabs(std::fabs(pj.u2) - std::fabs(pa.u2)) < 1e-10, jac_id);
        }
    };

    // two-sheeted elliptic: rho1 = a1 + (a1-a3) cn^2/sn^2 (nu), rho2 = a1 - (a1-a2) sn^2(b,k')
    check_pair("H2/E", "H2/E-alg",
               [&](double nu, double b) {
                   auto jn = jacobi_real(nu, EllipticModulus(k));
                   auto jb = jacobi_real(b, EllipticModulus(kp));
                   double r1 = a1 + (a1 - a3) * jn.cn * jn.cn / (jn.sn * jn.sn);
                   double r2 = a1 - (a1 - a2) * jb.sn * jb.sn;
                   return std::pair<double, double>{r1, r2};
               },
               150);
    // two-sheeted hyperbolic: rho2 = a1 - (a1-a2)/(k'^2 sn^2(mu,k'))
    check_pair("H2/H", "H2/H-alg",
               [&](double nu, double mu) {
                   auto jn = jacobi_real(nu, EllipticModulus(k));
                   auto jm = jacobi_real(mu, EllipticModulus(kp));
                   double r1 = a1 + (a1 - a3) * jn.cn * jn.cn / (jn.sn * jn.sn);
                   double r2 = a1 - (a1 - a2) / (kp * kp * jm.sn * jm.sn);
                   return std::pair<double, double>{r1, r2};
               },
               150);
    // one-sheeted elliptic: a = K + i t, b = iK + mu
    check_pair("H~2/E", "H~2/E-alg",
               [&](double t, double mu) {
                   auto jt = jacobi_real(t, EllipticModulus(kp));
                   auto jm = jacobi_real(mu, EllipticModulus(kp));
                   double dn2a = kp * kp * jt.cn * jt.cn / (jt.dn * jt.dn);
                   double r1 = a1 - (a1 - a3) * dn2a;
                   double r2 = a1 - (a1 - a2) / (kp * kp * jm.sn * jm.sn);
                   return std::pair<double, double>{r1, r2};
               },
               150);
    // one-sheeted hyperbolic, region IA: a = i t, b = iK + mu
    {
        const Chart& cj = find_chart("H~2/H-IA");
        const Chart& ca = find_chart("H~2/H-alg");
        ChartParams pa = ca.params;
        for (auto [t, mu] : domain_samples(cj, 150)) {
            AmbientPoint pj = embed(cj, t, mu);
            auto jt = jacobi_real(t, EllipticModulus(kp));
            auto jm = jacobi_real(mu, EllipticModulus(kp));
            double dn2a = jt.dn * jt.dn / (jt.cn * jt.cn);
            double r1 = a1 - (a1 - a3) * dn2a;
            double r2 = a1 - (a1 - a2) / (kp * kp * jm.sn * jm.sn);
            // algebraic chart is symmetric in (rho1, rho2); order descending
            if (r1 < r2) std::swap(r1, r2);
            AmbientPoint pq = embed(ca, r1, r2, pa);
            CHECK(std::fabs(std::fabs(pj.u0) - std::fabs(pq.u0)) < 1e-10);
            CHECK(std::fabs(std::fabs(pj.u1) - std::fabs(pq.u1)) < 1e-10);
            CHECK(std::fabs(std::fabs(pj.u2) - std::fabs(pq.u2)) < 1e-10);
        }
    }
}

TEST_CASE("elliptic chart degenerates to the spherical chart as k -> 1") {
    // On H2: with k -> 1, sn(a,.) ~ coth-type and the chart approaches SPH.
    // Pointwise gap at matched coordinates should shrink with k'^2.
    const Chart& ce = find_chart("H2/E");
    double gaps[3];
    double kps[3] = {0.2, 0.1, 0.05};
    for (int i = 0; i < 3; ++i) {
        double kp = kps[i];
        double k = std::sqrt(1 - kp * kp);
        ChartParams p = ce.params;
        p.set("k2", k * k);
        // matched points: u0 = dn(b,k')/(k sn nu) vs cosh(tau); at k ~ 1,
        // sn(nu,k) ~ tanh(nu), dn(b,k') ~ 1, so tau ~ log coth-ish of nu;
        // compare against SPH evaluated at (tau(nu), phi = b)
        double worst = 0;
        for (double nu : {0.6, 0.9, 1.3})
            for (double b : {0.3, 1.0, 2.2}) {
                AmbientPoint pe = embed(ce, nu, b, p);
                double tau = std::acosh(pe.u0);
                AmbientPoint ps = embed(find_chart("H2/SPH"), tau, b);
                double gap = std::hypot(pe.u1 - ps.u1, pe.u2 - ps.u2);
                worst = std::max(worst, gap);
            }
        gaps[i] = worst;
    }
    double s1 = std::log(gaps[1] / gaps[0]) / std::log(kps[1] / kps[0]);
    double s2 = std::log(gaps[2] / gaps[1]) / std::log(kps[2] / kps[1]);
    // fitted slope in k' of at least ~1.8 means slope in k'^2 of >= 0.9
    CHECK(s1 >= 1.8);
    CHECK(s2 >= 1.8);
}

TEST_CASE("semi-hyperbolic chart satisfies its defining trace/product system") {
    const Chart& c = find_chart("H~2/SH");
    double cc = c.params.get("c", 1.0);
    for (auto [t1, t2] : domain_samples(c, 200)) {
        AmbientPoint p;
        try {
            p = embed(c, t1, t2);
        } catch (const OutOfDomain&) {
            continue;
        }
        double l1 = std::sinh(t1), l2 = std::sinh(t2);
        double tr = 2 * p.u0 * p.u1 + cc * (p.u1 * p.u1 - p.u0 * p.u0);
        double pr = p.u2 * p.u2 + 2 * cc * p.u0 * p.u1;
        // lambda sum and product, R = 1
        CHECK(std::fabs(l1 + l2 - tr) < 1e-10 * std::max(1.0, std::fabs(tr)));
        CHECK(std::fabs(l1 * l2 - pr) < 1e-10 * std::max(1.0, std::fabs(pr)));
    }
}

TEST_CASE("semi-hyperbolic c = 0 special point") {
    // mu_1 = mu_2 = 1 (sinh tau_i = 1): u2^2 = R^2, u0^2 - u1^2 = 0
    Chart sh = find_chart("H~2/SH");
    sh.params.set("c", 0.0);
    double t = std::asinh(1.0);
    AmbientPoint p = embed(sh, t, t);
    CHECK(p.u2 * p.u2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.u0 * p.u0 - p.u1 * p.u1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::fabs(p.embedding_residual()) < 1e-12);
}

TEST_CASE("covered predicates on region-limited charts") {
    // SCP on the one-sheeted surface covers |u2| > R only
    const Chart& scp = find_chart("H~2/SCP");
    AmbientPoint inside{0.0, 0.0, 2.0, Space::H1, 1.0};
    AmbientPoint outside{0.0, 1.0, 0.5, Space::H1, 1.0};
    CHECK(covered(scp, inside));
    CHECK_FALSE(covered(scp, outside));

    // equidistant Ia boundary |u1| = R (c = 0 convention: |u1| >= R boundary excluded)
    const Chart& sh = find_chart("H~2/SH");
    ChartParams p0 = sh.params;
    AmbientPoint boundary{0.0, 1.0, 1.0, Space::H1, 1.0};  // u1 = R exactly
    Chart sh0 = sh;
    sh0.params.set("c", 0.0);
    CHECK_FALSE(covered(sh0, boundary));
    // u1 beyond R is covered for c = 0 (u0 chosen on the surface)
    AmbientPoint in2{0.6, std::sqrt(1.0 + 0.36 - 0.04), 0.2, Space::H1, 1.0};
    CHECK(covered(sh0, in2));

    // elliptic-parabolic covers everything except the u0 = u1 seam
    const Chart& ep = find_chart("H~2/EP");
    for (auto [x1, x2] : domain_samples(ep, 100)) {
        AmbientPoint p = embed(ep, x1, x2);
        CHECK(covered(ep, p));
    }
}

TEST_CASE("grid export shape, flags and format") {
    auto rows = grid(find_chart("H2/SPH"), 2, 2);
    CHECK(rows.size() == 4);
    for (auto& r : rows) CHECK(r.covered);

    auto hp = grid(find_chart("H~2/HP-I"), 50, 50);
    int flagged = 0;
    const Chart& c = find_chart("H~2/HP-I");
    int brute = 0;
    for (auto& r : hp) {
        if (!r.covered) ++flagged;
        AmbientPoint p{r.u0, r.u1, r.u2, Space::H1, 1.0};
        if (!(std::fabs(p.u0 * (1 - 2.0) - p.u1 * (1 + 2.0)) > 2 * std::sqrt(2.0))) ++brute;
    }
    CHECK(flagged == brute);
    (void)c;

    auto flat = grid(find_chart("E11/hyperbolic-III"), 10, 10);
    CHECK(flat.size() == 100);
    std::string csv = grid_csv(flat);
    CHECK(csv.substr(0, 30) == "xi1,xi2,u0,u1,u2,covered\n-1.5,");
}
