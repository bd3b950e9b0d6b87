#include "hyperlab/charts.hpp"

#include <cstdio>

#include "hyperlab/elliptic.hpp"

namespace hyperlab {

std::string space_name(Space s) {
    switch (s) {
        case Space::H2: return "H2";
        case Space::H1: return "H~2";
        case Space::E2: return "E2";
        case Space::E11: return "E11";
    }
    return "?";
}

double AmbientPoint::embedding_residual() const {
    if (space == Space::E2 || space == Space::E11) return 0.0;
    double eps = (space == Space::H2) ? 1.0 : -1.0;
    return -u0 * u0 + u1 * u1 + u2 * u2 + eps * R * R;
}

namespace {

template <class T>
struct JTri {
    T sn, cn, dn;
};

JTri<double> jac(double u, double k) {
    auto t = jacobi_real(u, EllipticModulus(k));
    return {t.sn, t.cn, t.dn};
}
JTri<long double> jac(long double u, double k) {
    auto t = jacobi_real((double)u, EllipticModulus(k));
    return {(long double)t.sn, (long double)t.cn, (long double)t.dn};
}
JTri<Dual2> jac(const Dual2& u, double k) {
    auto t = jacobi_real(u.v, EllipticModulus(k));
    double ds = t.cn * t.dn, dc = -t.sn * t.dn, dd = -k * k * t.sn * t.cn;
    return {{t.sn, ds * u.d1, ds * u.d2},
            {t.cn, dc * u.d1, dc * u.d2},
            {t.dn, dd * u.d1, dd * u.d2}};
}

// Guarded square root of quantities that are nonnegative on the chart's
// region; a materially negative argument means the point left the region.
template <class T>
T region_sqrt(const T& x, const char* what) {
    using std::sqrt;
    double v = value_of(x);
    if (v < -1e-9) throw OutOfDomain(std::string("outside covered region: ") + what);
    if (v <= 0) return T(0);
    return sqrt(x);
}

struct CatalogBuilder {
    std::vector<Chart> charts;

    template <class F>
    void add(const std::string& id, Space sp, bool orth, ChartParams prm, DomainBox box,
             std::vector<std::string> targets, F f,
             std::function<bool(const AmbientPoint&, const ChartParams&)> cov = nullptr,
             std::string note = "") {
        Chart c;
        c.id = id;
        c.space = sp;
        c.orthogonal = orth;
        if (!prm.values.count("R")) prm.set("R", 1.0);
        c.params = std::move(prm);
        c.domain = box;
        c.contraction_targets = std::move(targets);
        c.note = std::move(note);
        c.embed_d = [f](double a, double b, const ChartParams& p) { return f(a, b, p); };
        c.embed_l = [f](long double a, long double b, const ChartParams& p) { return f(a, b, p); };
        c.embed_ad = [f](Dual2 a, Dual2 b, const ChartParams& p) { return f(a, b, p); };
        c.covered_fn = std::move(cov);
        charts.push_back(std::move(c));
    }
};

// ---- covered-region predicates (strict) -------------------------------------

bool cov_abs_u2_gt_R(const AmbientPoint& p, const ChartParams&) { return std::fabs(p.u2) > p.R; }
bool cov_abs_u2_lt_R(const AmbientPoint& p, const ChartParams&) { return std::fabs(p.u2) < p.R; }
bool cov_abs_u1_gt_R(const AmbientPoint& p, const ChartParams&) { return std::fabs(p.u1) > p.R; }
bool cov_abs_u1_lt_R(const AmbientPoint& p, const ChartParams&) { return std::fabs(p.u1) < p.R; }
bool cov_sh(const AmbientPoint& p, const ChartParams& prm) {
    double c = prm.get("c", 1.0);
    double tr = 2 * p.u0 * p.u1 + c * (p.u1 * p.u1 - p.u0 * p.u0);
    double pr = p.R * p.R * (p.u2 * p.u2 + 2 * c * p.u0 * p.u1);
    return tr * tr - 4 * pr > 0;
}
bool cov_hp(const AmbientPoint& p, const ChartParams& prm) {
    double g = prm.get("gamma", 2.0);
    return std::fabs(p.u0 * (1 - g) - p.u1 * (1 + g)) > 2 * p.R * std::sqrt(g);
}
bool cov_h(const AmbientPoint& p, const ChartParams& prm) {
    double s = prm.get("k2", 0.5);  // sin^2 alpha = k^2
    double lhs = std::fabs(p.u1 * p.u1 * s - p.u2 * p.u2 * (1 - s) + p.R * p.R);
    return lhs > 2 * p.R * std::fabs(p.u1) * std::sqrt(s);
}
bool cov_flat_t_gt_x(const AmbientPoint& p, const ChartParams&) {
    return std::fabs(p.u0) > std::fabs(p.u1);
}
bool cov_flat_x_gt_t(const AmbientPoint& p, const ChartParams&) {
    return std::fabs(p.u1) > std::fabs(p.u0);
}
bool cov_flat_hyp3(const AmbientPoint& p, const ChartParams& prm) {
    return std::fabs(p.u0 + p.u1) > 2 * std::fabs(prm.get("l", 1.0));
}
bool cov_flat_ell2i(const AmbientPoint& p, const ChartParams& prm) {
    double d = prm.get("d", 1.0);
    return p.u0 * p.u0 - p.u1 * p.u1 > d * d;
}
bool cov_flat_ell2ii(const AmbientPoint& p, const ChartParams& prm) {
    double d = prm.get("d", 1.0);
    return std::fabs(p.u0 * p.u0 - p.u1 * p.u1) < d * d;
}

// ---- catalog -----------------------------------------------------------------

void build_h2_charts(CatalogBuilder& cb) {
    cb.add("H2/SPH", Space::H2, true, {}, {0.1, 2.5, 0.0, 6.2}, {"E2/polar"},
           [](auto t, auto ph, const ChartParams& p) -> std::array<decltype(t), 3> {
               using std::sinh, std::cosh, std::sin, std::cos;
               auto R = decltype(t)(p.get("R", 1));
               return {R * cosh(t), R * sinh(t) * cos(ph), R * sinh(t) * sin(ph)};
           });
    cb.add("H2/SPH-NO", Space::H2, false, {{{"alpha", 10.0}}}, {0.1, 2.5, 0.0, 6.2},
           {"E2/polar-NO"},
           [](auto t, auto ph, const ChartParams& p) -> std::array<decltype(t), 3> {
               using std::sinh, std::cosh, std::sin, std::cos;
               auto R = decltype(t)(p.get("R", 1));
               auto w = ph + R * t / decltype(t)(p.get("alpha", 10));
               return {R * cosh(t), R * sinh(t) * cos(w), R * sinh(t) * sin(w)};
           });
    cb.add("H2/EQ", Space::H2, true, {}, {-1.5, 1.5, -1.5, 1.5}, {"E2/cartesian"},
           [](auto t1, auto t2, const ChartParams& p) -> std::array<decltype(t1), 3> {
               using std::sinh, std::cosh;
               auto R = decltype(t1)(p.get("R", 1));
               return {R * cosh(t1) * cosh(t2), R * cosh(t1) * sinh(t2), R * sinh(t1)};
           });
    cb.add("H2/EQ-NO", Space::H2, false, {{{"alpha", 10.0}}}, {-1.5, 1.5, -1.5, 1.5},
           {"E2/cartesian-NO"},
           [](auto t1, auto t2, const ChartParams& p) -> std::array<decltype(t1), 3> {
               using std::sinh, std::cosh;
               auto R = decltype(t1)(p.get("R", 1));
               auto w = t2 + R * t1 / decltype(t1)(p.get("alpha", 10));
               return {R * cosh(t1) * cosh(w), R * cosh(t1) * sinh(w), R * sinh(t1)};
           });
    cb.add("H2/HO", Space::H2, true, {}, {-2.0, 2.0, 0.2, 3.0}, {"E2/cartesian"},
           [](auto x, auto y, const ChartParams& p) -> std::array<decltype(x), 3> {
               auto R = decltype(x)(p.get("R", 1));
               auto half = decltype(x)(0.5);
               return {R * (x * x + y * y + 1) * half / y, R * (x * x + y * y - 1) * half / y,
                       R * x / y};
           });
    cb.add("H2/HO-NO", Space::H2, false, {}, {-2.0, 2.0, 0.2, 3.0}, {"E2/cartesian-NO"},
           [](auto x, auto y, const ChartParams& p) -> std::array<decltype(x), 3> {
               auto R = decltype(x)(p.get("R", 1));
               auto half = decltype(x)(0.5);
               auto w = x + y - 1;
               // u1 <-> u2 permuted form of the nonorthogonal horicyclic chart
               return {R * (w * w + y * y + 1) * half / y, R * w / y,
                       R * (w * w + y * y - 1) * half / y};
           });
    cb.add("H2/EP", Space::H2, true, {{{"gamma", 2.0}}}, {-1.2, 1.2, 0.1, 2.0},
           {"E2/cartesian", "E2/parabolic"},
           [](auto th, auto a, const ChartParams& p) -> std::array<decltype(th), 3> {
               using std::sin, std::cos, std::cosh, std::tan, std::tanh, std::sqrt;
               auto R = decltype(th)(p.get("R", 1));
               auto g = decltype(th)(p.get("gamma", 2));
               auto den = 2 * cos(th) * cosh(a) * sqrt(g);
               auto w = cosh(a) * cosh(a) - sin(th) * sin(th);
               return {R * (w + g) / den, R * (w - g) / den, R * tan(th) * tanh(a)};
           });
    cb.add("H2/HP", Space::H2, true, {{{"gamma", 2.0}}}, {0.3, 2.8, 0.2, 2.0}, {"E2/cartesian"},
           [](auto th, auto b, const ChartParams& p) -> std::array<decltype(th), 3> {
               using std::sin, std::cos, std::sinh, std::cosh, std::sqrt;
               auto R = decltype(th)(p.get("R", 1));
               auto g = decltype(th)(p.get("gamma", 2));
               auto den = 2 * sin(th) * sinh(b) * sqrt(g);
               auto w = cosh(b) * cosh(b) - sin(th) * sin(th);
               return {R * (w + g) / den, R * (w - g) / den,
                       R * (cos(th) / sin(th)) * (cosh(b) / sinh(b))};
           });
    cb.add("H2/SCP", Space::H2, true, {}, {0.3, 2.2, 0.3, 2.2}, {"E2/cartesian"},
           [](auto xi, auto eta, const ChartParams& p) -> std::array<decltype(xi), 3> {
               auto R = decltype(xi)(p.get("R", 1));
               auto s = eta * eta + xi * xi;
               auto den = 8 * xi * eta;
               return {R * (s * s + 4) / den, R * (s * s - 4) / den,
                       R * (eta * eta - xi * xi) / (2 * xi * eta)};
           });
    cb.add("H2/SCP-rot", Space::H2, true, {}, {0.3, 2.2, 0.3, 2.2}, {"E2/cartesian"},
           [](auto xi, auto eta, const ChartParams& p) -> std::array<decltype(xi), 3> {
               auto R = decltype(xi)(p.get("R", 1));
               auto s = eta * eta + xi * xi;
               auto den = 8 * xi * eta;
               auto A = (s * s + 4) / den;
               auto B = (s * s - 4) / den;
               auto C = (eta * eta - xi * xi) / (2 * xi * eta);
               auto r2 = decltype(xi)(std::sqrt(2.0));
               return {R * A, R * (B + C) / r2, R * (C - B) / r2};
           },
           nullptr, "trig rotation by -pi/4 about u0");
    {
        double K = complete_K(EllipticModulus(std::sqrt(0.5)));
        cb.add("H2/E", Space::H2, true, {{{"k2", 0.5}}}, {0.15, 2 * K - 0.15, 0.1, 4 * K - 0.1},
               {"E2/elliptic", "E2/polar", "E2/cartesian"},
               [](auto nu, auto b, const ChartParams& p) -> std::array<decltype(nu), 3> {
                   auto R = decltype(nu)(p.get("R", 1));
                   double k2 = p.get("k2", 0.5);
                   double k = std::sqrt(k2), kp = std::sqrt(1 - k2);
                   auto jn = jac(nu, k);
                   auto jb = jac(b, kp);
                   auto ik = decltype(nu)(1.0 / k);
                   return {R * ik * jb.dn / jn.sn, R * ik * jn.dn * jb.cn / jn.sn,
                           R * jn.cn * jb.sn / jn.sn};
               });
        cb.add("H2/E-rot", Space::H2, true, {{{"k2", 0.5}}},
               {0.15, 2 * K - 0.15, 0.1, 4 * K - 0.1}, {"E2/parabolic"},
               [](auto nu, auto b, const ChartParams& p) -> std::array<decltype(nu), 3> {
                   auto R = decltype(nu)(p.get("R", 1));
                   double k2 = p.get("k2", 0.5);
                   double k = std::sqrt(k2), kp = std::sqrt(1 - k2);
                   auto jn = jac(nu, k);
                   auto jb = jac(b, kp);
                   auto ik2 = decltype(nu)(1.0 / k2);
                   auto kpv = decltype(nu)(kp);
                   return {R * ik2 * (jb.dn + kpv * jn.dn * jb.cn) / jn.sn,
                           R * ik2 * (kpv * jb.dn + jn.dn * jb.cn) / jn.sn,
                           R * jn.cn * jb.sn / jn.sn};
               },
               nullptr, "hyperbolic rotation of the elliptic chart about u2");
        cb.add("H2/H", Space::H2, true, {{{"k2", 0.5}}},
               {0.15, 2 * K - 0.15, 0.15, 2 * K - 0.15}, {"E2/cartesian"},
               [](auto nu, auto mu, const ChartParams& p) -> std::array<decltype(nu), 3> {
                   auto R = decltype(nu)(p.get("R", 1));
                   double k2 = p.get("k2", 0.5);
                   double k = std::sqrt(k2), kp = std::sqrt(1 - k2);
                   auto jn = jac(nu, k);
                   auto jm = jac(mu, kp);
                   auto den = jn.sn * jm.sn;
                   return {R * decltype(nu)(1.0 / (k * kp)) * jn.dn * jm.dn / den,
                           R * decltype(nu)(1.0 / k) * jm.cn / den,
                           R * decltype(nu)(1.0 / kp) * jn.cn / den};
               });
    }
    cb.add("H2/E-alg", Space::H2, true,
           {{{"a1", 2.0}, {"a2", 1.0}, {"a3", 0.0}, {"s0", 1}, {"s1", 1}, {"s2", 1}}},
           {2.05, 8.0, 1.05, 1.95}, {},
           [](auto r1, auto r2, const ChartParams& p) -> std::array<decltype(r1), 3> {
               auto R = decltype(r1)(p.get("R", 1));
               auto a1 = decltype(r1)(p.get("a1", 2)), a2 = decltype(r1)(p.get("a2", 1)),
                    a3 = decltype(r1)(p.get("a3", 0));
               auto u0 = R * region_sqrt((r1 - a3) * (r2 - a3) / ((a1 - a3) * (a2 - a3)), "rho range");
               auto u1 = R * region_sqrt((r1 - a2) * (r2 - a2) / ((a1 - a2) * (a2 - a3)), "rho range");
               auto u2 = R * region_sqrt((r1 - a1) * (a1 - r2) / ((a1 - a2) * (a1 - a3)), "rho range");
               return {decltype(r1)(p.get("s0", 1)) * u0, decltype(r1)(p.get("s1", 1)) * u1,
                       decltype(r1)(p.get("s2", 1)) * u2};
           },
           nullptr, "coordinates (rho1, rho2) with a2 <= rho2 < a1 <= rho1");
    cb.add("H2/H-alg", Space::H2, true,
           {{{"a1", 2.0}, {"a2", 1.0}, {"a3", 0.0}, {"s0", 1}, {"s1", 1}, {"s2", 1}}},
           {2.05, 8.0, -6.0, -0.05}, {},
           [](auto r1, auto r2, const ChartParams& p) -> std::array<decltype(r1), 3> {
               auto R = decltype(r1)(p.get("R", 1));
               auto a1 = decltype(r1)(p.get("a1", 2)), a2 = decltype(r1)(p.get("a2", 1)),
                    a3 = decltype(r1)(p.get("a3", 0));
               auto u0 = R * region_sqrt((r1 - a2) * (a2 - r2) / ((a1 - a2) * (a2 - a3)), "rho range");
               auto u1 = R * region_sqrt((r1 - a3) * (a3 - r2) / ((a1 - a3) * (a2 - a3)), "rho range");
               auto u2 = R * region_sqrt((r1 - a1) * (a1 - r2) / ((a1 - a2) * (a1 - a3)), "rho range");
               return {decltype(r1)(p.get("s0", 1)) * u0, decltype(r1)(p.get("s1", 1)) * u1,
                       decltype(r1)(p.get("s2", 1)) * u2};
           },
           nullptr, "coordinates (rho1, rho2) with rho2 < a3, rho1 > a1");
    cb.add("H2/SH", Space::H2, true, {{{"c", 1.0}, {"s0", 1}, {"s1", 1}, {"s2", 1}}},
           {-0.6, 1.5, -3.0, -1.1}, {"E2/cartesian", "E2/parabolic"},
           [](auto t1, auto t2, const ChartParams& p) -> std::array<decltype(t1), 3> {
               using std::sinh, std::cosh, std::sqrt;
               auto R = decltype(t1)(p.get("R", 1));
               auto c = decltype(t1)(p.get("c", 1));
               auto l1 = sinh(t1), l2 = sinh(t2);
               auto cc = c * c + 1;
               auto root = sqrt(cc) * cosh(t1) * cosh(t2);
               auto u0 = decltype(t1)(p.get("s0", 1)) * R *
                         region_sqrt((root + 1 - l1 * l2 - c * (l1 + l2)) / (2 * cc),
                                     "lambda ordering");
               // the trace identity pins u1 (magnitude and sign) once u0 is chosen
               auto u1m = R * region_sqrt((root - 1 + l1 * l2 + c * (l1 + l2)) / (2 * cc),
                                          "lambda ordering");
               auto u1 = (R * R * (l1 + l2) - c * (u1m * u1m - u0 * u0)) / (2 * u0);
               auto u2 = decltype(t1)(p.get("s2", 1)) * R *
                         region_sqrt(-(l1 + c) * (l2 + c) / cc, "lambda ordering");
               return {u0, u1, u2};
           },
           nullptr, "lambda_i / R^2 = sinh tau_i, sinh tau_2 < -c < sinh tau_1");
}

void build_h1_charts(CatalogBuilder& cb) {
    cb.add("H~2/SPH", Space::H1, true, {}, {-1.5, 1.5, 0.1, 6.2}, {"E11/cartesian-I"},
           [](auto t, auto ph, const ChartParams& p) -> std::array<decltype(t), 3> {
               using std::sinh, std::cosh, std::sin, std::cos;
               auto R = decltype(t)(p.get("R", 1));
               return {R * sinh(t), R * cosh(t) * cos(ph), R * cosh(t) * sin(ph)};
           });
    cb.add("H~2/SPH-NO", Space::H1, false, {{{"alpha", 10.0}}}, {-1.5, 1.5, 0.1, 6.2},
           {"E11/cartesian-III"},
           [](auto t, auto ph, const ChartParams& p) -> std::array<decltype(t), 3> {
               using std::sinh, std::cosh, std::sin, std::cos;
               auto R = decltype(t)(p.get("R", 1));
               auto w = ph + R * t / decltype(t)(p.get("alpha", 10));
               return {R * sinh(t), -R * cosh(t) * sin(w), R * cosh(t) * cos(w)};
           });
    cb.add("H~2/EQ-Ia", Space::H1, true, {{{"s2", 1}}}, {0.1, 1.8, -1.8, 1.8},
           {"E11/pseudo-polar-Ia"},
           [](auto t1, auto t2, const ChartParams& p) -> std::array<decltype(t1), 3> {
               using std::sinh, std::cosh;
               auto R = decltype(t1)(p.get("R", 1));
               return {R * sinh(t1) * cosh(t2), R * sinh(t1) * sinh(t2),
                       decltype(t1)(p.get("s2", 1)) * R * cosh(t1)};
           },
           cov_abs_u2_gt_R);
    cb.add("H~2/EQ-Ia-NO", Space::H1, false, {{{"alpha", 10.0}, {"s2", 1}}}, {0.1, 1.8, -1.8, 1.8},
           {"E11/semi-hyperbolic-i"},
           [](auto t1, auto t2, const ChartParams& p) -> std::array<decltype(t1), 3> {
               using std::sinh, std::cosh, std::log;
               auto R = decltype(t1)(p.get("R", 1));
               auto w = t2 - log(R * t1 / decltype(t1)(p.get("alpha", 10)));
               return {R * sinh(t1) * cosh(w), R * sinh(t1) * sinh(w),
                       decltype(t1)(p.get("s2", 1)) * R * cosh(t1)};
           },
           cov_abs_u2_gt_R);
    cb.add("H~2/EQ-Ib", Space::H1, true, {}, {0.1, 3.0, -1.8, 1.8}, {"E11/pseudo-polar-Ib"},
           [](auto ph, auto t, const ChartParams& p) -> std::array<decltype(ph), 3> {
               using std::sinh, std::cosh, std::sin, std::cos;
               auto R = decltype(ph)(p.get("R", 1));
               return {R * sin(ph) * sinh(t), R * sin(ph) * cosh(t), R * cos(ph)};
           },
           cov_abs_u2_lt_R);
    cb.add("H~2/EQ-Ib-NO", Space::H1, false, {{{"alpha", 10.0}}}, {0.1, 3.0, -1.8, 1.8},
           {"E11/semi-hyperbolic-ii"},
           [](auto ph, auto t, const ChartParams& p) -> std::array<decltype(ph), 3> {
               using std::sinh, std::cosh, std::sin, std::cos, std::log;
               auto R = decltype(ph)(p.get("R", 1));
               auto w = t - log(R * ph / decltype(ph)(p.get("alpha", 10)));
               return {R * sin(ph) * sinh(w), R * sin(ph) * cosh(w), R * cos(ph)};
           },
           cov_abs_u2_lt_R);
    cb.add("H~2/EQ-IIa", Space::H1, true, {{{"s1", 1}}}, {0.1, 1.8, -1.8, 1.8}, {},
           [](auto t1, auto t2, const ChartParams& p) -> std::array<decltype(t1), 3> {
               using std::sinh, std::cosh;
               auto R = decltype(t1)(p.get("R", 1));
               return {R * sinh(t1) * cosh(t2), decltype(t1)(p.get("s1", 1)) * R * cosh(t1),
                       R * sinh(t1) * sinh(t2)};
           },
           cov_abs_u1_gt_R, "no contraction limit exists for this system");
    cb.add("H~2/EQ-IIa-NO", Space::H1, false, {{{"alpha", 10.0}, {"s1", 1}}},
           {0.1, 1.8, -1.8, 1.8}, {},
           [](auto t1, auto t2, const ChartParams& p) -> std::array<decltype(t1), 3> {
               using std::sinh, std::cosh, std::log;
               auto R = decltype(t1)(p.get("R", 1));
               auto w = t2 - log(R * t1 / decltype(t1)(p.get("alpha", 10)));
               return {R * sinh(t1) * cosh(w), decltype(t1)(p.get("s1", 1)) * R * cosh(t1),
                       R * sinh(t1) * sinh(w)};
           },
           cov_abs_u1_gt_R, "does not contract to Cartesian-III for any schedule");
    cb.add("H~2/EQ-IIb", Space::H1, true, {}, {0.1, 3.0, -1.8, 1.8}, {"E11/cartesian-I"},
           [](auto ph, auto t, const ChartParams& p) -> std::array<decltype(ph), 3> {
               using std::sinh, std::cosh, std::sin, std::cos;
               auto R = decltype(ph)(p.get("R", 1));
               return {R * sin(ph) * sinh(t), R * cos(ph), R * sin(ph) * cosh(t)};
           },
           cov_abs_u1_lt_R);
    cb.add("H~2/EQ-IIb-NO", Space::H1, false, {{{"alpha", 10.0}}}, {0.3, 2.8, -1.8, 1.8},
           {"E11/cartesian-III"},
           [](auto ph, auto t, const ChartParams& p) -> std::array<decltype(ph), 3> {
               using std::sinh, std::cosh, std::sin, std::cos;
               auto R = decltype(ph)(p.get("R", 1));
               auto w = t + R * ph / decltype(ph)(p.get("alpha", 10));
               return {-R * cos(ph) * sinh(w), R * sin(ph), -R * cos(ph) * cosh(w)};
           },
           cov_abs_u1_lt_R);
    cb.add("H~2/HO", Space::H1, true, {}, {-2.0, 2.0, 0.2, 2.5}, {},
           [](auto x, auto y, const ChartParams& p) -> std::array<decltype(x), 3> {
               auto R = decltype(x)(p.get("R", 1));
               auto half = decltype(x)(0.5);
               return {R * (x * x - y * y + 1) * half / y, R * (x * x - y * y - 1) * half / y,
                       R * x / y};
           });
    cb.add("H~2/HO-perm", Space::H1, true, {}, {-2.0, 2.0, 0.2, 2.5}, {"E11/cartesian-I"},
           [](auto x, auto y, const ChartParams& p) -> std::array<decltype(x), 3> {
               auto R = decltype(x)(p.get("R", 1));
               auto half = decltype(x)(0.5);
               return {R * (x * x - y * y + 1) * half / y, R * x / y,
                       R * (x * x - y * y - 1) * half / y};
           });
    cb.add("H~2/HO-NO", Space::H1, false, {}, {0.2, 2.0, -2.0, 2.0}, {"E11/cartesian-II"},
           [](auto xi, auto eta, const ChartParams& p) -> std::array<decltype(xi), 3> {
               auto R = decltype(xi)(p.get("R", 1));
               auto q = decltype(xi)(0.25);
               return {R * q * (xi * eta * eta - 4 * eta + xi),
                       R * q * (xi * eta * eta - 4 * eta - xi),
                       R * (1 - xi * eta * decltype(xi)(0.5))};
           });
    cb.add("H~2/EP", Space::H1, true, {{{"gamma", 2.0}}}, {-1.2, 1.2, 0.15, 1.8},
           {"E11/hyperbolic-II"},
           [](auto t1, auto t2, const ChartParams& p) -> std::array<decltype(t1), 3> {
               using std::sinh, std::cosh, std::tanh, std::sqrt;
               auto R = decltype(t1)(p.get("R", 1));
               auto g = decltype(t1)(p.get("gamma", 2));
               auto den = 2 * cosh(t1) * sinh(t2) * sqrt(g);
               auto w = cosh(t1) * cosh(t1) - cosh(t2) * cosh(t2);
               return {R * (w + g) / den, R * (w - g) / den,
                       R * tanh(t1) * (cosh(t2) / sinh(t2))};
           });
    cb.add("H~2/EP-perm", Space::H1, true, {{{"gamma", 2.0}}}, {-1.2, 1.2, 0.15, 1.8},
           {"E11/cartesian-I"},
           [](auto t1, auto t2, const ChartParams& p) -> std::array<decltype(t1), 3> {
               using std::sinh, std::cosh, std::tanh, std::sqrt;
               auto R = decltype(t1)(p.get("R", 1));
               auto g = decltype(t1)(p.get("gamma", 2));
               auto den = 2 * cosh(t1) * sinh(t2) * sqrt(g);
               auto w = cosh(t1) * cosh(t1) - cosh(t2) * cosh(t2);
               return {R * (w + g) / den, R * tanh(t1) * (cosh(t2) / sinh(t2)),
                       R * (w - g) / den};
           });
    cb.add("H~2/HP-I", Space::H1, true, {{{"gamma", 2.0}}}, {0.15, 1.4, 0.15, 2.9},
           {"E11/hyperbolic-III"},
           [](auto th, auto ph, const ChartParams& p) -> std::array<decltype(th), 3> {
               using std::sin, std::cos, std::sqrt;
               auto R = decltype(th)(p.get("R", 1));
               auto g = decltype(th)(p.get("gamma", 2));
               auto den = 2 * sqrt(g) * sin(th) * sin(ph);
               auto w = cos(th) * cos(th) - sin(ph) * sin(ph);
               return {R * (w + g) / den, R * (w - g) / den,
                       R * (cos(th) / sin(th)) * (cos(ph) / sin(ph))};
           },
           cov_hp);
    cb.add("H~2/HP-II", Space::H1, true, {{{"gamma", 2.0}}}, {0.15, 1.4, 0.15, 2.9},
           {"E11/hyperbolic-III"},
           [](auto th, auto ph, const ChartParams& p) -> std::array<decltype(th), 3> {
               using std::sin, std::cos, std::sqrt;
               auto R = decltype(th)(p.get("R", 1));
               auto g = decltype(th)(p.get("gamma", 2));
               auto den = 2 * sqrt(g) * sin(th) * sin(ph);
               auto cc = cos(th) * cos(th) * cos(ph) * cos(ph);
               auto ss = g * sin(th) * sin(th) * sin(ph) * sin(ph);
               return {R * (cc - 1 + ss) / den, R * (cc - 1 - ss) / den, R * cos(th) * cos(ph)};
           },
           cov_hp);
    cb.add("H~2/HP-III", Space::H1, true, {{{"gamma", 2.0}, {"s2", 1}}}, {0.15, 1.6, 0.15, 1.6},
           {"E11/hyperbolic-III"},
           [](auto th, auto ph, const ChartParams& p) -> std::array<decltype(th), 3> {
               using std::sinh, std::cosh, std::sqrt;
               auto R = decltype(th)(p.get("R", 1));
               auto g = decltype(th)(p.get("gamma", 2));
               auto den = 2 * sqrt(g) * sinh(th) * sinh(ph);
               auto cc = cosh(th) * cosh(th) * cosh(ph) * cosh(ph);
               auto ss = g * sinh(th) * sinh(th) * sinh(ph) * sinh(ph);
               return {R * (cc - 1 + ss) / den, R * (cc - 1 - ss) / den,
                       decltype(th)(p.get("s2", 1)) * R * cosh(th) * cosh(ph)};
           },
           cov_hp);
    cb.add("H~2/HP-I-perm", Space::H1, true, {{{"gamma", 0.5}}}, {0.15, 1.4, 0.15, 2.9},
           {"E11/cartesian-I", "E11/parabolic-I"},
           [](auto th, auto ph, const ChartParams& p) -> std::array<decltype(th), 3> {
               using std::sin, std::cos, std::sqrt;
               auto R = decltype(th)(p.get("R", 1));
               auto g = decltype(th)(p.get("gamma", 0.5));
               auto den = 2 * sqrt(g) * sin(th) * sin(ph);
               auto w = cos(th) * cos(th) - sin(ph) * sin(ph);
               return {R * (w + g) / den, R * (cos(th) / sin(th)) * (cos(ph) / sin(ph)),
                       R * (w - g) / den};
           },
           [](const AmbientPoint& p, const ChartParams& prm) {
               double g = prm.get("gamma", 0.5);
               return std::fabs(p.u0 * (1 - g) - p.u2 * (1 + g)) > 2 * p.R * std::sqrt(g);
           });
    cb.add("H~2/HP-II-perm", Space::H1, true, {{{"gamma", 2.0}}}, {0.15, 1.4, 0.15, 2.9},
           {"E11/cartesian-I"},
           [](auto th, auto ph, const ChartParams& p) -> std::array<decltype(th), 3> {
               using std::sin, std::cos, std::sqrt;
               auto R = decltype(th)(p.get("R", 1));
               auto g = decltype(th)(p.get("gamma", 2));
               auto den = 2 * sqrt(g) * sin(th) * sin(ph);
               auto cc = cos(th) * cos(th) * cos(ph) * cos(ph);
               auto ss = g * sin(th) * sin(th) * sin(ph) * sin(ph);
               return {R * (cc - 1 + ss) / den, R * cos(th) * cos(ph), R * (cc - 1 - ss) / den};
           },
           [](const AmbientPoint& p, const ChartParams& prm) {
               double g = prm.get("gamma", 2.0);
               return std::fabs(p.u0 * (1 - g) - p.u2 * (1 + g)) > 2 * p.R * std::sqrt(g);
           });
    cb.add("H~2/HP-III-perm", Space::H1, true, {{{"gamma", 2.0}, {"s1", 1}}},
           {0.15, 1.6, 0.15, 1.6}, {"E11/parabolic-I"},
           [](auto th, auto ph, const ChartParams& p) -> std::array<decltype(th), 3> {
               using std::sinh, std::cosh, std::sqrt;
               auto R = decltype(th)(p.get("R", 1));
               auto g = decltype(th)(p.get("gamma", 2));
               auto den = 2 * sqrt(g) * sinh(th) * sinh(ph);
               auto cc = cosh(th) * cosh(th) * cosh(ph) * cosh(ph);
               auto ss = g * sinh(th) * sinh(th) * sinh(ph) * sinh(ph);
               return {R * (cc - 1 + ss) / den,
                       decltype(th)(p.get("s1", 1)) * R * cosh(th) * cosh(ph),
                       R * (cc - 1 - ss) / den};
           },
           [](const AmbientPoint& p, const ChartParams& prm) {
               double g = prm.get("gamma", 2.0);
               return std::fabs(p.u0 * (1 - g) - p.u2 * (1 + g)) > 2 * p.R * std::sqrt(g);
           },
           "never reaches the flat origin; the Cartesian limit is a negative case");
    cb.add("H~2/SCP", Space::H1, true, {{{"s2", 1}}}, {0.2, 1.1, 1.3, 2.6}, {},
           [](auto xi, auto eta, const ChartParams& p) -> std::array<decltype(xi), 3> {
               auto R = decltype(xi)(p.get("R", 1));
               auto w = eta * eta - xi * xi;
               auto den = 8 * xi * eta;
               return {R * (w * w + 4) / den, R * (w * w - 4) / den,
                       decltype(xi)(p.get("s2", 1)) * R * (eta * eta + xi * xi) / (2 * xi * eta)};
           },
           cov_abs_u2_gt_R, "operator contracts onto the non-separable flat invariant");
    cb.add("H~2/SCP-rot", Space::H1, true, {}, {0.35, 1.05, 1.5, 2.6}, {"E11/cartesian-I"},
           [](auto xi, auto eta, const ChartParams& p) -> std::array<decltype(xi), 3> {
               auto R = decltype(xi)(p.get("R", 1));
               auto w = eta * eta - xi * xi;
               auto q = xi * xi + eta * eta;
               auto den = 16 * xi * eta;
               auto r2 = decltype(xi)(std::sqrt(2.0));
               return {R * (w * w - 4 * q + 20) / den, R * (w * w + 4 * q - 28) / (den * r2),
                       -R * (w * w - 12 * q + 4) / (den * r2)};
           },
           nullptr, "double hyperbolic rotation of the SCP chart");
    cb.add("H~2/SCP-complex", Space::H1, false, {}, {-1.2, 1.2, 0.5, 2.0}, {"E11/cartesian-I"},
           [](auto A, auto B, const ChartParams& p) -> std::array<decltype(A), 3> {
               using std::sqrt;
               auto R = decltype(A)(p.get("R", 1));
               auto m = A * A + B * B;
               auto rt = sqrt(m);
               auto half = decltype(A)(0.5);
               return {R * half * (rt - B * B / (m * rt)), R * A / rt,
                       R * half * (rt + B * B / (m * rt))};
           },
           nullptr, "illustrative complex-root intermediate; nonorthogonal, non-separable");
    {
        double Kp = complete_K(EllipticModulus(std::sqrt(0.5)));
        cb.add("H~2/E", Space::H1, true, {{{"k2", 0.5}}}, {-1.1, 1.1, 0.15, 2 * Kp - 0.15},
               {"E11/elliptic-I", "E11/cartesian-I"},
               [](auto t, auto mu, const ChartParams& p) -> std::array<decltype(t), 3> {
                   auto R = decltype(t)(p.get("R", 1));
                   double kp = std::sqrt(1 - p.get("k2", 0.5));
                   auto jt = jac(t, kp);
                   auto jm = jac(mu, kp);
                   auto den = jt.dn * jm.sn;
                   return {R * jm.cn / den, R * jt.sn * jm.dn / den, -R * jt.cn / den};
               });
        cb.add("H~2/E-alg", Space::H1, true,
               {{{"a1", 2.0}, {"a2", 1.0}, {"a3", 0.0}, {"s0", 1}, {"s1", 1}, {"s2", 1}}},
               {1.05, 1.95, -6.0, -0.05}, {},
               [](auto r1, auto r2, const ChartParams& p) -> std::array<decltype(r1), 3> {
                   auto R = decltype(r1)(p.get("R", 1));
                   auto a1 = decltype(r1)(p.get("a1", 2)), a2 = decltype(r1)(p.get("a2", 1)),
                        a3 = decltype(r1)(p.get("a3", 0));
                   auto u0 = R * region_sqrt((r1 - a3) * (a3 - r2) / ((a1 - a3) * (a2 - a3)), "rho range");
                   auto u1 = R * region_sqrt((r1 - a2) * (a2 - r2) / ((a1 - a2) * (a2 - a3)), "rho range");
                   auto u2 = R * region_sqrt((a1 - r1) * (a1 - r2) / ((a1 - a2) * (a1 - a3)), "rho range");
                   return {decltype(r1)(p.get("s0", 1)) * u0, decltype(r1)(p.get("s1", 1)) * u1,
                           decltype(r1)(p.get("s2", 1)) * u2};
               },
               nullptr, "coordinates (rho1, rho2) with rho2 < a3 < a2 < rho1 < a1");
    }
    {
        double K = complete_K(EllipticModulus(std::sqrt(0.5)));
        cb.add("H~2/H-IA", Space::H1, true, {{{"k2", 0.5}}}, {-1.1, 1.1, 0.15, 2 * K - 0.15},
               {"E11/elliptic-II-i"},
               [](auto t, auto mu, const ChartParams& p) -> std::array<decltype(t), 3> {
                   auto R = decltype(t)(p.get("R", 1));
                   double kp = std::sqrt(1 - p.get("k2", 0.5));
                   auto jt = jac(t, kp);
                   auto jm = jac(mu, kp);
                   auto den = jt.cn * jm.sn;
                   auto ikp = decltype(t)(1.0 / kp);
                   return {-R * ikp * jm.dn / den, -R * jt.sn * jm.cn / den,
                           -R * ikp * jt.dn / den};
               },
               cov_h);
        cb.add("H~2/H-IB", Space::H1, true, {{{"k2", 0.5}}}, {0.15, 2 * K - 0.15, -1.1, 1.1}, {},
               [](auto nu, auto s, const ChartParams& p) -> std::array<decltype(nu), 3> {
                   auto R = decltype(nu)(p.get("R", 1));
                   double k = std::sqrt(p.get("k2", 0.5));
                   auto jn = jac(nu, k);
                   auto js = jac(s, k);
                   auto den = jn.sn * js.cn;
                   auto ik = decltype(nu)(1.0 / k);
                   return {-R * ik * jn.dn / den, -R * ik * js.dn / den,
                           -R * jn.cn * js.sn / den};
               },
               cov_h);
        cb.add("H~2/H-IIA", Space::H1, true, {{{"k2", 0.5}}},
               {0.15, 4 * K - 0.15, 0.15, 2 * K - 0.15},
               {"E11/elliptic-II-ii", "E11/cartesian-I"},
               [](auto a, auto s, const ChartParams& p) -> std::array<decltype(a), 3> {
                   auto R = decltype(a)(p.get("R", 1));
                   double k = std::sqrt(p.get("k2", 0.5));
                   auto ja = jac(a, k);
                   auto js = jac(s, k);
                   auto kv = decltype(a)(k);
                   return {-R * kv * ja.cn * js.sn / js.dn, -R * kv * ja.sn * js.cn / js.dn,
                           -R * ja.dn / js.dn};
               },
               cov_h);
        cb.add("H~2/H-IIB", Space::H1, true, {{{"k2", 0.5}}}, {-1.1, 1.1, 0.15, 4 * K - 0.15}, {},
               [](auto t, auto b, const ChartParams& p) -> std::array<decltype(t), 3> {
                   auto R = decltype(t)(p.get("R", 1));
                   double kp = std::sqrt(1 - p.get("k2", 0.5));
                   auto jt = jac(t, kp);
                   auto jb = jac(b, kp);
                   auto kpv = decltype(t)(kp);
                   return {-R * kpv * jt.sn * jb.cn / jt.dn, -R * jb.dn / jt.dn,
                           -R * kpv * jt.cn * jb.sn / jt.dn};
               },
               cov_h);
        cb.add("H~2/H-alg", Space::H1, true,
               {{{"a1", 2.0}, {"a2", 1.0}, {"a3", 0.0}, {"s0", 1}, {"s1", 1}, {"s2", 1}}},
               {-6.0, -0.05, -6.0, -0.05}, {},
               [](auto r1, auto r2, const ChartParams& p) -> std::array<decltype(r1), 3> {
                   auto R = decltype(r1)(p.get("R", 1));
                   auto a1 = decltype(r1)(p.get("a1", 2)), a2 = decltype(r1)(p.get("a2", 1)),
                        a3 = decltype(r1)(p.get("a3", 0));
                   auto u0 = R * region_sqrt((r1 - a2) * (r2 - a2) / ((a1 - a2) * (a2 - a3)), "rho range");
                   auto u1 = R * region_sqrt((r1 - a3) * (r2 - a3) / ((a1 - a3) * (a2 - a3)), "rho range");
                   auto u2 = R * region_sqrt((r1 - a1) * (r2 - a1) / ((a1 - a2) * (a1 - a3)), "rho range");
                   return {decltype(r1)(p.get("s0", 1)) * u0, decltype(r1)(p.get("s1", 1)) * u1,
                           decltype(r1)(p.get("s2", 1)) * u2};
               },
               cov_h, "region IA box: both rho below a3; region IIB takes both in (a2, a1)");
        cb.add("H~2/H-rot", Space::H1, true, {{{"k2", 0.5}, {"s0", 1}}},
               {-1.1, 1.1, 0.15, 2 * K - 0.15}, {"E11/parabolic-I", "E11/pseudo-polar-Ia"},
               [](auto t, auto mu, const ChartParams& p) -> std::array<decltype(t), 3> {
                   auto R = decltype(t)(p.get("R", 1));
                   double k2 = p.get("k2", 0.5);
                   double k = std::sqrt(k2), kp = std::sqrt(1 - k2);
                   auto jt = jac(t, kp);
                   auto jm = jac(mu, kp);
                   auto den = decltype(t)(kp * kp) * jt.cn * jm.sn;
                   auto kv = decltype(t)(k);
                   auto s0 = decltype(t)(p.get("s0", 1));
                   // hyperbolic rotation of the region-IA chart about u1
                   return {s0 * R * (kv * jt.dn - jm.dn) / den,
                           -R * jt.sn * jm.cn / (jt.cn * jm.sn),
                           R * (kv * jm.dn - jt.dn) / den};
               },
               nullptr, "rotated hyperbolic; limit point pinned at (0, 0, R)");
    }
    cb.add("H~2/SH", Space::H1, true, {{{"c", 1.0}, {"s0", 1}, {"s1", 1}, {"s2", 1}}},
           {1.2, 2.8, 1.2, 2.8}, {"E11/hyperbolic-I"},
           [](auto t1, auto t2, const ChartParams& p) -> std::array<decltype(t1), 3> {
               using std::sinh, std::cosh, std::sqrt;
               auto R = decltype(t1)(p.get("R", 1));
               auto c = decltype(t1)(p.get("c", 1));
               auto cc = c * c + 1;
               auto s1 = sinh(t1), s2 = sinh(t2);
               auto root = sqrt(cc) * cosh(t1) * cosh(t2);
               // w - cc and cc - w expanded so no c^2-scale cancellation occurs
               // at the contraction schedules where c grows like R^2
               auto u0 = decltype(t1)(p.get("s0", 1)) * R *
                         region_sqrt((root + s1 * s2 - c * (s1 + s2) - 1) / (2 * cc),
                                     "type region");
               auto u1 = R * R * ((s1 + s2) + c * (s1 * s2 - 1)) / (2 * u0 * cc);
               auto w = (s1 - c) * (s2 - c);
               auto u2 = decltype(t1)(p.get("s2", 1)) * R * region_sqrt(w / cc, "type region");
               return {u0, u1, u2};
           },
           cov_sh, "type II box (sinh tau_i >= c); type I takes tau_i <= asinh(c)");
    cb.add("H~2/SH-perm", Space::H1, true, {{{"c", 1.0}, {"s0", 1}, {"s1", 1}, {"s2", 1}}},
           {1.2, 2.8, 1.2, 2.8}, {"E11/cartesian-I", "E11/parabolic-I"},
           [](auto t1, auto t2, const ChartParams& p) -> std::array<decltype(t1), 3> {
               using std::sinh, std::cosh, std::sqrt;
               auto R = decltype(t1)(p.get("R", 1));
               auto c = decltype(t1)(p.get("c", 1));
               auto cc = c * c + 1;
               auto s1 = sinh(t1), s2 = sinh(t2);
               auto root = sqrt(cc) * cosh(t1) * cosh(t2);
               auto u0 = decltype(t1)(p.get("s0", 1)) * R *
                         region_sqrt((root + s1 * s2 - c * (s1 + s2) - 1) / (2 * cc),
                                     "type region");
               auto uh = R * R * ((s1 + s2) + c * (s1 * s2 - 1)) / (2 * u0 * cc);
               auto w = (s1 - c) * (s2 - c);
               auto u2 = decltype(t1)(p.get("s2", 1)) * R * region_sqrt(w / cc, "type region");
               return {u0, u2, uh};
           },
           [](const AmbientPoint& p, const ChartParams& prm) {
               double c = prm.get("c", 1.0);
               double tr = 2 * p.u0 * p.u2 + c * (p.u2 * p.u2 - p.u0 * p.u0);
               double pr = p.R * p.R * (p.u1 * p.u1 + 2 * c * p.u0 * p.u2);
               return tr * tr - 4 * pr > 0;
           });
}

void build_flat_charts(CatalogBuilder& cb) {
    auto id2 = [](auto x, auto y, const ChartParams&) -> std::array<decltype(x), 3> {
        return {x, y, decltype(x)(0)};
    };
    cb.add("E2/cartesian", Space::E2, true, {}, {-3, 3, -3, 3}, {}, id2);
    cb.add("E2/cartesian-NO", Space::E2, false, {}, {-3, 3, -3, 3}, {},
           [](auto xp, auto yp, const ChartParams&) -> std::array<decltype(xp), 3> {
               return {xp + yp, yp, decltype(xp)(0)};
           });
    cb.add("E2/polar", Space::E2, true, {}, {0.1, 3, 0, 6.2}, {},
           [](auto r, auto ph, const ChartParams&) -> std::array<decltype(r), 3> {
               using std::sin, std::cos;
               return {r * cos(ph), r * sin(ph), decltype(r)(0)};
           });
    cb.add("E2/polar-NO", Space::E2, false, {{{"alpha", 10.0}}}, {0.1, 3, 0, 6.2}, {},
           [](auto r, auto ph, const ChartParams& p) -> std::array<decltype(r), 3> {
               using std::sin, std::cos;
               auto w = ph + r / decltype(r)(p.get("alpha", 10));
               return {r * cos(w), r * sin(w), decltype(r)(0)};
           });
    cb.add("E2/parabolic", Space::E2, true, {}, {0.1, 2.5, -2.5, 2.5}, {},
           [](auto u, auto v, const ChartParams&) -> std::array<decltype(u), 3> {
               auto half = decltype(u)(0.5);
               return {(u * u - v * v) * half, u * v, decltype(u)(0)};
           });
    cb.add("E2/elliptic", Space::E2, true, {{{"D", 1.0}}}, {0.1, 2.5, 0, 6.2}, {},
           [](auto xi, auto eta, const ChartParams& p) -> std::array<decltype(xi), 3> {
               using std::sinh, std::cosh, std::sin, std::cos;
               auto D = decltype(xi)(p.get("D", 1));
               return {D * cosh(xi) * cos(eta), D * sinh(xi) * sin(eta), decltype(xi)(0)};
           });

    cb.add("E11/cartesian-I", Space::E11, true, {}, {-3, 3, -3, 3}, {}, id2);
    cb.add("E11/cartesian-II", Space::E11, false, {}, {-3, 3, -3, 3}, {},
           [](auto xp, auto tp, const ChartParams&) -> std::array<decltype(xp), 3> {
               auto q = decltype(xp)(0.25);
               return {xp + tp * q, xp - tp * q, decltype(xp)(0)};
           },
           nullptr, "coordinates (x', t'): t = x' + t'/4, x = x' - t'/4");
    cb.add("E11/cartesian-III", Space::E11, false, {}, {-3, 3, -3, 3}, {},
           [](auto tp, auto xp, const ChartParams&) -> std::array<decltype(tp), 3> {
               auto half = decltype(tp)(0.5);
               return {-tp * half, tp * half + xp, decltype(tp)(0)};
           },
           nullptr, "coordinates (t', x'): t = -t'/2, x = t'/2 + x'");
    cb.add("E11/pseudo-polar-Ia", Space::E11, true, {}, {0.1, 3, -1.8, 1.8}, {},
           [](auto r, auto t, const ChartParams&) -> std::array<decltype(r), 3> {
               using std::sinh, std::cosh;
               return {r * cosh(t), r * sinh(t), decltype(r)(0)};
           },
           cov_flat_t_gt_x);
    cb.add("E11/pseudo-polar-Ib", Space::E11, true, {}, {0.1, 3, -1.8, 1.8}, {},
           [](auto r, auto t, const ChartParams&) -> std::array<decltype(r), 3> {
               using std::sinh, std::cosh;
               return {r * sinh(t), r * cosh(t), decltype(r)(0)};
           },
           cov_flat_x_gt_t);
    cb.add("E11/parabolic-I", Space::E11, true, {}, {-2.0, 2.0, 0.1, 2.0}, {},
           [](auto u, auto v, const ChartParams&) -> std::array<decltype(u), 3> {
               auto half = decltype(u)(0.5);
               return {(u * u + v * v) * half, u * v, decltype(u)(0)};
           },
           cov_flat_t_gt_x);
    cb.add("E11/parabolic-II", Space::E11, true, {{{"alpha", 1.0}}}, {-2.0, 2.0, -2.0, 2.0}, {},
           [](auto xi, auto eta, const ChartParams& p) -> std::array<decltype(xi), 3> {
               auto a = decltype(xi)(p.get("alpha", 1));
               auto w = (eta - xi) * (eta - xi) / (2 * a);
               return {w - (eta + xi), w + (eta + xi), decltype(xi)(0)};
           },
           nullptr, "flat-only chart; reached from the compound operator limit");
    cb.add("E11/hyperbolic-I", Space::E11, true, {{{"l", 1.0}}}, {-1.5, 1.5, -1.5, 1.5}, {},
           [](auto z1, auto z2, const ChartParams& p) -> std::array<decltype(z1), 3> {
               using std::sinh, std::cosh;
               auto l = decltype(z1)(p.get("l", 1));
               auto half = decltype(z1)(0.5);
               return {l * half * (cosh((z1 - z2) * half) - sinh((z1 + z2) * half)),
                       l * half * (cosh((z1 - z2) * half) + sinh((z1 + z2) * half)),
                       decltype(z1)(0)};
           });
    cb.add("E11/hyperbolic-II", Space::E11, true, {{{"l", 1.0}}}, {-1.5, 1.5, -1.5, 1.5}, {},
           [](auto z1, auto z2, const ChartParams& p) -> std::array<decltype(z1), 3> {
               using std::sinh, std::exp;
               auto l = decltype(z1)(p.get("l", 1));
               return {l * (sinh(z2 - z1) + exp(z1 + z2)), l * (sinh(z2 - z1) - exp(z1 + z2)),
                       decltype(z1)(0)};
           });
    cb.add("E11/hyperbolic-III", Space::E11, true, {{{"l", 1.0}, {"branch", 1.0}}},
           {-1.5, 1.5, -1.5, 1.5}, {},
           [](auto z1, auto z2, const ChartParams& p) -> std::array<decltype(z1), 3> {
               using std::cosh, std::exp;
               auto l = decltype(z1)(p.get("l", 1));
               auto s = decltype(z1)(p.get("branch", 1));
               return {l * (cosh(z1 - z2) + s * exp(z1 + z2)),
                       l * (cosh(z1 - z2) - s * exp(z1 + z2)), decltype(z1)(0)};
           },
           cov_flat_hyp3, "branch +1 covers t > x, branch -1 covers x > t");
    cb.add("E11/elliptic-I", Space::E11, true, {{{"D", 1.0}}}, {-1.8, 1.8, -1.8, 1.8}, {},
           [](auto xi, auto eta, const ChartParams& p) -> std::array<decltype(xi), 3> {
               using std::sinh, std::cosh;
               auto D = decltype(xi)(p.get("D", 1));
               return {D * sinh(xi) * cosh(eta), D * cosh(xi) * sinh(eta), decltype(xi)(0)};
           });
    cb.add("E11/elliptic-II-i", Space::E11, true, {{{"d", 1.0}}}, {0.1, 1.8, -1.8, 1.8}, {},
           [](auto xi, auto eta, const ChartParams& p) -> std::array<decltype(xi), 3> {
               using std::sinh, std::cosh;
               auto d = decltype(xi)(p.get("d", 1));
               return {d * cosh(eta) * cosh(xi), d * sinh(eta) * sinh(xi), decltype(xi)(0)};
           },
           cov_flat_ell2i);
    cb.add("E11/elliptic-II-ii", Space::E11, true, {{{"d", 1.0}}}, {0.1, 1.4, 0.1, 3.0}, {},
           [](auto xi, auto eta, const ChartParams& p) -> std::array<decltype(xi), 3> {
               using std::sin, std::cos;
               auto d = decltype(xi)(p.get("d", 1));
               return {d * cos(eta) * cos(xi), d * sin(eta) * sin(xi), decltype(xi)(0)};
           },
           cov_flat_ell2ii);
    cb.add("E11/semi-hyperbolic-i", Space::E11, false, {}, {0.2, 2.5, -1.5, 1.5}, {},
           [](auto r, auto t, const ChartParams&) -> std::array<decltype(r), 3> {
               using std::exp;
               auto half = decltype(r)(0.5);
               return {half * (exp(t) + r * r * exp(-t)), half * (exp(t) - r * r * exp(-t)),
                       decltype(r)(0)};
           },
           cov_flat_t_gt_x);
    cb.add("E11/semi-hyperbolic-ii", Space::E11, false, {}, {0.2, 2.5, -1.5, 1.5}, {},
           [](auto r, auto t, const ChartParams&) -> std::array<decltype(r), 3> {
               using std::exp;
               auto half = decltype(r)(0.5);
               return {half * (exp(t) - r * r * exp(-t)), half * (exp(t) + r * r * exp(-t)),
                       decltype(r)(0)};
           },
           cov_flat_x_gt_t);
}

std::vector<Chart> build_catalog() {
    CatalogBuilder cb;
    build_h2_charts(cb);
    build_h1_charts(cb);
    build_flat_charts(cb);
    return std::move(cb.charts);
}

}  // namespace

const std::vector<Chart>& chart_catalog() {
    static const std::vector<Chart> cat = build_catalog();
    return cat;
}

const Chart& find_chart(const std::string& id) {
    for (const Chart& c : chart_catalog())
        if (c.id == id) return c;
    throw std::invalid_argument("unknown chart id: " + id);
}

AmbientPoint embed(const Chart& chart, double xi1, double xi2) {
    return embed(chart, xi1, xi2, chart.params);
}

AmbientPoint embed(const Chart& chart, double xi1, double xi2, const ChartParams& params) {
    auto u = chart.embed_d(xi1, xi2, params);
    AmbientPoint p;
    p.u0 = u[0];
    p.u1 = u[1];
    p.u2 = u[2];
    p.space = chart.space;
    p.R = params.get("R", 1.0);
    if (!std::isfinite(p.u0) || !std::isfinite(p.u1) || !std::isfinite(p.u2))
        throw OutOfDomain(chart.id + ": embedding not finite at (" + std::to_string(xi1) + ", " +
                          std::to_string(xi2) + ")");
    return p;
}

std::array<long double, 3> embed_ext(const Chart& chart, long double xi1, long double xi2,
                                     const ChartParams& params) {
    return chart.embed_l(xi1, xi2, params);
}

MetricTensor metric(const Chart& chart, double xi1, double xi2) {
    return metric(chart, xi1, xi2, chart.params);
}

MetricTensor metric(const Chart& chart, double xi1, double xi2, const ChartParams& params) {
    Dual2 x1(xi1, 1, 0), x2(xi2, 0, 1);
    auto u = chart.embed_ad(x1, x2, params);
    double eps = 1, sgn0 = 1, sgn1 = 1, sgn2 = 1;
    switch (chart.space) {
        case Space::H2: eps = 1; sgn0 = -1; sgn1 = 1; sgn2 = 1; break;
        case Space::H1: eps = -1; sgn0 = -1; sgn1 = 1; sgn2 = 1; break;
        case Space::E2: eps = 1; sgn0 = 1; sgn1 = 1; sgn2 = 0; break;
        case Space::E11: eps = 1; sgn0 = 1; sgn1 = -1; sgn2 = 0; break;
    }
    MetricTensor g;
    g.g11 = eps * (sgn0 * u[0].d1 * u[0].d1 + sgn1 * u[1].d1 * u[1].d1 + sgn2 * u[2].d1 * u[2].d1);
    g.g12 = eps * (sgn0 * u[0].d1 * u[0].d2 + sgn1 * u[1].d1 * u[1].d2 + sgn2 * u[2].d1 * u[2].d2);
    g.g22 = eps * (sgn0 * u[0].d2 * u[0].d2 + sgn1 * u[1].d2 * u[1].d2 + sgn2 * u[2].d2 * u[2].d2);
    return g;
}

bool covered(const Chart& chart, const AmbientPoint& p) {
    if (!chart.covered_fn) return true;
    return chart.covered_fn(p, chart.params);
}

std::vector<GridRow> grid(const Chart& chart, int n1, int n2) {
    if (n1 < 2 || n2 < 2) throw std::invalid_argument("grid: counts must be >= 2");
    std::vector<GridRow> rows;
    rows.reserve((size_t)n1 * n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            double x1 = chart.domain.lo1 + (chart.domain.hi1 - chart.domain.lo1) * i / (n1 - 1);
            double x2 = chart.domain.lo2 + (chart.domain.hi2 - chart.domain.lo2) * j / (n2 - 1);
            GridRow row{x1, x2, 0, 0, 0, false};
            try {
                AmbientPoint p = embed(chart, x1, x2);
                row.u0 = p.u0;
                row.u1 = p.u1;
                row.u2 = p.u2;
                row.covered = covered(chart, p);
            } catch (const OutOfDomain&) {
                row.covered = false;
            }
            rows.push_back(row);
        }
    return rows;
}

std::string grid_csv(const std::vector<GridRow>& rows) {
    std::string out = "xi1,xi2,u0,u1,u2,covered\n";
    char buf[256];
    for (const GridRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.xi1, r.xi2, r.u0,
                      r.u1, r.u2, r.covered ? 1 : 0);
        out += buf;
    }
    return out;
}

std::vector<std::pair<double, double>> domain_samples(const Chart& chart, int count) {
    // Halton pairs (bases 2 and 3), kept slightly interior
    std::vector<std::pair<double, double>> pts;
    pts.reserve(count);
    auto halton = [](int idx, int base) {
        double f = 1.0, r = 0.0;
        while (idx > 0) {
            f /= base;
            r += f * (idx % base);
            idx /= base;
        }
        return r;
    };
    for (int i = 1; i <= count; ++i) {
        double a = 0.02 + 0.96 * halton(i, 2);
        double b = 0.02 + 0.96 * halton(i, 3);
        pts.emplace_back(chart.domain.lo1 + (chart.domain.hi1 - chart.domain.lo1) * a,
                         chart.domain.lo2 + (chart.domain.hi2 - chart.domain.lo2) * b);
    }
    return pts;
}

}  // namespace hyperlab
