#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "hyperlab/classify.hpp"

using namespace hyperlab;

namespace {

double form_dist(const SecondOrderForm& x, const SecondOrderForm& y) {
    return std::max({std::fabs(x.a - y.a), std::fabs(x.b - y.b), std::fabs(x.c - y.c),
                     std::fabs(x.d - y.d), std::fabs(x.e - y.e), std::fabs(x.f - y.f)});
}

}  // namespace

TEST_CASE("first-order invariant") {
    CHECK(first_order_invariant({1, 0, 1}) == doctest::Approx(0));
    CHECK(first_order_invariant({0, 1, 0}) == doctest::Approx(1));
    CHECK(first_order_invariant({0, 0, 1}) == doctest::Approx(-1));
}

TEST_CASE("first-order classification with replayable words") {
    auto sph = classify_first_order({0, 0, 1});
    CHECK(sph.type == FirstOrderType::SPHType);

    auto ho = classify_first_order({1, 0, 1});
    CHECK(ho.type == FirstOrderType::HOType);
    FirstOrderElement v_ho{1, 0, 1};
    FirstOrderElement r = apply_automorphism(v_ho, ho.word);
    CHECK(r.a == doctest::Approx(1).epsilon(1e-12));
    CHECK(r.b == doctest::Approx(0).epsilon(1e-12));
    CHECK(r.c == doctest::Approx(1).epsilon(1e-12));

    auto eq = classify_first_order({3, 4, 0});
    CHECK(eq.type == FirstOrderType::EQType);
    FirstOrderElement v_eq{3, 4, 0};
    FirstOrderElement q = apply_automorphism(v_eq, eq.word);
    CHECK(q.a == doctest::Approx(0).epsilon(1e-12));
    CHECK(q.b == doctest::Approx(1).epsilon(1e-12));
    CHECK(q.c == doctest::Approx(0).epsilon(1e-12));

    CHECK_THROWS_AS(classify_first_order({0, 0, 0}), std::invalid_argument);
}

TEST_CASE("random null, spacelike and timelike vectors classify by sign of I") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-2, 2);
    for (int i = 0; i < 200; ++i) {
        double a = uni(rng), b = uni(rng);
        // null: c^2 = a^2+b^2
        FirstOrderElement n{a, b, std::sqrt(a * a + b * b)};
        if (std::fabs(a) + std::fabs(b) > 1e-3) {
            auto rn = classify_first_order(n);
            CHECK(rn.type == FirstOrderType::HOType);
            FirstOrderElement rep = apply_automorphism(n, rn.word);
            CHECK(std::fabs(rep.a - 1) + std::fabs(rep.b) + std::fabs(rep.c - 1) < 1e-8);
        }
        FirstOrderElement s{a, b, 0.3 * std::hypot(a, b)};
        if (std::hypot(a, b) > 1e-3) {
            auto rs = classify_first_order(s);
            CHECK(rs.type == FirstOrderType::EQType);
        }
        FirstOrderElement t{a, b, 2.5 * std::hypot(a, b) + 0.1};
        auto rt = classify_first_order(t);
        CHECK(rt.type == FirstOrderType::SPHType);
    }
}

TEST_CASE("second-order invariants and minors") {
    SecondOrderForm l2{0, 0, 0, 0, 0, 1};
    auto inv = invariants_second_order(l2);
    CHECK(inv.I1 == doctest::Approx(-1));
    CHECK(inv.I3 == doctest::Approx(0));

    SecondOrderForm ac{1, 0, 1, 0, 0, -1};
    CHECK(ac.I3() == doctest::Approx(-1));

    // minor identities on the I3 = 0 stratum, sampled by pure rotations
    for (int s = 0; s < 30; ++s) {
        SecondOrderForm c = canonical_form({OrbitTag::E, 0.5 + 0.1 * s});
        c = apply_move(c, {Move::RotK1, 0.05 * s - 0.7, 0});
        c = apply_move(c, {Move::RotL, 0.11 * s, 0});
        c = apply_move(c, {Move::RotK2, 0.4 - 0.02 * s, 0});
        CHECK(std::fabs(c.I3()) < 1e-10);
        CHECK(c.mC() * c.mF() == doctest::Approx(c.mE() * c.mE()).epsilon(1e-8));
        CHECK(c.mA() * c.mF() == doctest::Approx(c.mD() * c.mD()).epsilon(1e-8));
        CHECK(c.mA() * c.mC() == doctest::Approx(c.mB() * c.mB()).epsilon(1e-8));
        CHECK(c.a * c.mA() - c.b * c.mB() + c.d * c.mD() == doctest::Approx(0).epsilon(1e-9));
        CHECK(-c.b * c.mB() + c.c * c.mC() - c.e * c.mE() == doctest::Approx(0).epsilon(1e-9));
        CHECK(c.d * c.mD() - c.e * c.mE() + c.f * c.mF() == doctest::Approx(0).epsilon(1e-9));
    }
}

TEST_CASE("invariants are rotation-invariant") {
    SecondOrderForm m{1.5, -0.3, 0.7, 0.2, -1.1, 0.4};
    auto i0 = invariants_second_order(m);
    SecondOrderForm r = m;
    r = apply_move(r, {Move::RotK1, 0.8, 0});
    r = apply_move(r, {Move::RotL, 1.2, 0});
    r = apply_move(r, {Move::RotK2, -0.5, 0});
    auto i1 = invariants_second_order(r);
    CHECK(i1.I1 == doctest::Approx(i0.I1).epsilon(1e-10));
    CHECK(i1.I2 == doctest::Approx(i0.I2).epsilon(1e-10));
    CHECK(i1.I3 == doctest::Approx(i0.I3).epsilon(1e-10));
}

TEST_CASE("identity word is a no-op") {
    SecondOrderForm m{1, 2, 3, 4, 5, 6};
    CHECK(form_dist(apply_automorphism(m, {}), m) == 0);
}

TEST_CASE("rotated elliptic form arises from a K2 rotation plus Casimir shift") {
    double s2b = 1.0;  // sinh^2 beta
    double beta = std::asinh(1.0);
    SecondOrderForm e = canonical_form({OrbitTag::E, s2b});
    AutomorphismWord w = {{Move::RotK2, beta, 0}, {Move::CasimirShift, 1, -s2b}};
    SecondOrderForm r = apply_automorphism(e, w);
    // cosh(2b) L^2 + (sinh(2b)/2){K1,L} with cosh(2b)=3, sinh(2b)=2*sqrt2
    CHECK(r.f == doctest::Approx(3).epsilon(1e-12));
    CHECK(std::fabs(r.d) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::fabs(r.a) < 1e-12);
    CHECK(std::fabs(r.b) < 1e-12);
    CHECK(std::fabs(r.c) < 1e-12);
    CHECK(std::fabs(r.e) < 1e-12);
    // and it still classifies as E with the same parameter
    auto cls = classify_second_order(r);
    CHECK(cls.cls.tag == OrbitTag::E);
    CHECK(cls.cls.param == doctest::Approx(s2b).epsilon(1e-9));
}

TEST_CASE("quarter turn maps the M3 pattern to the M4 pattern") {
    SecondOrderForm m3{2, 1, 3, -1, -3, 3};  // (a b -b; b c -c; -b -c c)
    SecondOrderForm m4 = apply_move(m3, {Move::RotL, M_PI / 2, 0});
    CHECK(m4.d == doctest::Approx(-m4.a).epsilon(1e-12));
    CHECK(m4.e == doctest::Approx(-m4.b).epsilon(1e-12));
    CHECK(m4.f == doctest::Approx(m4.a).epsilon(1e-12));
}

TEST_CASE("simple canonical inputs classify directly") {
    auto sph = classify_second_order({0, 0, 0, 0, 0, 1});
    CHECK(sph.cls.tag == OrbitTag::SPH);

    auto e = classify_second_order({0, 0, 2, 0, 0, 1});
    CHECK(e.cls.tag == OrbitTag::E);
    CHECK(e.cls.param == doctest::Approx(2).epsilon(1e-12));

    auto deg = classify_second_order({2, 0, 2, 0, 0, -2});
    CHECK(deg.cls.tag == OrbitTag::CasimirDegenerate);
}

TEST_CASE("classification round-trips over random conjugations") {
    struct Entry {
        OrbitClass cls;
        bool has_param;
    };
    std::vector<Entry> table = {
        {{OrbitTag::EQ, 0}, false},   {{OrbitTag::SPH, 0}, false},
        {{OrbitTag::HO, 0}, false},   {{OrbitTag::SCP, 0}, false},
        {{OrbitTag::EP, 2.0}, false}, {{OrbitTag::HP, 0.7}, false},
        {{OrbitTag::E, 1.5}, true},   {{OrbitTag::H, 0.3}, true},
        {{OrbitTag::SH, 1.0}, true},
    };
    for (const auto& entry : table) {
        int instab = 0;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            SecondOrderForm m = random_orbit_sample(entry.cls, seed);
            SecondOrderResult res;
            try {
                res = classify_second_order(m);
            } catch (const NumericalInstability&) {
                ++instab;
                continue;
            }
            std::string ctx = orbit_tag_name(entry.cls.tag) + " seed " + std::to_string(seed);
            CHECK_MESSAGE(res.cls.tag == entry.cls.tag, ctx);
            if (entry.has_param) {
                std::string pctx = ctx + " param " + std::to_string(res.cls.param);
                CHECK_MESSAGE(res.cls.param == doctest::Approx(entry.cls.param).epsilon(1e-8),
                              pctx);
            }
            if (entry.cls.tag == OrbitTag::EP || entry.cls.tag == OrbitTag::HP)
                CHECK(res.cls.param == doctest::Approx(1.0).epsilon(1e-8));
            SecondOrderForm replay = apply_automorphism(m, res.word);
            double scale = std::max(1.0, res.canonical.max_abs());
            CHECK(form_dist(replay, res.canonical) / scale < 1e-9);
        }
        CHECK(instab <= 2);
    }
}

TEST_CASE("SH parameter is recovered across its special values") {
    for (double c : {0.0, 1.0, 2.0}) {
        for (std::uint64_t seed = 100; seed < 140; ++seed) {
            SecondOrderForm m = random_orbit_sample({OrbitTag::SH, c}, seed);
            SecondOrderResult res;
            try {
                res = classify_second_order(m);
            } catch (const NumericalInstability&) {
                continue;
            }
            CHECK(res.cls.tag == OrbitTag::SH);
            CHECK(res.cls.param == doctest::Approx(c).epsilon(1e-8));
        }
    }
}

TEST_CASE("HO canonical form sits on the J = 0, I1 = 0 stratum") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SecondOrderForm m = random_orbit_sample({OrbitTag::HO, 0}, seed);
        SecondOrderResult res;
        try {
            res = classify_second_order(m);
        } catch (const NumericalInstability&) {
            continue;
        }
        CHECK(res.cls.tag == OrbitTag::HO);
        const SecondOrderForm& k = res.canonical;
        CHECK(std::fabs((k.a + k.f) * (k.a + k.f) - 4 * k.d * k.d) < 1e-9);
        CHECK(std::fabs(k.I1()) < 1e-9);
    }
}
