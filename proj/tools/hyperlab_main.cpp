// Command-line front end: classification, chart evaluation, grid export,
// verification suites and contraction runs.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperlab/classify.hpp"
#include "hyperlab/contraction.hpp"
#include "hyperlab/elliptic.hpp"
#include "hyperlab/separation.hpp"

using namespace hyperlab;
using nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIO = 74;

std::string now_string() {
    char buf[64];
    std::time_t t = std::time(nullptr);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

ordered_json word_json(const AutomorphismWord& w) {
    ordered_json arr = ordered_json::array();
    for (const Move& m : w) {
        const char* names[] = {"rotK1", "rotK2", "rotL", "reflect0", "reflect1",
                               "reflect2", "casimirShift", "scale"};
        ordered_json item = {{"move", names[(int)m.kind]}};
        if (m.kind == Move::CasimirShift) {
            item["alpha1"] = m.p1;
            item["alpha2"] = m.p2;
        } else if (m.kind != Move::Reflect0 && m.kind != Move::Reflect1 &&
                   m.kind != Move::Reflect2) {
            item["parameter"] = m.p1;
        }
        arr.push_back(item);
    }
    return arr;
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) return false;
    out << content;
    return bool(out);
}

int cmd_classify(const std::vector<double>& first, const std::vector<double>& second) {
    ordered_json out;
    out["timestamp"] = now_string();
    try {
        if (!first.empty()) {
            FirstOrderElement v{first[0], first[1], first[2]};
            out["invariants"] = {{"I", first_order_invariant(v)}};
            auto res = classify_first_order(v);
            out["class"] = first_order_type_name(res.type);
            out["word"] = word_json(res.word);
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        SecondOrderForm m{second[0], second[1], second[2], second[3], second[4], second[5]};
        auto inv = invariants_second_order(m);
        out["invariants"] = {{"I1", inv.I1}, {"I2", inv.I2}, {"I3", inv.I3},
                             {"A", inv.A},   {"B", inv.B},   {"C", inv.C},
                             {"D", inv.D},   {"E", inv.E},   {"F", inv.F}};
        auto res = classify_second_order(m);
        out["class"] = orbit_tag_name(res.cls.tag);
        switch (res.cls.tag) {
            case OrbitTag::EP:
            case OrbitTag::HP: out["gamma"] = res.cls.param; break;
            case OrbitTag::E: out["sinh2beta"] = res.cls.param; break;
            case OrbitTag::H: out["sin2alpha"] = res.cls.param; break;
            case OrbitTag::SH: out["c"] = res.cls.param; break;
            default: break;
        }
        out["word"] = word_json(res.word);
        std::cout << out.dump(2) << "\n";
        return res.cls.tag == OrbitTag::CasimirDegenerate ? kExitDegenerate : 0;
    } catch (const std::invalid_argument& e) {
        out["error"] = e.what();
        std::cout << out.dump(2) << "\n";
        return kExitDegenerate;
    } catch (const NumericalInstability& e) {
        out["error"] = e.what();
        std::cout << out.dump(2) << "\n";
        return kExitDegenerate;
    }
}

void check(std::vector<CheckReport>& reps, const std::string& name, double residual, double tol) {
    reps.push_back({name, residual, tol, residual <= tol, ""});
}

std::vector<CheckReport> verify_algebra(std::uint64_t seed) {
    std::vector<CheckReport> reps;
    for (GenSpace sp : {GenSpace::AmbientH, GenSpace::BeltramiH2, GenSpace::BeltramiH1,
                        GenSpace::FlatE2, GenSpace::FlatE11}) {
        auto b = build_generators(sp);
        const PolyVectorField* g[3] = {&b.g1, &b.g2, &b.g3};
        bool jac = true;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    PolyVectorField s = vf_commutator(*g[i], vf_commutator(*g[j], *g[k])) +
                                        vf_commutator(*g[j], vf_commutator(*g[k], *g[i])) +
                                        vf_commutator(*g[k], vf_commutator(*g[i], *g[j]));
                    jac = jac && s.is_zero();
                }
        reps.push_back({"jacobi-identity/basis-" + std::to_string((int)sp), jac ? 0.0 : 1.0, 0,
                        jac, ""});
    }
    {
        auto [K1, K2, L] = build_generators(GenSpace::AmbientH);
        bool table = vf_commutator(K1, K2) == -L && vf_commutator(L, K1) == K2 &&
                     vf_commutator(K2, L) == K1 && vf_commutator(K2, K1) == L &&
                     vf_commutator(K1, L) == -K2 && vf_commutator(L, K2) == -K1 &&
                     vf_commutator(K1, K1).is_zero() && vf_commutator(K2, K2).is_zero() &&
                     vf_commutator(L, L).is_zero();
        reps.push_back({"commutation-table/ambient", table ? 0.0 : 1.0, 0, table, ""});
    }
    struct P { OperatorClass c; Coef q; };
    for (const P& p : std::initializer_list<P>{{OperatorClass::EQ, Coef(0)},
             {OperatorClass::SPH, Coef(0)}, {OperatorClass::HO, Coef(0)},
             {OperatorClass::SCP, Coef(0)}, {OperatorClass::EP, Coef(1)},
             {OperatorClass::EP, Coef(2)}, {OperatorClass::EP, Coef(3)},
             {OperatorClass::HP, Coef(1)}, {OperatorClass::HP, Coef(2)},
             {OperatorClass::HP, Coef(3)}, {OperatorClass::E, Coef(1)},
             {OperatorClass::E, Coef(3)}, {OperatorClass::ERot, Coef(1)},
             {OperatorClass::H, Coef(Rational(1, 2))}, {OperatorClass::SH, Coef(0)},
             {OperatorClass::SH, Coef(1)}, {OperatorClass::SH, Coef(2)},
             {OperatorClass::HRot, Coef(Rational(5, 2))}, {OperatorClass::SCPRot, Coef(0)},
             {OperatorClass::SCPTilde, Coef(0)}, {OperatorClass::SCPPerm, Coef(0)},
             {OperatorClass::ParabolicII, Coef(1)}})
        reps.push_back(commutation_certificate(p.c, p.q));
    (void)seed;
    return reps;
}

std::vector<CheckReport> verify_charts(const std::string& only, int points) {
    std::vector<CheckReport> reps;
    for (const Chart& c : chart_catalog()) {
        if (!only.empty() && c.id != only) continue;
        if (c.space == Space::E2 || c.space == Space::E11) continue;
        double R = c.params.get("R", 1.0);
        double worst = 0;
        for (auto [x1, x2] : domain_samples(c, points)) {
            try {
                worst = std::max(worst, std::fabs(embed(c, x1, x2).embedding_residual()));
            } catch (const OutOfDomain&) {
            }
        }
        check(reps, "embedding/" + c.id, worst, 1e-9 * R * R);
        if (c.orthogonal) {
            double w = 0;
            for (auto [x1, x2] : domain_samples(c, points / 4)) {
                try {
                    MetricTensor g = metric(c, x1, x2);
                    w = std::max(w, std::fabs(g.g12) / std::max(std::fabs(g.g11),
                                                                std::fabs(g.g22)));
                } catch (const OutOfDomain&) {
                }
            }
            check(reps, "orthogonality/" + c.id, w, 1e-8);
        }
    }
    // Jacobi-form vs algebraic-form gauge agreement for the elliptic and
    // hyperbolic families
    if (only.empty() || only == "H2/E" || only == "H2/H" || only == "H~2/E") {
        double k = std::sqrt(0.5), kp = std::sqrt(0.5);
        double a1 = 2, a2 = 1, a3 = 0;
        auto agree = [&](const char* jid, const char* aid, auto rho_map) {
            if (!only.empty() && only != jid) return;
            const Chart& cj = find_chart(jid);
            const Chart& ca = find_chart(aid);
            double w = 0;
            for (auto [x1, x2] : domain_samples(cj, points)) {
                try {
                    AmbientPoint pj = embed(cj, x1, x2);
                    auto [r1, r2] = rho_map(x1, x2);
                    AmbientPoint pa = embed(ca, r1, r2);
                    w = std::max({w, std::fabs(std::fabs(pj.u0) - std::fabs(pa.u0)),
                                  std::fabs(std::fabs(pj.u1) - std::fabs(pa.u1)),
                                  std::fabs(std::fabs(pj.u2) - std::fabs(pa.u2))});
                } catch (const OutOfDomain&) {
                }
            }
            check(reps, std::string("gauge-agreement/") + jid, w, 1e-10);
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
    }
    if (only.empty() || only == "elliptic") {
        double worst = 0;
        for (double k = 0.1; k < 0.95; k += 0.1) {
            EllipticModulus m(k);
            for (double u = -3; u <= 3; u += 0.17) {
                auto a = jacobi_real(u, m);
                auto l = jacobi_landen(u, m);
                worst = std::max({worst, std::fabs(a.sn - l.sn), std::fabs(a.cn - l.cn),
                                  std::fabs(a.dn - l.dn)});
            }
        }
        check(reps, "elliptic/landen-vs-agm", worst, 1e-12);
        double wid = 0;
        for (double k = 0.1; k < 0.95; k += 0.1) {
            EllipticModulus m(k);
            double K = complete_K(m);
            for (double u = -4 * K; u <= 4 * K; u += K / 3.1) {
                auto t = jacobi_real(u, m);
                wid = std::max({wid, std::fabs(t.sn * t.sn + t.cn * t.cn - 1),
                                std::fabs(k * k * t.sn * t.sn + t.dn * t.dn - 1)});
            }
        }
        check(reps, "elliptic/identities", wid, 1e-12);
    }
    return reps;
}

std::vector<CheckReport> verify_separation(const std::string& cls_name, double cparam,
                                           int points) {
    std::vector<CheckReport> reps;
    struct Pair { const char* chart; OperatorClass cls; double q; };
    std::vector<Pair> pairs = {{"H2/SH", OperatorClass::SH, 1.0},
                               {"H~2/SH", OperatorClass::SH, 1.0},
                               {"H2/EP", OperatorClass::EP, 2.0},
                               {"H~2/EP", OperatorClass::EP, 2.0},
                               {"H2/E", OperatorClass::E, 1.0}};
    for (const Pair& p : pairs) {
        if (!cls_name.empty() && operator_class_name(p.cls) != cls_name) continue;
        double q = cls_name.empty() ? p.q : cparam;
        reps.push_back(lambda_consistency(find_chart(p.chart), p.cls, q, points));
    }
    if (cls_name.empty())
        for (const Chart& c : chart_catalog())
            if (c.orthogonal) reps.push_back(liouville_check(c, points));
    return reps;
}

int cmd_verify(const std::string& suite, const std::string& chart, const std::string& cls,
               double cparam, int points, std::uint64_t seed, const std::string& outpath) {
    std::vector<CheckReport> reps;
    if (suite == "algebra" || suite == "all") {
        auto r = verify_algebra(seed);
        reps.insert(reps.end(), r.begin(), r.end());
    }
    if (suite == "charts" || suite == "all") {
        auto r = verify_charts(chart, points);
        reps.insert(reps.end(), r.begin(), r.end());
    }
    if (suite == "separation" || suite == "all") {
        auto r = verify_separation(cls, cparam, points);
        reps.insert(reps.end(), r.begin(), r.end());
    }
    if (reps.empty()) {
        std::cerr << "unknown suite: " << suite << "\n";
        return kExitUsage;
    }
    bool all = true;
    for (const auto& r : reps) {
        all = all && r.pass;
        std::cout << (r.pass ? "pass  " : "FAIL  ") << r.name << "  residual " << r.max_residual
                  << " (tol " << r.tolerance << ")\n";
    }
    if (!outpath.empty() && !write_file(outpath, report_json(reps))) return kExitIO;
    return all ? 0 : kExitFail;
}

int cmd_contract(const std::string& id, int points, const std::string& outdir) {
    std::vector<ConvergenceReport> reports;
    auto run_one = [&](const ContractionCase& c) {
        ConvergenceReport rep;
        if (c.negative) {
            rep.id = c.id;
            rep.no_contraction = true;
            rep.pass = true;
            rep.detail = c.note;
        } else if (!c.schedule) {
            rep = parabolic_II_compound(1.0, c.flat_points, default_R_list());
        } else {
            rep = run_contraction(c, default_R_list(), points);
        }
        if (c.op) {
            auto opres = operator_contraction(c);
            rep.pass = rep.pass && opres.exact_zero;
            rep.detail += opres.exact_zero ? "; operator limit exact" : "; OPERATOR RESIDUAL";
        }
        reports.push_back(rep);
    };
    try {
        if (id == "all") {
            for (const auto& c : contraction_cases()) run_one(c);
        } else {
            run_one(find_case(id));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    bool all = true;
    for (const auto& r : reports) {
        all = all && r.pass;
        if (r.no_contraction)
            std::cout << "no-contraction  " << r.id << "  (" << r.detail << ")\n";
        else
            std::cout << (r.pass ? "pass  " : "FAIL  ") << r.id << "  " << r.detail << "\n";
        if (!outdir.empty() && !r.no_contraction) {
            std::string fname = r.id;
            for (char& ch : fname)
                if (ch == '/' || ch == '>' || ch == '~') ch = '_';
            if (!write_file(outdir + "/" + fname + ".csv", contraction_errors_csv(r)))
                return kExitIO;
        }
    }
    if (!outdir.empty() &&
        !write_file(outdir + "/contract-report.json", contraction_report_json(reports)))
        return kExitIO;
    return all ? 0 : kExitFail;
}

int cmd_grid(const std::string& chart_id, int n1, int n2, const std::string& out) {
    try {
        const Chart& c = find_chart(chart_id);
        auto rows = grid(c, n1, n2);
        if (!write_file(out, grid_csv(rows))) {
            std::cerr << "cannot write " << out << "\n";
            return kExitIO;
        }
        std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_elliptic(double u, double k, const std::string& shift) {
    if (k < 0 || k > 1) {
        std::cerr << "modulus k must lie in [0,1]\n";
        return kExitUsage;
    }
    EllipticModulus m(k);
    ordered_json out;
    out["timestamp"] = now_string();
    try {
        if (shift.empty()) {
            auto t = jacobi_real(u, m);
            out["sn"] = t.sn;
            out["cn"] = t.cn;
            out["dn"] = t.dn;
        } else {
            JacobiShift s;
            if (shift == "iKprime") s = JacobiShift::IKPrime;
            else if (shift == "K") s = JacobiShift::KReal;
            else if (shift == "2K") s = JacobiShift::TwoKReal;
            else {
                std::cerr << "unknown shift: " << shift << "\n";
                return kExitUsage;
            }
            auto t = jacobi_shifted(u, s, m);
            out["sn"] = {{"re", t.sn.real()}, {"im", t.sn.imag()}};
            out["cn"] = {{"re", t.cn.real()}, {"im", t.cn.imag()}};
            out["dn"] = {{"re", t.dn.real()}, {"im", t.dn.imag()}};
        }
        out["K"] = (k < 1) ? complete_K(m) : 0.0;
        out["Kprime"] = (m.kprime < 1 && m.kprime > 0) ? complete_K(EllipticModulus(m.kprime))
                                                       : complete_K(EllipticModulus(0));
    } catch (const std::domain_error& e) {
        out["error"] = e.what();
        std::cout << out.dump(2) << "\n";
        return kExitFail;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_catalog() {
    std::cout << "charts (" << chart_catalog().size() << "):\n";
    for (const Chart& c : chart_catalog()) {
        std::cout << "  " << c.id << "  [" << space_name(c.space)
                  << (c.orthogonal ? ", orthogonal" : ", nonorthogonal") << "]";
        if (!c.contraction_targets.empty()) {
            std::cout << "  ->";
            for (const auto& t : c.contraction_targets) std::cout << " " << t;
        }
        if (!c.note.empty()) std::cout << "  (" << c.note << ")";
        std::cout << "\n";
    }
    std::cout << "\ncontraction cases (" << contraction_cases().size() << "):\n";
    for (const auto& c : contraction_cases()) {
        std::cout << "  " << c.id;
        if (c.negative) std::cout << "  [no contraction]";
        if (!c.note.empty()) std::cout << "  (" << c.note << ")";
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification laboratory for separable coordinates on the 2d hyperboloids"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    double tol = 0;
    std::string out;
    bool json_flag = false;
    app.add_option("--seed", seed, "seed for randomized checks");
    app.add_option("--tol", tol, "tolerance override (advisory)");
    app.add_option("--out", out, "output path");
    app.add_flag("--json", json_flag, "prefer JSON output");

    auto* cls = app.add_subcommand("classify", "classify a symmetry element into its orbit");
    std::vector<double> first, second;
    cls->add_option("--first", first, "coefficients a b c")->expected(3);
    cls->add_option("--second", second, "entries a b c d e f")->expected(6);

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string suite, chart_id, class_name;
    double cparam = 1.0;
    int points = 400;
    ver->add_option("suite", suite, "algebra | charts | separation | all")->required();
    ver->add_option("--chart", chart_id, "restrict to one chart");
    ver->add_option("--class", class_name, "restrict to one operator class");
    ver->add_option("--c", cparam, "class parameter");
    ver->add_option("--points", points, "sample count");

    auto* con = app.add_subcommand("contract", "run contraction cases");
    std::string case_id;
    int npts = 0;
    con->add_option("case", case_id, "case id or 'all'")->required();
    con->add_option("--points", npts, "max flat points per case");

    auto* grd = app.add_subcommand("grid", "export a chart grid as CSV");
    std::string grid_chart, grid_out;
    int n1 = 10, n2 = 10;
    grd->add_option("chart", grid_chart)->required();
    grd->add_option("n1", n1)->required();
    grd->add_option("n2", n2)->required();
    grd->add_option("csv", grid_out)->required();

    auto* ell = app.add_subcommand("elliptic", "evaluate the Jacobi triple");
    double eu = 0, ek = 0;
    std::string shift;
    ell->add_option("u", eu)->required();
    ell->add_option("k", ek)->required();
    ell->add_option("--shift", shift, "iKprime | K | 2K");

    auto* cat = app.add_subcommand("catalog", "list charts and contraction cases");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cls->parsed()) {
            if (first.empty() == second.empty()) {
                std::cerr << "classify needs exactly one of --first / --second\n";
                return kExitUsage;
            }
            return cmd_classify(first, second);
        }
        if (ver->parsed()) return cmd_verify(suite, chart_id, class_name, cparam, points, seed, out);
        if (con->parsed()) return cmd_contract(case_id, npts, out);
        if (grd->parsed()) return cmd_grid(grid_chart, n1, n2, grid_out);
        if (ell->parsed()) return cmd_elliptic(eu, ek, shift);
        if (cat->parsed()) return cmd_catalog();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
