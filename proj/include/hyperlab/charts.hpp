#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlab {

enum class Space { H2, H1, E2, E11 };  // H1 = one-sheeted hyperboloid

std::string space_name(Space s);

// Forward-mode scalar carrying a value and two directional derivatives
// (d/dxi1, d/dxi2). Charts are templated on the scalar, so the same formula
// yields values (double / long double) and exact first derivatives for the
// metric pullback.
struct Dual2 {
    double v = 0, d1 = 0, d2 = 0;

    Dual2() {}
    Dual2(double x) : v(x) {}
    Dual2(double x, double g1, double g2) : v(x), d1(g1), d2(g2) {}
};

inline Dual2 operator+(const Dual2& a, const Dual2& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
inline Dual2 operator-(const Dual2& a, const Dual2& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.d1, -a.d2}; }
inline Dual2 operator*(const Dual2& a, const Dual2& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + a.v * b.d2};
}
inline Dual2 operator/(const Dual2& a, const Dual2& b) {
    double iv = 1.0 / b.v;
    double q = a.v * iv;
    return {q, (a.d1 - q * b.d1) * iv, (a.d2 - q * b.d2) * iv};
}
inline Dual2 chain(double f, double df, const Dual2& x) { return {f, df * x.d1, df * x.d2}; }
inline Dual2 sin(const Dual2& x) { return chain(std::sin(x.v), std::cos(x.v), x); }
inline Dual2 cos(const Dual2& x) { return chain(std::cos(x.v), -std::sin(x.v), x); }
inline Dual2 tan(const Dual2& x) { double t = std::tan(x.v); return chain(t, 1 + t * t, x); }
inline Dual2 sinh(const Dual2& x) { return chain(std::sinh(x.v), std::cosh(x.v), x); }
inline Dual2 cosh(const Dual2& x) { return chain(std::cosh(x.v), std::sinh(x.v), x); }
inline Dual2 tanh(const Dual2& x) { double t = std::tanh(x.v); return chain(t, 1 - t * t, x); }
inline Dual2 exp(const Dual2& x) { double e = std::exp(x.v); return chain(e, e, x); }
inline Dual2 log(const Dual2& x) { return chain(std::log(x.v), 1.0 / x.v, x); }
inline Dual2 sqrt(const Dual2& x) {
    double s = std::sqrt(x.v);
    return chain(s, s > 0 ? 0.5 / s : 0.0, x);
}
inline double value_of(double x) { return x; }
inline double value_of(long double x) { return (double)x; }
inline double value_of(const Dual2& x) { return x.v; }

struct AmbientPoint {
    double u0 = 0, u1 = 0, u2 = 0;
    Space space = Space::H2;
    double R = 1;

    // -u0^2 + u1^2 + u2^2 + eps R^2, eps = +1 (H2) / -1 (one-sheeted)
    double embedding_residual() const;
};

struct MetricTensor {
    double g11 = 0, g12 = 0, g22 = 0;
    double det() const { return g11 * g22 - g12 * g12; }
};

// Named chart parameters with defaults; unknown names are rejected.
struct ChartParams {
    std::map<std::string, double> values;

    double get(const std::string& name, double fallback) const {
        auto it = values.find(name);
        return it == values.end() ? fallback : it->second;
    }
    void set(const std::string& name, double v) { values[name] = v; }
};

class OutOfDomain : public std::runtime_error {
public:
    explicit OutOfDomain(const std::string& what) : std::runtime_error(what) {}
};

struct DomainBox {
    double lo1, hi1, lo2, hi2;
};

struct Chart {
    std::string id;
    Space space;
    bool orthogonal = true;
    ChartParams params;       // includes R
    DomainBox domain;         // sampling box for grids and verification
    std::vector<std::string> contraction_targets;  // flat chart ids, or empty
    std::string note;

    std::function<std::array<double, 3>(double, double, const ChartParams&)> embed_d;
    std::function<std::array<long double, 3>(long double, long double, const ChartParams&)> embed_l;
    std::function<std::array<Dual2, 3>(Dual2, Dual2, const ChartParams&)> embed_ad;
    // strict covered-region predicate on ambient points (null = full cover)
    std::function<bool(const AmbientPoint&, const ChartParams&)> covered_fn;
};

// All charts of the catalog (hyperboloids and both flat planes).
const std::vector<Chart>& chart_catalog();
const Chart& find_chart(const std::string& id);

AmbientPoint embed(const Chart& chart, double xi1, double xi2);
AmbientPoint embed(const Chart& chart, double xi1, double xi2, const ChartParams& params);
std::array<long double, 3> embed_ext(const Chart& chart, long double xi1, long double xi2,
                                     const ChartParams& params);

// Pullback metric from forward-mode first derivatives of embed.
MetricTensor metric(const Chart& chart, double xi1, double xi2);
MetricTensor metric(const Chart& chart, double xi1, double xi2, const ChartParams& params);

// True iff the chart's covered-region inequality holds strictly at p.
bool covered(const Chart& chart, const AmbientPoint& p);

struct GridRow {
    double xi1, xi2, u0, u1, u2;
    bool covered;
};

std::vector<GridRow> grid(const Chart& chart, int n1, int n2);
std::string grid_csv(const std::vector<GridRow>& rows);

// Low-discrepancy interior samples of the chart's domain box.
std::vector<std::pair<double, double>> domain_samples(const Chart& chart, int count);

}  // namespace hyperlab
