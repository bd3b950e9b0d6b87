#include "hyperlab/diffops.hpp"

namespace hyperlab {

namespace {

long long binom(int n, int k) {
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// d^a applied to g, times binomial weights, summed against the remaining
// derivative c+b. Iterates over all c with c <= a componentwise.
void leibniz_accumulate(DiffOperator& out, const MultiPoly& f, const DIdx& a,
                        const MultiPoly& g, const DIdx& b) {
    for (int c0 = 0; c0 <= a[0]; ++c0)
        for (int c1 = 0; c1 <= a[1]; ++c1)
            for (int c2 = 0; c2 <= a[2]; ++c2) {
                MultiPoly dg = g;
                for (int k = 0; k < a[0] - c0; ++k) dg = dg.derivative(0);
                for (int k = 0; k < a[1] - c1; ++k) dg = dg.derivative(1);
                for (int k = 0; k < a[2] - c2; ++k) dg = dg.derivative(2);
                if (dg.is_zero()) continue;
                long long w = binom(a[0], c0) * binom(a[1], c1) * binom(a[2], c2);
                DIdx d{(std::uint8_t)(c0 + b[0]), (std::uint8_t)(c1 + b[1]),
                       (std::uint8_t)(c2 + b[2])};
                out.add_term(d, Coef(w) * (f * dg));
            }
}

}  // namespace

DiffOperator op_compose(const DiffOperator& a, const DiffOperator& b) {
    DiffOperator r;
    for (const auto& [da, fa] : a.terms())
        for (const auto& [db, fb] : b.terms()) leibniz_accumulate(r, fa, da, fb, db);
    return r;
}

DiffOperator op_commutator(const DiffOperator& a, const DiffOperator& b) {
    DiffOperator r = op_compose(a, b) - op_compose(b, a);
    if (a.order() <= 2 && b.order() <= 2 && r.order() > 3)
        throw std::logic_error("op_commutator: order-4 terms failed to cancel");
    return r;
}

}  // namespace hyperlab
