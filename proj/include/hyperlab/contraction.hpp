#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/charts.hpp"
#include "hyperlab/generators.hpp"

namespace hyperlab {

// Central projection onto the tangent plane: u0 = R for the two-sheeted
// surface (projective disc), u2 = R for the one-sheeted one.
std::pair<double, double> beltrami(const AmbientPoint& p);
std::pair<long double, long double> beltrami_ext(const std::array<long double, 3>& u, Space space,
                                                 long double R);

struct ScheduleResult {
    long double xi1, xi2;
    ChartParams params;  // chart parameters at this R (R itself included)
};

struct OperatorPair {
    GenSpace curved;
    GenSpace flat;
    // scaled operator over the curved Beltrami basis, polynomial in eps
    std::function<DiffOperator(const GeneratorBasis&)> scaled;
    // expected flat invariant over the flat basis
    std::function<DiffOperator(const GeneratorBasis&)> target;
    bool separable_target = true;
};

struct ContractionCase {
    std::string id;          // "H2/SPH->E2/polar"
    std::string source;      // source chart id ("" for operator-only rows)
    std::string target;      // target flat chart id
    bool negative = false;   // catalogued no-contraction row
    double expected_order = 1.0;  // regression value, +-0.15 band
    std::string note;

    // flat sample points are coordinates of the *target* chart
    std::vector<std::pair<double, double>> flat_points;
    std::function<ScheduleResult(double, double, long double R)> schedule;
    // expected projective pair; defaults to the target chart embedding
    std::function<std::pair<double, double>(double, double)> expected_pair;
    std::optional<OperatorPair> op;
};

struct ConvergenceReport {
    std::string id;
    std::vector<long double> r_values;
    std::vector<double> max_errors;
    double fitted_order = 0;
    bool no_contraction = false;
    bool pass = false;
    std::string detail;
};

class NegativeCaseError : public std::runtime_error {
public:
    explicit NegativeCaseError(const std::string& what) : std::runtime_error(what) {}
};

const std::vector<ContractionCase>& contraction_cases();
const ContractionCase& find_case(const std::string& id);

std::vector<long double> default_R_list();

// Coordinate-level run: schedule -> embed -> project -> compare, log-log fit.
// Throws NegativeCaseError for catalogued negative rows.
ConvergenceReport run_contraction(const ContractionCase& c,
                                  const std::vector<long double>& r_list,
                                  int max_points = 0);

// Exact operator-level contraction; returns the residual operator (empty on
// success) along with printable forms.
struct OperatorContractionResult {
    bool exact_zero;
    std::string scaled_at_zero;
    std::string target;
};
OperatorContractionResult operator_contraction(const ContractionCase& c);

// Compound-operator reconstruction run: solves the characteristic system at
// projected points for increasing R and checks the flat chart recovery.
ConvergenceReport parabolic_II_compound(double alpha,
                                        const std::vector<std::pair<double, double>>& flat_pts,
                                        const std::vector<long double>& r_list);

// Table-coverage manifest: every contracted-system cell must own >= 1 case.
struct ManifestRow {
    std::string row;                    // descriptive row key
    std::vector<std::string> case_ids;  // witnesses (negative rows included)
};
const std::vector<ManifestRow>& contraction_manifest();

std::string contraction_report_json(const std::vector<ConvergenceReport>& reports);
std::string contraction_errors_csv(const ConvergenceReport& report);

}  // namespace hyperlab
