#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "heatspec/boundary_ops.hpp"
#include "heatspec/models.hpp"

namespace heatspec {

struct SpectrumTag {
    std::string model;
    int p = 0;
    std::string bc;
};

/// Sorted eigenvalue list with multiplicities, truncated at lambda_max,
/// carrying the Weyl certificate constant W of its model:
/// N(s) <= W s^(m/2) + W for all s.
class EigenvalueList {
public:
    struct Entry {
        double lambda;
        long long multiplicity;
    };

    EigenvalueList(std::vector<Entry> entries, double lambda_max, int m, double weyl_constant,
                   SpectrumTag tag);

    const std::vector<Entry>& entries() const { return entries_; }
    double lambda_max() const { return lambda_max_; }
    int m() const { return m_; }
    double weyl_constant() const { return weyl_constant_; }
    const SpectrumTag& tag() const { return tag_; }

    long long total_count() const;
    long long count_below(double lambda) const;  // N(lambda), inclusive

private:
    std::vector<Entry> entries_;
    double lambda_max_;
    int m_;
    double weyl_constant_;
    SpectrumTag tag_;
};

/// One evaluation of the truncated heat trace with a certified tail bound:
/// |Theta_true(t) - theta| <= tail_bound.
struct HeatTraceSample {
    double t;
    double theta;
    double tail_bound;
};

EigenvalueList interval_spectrum(double length, BoundaryCondition bc, double lambda_max);
EigenvalueList disk_spectrum(double radius, BoundaryCondition bc, double lambda_max);
EigenvalueList hemisphere_spectrum(BoundaryCondition bc, double lambda_max);
EigenvalueList cylinder_spectrum(double height, double radius, BoundaryCondition bc,
                                 double lambda_max);

/// Surface one-form spectrum from the Hodge decomposition: coexact modes
/// pair with Dirichlet scalars, exact modes with nonconstant Neumann
/// scalars, harmonic modes contribute b1 zeros. Relative and absolute
/// conditions coincide on surfaces.
EigenvalueList one_form_spectrum_2d(const ModelManifold& model, BoundaryCondition bc,
                                    double lambda_max);

/// Dispatch on the catalog model; p = 0 for any condition, p = 1 on
/// surfaces for absolute/relative.
EigenvalueList model_spectrum(const ModelManifold& model, int p, BoundaryCondition bc,
                              double lambda_max);

/// theta = sum mult exp(-lambda t) over the list, with the closed-form tail
/// certificate for the stated Weyl constant. Throws when the tail bound
/// exceeds 1e-3 theta (lambda_max too small for this t).
HeatTraceSample heat_trace(const EigenvalueList& list, double t);

std::vector<HeatTraceSample> heat_trace_grid(const EigenvalueList& list, double t_min,
                                             double t_max, int count);

/// CSV exchange format: one `lambda,multiplicity` line per entry, 15
/// significant digits.
void write_spectrum_csv(std::ostream& os, const EigenvalueList& list);
EigenvalueList read_spectrum_csv(std::istream& is, int m, double weyl_constant,
                                 double lambda_max, SpectrumTag tag = {});

}  // namespace heatspec
