#pragma once

#include "primcob/jet_ad.hpp"
#include "primcob/rational.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace primcob {

/// Periodic box [0, 2pi)^dim with an optional deck group identifying chart
/// points that represent the same point of the underlying manifold.
struct ChartedDomain {
    int dim = 1;
    /// Deck transformations (including the identity) acting on chart
    /// coordinates; empty means trivial.
    std::vector<std::function<std::array<double, 2>(const std::array<double, 2>&)>> deck;

    std::array<double, 2> wrap(std::array<double, 2> x) const;
    /// Lexicographically smallest wrapped deck image.
    std::array<double, 2> canonical(const std::array<double, 2>& x) const;
    /// Distance respecting periodicity and the deck group.
    double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) const;
};

/// Value and derivative tensors of the lift g at a point, up to order 3.
/// Component index first, then domain directions.
struct MapJet {
    int dim = 1;
    int ambient = 2;
    double v[3] = {};
    double d1[3][2] = {};
    double d2[3][2][2] = {};
    double d3[3][2][2][2] = {};

    /// f-part (all but the last component) Jacobian for surfaces: 2x2.
    double det_df() const;
};

struct Thresholds {
    double immersion = 1e-3;
    double double_angle = 1e-2;      // radians between tangents at double points
    double fold_nondegeneracy = 1e-3;
    double cusp_regularity = 1e-3;
    double degeneracy_gap = 1e-2;    // min separation between special points
};

struct GenericityReport {
    double immersion_margin = 0;
    double double_point_angle_min = 0;
    double fold_nondegeneracy_min = 0;
    double cusp_regularity_min = 0;
    double degeneracy_gap_min = 0;
    bool generic = false;
    std::string notes;
};

class PrimMapModel {
public:
    std::string name;
    ChartedDomain domain;
    int ambient_dim = 2; // curves map to R x R, surfaces to R^2 x R
    std::vector<double> params;
    /// Chart band excluded from margin sampling (chart-singular locus of
    /// models over a sphere chart); empty for global charts.
    double chart_exclusion = 0.0;

    std::function<void(double, TJet1*)> eval_curve;                 // ambient TJet1 components
    std::function<void(double, double, TJet2*)> eval_surface;       // ambient TJet2 components

    MapJet jet(const std::array<double, 2>& x, int order = 3) const;
    std::array<double, 3> value(const std::array<double, 2>& x) const;
    /// Height = last ambient coordinate.
    double height(const std::array<double, 2>& x) const;
};

/// Named builtin families. trig_curve takes two flattened coefficient lists
/// (a0, a1, b1, a2, b2, ...) for the two components, split evenly.
PrimMapModel builtin_model(const std::string& name, const std::vector<Rat>& params = {});

MapJet eval_jet(const PrimMapModel& model, const std::array<double, 2>& x, int order);

/// det(df), its chart gradient, the kernel line of df and the tangency
/// function grad(det).kernel, for surface models.
struct FoldLocalData {
    double det = 0;
    std::array<double, 2> grad{0, 0};
    std::array<double, 2> kernel{0, 0};
    double tangency = 0;
};

FoldLocalData fold_local_data(const PrimMapModel& model, const std::array<double, 2>& x);

GenericityReport genericity_report(const PrimMapModel& model, int grid_resolution = 256,
                                   const Thresholds& thresholds = {});

} // namespace primcob
