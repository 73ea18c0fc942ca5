#pragma once

#include "primcob/multipoint.hpp"

#include <string>

namespace primcob {

/// Plane plot of a model: curves are drawn as the image of g with double
/// points (filled dots), folds (crosses) and cusps (diamonds); surfaces get
/// the projections of their fold curves.
std::string render_svg(const PrimMapModel& model, const ResolvedPointSet* doubles,
                       const ResolvedPointSet* folds, const ResolvedPointSet* cusps,
                       const std::vector<Polyline>* fold_curves);

void write_svg(const std::string& svg, const std::string& path);

} // namespace primcob
