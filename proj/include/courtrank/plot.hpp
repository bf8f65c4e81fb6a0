#pragma once

// Static SVG figures for fitted curves and ROC comparisons.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "courtrank/prob_model.hpp"

namespace courtrank {

// Empirical bin rates (marker area grows with the bin count) under the
// fitted logistic curve.
std::string logistic_svg(std::span<const DiffBin> bins, const LogisticModel& model,
                         const std::string& title);

struct RocSeries {
  std::string label;
  RocResult roc;
};

std::string roc_svg(std::span<const RocSeries> series, const std::string& title);

}  // namespace courtrank
