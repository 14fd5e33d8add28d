#pragma once

#include "wgarch/pricing.hpp"

#include <string>
#include <vector>

namespace wgarch::cli {

struct SmileCurve {
    std::string label;
    std::string color;
    bool dashed = false;
    std::vector<SmileRow> rows;
};

/// Implied vol against moneyness: one polyline per curve, axis ticks and a
/// legend. Rows with a non-finite implied vol are skipped.
std::string render_smile_svg(const std::vector<SmileCurve>& curves, const std::string& title);

}  // namespace wgarch::cli
