#pragma once

#include <string>
#include <vector>

#include "ocsim/experiment.hpp"

namespace ocsim {

// Renders one self-contained SVG line chart: one polyline per series,
// shared x axis, linear or log10 y axis. No external resources.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<PlotSeries>& series, bool log_y);

} // namespace ocsim
