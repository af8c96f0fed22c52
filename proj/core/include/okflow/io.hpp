#pragma once

#include <string>
#include <vector>

#include "okflow/flow.hpp"
#include "okflow/geometry.hpp"

namespace okflow {

// Curve CSV: header `x,y` per component, components separated by one blank
// line, coordinates printed with 17 significant digits.
std::string curve_csv(const Region& region);
// Sidecar JSON: domain plus the closed and side flag of every component.
std::string curve_descriptor(const Region& region);
Region parse_region(const std::string& csv, const std::string& descriptor);

// Writes `csv_path` and its sidecar (`.csv` replaced by `.json`).
void write_region(const Region& region, const std::string& csv_path);
Region read_region(const std::string& csv_path);
std::string sidecar_path(const std::string& csv_path);

// step,energy,area,sup_residual,dt
std::string trace_csv(const std::vector<FlowStepRecord>& trace);

// %.17g, so values round-trip exactly.
std::string format_double(double v);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace okflow
