#include "okflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "okflow/errors.hpp"

namespace okflow {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string curve_csv(const Region& region) {
  std::string out;
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    if (ci) out += '\n';
    out += "x,y\n";
    for (const Vec2& p : region.component(ci).vertices)
      out += format_double(p.x) + ',' + format_double(p.y) + '\n';
  }
  return out;
}

std::string curve_descriptor(const Region& region) {
  json d;
  const Domain& dom = region.domain();
  d["domain"] = dom.is_disk() ? json{{"kind", "disk"}, {"radius", dom.radius()}} : json{{"kind", "plane"}};
  json comps = json::array();
  for (const PlanarCurve& c : region.components())
    comps.push_back({{"closed", c.closed}, {"side", "left"}, {"vertices", c.size()}});
  d["components"] = comps;
  return d.dump(2) + '\n';
}

Region parse_region(const std::string& csv, const std::string& descriptor) {
  json d;
  try {
    d = json::parse(descriptor);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("curve descriptor: ") + e.what());
  }
  auto fail = [](const std::string& m) { throw ConfigError("curve file: " + m); };

  std::vector<std::vector<Vec2>> blocks;
  std::istringstream in(csv);
  std::string line;
  bool open_block = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      open_block = false;
      continue;
    }
    if (line == "x,y") {
      blocks.emplace_back();
      open_block = true;
      continue;
    }
    if (!open_block) fail("line " + std::to_string(lineno) + ": expected header 'x,y'");
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail("line " + std::to_string(lineno) + ": expected 'x,y'");
    try {
      const double x = std::stod(line.substr(0, comma));
      const double y = std::stod(line.substr(comma + 1));
      blocks.back().push_back({x, y});
    } catch (const std::logic_error&) {
      fail("line " + std::to_string(lineno) + ": bad number");
    }
  }

  try {
    const json& dom = d.at("domain");
    const std::string kind = dom.at("kind").get<std::string>();
    Domain domain = Domain::plane();
    if (kind == "disk")
      domain = Domain::disk(dom.at("radius").get<double>());
    else if (kind != "plane")
      fail("unknown domain kind '" + kind + "'");
    const json& comps = d.at("components");
    if (comps.size() != blocks.size())
      fail("descriptor lists " + std::to_string(comps.size()) + " components, CSV has " +
           std::to_string(blocks.size()));
    std::vector<PlanarCurve> curves;
    std::vector<ChordSide> sides;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const json& c = comps[i];
      curves.push_back({blocks[i], c.at("closed").get<bool>()});
      const std::string side = c.value("side", "left");
      if (side != "left" && side != "right") fail("side must be 'left' or 'right'");
      sides.push_back(side == "left" ? ChordSide::Left : ChordSide::Right);
    }
    return Region(domain, std::move(curves), std::move(sides));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("curve descriptor: ") + e.what());
  }
}

std::string sidecar_path(const std::string& csv_path) {
  const std::string ext = ".csv";
  if (csv_path.size() >= ext.size() && csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0)
    return csv_path.substr(0, csv_path.size() - ext.size()) + ".json";
  return csv_path + ".json";
}

void write_region(const Region& region, const std::string& csv_path) {
  write_text(csv_path, curve_csv(region));
  write_text(sidecar_path(csv_path), curve_descriptor(region));
}

Region read_region(const std::string& csv_path) {
  return parse_region(read_text(csv_path), read_text(sidecar_path(csv_path)));
}

std::string trace_csv(const std::vector<FlowStepRecord>& trace) {
  std::string out = "step,energy,area,sup_residual,dt\n";
  for (const FlowStepRecord& r : trace)
    out += std::to_string(r.step) + ',' + format_double(r.energy) + ',' + format_double(r.area) + ',' +
           format_double(r.sup_residual) + ',' + format_double(r.dt) + '\n';
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace okflow
