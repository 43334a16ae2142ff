#pragma once

#include <string>
#include <vector>

#include "hyper3b/dynamics.hpp"
#include "hyper3b/kinematics.hpp"

namespace hyper3b::io {

// round-trip-safe decimal rendering (17 significant digits)
std::string fmt17(double v);

std::string to_json(const kin::ParticleConfig& c);
std::string to_json(const kin::ShapeState& s);
std::string to_json(const kin::FrameOrientation& f);
std::string to_json(const dyn::DynState& s);

kin::ParticleConfig particle_config_from_json(const std::string& text);
kin::ShapeState shape_state_from_json(const std::string& text);
kin::FrameOrientation frame_orientation_from_json(const std::string& text);
dyn::DynState dyn_state_from_json(const std::string& text);

std::string trajectory_csv(const dyn::SimResult& result);

// minimal static line plot (SVG), one column of a CSV table against t
std::string svg_line_plot(const std::vector<double>& t, const std::vector<double>& v,
                          const std::string& title);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace hyper3b::io
