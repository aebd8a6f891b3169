#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "choreo/dynamics.hpp"
#include "choreo/fourier_curve.hpp"
#include "choreo/solver.hpp"
#include "choreo/symmetry.hpp"

namespace choreo::io {

using json = nlohmann::json;

/// Curve wire format: {"T":, "K_max":, "coeffs": [[k, re_x, im_x, re_y, im_y], ...]}
/// storing only k >= 1; the negative side follows from reality.  Round trips
/// are bit exact.
json curve_to_json(const FourierCurve& curve);
FourierCurve curve_from_json(const json& j);

/// Solution bundle: curve plus the symmetry/physics context needed to verify it.
json solution_to_json(const FourierCurve& curve, const SymmetrySpec& spec,
                      const PhysicalParams& params);
struct Solution {
  FourierCurve curve;
  SymmetrySpec spec;
  PhysicalParams params;
};
Solution solution_from_json(const json& j);

json report_to_json(const SolveReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

/// Trajectory CSV with columns t,body,x,y.
std::string configuration_to_csv(const Configuration& config);

/// Closed equal-aspect SVG path of one period of the curve with n marker dots
/// at the body phases.
std::string curve_to_svg(const FourierCurve& curve, int n_markers, int samples = 1024);

}  // namespace choreo::io
