#include "choreo/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace choreo::io {

json curve_to_json(const FourierCurve& curve) {
  json coeffs = json::array();
  for (int k = 1; k <= curve.k_max(); ++k) {
    const Vec2c c = curve.coeff(k);
    coeffs.push_back({k, c(0).real(), c(0).imag(), c(1).real(), c(1).imag()});
  }
  return json{{"T", curve.period()}, {"K_max", curve.k_max()}, {"coeffs", coeffs}};
}

FourierCurve curve_from_json(const json& j) {
  if (!j.contains("T") || !j.contains("K_max") || !j.contains("coeffs"))
    throw ConfigError("curve JSON requires keys T, K_max, coeffs");
  FourierCurve curve(j.at("T").get<double>(), j.at("K_max").get<int>());
  for (const auto& row : j.at("coeffs")) {
    if (!row.is_array() || row.size() != 5)
      throw ConfigError("curve coeffs rows must be [k, re_x, im_x, re_y, im_y]");
    const int k = row[0].get<int>();
    curve.set_coeff(k, Vec2c(Complex(row[1].get<double>(), row[2].get<double>()),
                             Complex(row[3].get<double>(), row[4].get<double>())));
  }
  return curve;
}

json solution_to_json(const FourierCurve& curve, const SymmetrySpec& spec,
                      const PhysicalParams& params) {
  return json{{"curve", curve_to_json(curve)},
              {"symmetry", {{"n", spec.n}, {"W", spec.w}, {"T", spec.period}}},
              {"physics",
               {{"alpha", params.alpha}, {"m", params.mass}, {"Omega", params.Omega}}}};
}

Solution solution_from_json(const json& j) {
  for (const char* key : {"curve", "symmetry", "physics"})
    if (!j.contains(key))
      throw ConfigError(std::string("solution JSON missing key '") + key + "'");
  const auto& sym = j.at("symmetry");
  const auto& phys = j.at("physics");
  SymmetrySpec spec(sym.at("n").get<int>(), sym.at("W").get<int>(),
                    sym.at("T").get<double>());
  PhysicalParams params(phys.at("m").get<double>(), phys.at("alpha").get<double>(),
                        spec.n, phys.at("Omega").get<double>());
  return Solution{curve_from_json(j.at("curve")), spec, params};
}

json report_to_json(const SolveReport& report) {
  json stages = json::array();
  for (const auto& s : report.stages) {
    stages.push_back({{"lambda", s.lambda},
                      {"iterations", s.iterations},
                      {"residual", s.residual},
                      {"h1_norm", s.h1_norm},
                      {"within_annulus", s.within_annulus},
                      {"kinetic_energy", s.kinetic_energy},
                      {"kinetic_bound", s.kinetic_bound}});
  }
  return json{{"converged", report.converged},
              {"iterations", report.iterations},
              {"residual_history", report.residual_history},
              {"final_residual_L2", report.final_residual_l2},
              {"min_separation", report.min_separation},
              {"winding", report.winding},
              {"h1_norm", report.h1_norm},
              {"apriori_R0", report.apriori_r0},
              {"within_annulus", report.within_annulus},
              {"stages", stages}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& err) {
    throw ConfigError(path + ": " + err.what());
  }
}

std::string configuration_to_csv(const Configuration& config) {
  std::ostringstream out;
  out.precision(17);
  out << "t,body,x,y\n";
  for (int b = 0; b < config.n; ++b)
    for (int j = 0; j < config.grid_size(); ++j)
      out << config.times[static_cast<size_t>(j)] << ',' << b << ','
          << config.positions[static_cast<size_t>(b)][static_cast<size_t>(j)].x() << ','
          << config.positions[static_cast<size_t>(b)][static_cast<size_t>(j)].y() << '\n';
  return out.str();
}

std::string curve_to_svg(const FourierCurve& curve, int n_markers, int samples) {
  const auto pts = curve.sample(samples);
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto& p : pts) {
    lo_x = std::min(lo_x, p.x());
    hi_x = std::max(hi_x, p.x());
    lo_y = std::min(lo_y, p.y());
    hi_y = std::max(hi_y, p.y());
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double pad = 0.08 * span;
  const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
  const double half = 0.5 * span + pad;

  std::ostringstream out;
  out.precision(10);
  // SVG y grows downward; flip so the plane is drawn with the usual orientation.
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << cx - half << ' '
      << -(cy + half) << ' ' << 2 * half << ' ' << 2 * half << "\">\n";
  out << "  <path fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"" << span / 220.0
      << "\" d=\"";
  for (size_t i = 0; i < pts.size(); ++i)
    out << (i == 0 ? 'M' : 'L') << pts[i].x() << ' ' << -pts[i].y() << ' ';
  out << "Z\"/>\n";
  for (int b = 0; b < n_markers; ++b) {
    const Vec2 p = curve.evaluate(curve.period() * b / n_markers);
    out << "  <circle cx=\"" << p.x() << "\" cy=\"" << -p.y() << "\" r=\""
        << span / 70.0 << "\" fill=\"#c1440e\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace choreo::io
