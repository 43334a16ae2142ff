#include "hyper3b/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hyper3b::io {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {
json vec_json(const kin::Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

kin::Vec3 vec_from(const json& j) {
  return kin::Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>());
}
}  // namespace

std::string to_json(const kin::ParticleConfig& c) {
  json j{{"x1", vec_json(c.x1)}, {"x2", vec_json(c.x2)}, {"x3", vec_json(c.x3)}};
  return j.dump();
}

std::string to_json(const kin::ShapeState& s) {
  json j{{"rho", s.rho}, {"lambda", s.lambda}, {"a", s.a}};
  return j.dump();
}

std::string to_json(const kin::FrameOrientation& f) {
  json j{{"phi1", f.phi1}, {"theta", f.theta}, {"phi2", f.phi2}};
  return j.dump();
}

std::string to_json(const dyn::DynState& s) {
  json j{{"a", s.a},           {"lambda", s.lambda},   {"phi1", s.phi1},
         {"theta", s.theta},   {"phi2", s.phi2},       {"rho", s.rho},
         {"da", s.da},         {"dlambda", s.dlambda}, {"dphi1", s.dphi1},
         {"dtheta", s.dtheta}, {"dphi2", s.dphi2},     {"drho", s.drho}};
  return j.dump();
}

kin::ParticleConfig particle_config_from_json(const std::string& text) {
  json j = json::parse(text);
  return {vec_from(j.at("x1")), vec_from(j.at("x2")), vec_from(j.at("x3"))};
}

kin::ShapeState shape_state_from_json(const std::string& text) {
  json j = json::parse(text);
  return {j.at("rho").get<double>(), j.at("lambda").get<double>(), j.at("a").get<double>()};
}

kin::FrameOrientation frame_orientation_from_json(const std::string& text) {
  json j = json::parse(text);
  return {j.at("phi1").get<double>(), j.at("theta").get<double>(), j.at("phi2").get<double>()};
}

dyn::DynState dyn_state_from_json(const std::string& text) {
  json j = json::parse(text);
  dyn::DynState s;
  s.a = j.value("a", 0.0);
  s.lambda = j.value("lambda", 0.0);
  s.phi1 = j.value("phi1", 0.0);
  s.theta = j.value("theta", M_PI / 2);
  s.phi2 = j.value("phi2", 0.0);
  s.rho = j.value("rho", 1.0);
  s.da = j.value("da", 0.0);
  s.dlambda = j.value("dlambda", 0.0);
  s.dphi1 = j.value("dphi1", 0.0);
  s.dtheta = j.value("dtheta", 0.0);
  s.dphi2 = j.value("dphi2", 0.0);
  s.drho = j.value("drho", 0.0);
  return s;
}

std::string trajectory_csv(const dyn::SimResult& result) {
  std::ostringstream os;
  os << "t,a,lambda,phi1,theta,phi2,rho,da,dlambda,dphi1,dtheta,dphi2,drho,"
        "energy,Lnorm,omega_classical\n";
  for (const auto& r : result.rows) {
    const auto& s = r.s;
    os << fmt17(r.t) << ',' << fmt17(s.a) << ',' << fmt17(s.lambda) << ',' << fmt17(s.phi1)
       << ',' << fmt17(s.theta) << ',' << fmt17(s.phi2) << ',' << fmt17(s.rho) << ','
       << fmt17(s.da) << ',' << fmt17(s.dlambda) << ',' << fmt17(s.dphi1) << ','
       << fmt17(s.dtheta) << ',' << fmt17(s.dphi2) << ',' << fmt17(s.drho) << ','
       << fmt17(r.energy) << ',' << fmt17(r.Lnorm) << ',' << fmt17(r.omega_cl) << '\n';
  }
  return os.str();
}

std::string svg_line_plot(const std::vector<double>& t, const std::vector<double>& v,
                          const std::string& title) {
  const int W = 800, H = 400, pad = 50;
  double tmin = t.empty() ? 0 : t.front(), tmax = t.empty() ? 1 : t.back();
  double vmin = 1e300, vmax = -1e300;
  for (double x : v) {
    vmin = std::min(vmin, x);
    vmax = std::max(vmax, x);
  }
  if (!(vmax > vmin)) {
    vmax = vmin + 1.0;
    vmin -= 1.0;
  }
  if (!(tmax > tmin)) tmax = tmin + 1.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title
     << "</text>\n";
  os << "<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (size_t i = 0; i < t.size() && i < v.size(); ++i) {
    const double X = pad + (t[i] - tmin) / (tmax - tmin) * (W - 2 * pad);
    const double Y = H - pad - (v[i] - vmin) / (vmax - vmin) * (H - 2 * pad);
    os << fmt17(X) << ',' << fmt17(Y) << ' ';
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace hyper3b::io
