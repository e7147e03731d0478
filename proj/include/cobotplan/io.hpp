#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cobotplan/config_opt.hpp"
#include "cobotplan/dh.hpp"
#include "cobotplan/spline.hpp"
#include "cobotplan/trajectory.hpp"

namespace cobotplan {

// Fixed decimal formatting with 12 significant digits; all file output goes
// through this so identical requests produce identical bytes.
inline std::string format_g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Writes via a temp file plus rename so failures never leave partial output.
inline void atomic_write_file(const std::filesystem::path& path,
                              const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << contents;
    if (!out.flush())
      throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Waypoint files are a JSON array of [x, y, z] triples in mm.
inline Waypoints load_waypoints_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json doc = nlohmann::json::parse(in);
  if (!doc.is_array() || doc.size() < 2)
    throw std::runtime_error(path.string() +
                             ": expected a JSON array of at least 2 points");
  Waypoints pts;
  pts.reserve(doc.size());
  for (const auto& item : doc) {
    if (!item.is_array() || item.size() != 3)
      throw std::runtime_error(path.string() + ": each point must be [x,y,z]");
    pts.push_back({item[0].get<double>(), item[1].get<double>(),
                   item[2].get<double>()});
  }
  return pts;
}

// Optional table loader, mostly for tests: an array of 8 rows with the field
// names a, alpha, d, theta; theta is a number or "theta1"/"theta3"/"theta4".
inline DHTable dh_table_from_json(const nlohmann::json& doc) {
  if (!doc.is_array() || doc.size() != 8)
    throw std::runtime_error("DH table: expected 8 rows");
  DHTable table{};
  for (std::size_t i = 0; i < 8; ++i) {
    const auto& row = doc[i];
    DHRow& r = table[i];
    r.a = row.at("a").get<double>();
    r.alpha = row.at("alpha").get<double>();
    r.d = row.at("d").get<double>();
    const auto& theta = row.at("theta");
    if (theta.is_string()) {
      const std::string name = theta.get<std::string>();
      if (name == "theta1")
        r.joint = Joint::theta1;
      else if (name == "theta3")
        r.joint = Joint::theta3;
      else if (name == "theta4")
        r.joint = Joint::theta4;
      else
        throw std::runtime_error("DH table: unknown joint " + name);
    } else {
      r.theta = theta.get<double>();
    }
  }
  return table;
}

inline DHTable load_dh_table_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return dh_table_from_json(nlohmann::json::parse(in));
}

// One row per (sample, solution); samples that carry no solution (only
// possible when planning continued past a failure) keep the row with an
// index of -1 and empty angles.
inline std::string trajectory_csv(const TrajectoryPlan& plan) {
  std::ostringstream out;
  out << "sample_index,j,t,s,x,y,z,solution_index,theta1,theta3,theta4\n";
  for (std::size_t i = 0; i < plan.samples.size(); ++i) {
    const TrajectorySample& sample = plan.samples[i];
    std::ostringstream prefix;
    prefix << i << ',' << sample.segment << ',' << sample.step << ','
           << format_g12(sample.s) << ',' << format_g12(sample.position.x)
           << ',' << format_g12(sample.position.y) << ','
           << format_g12(sample.position.z) << ',';
    if (sample.solutions.solutions.empty()) {
      out << prefix.str() << "-1,,,\n";
      continue;
    }
    for (std::size_t k = 0; k < sample.solutions.solutions.size(); ++k) {
      const JointConfig& q = sample.solutions.solutions[k];
      out << prefix.str() << k << ',' << format_g12(q.theta1) << ','
          << format_g12(q.theta3) << ',' << format_g12(q.theta4) << '\n';
    }
  }
  return out.str();
}

// Hand-emitted so numbers keep the 12-significant-digit formatting.
inline std::string trajectory_json(const TrajectoryPlan& plan) {
  std::ostringstream out;
  out << "{\n  \"samples\": [\n";
  for (std::size_t i = 0; i < plan.samples.size(); ++i) {
    const TrajectorySample& sample = plan.samples[i];
    out << "    {\"sample_index\": " << i << ", \"j\": " << sample.segment
        << ", \"t\": " << sample.step << ", \"s\": " << format_g12(sample.s)
        << ", \"position\": [" << format_g12(sample.position.x) << ", "
        << format_g12(sample.position.y) << ", "
        << format_g12(sample.position.z) << "], \"solutions\": [";
    const auto& sols = sample.solutions.solutions;
    for (std::size_t k = 0; k < sols.size(); ++k) {
      out << (k ? ", [" : "[") << format_g12(sols[k].theta1) << ", "
          << format_g12(sols[k].theta3) << ", " << format_g12(sols[k].theta4)
          << "]";
    }
    out << "]}" << (i + 1 < plan.samples.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

inline std::string config_path_csv(const LayeredGraph& graph,
                                   const ConfigPath& path) {
  std::ostringstream out;
  out << "sample_index,chosen_solution_index,theta1,theta3,theta4,step_cost,"
         "cumulative_cost\n";
  double cumulative = 0.0;
  for (std::size_t i = 0; i < path.chosen.size(); ++i) {
    const JointConfig& q = graph.layers[i][path.chosen[i]];
    double step = 0.0;
    if (i > 0)
      step = joint_variation(graph.layers[i - 1][path.chosen[i - 1]], q);
    cumulative += step;
    out << i << ',' << path.chosen[i] << ',' << format_g12(q.theta1) << ','
        << format_g12(q.theta3) << ',' << format_g12(q.theta4) << ','
        << format_g12(step) << ',' << format_g12(cumulative) << '\n';
  }
  return out.str();
}

// One row per segment per axis.
inline std::string spline_coeffs_csv(const SplineCurve& curve) {
  std::ostringstream out;
  out << "segment,axis,a,b,c,d\n";
  for (std::size_t j = 0; j < curve.segments.size(); ++j) {
    const SplineSegment& seg = curve.segments[j];
    const Cubic* cubics[3] = {&seg.x, &seg.y, &seg.z};
    const char* names[3] = {"x", "y", "z"};
    for (int axis = 0; axis < 3; ++axis)
      out << j << ',' << names[axis] << ',' << format_g12(cubics[axis]->a)
          << ',' << format_g12(cubics[axis]->b) << ','
          << format_g12(cubics[axis]->c) << ',' << format_g12(cubics[axis]->d)
          << '\n';
  }
  return out.str();
}

// Dense curve dump for plotting.
inline std::string spline_points_csv(const SplineCurve& curve,
                                     int per_segment = 100) {
  std::ostringstream out;
  out << "segment,s,x,y,z\n";
  for (std::size_t j = 0; j < curve.segments.size(); ++j)
    for (int k = 0; k <= per_segment; ++k) {
      const double s = static_cast<double>(k) / per_segment;
      const Vec3 p = curve.eval(j, s);
      out << j << ',' << format_g12(s) << ',' << format_g12(p.x) << ','
          << format_g12(p.y) << ',' << format_g12(p.z) << '\n';
    }
  return out.str();
}

}  // namespace cobotplan
