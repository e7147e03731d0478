// Command-line front end: forward/inverse kinematics queries, trajectory
// planning with joint-sequence optimization, and a benchmark over the
// bundled demo paths.
//
// Exit codes: 0 success, 2 bad input, 3 infeasible target or initial point,
// 4 infeasible sample mid-path.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cobotplan/config_opt.hpp"
#include "cobotplan/demo_paths.hpp"
#include "cobotplan/ik.hpp"
#include "cobotplan/io.hpp"
#include "cobotplan/trajectory.hpp"

namespace {

using namespace cobotplan;

volatile double g_sink = 0.0;  // keeps timed calls from being optimized out

template <typename F>
double amortized_seconds(F&& f) {
  using clock = std::chrono::steady_clock;
  int reps = 1;
  for (;;) {
    const auto start = clock::now();
    for (int i = 0; i < reps; ++i) f();
    const double total =
        std::chrono::duration<double>(clock::now() - start).count();
    if (total >= 1e-3 || reps >= (1 << 20)) return total / reps;
    reps *= 8;
  }
}

// Monotonic clock, median of 5 runs.
template <typename F>
double median_seconds(F&& f) {
  std::array<double, 5> t{};
  for (double& v : t) v = amortized_seconds(f);
  std::sort(t.begin(), t.end());
  return t[2];
}

Waypoints load_input(const std::string& input) {
  if (input.rfind("demo:", 0) == 0) {
    const int k = std::stoi(input.substr(5));
    return demo_path(k);
  }
  return load_waypoints_json(input);
}

int run_fk(double t1, double t3, double t4) {
  const Vec3 p = forward_kinematics(JointConfig::from_angles(t1, t3, t4));
  std::cout << format_g12(p.x) << ' ' << format_g12(p.y) << ' '
            << format_g12(p.z) << '\n';
  return 0;
}

int run_ik(double x, double y, double z) {
  const Vec3 target{x, y, z};
  const IKSolutionSet set = solve_ik(target);
  if (!set.feasible) {
    const Reachability rc = reachability_condition(target);
    std::cout << "infeasible";
    if (!rc.circle_ok) std::cout << " (base circle condition fails)";
    else if (!rc.annulus_upper_ok) std::cout << " (target beyond reach)";
    else if (!rc.annulus_lower_ok) std::cout << " (target inside inner annulus)";
    std::cout << '\n';
    return 3;
  }
  std::cout << "idx theta1 theta3 theta4 max_residual\n";
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    const JointConfig& q = set.solutions[i];
    std::cout << i << ' ' << format_g12(q.theta1) << ' '
              << format_g12(q.theta3) << ' ' << format_g12(q.theta4) << ' '
              << format_g12(max_abs_residual(fk_residuals(q, target))) << '\n';
  }
  if (set.boundary) std::cout << "note: boundary target, branches merged\n";
  return 0;
}

struct PlanArgs {
  std::string input;
  int steps = 10;
  std::string method = "both";
  std::string sampling = "per-segment";
  std::string format = "csv";
  std::string out_dir = ".";
  int oversample = 10;
  bool parallel = false;
  bool continue_on_infeasible = false;
  bool plot_data = false;
};

int run_plan(const PlanArgs& args) {
  Waypoints points;
  try {
    points = load_input(args.input);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  PlanOptions opt;
  opt.steps = args.steps;
  opt.mode = (args.sampling == "fixed-n" || args.sampling == "whole-curve")
                 ? SamplingMode::whole_curve_count
                 : SamplingMode::per_segment_steps;
  opt.fail_fast = !args.continue_on_infeasible;
  opt.prescan_factor = args.oversample;
  opt.parallel = args.parallel;

  const auto plan_start = std::chrono::steady_clock::now();
  PlanResult res;
  try {
    res = plan_trajectory(points, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  const double plan_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    plan_start)
          .count();

  if (!res.prescan_issues.empty()) {
    const PrescanIssue& first = res.prescan_issues.front();
    std::cout << "prescan: " << res.prescan_issues.size()
              << " infeasible spots between samples (first at segment "
              << first.segment << ", s=" << format_g12(first.s) << ")\n";
  }

  if (res.failure && !args.continue_on_infeasible) {
    const PlanFailure& f = *res.failure;
    if (f.at_initial_point) {
      std::cout << "Fail at initial point (" << format_g12(f.position.x)
                << ", " << format_g12(f.position.y) << ", "
                << format_g12(f.position.z) << ")\n";
      return 3;
    }
    std::cout << "Fail at (" << f.segment << ", " << f.step << ")\n";
    return 4;
  }

  std::cout << "waypoints: " << points.size()
            << "  segments: " << res.plan.curve.segment_count()
            << "  samples: " << res.plan.samples.size()
            << "  plan_seconds: " << format_g12(plan_seconds) << '\n';
  if (res.failure) {
    std::size_t infeasible = 0;
    for (const TrajectorySample& s : res.plan.samples)
      if (!s.solutions.feasible) ++infeasible;
    std::cout << "continued past " << infeasible
              << " infeasible samples (first at (" << res.failure->segment
              << ", " << res.failure->step << "))\n";
  }

  const std::filesystem::path out_dir(args.out_dir);
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;

  if (args.format == "json") {
    atomic_write_file(out_dir / "trajectory.json", trajectory_json(res.plan));
    written.push_back((out_dir / "trajectory.json").string());
  } else {
    atomic_write_file(out_dir / "trajectory.csv", trajectory_csv(res.plan));
    written.push_back((out_dir / "trajectory.csv").string());
  }
  if (args.plot_data) {
    atomic_write_file(out_dir / "spline_coeffs.csv",
                      spline_coeffs_csv(res.plan.curve));
    atomic_write_file(out_dir / "spline_points.csv",
                      spline_points_csv(res.plan.curve));
    written.push_back((out_dir / "spline_coeffs.csv").string());
    written.push_back((out_dir / "spline_points.csv").string());
  }

  const LayeredGraph graph = build_layered_graph(res.plan);
  bool layers_ok = !graph.layers.empty();
  for (const auto& layer : graph.layers)
    if (layer.empty()) layers_ok = false;

  if (!layers_ok) {
    std::cout << "optimization skipped: some samples have no solution\n";
  } else {
    if (args.method == "greedy" || args.method == "both") {
      const ConfigPath path = best_greedy(graph);
      const double secs = median_seconds([&] {
        g_sink = best_greedy(graph).total_cost;
      });
      std::cout << "greedy   total: " << format_g12(path.total_cost)
                << " rad  seconds: " << format_g12(secs) << '\n';
      atomic_write_file(out_dir / "path_greedy.csv",
                        config_path_csv(graph, path));
      written.push_back((out_dir / "path_greedy.csv").string());
    }
    if (args.method == "dijkstra" || args.method == "both") {
      const ConfigPath path = dijkstra_path(graph);
      const double secs = median_seconds([&] {
        g_sink = dijkstra_path(graph).total_cost;
      });
      std::cout << "dijkstra total: " << format_g12(path.total_cost)
                << " rad  seconds: " << format_g12(secs) << '\n';
      atomic_write_file(out_dir / "path_dijkstra.csv",
                        config_path_csv(graph, path));
      written.push_back((out_dir / "path_dijkstra.csv").string());
    }
  }

  std::cout << "wrote:";
  for (const std::string& w : written) std::cout << ' ' << w;
  std::cout << '\n';
  return 0;
}

int run_bench(const std::string& out_file, int samples) {
  std::ostringstream out;
  out << "{\n  \"sampling\": \"fixed-n\",\n  \"samples\": " << samples
      << ",\n  \"tests\": [\n";
  for (int test = 1; test <= 5; ++test) {
    const Waypoints& points = demo_path(test);

    const double fit_secs =
        median_seconds([&] { g_sink = fit_natural_spline(points).segments[0].x.a; });

    PlanOptions opt;
    opt.steps = samples;
    opt.mode = SamplingMode::whole_curve_count;
    opt.prescan_factor = 0;
    const double traj_secs = median_seconds(
        [&] { g_sink = static_cast<double>(plan_trajectory(points, opt).plan.samples.size()); });

    const PlanResult res = plan_trajectory(points, opt);
    if (!res.ok()) {
      std::cerr << "error: demo path " << test << " unexpectedly infeasible\n";
      return 1;
    }
    const LayeredGraph graph = build_layered_graph(res.plan);

    const ConfigPath greedy = best_greedy(graph);
    const ConfigPath dijkstra = dijkstra_path(graph);
    const double greedy_secs =
        median_seconds([&] { g_sink = best_greedy(graph).total_cost; });
    const double dijkstra_secs =
        median_seconds([&] { g_sink = dijkstra_path(graph).total_cost; });

    std::size_t min_layer = graph.layers.front().size();
    for (const auto& layer : graph.layers)
      min_layer = std::min(min_layer, layer.size());

    out << "    {\"test\": " << test << ", \"layers\": "
        << graph.layer_count() << ", \"min_solutions_per_layer\": "
        << min_layer << ",\n     \"spline_fit_seconds\": "
        << format_g12(fit_secs)
        << ", \"trajectory_seconds\": " << format_g12(traj_secs)
        << ",\n     \"greedy_seconds\": " << format_g12(greedy_secs)
        << ", \"dijkstra_seconds\": " << format_g12(dijkstra_secs)
        << ",\n     \"greedy_total_rad\": " << format_g12(greedy.total_cost)
        << ", \"dijkstra_total_rad\": " << format_g12(dijkstra.total_cost)
        << "}" << (test < 5 ? "," : "") << "\n";
  }
  out << "  ]\n}\n";

  if (out_file.empty()) {
    std::cout << out.str();
  } else {
    atomic_write_file(out_file, out.str());
    std::cout << "wrote: " << out_file << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory planning for the 3-DOF myCobot arm"};
  app.require_subcommand(1);

  double t1 = 0, t3 = 0, t4 = 0;
  auto* fk = app.add_subcommand("fk", "End-effector position for joint angles [rad]");
  fk->add_option("theta1", t1, "joint 1 angle")->required();
  fk->add_option("theta3", t3, "joint 3 angle")->required();
  fk->add_option("theta4", t4, "joint 4 angle")->required();

  double x = 0, y = 0, z = 0;
  auto* ik = app.add_subcommand("ik", "All joint configurations reaching a point [mm]");
  ik->add_option("x", x)->required();
  ik->add_option("y", y)->required();
  ik->add_option("z", z)->required();

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "Plan a trajectory through waypoints");
  plan->add_option("input", plan_args.input,
                   "waypoint JSON file, or demo:1..demo:6")
      ->required();
  plan->add_option("--steps", plan_args.steps,
                   "steps per segment, or total samples with fixed-n");
  plan->add_option("--method", plan_args.method, "greedy|dijkstra|both")
      ->check(CLI::IsMember({"greedy", "dijkstra", "both"}));
  plan->add_option("--sampling", plan_args.sampling,
                   "per-segment (quintic-scaled steps; alias algorithm1) or "
                   "fixed-n (even split of the whole curve)")
      ->check(CLI::IsMember({"per-segment", "algorithm1", "fixed-n", "whole-curve"}))
      ->transform([](std::string v) {
        return v == "algorithm1" ? std::string("per-segment") : v;
      });
  plan->add_option("--format", plan_args.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  plan->add_option("--out", plan_args.out_dir, "output directory")
      ->envname("COBOTPLAN_OUT_DIR");
  plan->add_option("--oversample", plan_args.oversample,
                   "reachability pre-scan factor (0 disables)");
  plan->add_flag("--parallel", plan_args.parallel, "solve samples concurrently");
  plan->add_flag("--continue-on-infeasible", plan_args.continue_on_infeasible,
                 "report infeasible samples instead of aborting");
  plan->add_flag("--plot-data", plan_args.plot_data,
                 "also write spline coefficient and dense point CSVs");

  std::string bench_out;
  int bench_samples = 15;
  auto* bench = app.add_subcommand("bench", "Time the pipeline on demo paths 1-5");
  bench->add_option("--out", bench_out, "write the JSON report here");
  bench->add_option("--samples", bench_samples, "fixed-n sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fk->parsed()) return run_fk(t1, t3, t4);
    if (ik->parsed()) return run_ik(x, y, z);
    if (plan->parsed()) return run_plan(plan_args);
    if (bench->parsed()) return run_bench(bench_out, bench_samples);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
