#pragma once

#include <cstddef>
#include <future>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cobotplan/ik.hpp"
#include "cobotplan/spline.hpp"
#include "cobotplan/time_scaling.hpp"

namespace cobotplan {

enum class SamplingMode {
  per_segment_steps,  // T quintic-scaled steps per segment, N*T + 1 samples
  whole_curve_count,  // `steps` samples splitting the whole curve evenly
};

struct PlanOptions {
  int steps = 10;  // T per segment, or the total sample count in whole_curve_count
  SamplingMode mode = SamplingMode::per_segment_steps;
  bool fail_fast = true;     // stop at the first infeasible sample
  int prescan_factor = 10;   // reachability oversampling per segment; 0 disables
  bool parallel = false;     // solve samples concurrently
};

struct TrajectorySample {
  std::size_t segment = 0;
  int step = 0;  // t within the segment, or the global index in whole_curve_count
  double s = 0.0;
  Vec3 position;
  IKSolutionSet solutions;
};

struct PlanFailure {
  std::size_t segment = 0;
  int step = 0;
  Vec3 position;
  bool at_initial_point = false;
};

// A spot between samples where the reachability conditions fail; diagnostic
// only, never fails a plan by itself.
struct PrescanIssue {
  std::size_t segment = 0;
  double s = 0.0;
};

struct TrajectoryPlan {
  SplineCurve curve;
  std::vector<TrajectorySample> samples;
};

struct PlanResult {
  TrajectoryPlan plan;
  std::optional<PlanFailure> failure;  // first infeasible sample, if any
  std::vector<PrescanIssue> prescan_issues;

  bool ok() const { return !failure.has_value(); }
};

namespace detail {

struct SampleParam {
  std::size_t segment;
  int step;
  double s;
};

inline std::vector<SampleParam> sample_params(std::size_t segment_count,
                                              const PlanOptions& opt) {
  std::vector<SampleParam> params;
  if (opt.mode == SamplingMode::per_segment_steps) {
    if (opt.steps < 1)
      throw std::invalid_argument("plan_trajectory: steps must be >= 1");
    params.reserve(segment_count * opt.steps + 1);
    params.push_back({0, 0, 0.0});
    for (std::size_t j = 0; j < segment_count; ++j)
      for (int t = 1; t <= opt.steps; ++t)
        params.push_back({j, t, time_scale(t, opt.steps)});
  } else {
    if (opt.steps < 2)
      throw std::invalid_argument(
          "plan_trajectory: whole_curve_count needs at least 2 samples");
    const int n = opt.steps;
    params.reserve(n);
    for (int i = 0; i < n; ++i) {
      const double g = static_cast<double>(segment_count) * i / (n - 1);
      std::size_t j = std::min(static_cast<std::size_t>(g), segment_count - 1);
      params.push_back({j, i, g - static_cast<double>(j)});
    }
  }
  return params;
}

inline void solve_range(std::vector<TrajectorySample>& samples,
                        std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i)
    samples[i].solutions = solve_ik(samples[i].position);
}

}  // namespace detail

// Plans a trajectory through `points`: solve the start, fit the natural
// spline, then walk every segment through the time scaling and solve the
// system at each sample. Fails at the first infeasible sample unless
// fail_fast is off, in which case every sample is kept for diagnostics.
inline PlanResult plan_trajectory(const Waypoints& points,
                                  const PlanOptions& opt = {}) {
  PlanResult res;
  res.plan.curve = fit_natural_spline(points);
  const std::size_t n_seg = res.plan.curve.segment_count();

  const std::vector<detail::SampleParam> params =
      detail::sample_params(n_seg, opt);

  std::vector<TrajectorySample>& samples = res.plan.samples;
  samples.resize(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    samples[i].segment = params[i].segment;
    samples[i].step = params[i].step;
    samples[i].s = params[i].s;
    samples[i].position = res.plan.curve.eval(params[i].segment, params[i].s);
  }

  // The start is solved first: an infeasible initial point aborts before any
  // segment work.
  samples[0].solutions = solve_ik(samples[0].position);
  if (!samples[0].solutions.feasible) {
    res.failure = PlanFailure{0, 0, samples[0].position, true};
    if (opt.fail_fast) {
      samples.clear();
      return res;
    }
  }

  if (opt.prescan_factor > 0) {
    const int per_segment =
        opt.mode == SamplingMode::per_segment_steps
            ? opt.steps
            : (opt.steps + static_cast<int>(n_seg) - 1) / static_cast<int>(n_seg);
    const int dense = opt.prescan_factor * std::max(per_segment, 1);
    for (std::size_t j = 0; j < n_seg; ++j)
      for (int k = 0; k <= dense; ++k) {
        const double s = static_cast<double>(k) / dense;
        if (!reachability_condition(res.plan.curve.eval(j, s)).ok())
          res.prescan_issues.push_back({j, s});
      }
  }

  if (opt.parallel && samples.size() > 2) {
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                              samples.size() - 1);
    const std::size_t chunk = (samples.size() - 1 + workers - 1) / workers;
    std::vector<std::future<void>> tasks;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = 1 + w * chunk;
      const std::size_t end = std::min(samples.size(), begin + chunk);
      if (begin >= end) break;
      tasks.push_back(std::async(std::launch::async, [&samples, begin, end] {
        detail::solve_range(samples, begin, end);
      }));
    }
    for (auto& t : tasks) t.get();
    if (!res.failure) {
      for (std::size_t i = 1; i < samples.size(); ++i)
        if (!samples[i].solutions.feasible) {
          res.failure = PlanFailure{samples[i].segment, samples[i].step,
                                    samples[i].position, false};
          if (opt.fail_fast) samples.resize(i);
          break;
        }
    }
  } else {
    for (std::size_t i = 1; i < samples.size(); ++i) {
      samples[i].solutions = solve_ik(samples[i].position);
      if (!samples[i].solutions.feasible && !res.failure) {
        res.failure = PlanFailure{samples[i].segment, samples[i].step,
                                  samples[i].position, false};
        if (opt.fail_fast) {
          samples.resize(i);
          break;
        }
      }
    }
  }
  return res;
}

}  // namespace cobotplan
