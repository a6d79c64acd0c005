#include "cqsl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cqsl {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

NelderMeadResult run_once(const Objective& f, const std::vector<double>& start,
                          const NelderMeadOptions& opt) {
  const std::size_t n = start.size();
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({start, f(start)});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = start;
    x[i] += opt.initial_step;
    simplex.push_back({x, f(x)});
  }

  const auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  const auto settled = [&] { return simplex.back().f - simplex.front().f <= opt.tolerance; };
  std::vector<double> centroid(n), trial(n);
  const auto along = [&](double coeff) {
    // centroid + coeff * (centroid - worst)
    for (std::size_t i = 0; i < n; ++i) {
      trial[i] = centroid[i] + coeff * (centroid[i] - simplex.back().x[i]);
    }
    return f(trial);
  };

  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    if (settled()) {
      return {simplex.front().x, simplex.front().f, it, true};
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);
    }

    const double fr = along(1.0);
    if (fr < simplex.front().f) {
      const std::vector<double> reflected = trial;
      const double fe = along(2.0);
      if (fe < fr) {
        simplex.back() = {trial, fe};
      } else {
        simplex.back() = {reflected, fr};
      }
      continue;
    }
    if (fr < simplex[n - 1].f) {
      simplex.back() = {trial, fr};
      continue;
    }
    // Outside contraction when the reflection beat the worst point, inside otherwise.
    const bool outside = fr < simplex.back().f;
    const double fc = along(outside ? 0.5 : -0.5);
    if (fc < std::min(fr, simplex.back().f)) {
      simplex.back() = {trial, fc};
      continue;
    }
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t i = 0; i < n; ++i) {
        simplex[v].x[i] = simplex.front().x[i] + 0.5 * (simplex[v].x[i] - simplex.front().x[i]);
      }
      simplex[v].f = f(simplex[v].x);
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return {simplex.front().x, simplex.front().f, it, settled()};
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options) {
  if (start.empty()) {
    const double value = f(start);
    return {std::move(start), value, 0, true};
  }
  NelderMeadResult first = run_once(f, start, options);
  if (!first.converged) return first;
  NelderMeadOptions refine = options;
  refine.initial_step = 0.1 * options.initial_step;
  NelderMeadResult second = run_once(f, first.x, refine);
  second.iterations += first.iterations;
  if (second.value > first.value) {
    second.x = std::move(first.x);
    second.value = first.value;
  }
  return second;
}

std::vector<double> softmax_weights(std::span<const double> logits) {
  const double top = logits.empty() ? 0.0 : std::max(0.0, *std::max_element(logits.begin(), logits.end()));
  std::vector<double> w(logits.size() + 1);
  for (std::size_t i = 0; i < logits.size(); ++i) w[i] = std::exp(logits[i] - top);
  w.back() = std::exp(-top);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> weights_to_logits(std::span<const double> weights) {
  std::vector<double> logits;
  if (weights.empty()) return logits;
  const double last = std::max(weights.back(), 1e-12);
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    logits.push_back(std::log(std::max(weights[i], 1e-12) / last));
  }
  return logits;
}

}  // namespace cqsl
