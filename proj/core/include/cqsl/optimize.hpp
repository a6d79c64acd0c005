#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cqsl {

struct NelderMeadOptions {
  /// Converged once objective values across the simplex differ by less than this.
  double tolerance = 1e-9;
  int max_iterations = 2000;
  double initial_step = 1.0;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free minimization. A converged run is restarted once from its
/// best vertex with a tenth of the initial step, which catches simplices whose
/// vertices straddled the minimum with equal values.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options = {});

/// Maps N-1 unconstrained coordinates onto the probability simplex of size N
/// (last logit pinned at zero).
std::vector<double> softmax_weights(std::span<const double> logits);

/// Inverse of softmax_weights; zero weights are floored at 1e-12.
std::vector<double> weights_to_logits(std::span<const double> weights);

}  // namespace cqsl
