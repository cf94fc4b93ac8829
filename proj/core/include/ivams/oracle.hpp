#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivams/design_space.hpp"
#include "ivams/mofa.hpp"
#include "ivams/sample_set.hpp"

namespace ivams {

/// A deterministic analytic stand-in for a circuit simulator.
struct Oracle {
  std::string name;
  DesignSpace space;
  std::vector<std::string> response_names;
  std::function<std::vector<double>(std::span<const double>)> fn;
  std::chrono::microseconds artificial_delay{0};

  std::size_t input_dim() const { return space.dim(); }
  std::size_t response_index(std::string_view response) const;

  /// One evaluation, sleeping for artificial_delay first.
  std::vector<double> operator()(std::span<const double> x) const;
};

/// 16-variable two-stage op-amp: A0 [dB], BW [kHz], PM [deg], SR [mV/ns],
/// PD [uW] and the circuit parameters gm [mS], Ip [uA], In [uA].
Oracle builtin_opamp_oracle();

/// 21-variable PLL: frequency [GHz], power [mW], lock_time [us].
Oracle builtin_pll_oracle();

/// y = sin(pi u) on [-1, 1].
Oracle builtin_sin_oracle();

/// y = 1 + 2 x1 - 3 x2 on [0, 1]^2.
Oracle builtin_linear_oracle();

/// Looks up "opamp", "pll", "sin" or "linear".
Oracle builtin_oracle(std::string_view name);
std::vector<std::string> builtin_oracle_names();

/// Evaluates every row (in parallel when workers > 1; output order equals
/// input order) and returns a SampleSet with one column per response.
SampleSet evaluate(const Oracle& oracle, const SampleMatrix& inputs, std::size_t workers = 1);

/// Remembers the most recent point so several responses requested at the
/// same design cost a single (possibly delayed) oracle call.
class CachedOracle {
 public:
  explicit CachedOracle(Oracle oracle);

  const Oracle& oracle() const { return oracle_; }
  double response(std::size_t index, std::span<const double> x);
  std::size_t calls() const { return calls_; }

  /// Response function bound to one response; the CachedOracle must outlive it.
  ResponseFn bind(std::string_view response);

 private:
  Oracle oracle_;
  std::vector<double> last_x_;
  std::vector<double> last_y_;
  std::size_t calls_ = 0;
  std::mutex mutex_;
};

}  // namespace ivams
