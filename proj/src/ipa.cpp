#include "rangesched/ipa.h"

#include <cmath>
#include <sstream>

#include "rangesched/error.h"

namespace rangesched {

IpaState ipa_init(const DistanceMatrix& d) {
  IpaState state;
  state.n = d.size();
  state.adjusted.assign(d.data().begin(), d.data().end());
  state.added_m.assign(state.n, 0.0);
  return state;
}

IpaState ipa_iterate(IpaState state, const MessageParams& p, std::size_t* adjustments) {
  const std::size_t n = state.n;
  const double len = p.length_m();
  std::size_t count = 0;
  for (NodeId k = 0; k < n; ++k) {
    const double* row = state.adjusted.data() + k * n;
    for (NodeId i = 0; i < n; ++i) {
      if (i == k) {
        continue;
      }
      for (NodeId j = i + 1; j < n; ++j) {
        if (j == k) {
          continue;
        }
        const double gap = row[j] - row[i];
        if (std::abs(gap) < len - kIpaToleranceM) {
          const double extra = len - gap;
          for (NodeId r = 0; r < n; ++r) {
            state.adjusted[r * n + j] += extra;
          }
          state.added_m[j] += extra;
          ++count;
        }
      }
    }
  }
  ++state.passes;
  if (count > 0) {
    ++state.adjusting_passes;
  }
  if (adjustments != nullptr) {
    *adjustments = count;
  }
  return state;
}

IpaResult ipa_solve(const DistanceMatrix& d, const MessageParams& p, const IpaConfig& cfg) {
  const std::size_t n = d.size();
  const std::size_t cap = cfg.max_iterations == 0 ? 10 * n * n : cfg.max_iterations;
  IpaState state = ipa_init(d);
  for (;;) {
    if (state.passes >= cap) {
      std::ostringstream msg;
      msg << "IPA did not converge within " << cap << " iterations";
      throw SolverError(msg.str());
    }
    std::size_t changed = 0;
    state = ipa_iterate(std::move(state), p, &changed);
    if (changed == 0) {
      break;
    }
  }
  std::vector<double> delays(n);
  for (NodeId i = 0; i < n; ++i) {
    delays[i] = state.added_m[i] / p.mu_m_per_ns();
  }
  return {Schedule(std::move(delays)), std::move(state)};
}

} // namespace rangesched
