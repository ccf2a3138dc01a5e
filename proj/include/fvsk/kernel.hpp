#pragma once

#include <cstdint>

#include "fvsk/instance.hpp"
#include "fvsk/reduce.hpp"
#include "fvsk/trace.hpp"

namespace fvsk {

/// 2x + 28x^2 + 56x^3: ceiling on kernel vertices for an input FVS of size x.
std::int64_t kernel_bound(std::int64_t x);

/// x + 14x(x + C(x,2)): ceiling on a reduced clean instance with FVS size x.
std::int64_t reduced_bound(std::int64_t x);

struct KernelOptions {
  /// Skip Rules 1-5 when n <= |X|^3; the cleaned instance is already small.
  bool fast = false;
  bool verify_conflict_stability = true;
  /// Replace a kernel with k <= 0 by the empty YES instance and one with
  /// k > n by a single-edge NO instance. Solvers that want an optimum from
  /// the lifted kernel solution turn this off.
  bool allow_trivial = true;
};

struct KernelResult {
  /// Independent set form, input ids, removed vertices tombstoned.
  Instance reduced;
  ReductionTrace trace;
  std::size_t x_in = 0;
  /// |X| after cleaning, before the rules.
  std::size_t x_clean = 0;
  bool trivial_yes = false;
  bool trivial_no = false;
  bool rules_skipped = false;
  /// The kernel exceeds twice the vertex cover target. Happens only on NO
  /// instances, where the 2k certificate does not apply.
  bool nt_no_certificate = false;
  ReduceStats stats;

  /// Compact kernel in the trace's problem form.
  Instance emitted() const;
};

/// Requires unit weights (ValidationError otherwise). `out_problem` picks
/// the form of the emitted kernel and of the solutions the trace lifts.
KernelResult kernelize(const Instance& input, const KernelOptions& opts = {});
KernelResult kernelize(const Instance& input, Problem out_problem, const KernelOptions& opts = {});

}  // namespace fvsk
