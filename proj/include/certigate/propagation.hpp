#pragma once

#include <vector>

#include "certigate/network.hpp"

namespace certigate {

/*
Sound interval propagation
==========================

Abstract transformers per layer kind, over exact rationals:

  affine    lo_j = b_j + sum_i min(w_ji*lo_i, w_ji*hi_i), hi_j with max
  relu      u <= 0 -> [0,0];  l >= 0 -> [l,u];  l < 0 < u -> [0,u]
  monotone  [down(f(l)), up(f(u))] on the 2^-precision_bits dyadic grid

Composition over the layer chain encloses every concrete output of the
network on the box. Refinement is branch-and-bound bisection: each stage
splits one leaf (the one with the widest output-relevant input dimension,
ties toward the lowest dimension index, then the lowest leaf index) at its
midpoint and re-propagates the two children. Global per-output bounds are
[min over leaves of lo, max over leaves of hi], monotonized against the
stage history. Costs are counted in leaf propagations.

Leaf propagations within a stage are independent and could run in parallel;
the merge is a min/max fold, so results do not depend on evaluation order.
*/

using EnclosureVector = std::vector<Interval>;

EnclosureVector propagate_affine(const Layer& layer, const EnclosureVector& in);
EnclosureVector propagate_relu(const EnclosureVector& in);
EnclosureVector propagate_monotone(const Layer& layer, const EnclosureVector& in);
EnclosureVector propagate_box(const NetworkModel& net, const InputBox& box);

// Sound upper bound on max over the enclosure of c.z + d; UB <= 0 certifies
// the linear spec c.z + d <= 0.
Rational bound_linear_spec(const std::vector<Rational>& c, const Rational& d,
                           const EnclosureVector& z);

// True for input dimensions connected to some output through nonzero weights.
// Splitting any other dimension can never change the bounds.
std::vector<bool> relevant_inputs(const NetworkModel& net);

struct RefinementState {
  std::vector<InputBox> leaves;              // tiles the original box
  std::vector<EnclosureVector> leaf_bounds;  // cached propagation per leaf
  std::vector<IntervalSequence> history;     // monotonized, one per output
  int stage = 0;
  long cost_spent = 0;
  bool exhausted = false;

  // Monotonized bounds at the current stage.
  EnclosureVector current_bounds() const;
};

// Stage 0: propagate the whole box once (cost 1).
RefinementState init_refinement(const NetworkModel& net, const InputBox& box);

// One stage step. If budget_remaining cannot cover a full stage (two leaf
// propagations) the state comes back unchanged with `exhausted` set. A box
// with no splittable relevant dimension is a no-op fixed point: unchanged
// state, stage not advanced, exhausted untouched.
RefinementState refine(RefinementState state, const NetworkModel& net, long budget_remaining);

}  // namespace certigate
