#include "certigate/propagation.hpp"

#include "certigate/errors.hpp"

namespace certigate {

EnclosureVector propagate_affine(const Layer& layer, const EnclosureVector& in) {
  if (layer.kind != LayerKind::Affine)
    throw DimensionMismatch("propagate_affine called on non-affine layer");
  if (layer.weights.front().size() != in.size())
    throw DimensionMismatch("affine layer expects arity " +
                            std::to_string(layer.weights.front().size()) + ", got " +
                            std::to_string(in.size()));
  EnclosureVector out;
  out.reserve(layer.weights.size());
  for (size_t j = 0; j < layer.weights.size(); ++j) {
    Rational lo = layer.bias[j];
    Rational hi = layer.bias[j];
    for (size_t i = 0; i < in.size(); ++i) {
      const Rational& w = layer.weights[j][i];
      if (w.is_zero()) continue;
      Rational a = w * in[i].lo;
      Rational b = w * in[i].hi;
      if (a <= b) {
        lo += a;
        hi += b;
      } else {
        lo += b;
        hi += a;
      }
    }
    out.push_back(Interval{std::move(lo), std::move(hi)});
  }
  return out;
}

EnclosureVector propagate_relu(const EnclosureVector& in) {
  static const Rational zero;
  EnclosureVector out;
  out.reserve(in.size());
  for (const Interval& iv : in) {
    if (iv.hi <= zero) {
      out.push_back(Interval{zero, zero});
    } else if (iv.lo >= zero) {
      out.push_back(iv);
    } else {
      out.push_back(Interval{zero, iv.hi});
    }
  }
  return out;
}

EnclosureVector propagate_monotone(const Layer& layer, const EnclosureVector& in) {
  EnclosureVector out;
  out.reserve(in.size());
  for (const Interval& iv : in)
    out.push_back(monotone_enclosure(layer.fn, layer.precision_bits, iv));
  return out;
}

EnclosureVector propagate_box(const NetworkModel& net, const InputBox& box) {
  if (box.dims.size() != net.input_arity)
    throw ArityMismatch("box arity " + std::to_string(box.dims.size()) + " != input arity " +
                        std::to_string(net.input_arity));
  EnclosureVector cur = box.dims;
  for (const Layer& layer : net.layers) {
    switch (layer.kind) {
      case LayerKind::Affine:
        cur = propagate_affine(layer, cur);
        break;
      case LayerKind::Relu:
        cur = propagate_relu(cur);
        break;
      case LayerKind::Monotone:
        cur = propagate_monotone(layer, cur);
        break;
    }
  }
  return cur;
}

Rational bound_linear_spec(const std::vector<Rational>& c, const Rational& d,
                           const EnclosureVector& z) {
  if (c.size() != z.size())
    throw ArityMismatch("spec arity " + std::to_string(c.size()) + " != enclosure arity " +
                        std::to_string(z.size()));
  Rational ub = d;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i].sign() >= 0) {
      ub += c[i] * z[i].hi;
    } else {
      ub += c[i] * z[i].lo;
    }
  }
  return ub;
}

std::vector<bool> relevant_inputs(const NetworkModel& net) {
  // reach[u] = set of input dims feeding unit u, carried through the chain.
  std::vector<std::vector<bool>> reach(net.input_arity,
                                       std::vector<bool>(net.input_arity, false));
  for (size_t i = 0; i < net.input_arity; ++i) reach[i][i] = true;
  for (const Layer& layer : net.layers) {
    if (layer.kind != LayerKind::Affine) continue;
    std::vector<std::vector<bool>> next(layer.weights.size(),
                                        std::vector<bool>(net.input_arity, false));
    for (size_t j = 0; j < layer.weights.size(); ++j)
      for (size_t i = 0; i < layer.weights[j].size(); ++i)
        if (!layer.weights[j][i].is_zero())
          for (size_t d = 0; d < net.input_arity; ++d)
            if (reach[i][d]) next[j][d] = true;
    reach = std::move(next);
  }
  std::vector<bool> relevant(net.input_arity, false);
  for (const auto& unit : reach)
    for (size_t d = 0; d < net.input_arity; ++d)
      if (unit[d]) relevant[d] = true;
  return relevant;
}

EnclosureVector RefinementState::current_bounds() const {
  EnclosureVector out;
  out.reserve(history.size());
  for (const auto& seq : history) out.push_back(seq.back());
  return out;
}

RefinementState init_refinement(const NetworkModel& net, const InputBox& box) {
  RefinementState state;
  state.leaves.push_back(box);
  state.leaf_bounds.push_back(propagate_box(net, box));
  state.cost_spent = 1;
  state.history.resize(net.output_arity);
  for (size_t j = 0; j < net.output_arity; ++j)
    state.history[j].push_back(state.leaf_bounds.front()[j]);
  return state;
}

namespace {

// Union of the per-leaf enclosures, per output.
EnclosureVector merge_leaves(const std::vector<EnclosureVector>& leaf_bounds) {
  EnclosureVector global = leaf_bounds.front();
  for (size_t li = 1; li < leaf_bounds.size(); ++li) {
    for (size_t j = 0; j < global.size(); ++j) {
      if (leaf_bounds[li][j].lo < global[j].lo) global[j].lo = leaf_bounds[li][j].lo;
      if (leaf_bounds[li][j].hi > global[j].hi) global[j].hi = leaf_bounds[li][j].hi;
    }
  }
  return global;
}

}  // namespace

RefinementState refine(RefinementState state, const NetworkModel& net, long budget_remaining) {
  const std::vector<bool> relevant = relevant_inputs(net);

  // Widest relevant dimension over all leaves; ties toward the lowest
  // dimension, then the lowest leaf index.
  size_t best_leaf = 0, best_dim = 0;
  Rational best_width;
  bool found = false;
  for (size_t li = 0; li < state.leaves.size(); ++li) {
    for (size_t d = 0; d < state.leaves[li].dims.size(); ++d) {
      if (!relevant[d]) continue;
      Rational w = state.leaves[li].dims[d].width();
      if (!found || w > best_width) {
        best_width = std::move(w);
        best_leaf = li;
        best_dim = d;
        found = true;
      }
    }
  }
  if (!found || best_width.is_zero()) {
    return state;  // nothing to bisect; fixed point
  }
  if (budget_remaining < 2) {
    state.exhausted = true;
    return state;
  }

  const Interval& span = state.leaves[best_leaf].dims[best_dim];
  Rational mid = span.midpoint();
  InputBox left = state.leaves[best_leaf];
  InputBox right = state.leaves[best_leaf];
  left.dims[best_dim] = Interval{span.lo, mid};
  right.dims[best_dim] = Interval{mid, span.hi};

  EnclosureVector left_bounds = propagate_box(net, left);
  EnclosureVector right_bounds = propagate_box(net, right);

  state.leaves[best_leaf] = std::move(left);
  state.leaves.insert(state.leaves.begin() + static_cast<long>(best_leaf) + 1, std::move(right));
  state.leaf_bounds[best_leaf] = std::move(left_bounds);
  state.leaf_bounds.insert(state.leaf_bounds.begin() + static_cast<long>(best_leaf) + 1,
                           std::move(right_bounds));
  state.cost_spent += 2;
  state.stage += 1;

  EnclosureVector global = merge_leaves(state.leaf_bounds);
  for (size_t j = 0; j < state.history.size(); ++j)
    state.history[j].push_back(tighten(state.history[j].back(), global[j], state.stage));
  return state;
}

}  // namespace certigate
