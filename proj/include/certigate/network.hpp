#pragma once

#include <string>
#include <vector>

#include "certigate/canonical.hpp"
#include "certigate/interval.hpp"

namespace certigate {

enum class LayerKind { Affine, Relu, Monotone };
enum class MonotoneFn { Sigmoid, Tanh };

// Supported activation set. Extension point: a new monotone activation needs
// a directed-rounding enclosure in enclosure.cpp, a name here, and a
// regime-descriptor entry; nothing else in the gate changes.
const char* monotone_fn_name(MonotoneFn fn);
MonotoneFn monotone_fn_from_name(const std::string& name);

struct Layer {
  LayerKind kind = LayerKind::Relu;
  // Affine only: weights[j][i] maps input i to output j; bias per output.
  std::vector<std::vector<Rational>> weights;
  std::vector<Rational> bias;
  // Monotone only.
  MonotoneFn fn = MonotoneFn::Sigmoid;
  unsigned precision_bits = 0;
};

// Immutable after load; evaluation is pure and callable concurrently.
struct NetworkModel {
  std::string name;
  size_t input_arity = 0;
  size_t output_arity = 0;
  std::vector<Layer> layers;
  std::string model_hash;  // digest of the canonical serialization sans this field
};

// Axis-aligned box of input values, one interval per input coordinate.
struct InputBox {
  std::vector<Interval> dims;

  static InputBox point(const std::vector<Rational>& x);
  static InputBox widened(const std::vector<Rational>& x, const Rational& radius);
};

// Network file format: JSON with fields {name, input_arity, layers, model_hash},
// rationals as "p/q" or decimal strings, canonical form for hashing as in
// canonical.hpp. A missing model_hash is filled with the recomputed digest; a
// present one must match (HashMismatch otherwise).
NetworkModel load_network(const std::string& text);
NetworkModel load_network_file(const std::string& path);
std::string serialize_network(const NetworkModel& net);  // canonical text, round-trip stable
json network_to_json(const NetworkModel& net);

// Exact forward pass at a point. Affine and relu stay exact (degenerate
// intervals); monotone layers widen to their declared dyadic enclosure, so
// the result is a vector of degenerate-or-narrow intervals containing the
// true outputs.
std::vector<Interval> evaluate_point(const NetworkModel& net, const std::vector<Rational>& x);

// Outward dyadic enclosure of a monotone activation at 2^-bits granularity:
// [down(fn(in.lo)), up(fn(in.hi))]. down/up are sound directed roundings onto
// the dyadic grid; each end is within 2^-bits (plus guard-precision slack) of
// the true value.
Interval monotone_enclosure(MonotoneFn fn, unsigned bits, const Interval& in);
Rational monotone_lower(MonotoneFn fn, unsigned bits, const Rational& x);
Rational monotone_upper(MonotoneFn fn, unsigned bits, const Rational& x);

}  // namespace certigate
