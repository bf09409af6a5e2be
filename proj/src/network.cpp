#include "certigate/network.hpp"

#include <fstream>
#include <sstream>

#include "certigate/errors.hpp"

namespace certigate {

const char* monotone_fn_name(MonotoneFn fn) {
  return fn == MonotoneFn::Sigmoid ? "sigmoid" : "tanh";
}

MonotoneFn monotone_fn_from_name(const std::string& name) {
  if (name == "sigmoid") return MonotoneFn::Sigmoid;
  if (name == "tanh") return MonotoneFn::Tanh;
  throw ParseError("unsupported monotone activation '" + name + "'");
}

InputBox InputBox::point(const std::vector<Rational>& x) {
  InputBox box;
  box.dims.reserve(x.size());
  for (const auto& v : x) box.dims.push_back(Interval::point(v));
  return box;
}

InputBox InputBox::widened(const std::vector<Rational>& x, const Rational& radius) {
  if (radius.sign() < 0) throw InvalidInterval("negative input radius " + radius.str());
  InputBox box;
  box.dims.reserve(x.size());
  for (const auto& v : x) box.dims.push_back(Interval{v - radius, v + radius});
  return box;
}

namespace {

Rational rational_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw ParseError(std::string("missing or non-string rational field '") + key + "'");
  return Rational::from_string(j.at(key).get<std::string>());
}

Layer layer_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("layer entry missing 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  Layer layer;
  if (kind == "affine") {
    layer.kind = LayerKind::Affine;
    if (!j.contains("weights") || !j.at("weights").is_array() || j.at("weights").empty())
      throw ParseError("affine layer needs a non-empty 'weights' matrix");
    for (const auto& row : j.at("weights")) {
      std::vector<Rational> r;
      for (const auto& cell : row) r.push_back(Rational::from_string(cell.get<std::string>()));
      layer.weights.push_back(std::move(r));
    }
    if (!j.contains("bias") || !j.at("bias").is_array())
      throw ParseError("affine layer needs a 'bias' vector");
    for (const auto& cell : j.at("bias"))
      layer.bias.push_back(Rational::from_string(cell.get<std::string>()));
    if (layer.bias.size() != layer.weights.size())
      throw DimensionMismatch("bias arity " + std::to_string(layer.bias.size()) +
                              " != weight rows " + std::to_string(layer.weights.size()));
    for (const auto& row : layer.weights)
      if (row.size() != layer.weights.front().size())
        throw DimensionMismatch("ragged weight matrix");
  } else if (kind == "relu") {
    layer.kind = LayerKind::Relu;
  } else if (kind == "monotone") {
    layer.kind = LayerKind::Monotone;
    if (!j.contains("function_id"))
      throw ParseError("monotone layer needs 'function_id'");
    layer.fn = monotone_fn_from_name(j.at("function_id").get<std::string>());
    if (!j.contains("precision_bits") || !j.at("precision_bits").is_number_unsigned())
      throw ParseError("monotone layer needs integer 'precision_bits'");
    layer.precision_bits = j.at("precision_bits").get<unsigned>();
    if (layer.precision_bits < 8)
      throw ParseError("precision_bits must be >= 8");
    if (layer.precision_bits > 65536)
      throw ParseError("precision_bits out of supported range");
  } else {
    throw ParseError("unknown layer kind '" + kind + "'");
  }
  return layer;
}

json layer_to_json(const Layer& layer) {
  json j;
  switch (layer.kind) {
    case LayerKind::Affine: {
      j["kind"] = "affine";
      json rows = json::array();
      for (const auto& row : layer.weights) {
        json r = json::array();
        for (const auto& w : row) r.push_back(w.str());
        rows.push_back(std::move(r));
      }
      j["weights"] = std::move(rows);
      json b = json::array();
      for (const auto& v : layer.bias) b.push_back(v.str());
      j["bias"] = std::move(b);
      break;
    }
    case LayerKind::Relu:
      j["kind"] = "relu";
      break;
    case LayerKind::Monotone:
      j["kind"] = "monotone";
      j["function_id"] = monotone_fn_name(layer.fn);
      j["precision_bits"] = layer.precision_bits;
      break;
  }
  return j;
}

// Walks the layer chain and returns the output arity; throws on breaks.
size_t validate_chain(const NetworkModel& net) {
  size_t cur = net.input_arity;
  if (cur == 0) throw DimensionMismatch("input_arity must be positive");
  for (size_t li = 0; li < net.layers.size(); ++li) {
    const Layer& layer = net.layers[li];
    if (layer.kind == LayerKind::Affine) {
      if (layer.weights.front().size() != cur)
        throw DimensionMismatch("layer " + std::to_string(li) + " expects arity " +
                                std::to_string(layer.weights.front().size()) + ", got " +
                                std::to_string(cur));
      cur = layer.weights.size();
    }
  }
  return cur;
}

}  // namespace

json network_to_json(const NetworkModel& net) {
  json j;
  j["name"] = net.name;
  j["input_arity"] = net.input_arity;
  json layers = json::array();
  for (const auto& layer : net.layers) layers.push_back(layer_to_json(layer));
  j["layers"] = std::move(layers);
  j["model_hash"] = net.model_hash;
  return j;
}

std::string serialize_network(const NetworkModel& net) {
  return canonical_dump(network_to_json(net));
}

NetworkModel load_network(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("network file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("name") || !j.contains("input_arity") || !j.contains("layers"))
    throw ParseError("network file needs 'name', 'input_arity' and 'layers'");

  NetworkModel net;
  net.name = j.at("name").get<std::string>();
  if (!j.at("input_arity").is_number_unsigned())
    throw ParseError("input_arity must be a non-negative integer");
  net.input_arity = j.at("input_arity").get<size_t>();
  for (const auto& lj : j.at("layers")) net.layers.push_back(layer_from_json(lj));
  net.output_arity = validate_chain(net);

  net.model_hash = payload_hash(network_to_json(net), "model_hash");
  if (j.contains("model_hash")) {
    const std::string embedded = j.at("model_hash").get<std::string>();
    if (embedded != net.model_hash)
      throw HashMismatch("embedded model_hash " + embedded + " != recomputed " + net.model_hash);
  }
  return net;
}

NetworkModel load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open network file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_network(ss.str());
}

std::vector<Interval> evaluate_point(const NetworkModel& net, const std::vector<Rational>& x) {
  if (x.size() != net.input_arity)
    throw ArityMismatch("point arity " + std::to_string(x.size()) + " != input arity " +
                        std::to_string(net.input_arity));
  std::vector<Interval> cur;
  cur.reserve(x.size());
  for (const auto& v : x) cur.push_back(Interval::point(v));

  for (const Layer& layer : net.layers) {
    switch (layer.kind) {
      case LayerKind::Affine: {
        std::vector<Interval> next;
        next.reserve(layer.weights.size());
        for (size_t jout = 0; jout < layer.weights.size(); ++jout) {
          Rational lo = layer.bias[jout];
          Rational hi = layer.bias[jout];
          for (size_t i = 0; i < cur.size(); ++i) {
            const Rational& w = layer.weights[jout][i];
            Rational a = w * cur[i].lo;
            Rational b = w * cur[i].hi;
            lo += min(a, b);
            hi += max(a, b);
          }
          next.push_back(Interval{std::move(lo), std::move(hi)});
        }
        cur = std::move(next);
        break;
      }
      case LayerKind::Relu:
        for (auto& iv : cur) {
          const Rational zero;
          if (iv.hi <= zero) {
            iv = Interval{zero, zero};
          } else if (iv.lo < zero) {
            iv.lo = zero;
          }
        }
        break;
      case LayerKind::Monotone:
        for (auto& iv : cur) iv = monotone_enclosure(layer.fn, layer.precision_bits, iv);
        break;
    }
  }
  return cur;
}

}  // namespace certigate
