#include "certigate/record.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "certigate/errors.hpp"

namespace certigate {

json record_item_to_json(const RecordItem& item) {
  json j;
  j["item_id"] = item.item_id;
  j["content_hash"] = item.content_hash;
  j["evidence_class"] = item.evidence_class;
  j["timestamp"] = item.timestamp.str();
  j["provenance"] = {{"source_id", item.provenance.source_id},
                     {"custody_chain", item.provenance.custody_chain},
                     {"authenticated", item.provenance.authenticated}};
  return j;
}

RecordItem record_item_from_json(const json& j) {
  RecordItem item;
  try {
    item.item_id = j.at("item_id").get<std::string>();
    item.content_hash = j.at("content_hash").get<std::string>();
    item.evidence_class = j.at("evidence_class").get<std::string>();
    item.timestamp = Rational::from_string(j.at("timestamp").get<std::string>());
    const json& p = j.at("provenance");
    item.provenance.source_id = p.at("source_id").get<std::string>();
    item.provenance.custody_chain = p.at("custody_chain").get<std::vector<std::string>>();
    item.provenance.authenticated = p.at("authenticated").get<bool>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed record item: ") + e.what());
  }
  if (item.content_hash.empty()) throw ParseError("record item with empty content_hash");
  return item;
}

void RecordStore::append(RecordItem item) {
  if (item.content_hash.empty()) throw ParseError("record item with empty content_hash");
  items_.push_back(std::move(item));
}

std::vector<RecordItem> RecordStore::asof(const Rational& t) const {
  std::vector<RecordItem> slice;
  for (const auto& item : items_)
    if (item.timestamp <= t) slice.push_back(item);
  std::stable_sort(slice.begin(), slice.end(),
                   [](const RecordItem& a, const RecordItem& b) { return a.timestamp < b.timestamp; });
  return slice;
}

bool RecordStore::resolves(const std::string& content_hash, const Rational& t) const {
  for (const auto& item : items_)
    if (item.timestamp <= t && item.content_hash == content_hash) return true;
  return false;
}

RecordStore RecordStore::from_jsonl(const std::string& text) {
  RecordStore store;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("record store line " + std::to_string(lineno) + ": " + e.what());
    }
    store.append(record_item_from_json(j));
  }
  return store;
}

RecordStore RecordStore::from_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open record store '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_jsonl(ss.str());
}

std::string RecordStore::to_jsonl() const {
  std::string out;
  for (const auto& item : items_) {
    out += canonical_dump(record_item_to_json(item));
    out += '\n';
  }
  return out;
}

StandingResult evaluate_standing(const StandingPolicy& policy,
                                 const std::vector<RecordItem>& items) {
  std::map<std::string, int> counts;
  for (const auto& item : items) {
    if (policy.require_authenticated && !item.provenance.authenticated) continue;
    counts[item.evidence_class] += 1;
  }
  StandingResult result;
  result.pass = true;
  for (const auto& [cls, required] : policy.required_classes) {
    const int have = counts.count(cls) ? counts.at(cls) : 0;
    if (have < required) {
      result.pass = false;
      result.missing[cls] = required - have;
    }
  }
  return result;
}

ScopeResult evaluate_scope(const ScopePolicy& policy, const QueryMeta& meta) {
  if (!policy.jurisdictions.count(meta.jurisdiction))
    return ScopeResult{false, "jurisdiction"};
  if (meta.query_time < policy.window_start || meta.query_time > policy.window_end)
    return ScopeResult{false, "time_window"};
  if (meta.identity_rule_id != policy.identity_rule_id)
    return ScopeResult{false, "identity_rule"};
  return ScopeResult{true, ""};
}

json scope_policy_to_json(const ScopePolicy& p) {
  json j;
  j["policy_id"] = p.policy_id;
  j["jurisdictions"] = std::vector<std::string>(p.jurisdictions.begin(), p.jurisdictions.end());
  j["window_start"] = p.window_start.str();
  j["window_end"] = p.window_end.str();
  j["identity_rule_id"] = p.identity_rule_id;
  return j;
}

ScopePolicy scope_policy_from_json(const json& j) {
  ScopePolicy p;
  try {
    p.policy_id = j.at("policy_id").get<std::string>();
    for (const auto& s : j.at("jurisdictions")) p.jurisdictions.insert(s.get<std::string>());
    p.window_start = Rational::from_string(j.at("window_start").get<std::string>());
    p.window_end = Rational::from_string(j.at("window_end").get<std::string>());
    p.identity_rule_id = j.at("identity_rule_id").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed scope policy: ") + e.what());
  }
  if (p.window_start > p.window_end) throw ParseError("scope policy window start > end");
  return p;
}

json standing_policy_to_json(const StandingPolicy& p) {
  json req = json::object();
  for (const auto& [cls, n] : p.required_classes) req[cls] = n;
  json j;
  j["policy_id"] = p.policy_id;
  j["required_classes"] = std::move(req);
  j["require_authenticated"] = p.require_authenticated;
  return j;
}

StandingPolicy standing_policy_from_json(const json& j) {
  StandingPolicy p;
  try {
    p.policy_id = j.at("policy_id").get<std::string>();
    for (const auto& [cls, n] : j.at("required_classes").items()) {
      const int count = n.get<int>();
      if (count < 0) throw ParseError("negative standing requirement for " + cls);
      p.required_classes[cls] = count;
    }
    p.require_authenticated = j.at("require_authenticated").get<bool>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed standing policy: ") + e.what());
  }
  return p;
}

const std::set<std::string>& known_evidence_classes() {
  static const std::set<std::string> classes = {
      "press_report", "inquiry_report", "registry_entry", "sworn_testimony",
      "exculpatory_finding"};
  return classes;
}

FeatureSpec feature_spec_from_json(const json& j) {
  FeatureSpec spec;
  try {
    for (const auto& d : j.at("dims")) {
      FeatureDim dim;
      dim.evidence_class = d.at("evidence_class").get<std::string>();
      dim.saturation = d.at("saturation").get<int>();
      spec.dims.push_back(std::move(dim));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed feature spec: ") + e.what());
  }
  return spec;
}

json feature_spec_to_json(const FeatureSpec& spec) {
  json dims = json::array();
  for (const auto& d : spec.dims)
    dims.push_back({{"evidence_class", d.evidence_class}, {"saturation", d.saturation}});
  return json{{"dims", std::move(dims)}};
}

std::vector<Rational> features_from_record(const std::vector<RecordItem>& items,
                                           const FeatureSpec& spec) {
  std::map<std::string, long> counts;
  for (const auto& item : items) counts[item.evidence_class] += 1;

  std::vector<Rational> x;
  x.reserve(spec.dims.size());
  for (const auto& dim : spec.dims) {
    if (!known_evidence_classes().count(dim.evidence_class))
      throw UnknownClass("evidence class '" + dim.evidence_class + "' not in the registry");
    if (dim.saturation <= 0)
      throw UnknownClass("saturation must be positive for class '" + dim.evidence_class + "'");
    const long count = counts.count(dim.evidence_class) ? counts.at(dim.evidence_class) : 0;
    const long clamped = std::min<long>(count, dim.saturation);
    x.push_back(Rational(clamped, dim.saturation));
  }
  return x;
}

}  // namespace certigate
