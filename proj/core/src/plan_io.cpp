#include <fstream>
#include <sstream>

#include "json.hpp"
#include "seqplan/errors.hpp"
#include "seqplan/io.hpp"

namespace seqplan {

using nlohmann::json;

namespace {

json node_to_json(const PlanLibrary& lib, const PlanNode& n) {
  json j = json::object();
  j["label"] = lib.name(n.label);
  if (n.method) j["method"] = lib.method(*n.method).id;
  if (n.observed_at) j["observed"] = *n.observed_at;
  if (!n.children.empty()) {
    json cs = json::array();
    for (const auto& c : n.children) cs.push_back(node_to_json(lib, *c));
    j["children"] = std::move(cs);
  }
  return j;
}

NodePtr node_from_json(const PlanLibrary& lib, const json& j) {
  if (!j.is_object() || !j.contains("label") || !j.at("label").is_string())
    throw ValidationError("plan node must be an object with a string 'label'");
  auto n = std::make_shared<PlanNode>();
  const std::string name = j.at("label").get<std::string>();
  auto label = lib.find_action(name);
  if (!label) throw ValidationError("plan node names undeclared action '" + name + "'");
  n->label = *label;
  if (j.contains("method")) {
    if (!j.at("method").is_string()) throw ValidationError("'method' must be a string");
    auto m = lib.find_method(j.at("method").get<std::string>());
    if (!m) throw ValidationError("plan node names unknown method '" +
                                  j.at("method").get<std::string>() + "'");
    n->method = *m;
  }
  if (j.contains("observed")) {
    if (!j.at("observed").is_number_unsigned())
      throw ValidationError("'observed' must be a non-negative index");
    n->observed_at = j.at("observed").get<std::size_t>();
  }
  if (j.contains("children")) {
    if (!j.at("children").is_array()) throw ValidationError("'children' must be a list");
    for (const auto& c : j.at("children")) n->children.push_back(node_from_json(lib, c));
  }
  return n;
}

Plan plan_from(const PlanLibrary& lib, const json& j) {
  Plan p(lib.identity(), node_from_json(lib, j));
  validate_plan(lib, p);
  return p;
}

json hypothesis_json(const PlanLibrary& lib, const Hypothesis& h) {
  json plans = json::array();
  for (const auto& p : h.plans) plans.push_back(node_to_json(lib, p.root()));
  return {{"weight", h.weight}, {"plans", std::move(plans)}};
}

Hypothesis hypothesis_from(const PlanLibrary& lib, const json& j) {
  Hypothesis h;
  const json* plans = &j;
  if (j.is_object()) {
    if (!j.contains("plans")) throw ValidationError("hypothesis object without 'plans'");
    plans = &j.at("plans");
    if (j.contains("weight")) {
      if (!j.at("weight").is_number()) throw ValidationError("'weight' must be a number");
      h.weight = j.at("weight").get<double>();
    }
  }
  if (!plans->is_array()) throw ValidationError("'plans' must be a list of plans");
  for (const auto& p : *plans) h.plans.push_back(plan_from(lib, p));
  return h;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

void render(const PlanLibrary& lib, const PlanNode& n, std::string& out) {
  out += lib.name(n.label);
  if (n.method) {
    out += '[';
    out += lib.method(*n.method).id;
    out += "](";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out += ", ";
      render(lib, *n.children[i], out);
    }
    out += ')';
  }
  if (n.observed_at) {
    out += '@';
    out += std::to_string(*n.observed_at);
  }
}

}  // namespace

std::string plan_to_json(const PlanLibrary& lib, const Plan& p, int indent) {
  return node_to_json(lib, p.root()).dump(indent);
}

Plan plan_from_json(const PlanLibrary& lib, std::string_view text) {
  return plan_from(lib, parse_json(text));
}

std::string hypothesis_to_json(const PlanLibrary& lib, const Hypothesis& h, int indent) {
  return hypothesis_json(lib, h).dump(indent);
}

Hypothesis hypothesis_from_json(const PlanLibrary& lib, std::string_view text) {
  return hypothesis_from(lib, parse_json(text));
}

std::string hypothesis_set_to_json(const PlanLibrary& lib, const HypothesisSet& s, int indent) {
  json hs = json::array();
  for (const auto& h : s.hypotheses) hs.push_back(hypothesis_json(lib, h));
  json doc = {{"observations", s.observations},
              {"truncated", s.truncated},
              {"hypotheses", std::move(hs)}};
  return doc.dump(indent) + "\n";
}

HypothesisSet hypothesis_set_from_json(const PlanLibrary& lib, std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("hypotheses") || !doc.at("hypotheses").is_array())
    throw ValidationError("hypothesis set must be an object with a 'hypotheses' list");
  HypothesisSet s;
  for (const auto& h : doc.at("hypotheses")) s.hypotheses.push_back(hypothesis_from(lib, h));
  if (doc.contains("observations")) s.observations = doc.at("observations").get<std::size_t>();
  if (doc.contains("truncated")) s.truncated = doc.at("truncated").get<bool>();
  return s;
}

ObservationSequence parse_observations(const PlanLibrary& lib, std::string_view text) {
  std::vector<std::string> names;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    const json doc = parse_json(text);
    for (const auto& e : doc) {
      if (!e.is_string()) throw ValidationError("observation list must contain strings");
      names.push_back(e.get<std::string>());
    }
  } else {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      const auto e = line.find_last_not_of(" \t\r");
      names.push_back(line.substr(b, e - b + 1));
    }
  }
  ObservationSequence obs;
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto a = lib.find_action(names[i]);
    if (!a || !lib.is_basic(*a)) throw UnexplainableObservation(i, names[i]);
    obs.push_back(*a);
  }
  return obs;
}

std::string serialize_observations(const PlanLibrary& lib, std::span<const ActionId> obs) {
  std::string out;
  for (ActionId a : obs) {
    out += lib.name(a);
    out += '\n';
  }
  return out;
}

std::string plan_to_string(const PlanLibrary& lib, const Plan& p) {
  std::string out;
  render(lib, p.root(), out);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace seqplan
