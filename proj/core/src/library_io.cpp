#include <fstream>
#include <sstream>

#include "json.hpp"
#include "seqplan/errors.hpp"
#include "seqplan/plan_library.hpp"

namespace seqplan {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::vector<std::string> string_list(const json& doc, const char* key, bool required) {
  std::vector<std::string> out;
  if (!doc.contains(key)) {
    if (required) throw ValidationError(std::string("missing required key '") + key + "'");
    return out;
  }
  const json& v = doc.at(key);
  if (!v.is_array()) throw ValidationError(std::string("'") + key + "' must be a list of strings");
  for (const auto& e : v) {
    if (!e.is_string())
      throw ValidationError(std::string("'") + key + "' must be a list of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

LibraryDraft draft_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("library document must be an object");
  LibraryDraft d;
  d.basic = string_list(doc, "basic", true);
  d.complex = string_list(doc, "complex", true);
  d.goals = string_list(doc, "goals", true);
  if (doc.contains("goal_priors")) {
    const json& pri = doc.at("goal_priors");
    if (!pri.is_object()) throw ValidationError("'goal_priors' must be a map of probabilities");
    for (const auto& [name, p] : pri.items()) {
      if (!p.is_number()) throw ValidationError("goal prior for '" + name + "' must be a number");
      d.goal_priors[name] = p.get<double>();
    }
  }
  if (!doc.contains("methods") || !doc.at("methods").is_array())
    throw ValidationError("missing required list 'methods'");
  for (const auto& jm : doc.at("methods")) {
    if (!jm.is_object()) throw ValidationError("each method must be an object");
    LibraryDraft::Method m;
    if (!jm.contains("id") || !jm.at("id").is_string())
      throw ValidationError("method without string 'id'");
    m.id = jm.at("id").get<std::string>();
    if (!jm.contains("head") || !jm.at("head").is_string())
      throw ValidationError("method '" + m.id + "' without string 'head'");
    m.head = jm.at("head").get<std::string>();
    m.children = string_list(jm, "children", true);
    if (jm.contains("order")) {
      const json& ord = jm.at("order");
      if (!ord.is_array()) throw ValidationError("method '" + m.id + "': 'order' must be a list");
      for (const auto& pair : ord) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
            !pair[1].is_number_unsigned())
          throw ValidationError("method '" + m.id +
                                "': order entries must be [i, j] pairs of indices");
        m.order.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
      }
    }
    d.methods.push_back(std::move(m));
  }
  return d;
}

}  // namespace

PlanLibrary parse_library(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_and_column(text, e.byte);
    throw SyntaxError(e.what(), line, column);
  }
  return PlanLibrary::build(draft_from_json(doc));
}

PlanLibrary load_library(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open library file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_library(buf.str());
}

std::string serialize_library(const PlanLibrary& lib) {
  const LibraryDraft d = lib.to_draft();
  json doc = json::object();
  doc["basic"] = d.basic;
  doc["complex"] = d.complex;
  doc["goals"] = d.goals;
  json priors = json::object();
  for (const auto& [name, p] : d.goal_priors) priors[name] = p;
  doc["goal_priors"] = priors;
  json methods = json::array();
  for (const auto& m : d.methods) {
    json order = json::array();
    for (auto [i, j] : m.order) order.push_back({i, j});
    methods.push_back({{"id", m.id}, {"head", m.head}, {"children", m.children}, {"order", order}});
  }
  doc["methods"] = methods;
  return doc.dump(2) + "\n";
}

}  // namespace seqplan
