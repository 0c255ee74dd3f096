#include "gtue/io.hpp"

#include <fstream>
#include <sstream>

namespace gtue::io {

void schema_error(const std::string& path, const std::string& message) {
  fail(ErrorCode::Schema, path + ": " + message);
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Schema, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::Schema, path + ": invalid JSON: " + e.what());
  }
}

std::string field(const std::string& path, const std::string& key) { return path + "." + key; }

std::string element(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(field(path, key), "missing required field");
  return *it;
}

std::size_t read_size(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) schema_error(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

StateSpace read_states(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    std::size_t n = read_size(j, path);
    if (n == 0) schema_error(path, "state space must be non-empty");
    return StateSpace::numbered(n);
  }
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty array of state labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_string()) {
      labels.push_back(j[i].get<std::string>());
    } else if (j[i].is_number_integer()) {
      labels.push_back(std::to_string(j[i].get<long long>()));
    } else {
      schema_error(element(path, i), "expected a state label");
    }
  }
  try {
    return StateSpace(std::move(labels));
  } catch (const Error& e) {
    schema_error(path, e.message());
  }
}

Json write_states(const StateSpace& space) { return Json(space.labels()); }

Situation read_situation(const Json& j, const std::string& path, const StateSpace& space) {
  if (!j.is_string()) schema_error(path, "expected a situation string");
  try {
    return parse_situation(j.get<std::string>(), space);
  } catch (const Error& e) {
    schema_error(path, e.message());
  }
}

Cut read_cut(const Json& j, const std::string& path, const StateSpace& space) {
  if (!j.is_array()) schema_error(path, "expected an array of situations");
  std::vector<Situation> members;
  for (std::size_t i = 0; i < j.size(); ++i) members.push_back(read_situation(j[i], element(path, i), space));
  try {
    return Cut(std::move(members));
  } catch (const Error& e) {
    schema_error(path, e.message());
  }
}

Json write_cut(const Cut& cut, const StateSpace& space) {
  Json out = Json::array();
  for (const auto& s : cut.members()) out.push_back(format_situation(s, space));
  return out;
}

Json write_cut_system(const CutSystem& cuts, const StateSpace& space) {
  Json pairs = Json::array();
  for (const auto& [v, u] : cuts.pairs) pairs.push_back(Json{{"V", write_cut(v, space)}, {"U", write_cut(u, space)}});
  return Json{{"root", format_situation(cuts.root, space)}, {"pairs", std::move(pairs)}};
}

}  // namespace gtue::io
