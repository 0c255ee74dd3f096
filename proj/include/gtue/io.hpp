#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtue/constructions.hpp"
#include "gtue/errors.hpp"
#include "gtue/event_tree.hpp"
#include "gtue/global_eval.hpp"
#include "gtue/local_model.hpp"
#include "gtue/process.hpp"
#include "gtue/situation.hpp"
#include "gtue/tree_model.hpp"
#include "gtue/xreal.hpp"

/// JSON ingestion and emission. Readers take a JSON-path prefix ("$.model")
/// and raise Schema errors that name the offending field.
namespace gtue::io {

using Json = nlohmann::json;

Json load_json_file(const std::string& path);
Json parse_json_text(std::string_view text);

[[noreturn]] void schema_error(const std::string& path, const std::string& message);
const Json& require(const Json& j, const std::string& key, const std::string& path);
std::size_t read_size(const Json& j, const std::string& path);
std::string field(const std::string& path, const std::string& key);
std::string element(const std::string& path, std::size_t i);

StateSpace read_states(const Json& j, const std::string& path);
Json write_states(const StateSpace& space);
Situation read_situation(const Json& j, const std::string& path, const StateSpace& space);
Cut read_cut(const Json& j, const std::string& path, const StateSpace& space);
Json write_cut(const Cut& cut, const StateSpace& space);
Json write_cut_system(const CutSystem& cuts, const StateSpace& space);

// ---------------------------------------------------------------------------
// Scalars

template <class S>
S read_scalar(const Json& j, const std::string& path) {
  try {
    if constexpr (ScalarTraits<S>::exact) {
      if (j.is_number_integer()) return S(j.get<long long>());
      if (j.is_number_float()) return ScalarTraits<S>::from_decimal_of(j.get<double>());
    } else {
      if (j.is_number()) return j.get<double>();
    }
    if (j.is_string()) return ScalarTraits<S>::parse(j.get<std::string>());
  } catch (const Error& e) {
    schema_error(path, e.message());
  }
  schema_error(path, "expected a number, got " + std::string(j.type_name()));
}

template <class S>
ExtendedReal<S> read_xreal(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto& t = j.get_ref<const std::string&>();
    if (t == "inf" || t == "+inf") return ExtendedReal<S>::pos_inf();
    if (t == "-inf") return ExtendedReal<S>::neg_inf();
  }
  return ExtendedReal<S>(read_scalar<S>(j, path));
}

/// Numbers where the JSON number re-parses to the same value, "p/q" otherwise.
template <class S>
Json write_scalar(const S& v) {
  if constexpr (ScalarTraits<S>::exact) {
    if (boost::multiprecision::denominator(v) == 1) {
      const auto& num = boost::multiprecision::numerator(v);
      if (abs(num) < (boost::multiprecision::mpz_int(1) << 62)) return Json(num.template convert_to<long long>());
    }
    const double d = ScalarTraits<S>::to_double(v);
    if (ScalarTraits<S>::from_decimal_of(d) == v) return Json(d);
    return Json(ScalarTraits<S>::format(v));
  } else {
    return Json(v);
  }
}

template <class S>
Json write_xreal(const ExtendedReal<S>& v) {
  if (v.is_pos_inf()) return "inf";
  if (v.is_neg_inf()) return "-inf";
  return write_scalar(v.finite());
}

// ---------------------------------------------------------------------------
// Local models and trees

template <class S>
Pmf<S> read_pmf(const Json& j, const std::string& path, std::size_t dimension) {
  if (!j.is_array()) schema_error(path, "expected an array of probabilities");
  if (j.size() != dimension) {
    schema_error(path, "expected " + std::to_string(dimension) + " probabilities, got " + std::to_string(j.size()));
  }
  Pmf<S> p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(read_scalar<S>(j[i], element(path, i)));
  return p;
}

/// Either an array of extreme points or {extreme_points: [...]} or {assessments: [...]}.
template <class S>
CredalSet<S> read_credal(const Json& j, const std::string& path, const StateSpace& space) {
  const Json* points = nullptr;
  std::string points_path = path;
  if (j.is_array()) {
    points = &j;
  } else if (j.is_object() && j.contains("extreme_points")) {
    points = &j["extreme_points"];
    points_path = field(path, "extreme_points");
  } else if (j.is_object() && j.contains("assessments")) {
    const Json& list = j["assessments"];
    const std::string lpath = field(path, "assessments");
    if (!list.is_array()) schema_error(lpath, "expected an array of assessments");
    AssessmentSet<S> assessments;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string ipath = element(lpath, i);
      if (!list[i].is_object()) schema_error(ipath, "expected {gamble, upper}");
      Assessment<S> a;
      a.gamble = read_pmf<S>(require(list[i], "gamble", ipath), field(ipath, "gamble"), space.size());
      a.upper = read_scalar<S>(require(list[i], "upper", ipath), field(ipath, "upper"));
      assessments.push_back(std::move(a));
    }
    return natural_extension(space, assessments);
  } else {
    schema_error(path, "expected an array of extreme points, or an object with extreme_points or assessments");
  }
  if (!points->is_array() || points->empty()) schema_error(points_path, "expected a non-empty array of PMFs");
  std::vector<Pmf<S>> pmfs;
  for (std::size_t i = 0; i < points->size(); ++i) {
    pmfs.push_back(read_pmf<S>((*points)[i], element(points_path, i), space.size()));
  }
  try {
    return CredalSet<S>(std::move(pmfs));
  } catch (const Error& e) {
    schema_error(points_path, e.message());
  }
}

template <class S>
Json write_credal(const CredalSet<S>& set) {
  Json out = Json::array();
  for (const auto& p : set.points()) {
    Json row = Json::array();
    for (const auto& v : p) row.push_back(write_scalar(v));
    out.push_back(std::move(row));
  }
  return out;
}

template <class S>
TreeModel<S> read_tree(const Json& j, const std::string& path = "$") {
  if (!j.is_object()) schema_error(path, "expected a tree object");
  StateSpace space = read_states(require(j, "states", path), field(path, "states"));
  const std::size_t max_depth = read_size(require(j, "max_depth", path), field(path, "max_depth"));
  const std::string mpath = field(path, "model");
  const Json& model = require(j, "model", path);
  if (!model.is_object()) schema_error(mpath, "expected a model object");
  const Json& type = require(model, "type", mpath);
  if (!type.is_string()) schema_error(field(mpath, "type"), "expected a string");
  const std::string kind = type.get<std::string>();
  if (kind == "stationary") {
    if (!model.contains("extreme_points") && !model.contains("assessments")) {
      schema_error(mpath, "stationary model needs extreme_points or assessments");
    }
    return TreeModel<S>::stationary(space, read_credal<S>(model, mpath, space), max_depth);
  }
  if (kind == "by_depth") {
    const std::string lpath = field(mpath, "levels");
    const Json& levels = require(model, "levels", mpath);
    if (!levels.is_array()) schema_error(lpath, "expected an array of credal sets");
    if (levels.size() < max_depth) {
      schema_error(lpath, "need " + std::to_string(max_depth) + " levels, got " + std::to_string(levels.size()));
    }
    std::vector<CredalSet<S>> sets;
    for (std::size_t i = 0; i < levels.size(); ++i) sets.push_back(read_credal<S>(levels[i], element(lpath, i), space));
    return TreeModel<S>::by_depth(space, std::move(sets), max_depth);
  }
  if (kind == "table") {
    const std::string npath = field(mpath, "nodes");
    const Json& nodes = require(model, "nodes", mpath);
    if (!nodes.is_object()) schema_error(npath, "expected a map from situation to credal set");
    std::map<Situation, CredalSet<S>> table;
    for (auto it = nodes.begin(); it != nodes.end(); ++it) {
      const std::string kpath = npath + "[\"" + it.key() + "\"]";
      Situation s = read_situation(Json(it.key()), kpath, space);
      if (s.depth() >= max_depth) schema_error(kpath, "situation is at or beyond max_depth");
      table.emplace(s, read_credal<S>(it.value(), kpath, space));
    }
    try {
      return TreeModel<S>::table(space, table, max_depth);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidArgument) schema_error(npath, e.message());
      throw;
    }
  }
  schema_error(field(mpath, "type"), "unknown model type '" + kind + "' (stationary, by_depth, table)");
}

template <class S>
Json write_tree(const TreeModel<S>& tree) {
  Json model;
  using Kind = typename TreeModel<S>::Kind;
  switch (tree.kind()) {
    case Kind::stationary:
      model["type"] = "stationary";
      model["extreme_points"] = write_credal(tree.stored().front());
      break;
    case Kind::by_depth: {
      model["type"] = "by_depth";
      Json levels = Json::array();
      for (const auto& s : tree.stored()) levels.push_back(write_credal(s));
      model["levels"] = std::move(levels);
      break;
    }
    case Kind::table: {
      model["type"] = "table";
      Json nodes = Json::object();
      if (tree.max_depth() > 0) {
        for_each_extension(Situation{}, tree.arity(), tree.max_depth() - 1, [&](const Situation& s) {
          nodes[format_situation(s, tree.space())] = write_credal(tree.local(s));
        });
      }
      model["nodes"] = std::move(nodes);
      break;
    }
  }
  return Json{{"states", write_states(tree.space())}, {"model", std::move(model)}, {"max_depth", tree.max_depth()}};
}

// ---------------------------------------------------------------------------
// Variables and sequences

template <class S>
FinitaryVariable<S> read_variable(const Json& j, const std::string& path, std::size_t arity) {
  if (!j.is_object()) schema_error(path, "expected a variable object {depth, values}");
  const std::size_t depth = read_size(require(j, "depth", path), field(path, "depth"));
  const std::string vpath = field(path, "values");
  const Json& values = require(j, "values", path);
  if (!values.is_array()) schema_error(vpath, "expected an array");
  std::size_t expected = 0;
  try {
    expected = table_size(arity, depth);
  } catch (const Error& e) {
    schema_error(field(path, "depth"), e.message());
  }
  if (values.size() != expected) {
    schema_error(vpath, "expected |X|^depth = " + std::to_string(expected) + " values, got " +
                            std::to_string(values.size()));
  }
  std::vector<ExtendedReal<S>> v;
  v.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v.push_back(read_xreal<S>(values[i], element(vpath, i)));
  return FinitaryVariable<S>(arity, depth, std::move(v));
}

template <class S>
Json write_variable(const FinitaryVariable<S>& f) {
  Json values = Json::array();
  for (const auto& v : f.values()) values.push_back(write_xreal(v));
  return Json{{"depth", f.depth()}, {"values", std::move(values)}};
}

template <class S>
FinitarySequence<S> read_sequence(const Json& j, const std::string& path, std::size_t arity) {
  const Json& kind_json = require(j, "kind", path);
  if (!kind_json.is_string()) schema_error(field(path, "kind"), "expected a string");
  const std::string kind = kind_json.get<std::string>();
  if (kind == "clamp_above" || kind == "clamp_below") {
    auto base = read_variable<S>(require(j, "base", path), field(path, "base"), arity);
    return kind == "clamp_above" ? clamp_above_sequence(base) : clamp_below_sequence(base);
  }
  if (kind == "explicit") {
    const std::string ipath = field(path, "items");
    const Json& items = require(j, "items", path);
    if (!items.is_array() || items.empty()) schema_error(ipath, "expected a non-empty array of variables");
    std::vector<FinitaryVariable<S>> list;
    for (std::size_t i = 0; i < items.size(); ++i) list.push_back(read_variable<S>(items[i], element(ipath, i), arity));
    const Json& mono = require(j, "monotonicity", path);
    if (!mono.is_string()) schema_error(field(path, "monotonicity"), "expected a string");
    Monotonicity m;
    try {
      m = parse_monotonicity(mono.get<std::string>());
    } catch (const Error& e) {
      schema_error(field(path, "monotonicity"), e.message());
    }
    return explicit_sequence(std::move(list), m);
  }
  schema_error(field(path, "kind"), "unknown sequence kind '" + kind + "' (clamp_above, clamp_below, explicit)");
}

/// A variable file holds either a finitary variable or a sequence template.
template <class S>
struct Subject {
  std::optional<FinitaryVariable<S>> variable;
  std::optional<FinitarySequence<S>> sequence;
};

template <class S>
Subject<S> read_subject(const Json& j, const std::string& path, std::size_t arity) {
  if (!j.is_object()) schema_error(path, "expected a variable or sequence object");
  Subject<S> out;
  if (j.contains("kind")) {
    out.sequence = read_sequence<S>(j, path, arity);
  } else {
    out.variable = read_variable<S>(j, path, arity);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Processes

/// Values strictly below a terminal cut member may be omitted; they are
/// filled from the member.
template <class S>
Process<S> read_process(const Json& j, const std::string& path, const StateSpace& space) {
  if (!j.is_object()) schema_error(path, "expected a process object {horizon, values, terminal_cut?}");
  const std::size_t horizon = read_size(require(j, "horizon", path), field(path, "horizon"));
  std::optional<Cut> cut;
  if (j.contains("terminal_cut") && !j["terminal_cut"].is_null()) {
    cut = read_cut(j["terminal_cut"], field(path, "terminal_cut"), space);
  }
  const std::string vpath = field(path, "values");
  const Json& values = require(j, "values", path);
  if (!values.is_object()) schema_error(vpath, "expected a map from situation to value");
  SituationIndex index(space.size(), horizon);
  std::vector<std::optional<ExtendedReal<S>>> slots(index.total());
  for (auto it = values.begin(); it != values.end(); ++it) {
    const std::string kpath = vpath + "[\"" + it.key() + "\"]";
    Situation s = read_situation(Json(it.key()), kpath, space);
    if (s.depth() > horizon) schema_error(kpath, "situation is beyond the horizon");
    slots[index.index(s)] = read_xreal<S>(it.value(), kpath);
  }
  std::vector<ExtendedReal<S>> v(index.total());
  for (std::size_t d = 0; d <= horizon; ++d) {
    for (std::size_t i = 0; i < index.count(d); ++i) {
      const std::size_t k = index.offset(d) + i;
      if (slots[k]) {
        v[k] = *slots[k];
        continue;
      }
      Situation s = index.situation(d, i);
      std::optional<Situation> member = cut ? cut->member_before(s) : std::nullopt;
      if (!member || !slots[index.index(*member)]) {
        schema_error(vpath, "missing value for situation '" + format_situation(s, space) + "'");
      }
      v[k] = v[index.index(*member)];
    }
  }
  try {
    return Process<S>(space.size(), horizon, std::move(v), std::move(cut));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) schema_error(path, e.message());
    throw;
  }
}

/// Omits situations strictly below a terminal cut member.
template <class S>
Json write_process(const Process<S>& m, const StateSpace& space) {
  Json values = Json::object();
  const auto& index = m.index();
  for (std::size_t d = 0; d <= m.horizon(); ++d) {
    for (std::size_t i = 0; i < index.count(d); ++i) {
      Situation s = index.situation(d, i);
      if (m.terminal_cut() && m.terminal_cut()->member_before(s)) continue;
      values[format_situation(s, space)] = write_xreal(m.values()[index.offset(d) + i]);
    }
  }
  Json out{{"horizon", m.horizon()}, {"values", std::move(values)}};
  if (m.terminal_cut()) out["terminal_cut"] = write_cut(*m.terminal_cut(), space);
  return out;
}

// ---------------------------------------------------------------------------
// Reports

template <class S>
Json write_verdict(const SupermartingaleVerdict<S>& v, const StateSpace& space) {
  Json out{{"is_supermartingale", v.is_supermartingale},
           {"is_bounded_below", v.is_bounded_below},
           {"nodes_checked", v.nodes_checked}};
  if (v.worst_violation) {
    out["worst_violation"] = Json{{"situation", format_situation(v.worst_violation->situation, space)},
                                  {"gap", write_xreal(v.worst_violation->gap)}};
  } else {
    out["worst_violation"] = nullptr;
  }
  return out;
}

template <class S>
Json write_eval_result(const EvalResult<S>& r) {
  Json out{{"value", write_xreal(r.value)}, {"status", to_string(r.status)}, {"iterations", r.iterations}};
  if (r.last_delta) out["last_delta"] = write_xreal(*r.last_delta);
  if (r.bound) out["bound_direction"] = to_string(*r.bound);
  return out;
}

template <class S>
Json write_bound_check(const BoundCheck<S>& c, const StateSpace& space) {
  return Json{{"situation", format_situation(c.situation, space)},
              {"k", c.k},
              {"observed", write_xreal(c.observed)},
              {"expected", write_xreal(c.expected)},
              {"bound", write_scalar(c.bound)},
              {"identity_holds", c.identity_holds},
              {"bound_holds", c.bound_holds}};
}

}  // namespace gtue::io
