#include "oetp/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "oetp/errors.hpp"

namespace oetp {

using nlohmann::json;

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + " document, line " +
                     std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
}

const json& require(const json& doc, const char* key, const char* what) {
  if (!doc.is_object()) {
    throw ParseError(std::string(what) + " document is not a JSON object");
  }
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParseError(std::string(what) + " document: missing required section '" +
                     key + "'");
  }
  return *it;
}

void check_version(const json& doc, const char* what) {
  const json& v = require(doc, "version", what);
  if (!v.is_number_integer() || v.get<std::int64_t>() != kDocumentVersion) {
    throw ValidationError(std::string(what) + " document: unsupported version " +
                          v.dump() + " (expected " +
                          std::to_string(kDocumentVersion) + ")");
  }
}

std::int64_t as_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) {
    throw ValidationError("field '" + field + "' must be an integer, got " + v.dump());
  }
  return v.get<std::int64_t>();
}

std::int32_t as_id(const json& v, const std::string& field) {
  const std::int64_t x = as_integer(v, field);
  if (x < std::numeric_limits<std::int32_t>::min() ||
      x > std::numeric_limits<std::int32_t>::max()) {
    throw ValidationError("field '" + field + "' id " + std::to_string(x) +
                          " outside the 32-bit id range");
  }
  return static_cast<std::int32_t>(x);
}

std::vector<std::vector<std::int32_t>> as_adjacency(const json& v,
                                                    const std::string& field) {
  if (!v.is_array()) throw ValidationError("field '" + field + "' must be an array of arrays");
  std::vector<std::vector<std::int32_t>> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const json& row = v[i];
    const std::string name = field + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw ValidationError("field '" + name + "' must be an array");
    out[i].reserve(row.size());
    for (std::size_t p = 0; p < row.size(); ++p) {
      out[i].push_back(as_id(row[p], name + "[" + std::to_string(p) + "]"));
    }
  }
  return out;
}

std::vector<std::string> as_strings(const json& v, const std::string& field) {
  if (!v.is_array()) throw ValidationError("field '" + field + "' must be an array");
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const json& s : v) {
    if (!s.is_string()) throw ValidationError("field '" + field + "' must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

void check_count(const json& doc, const char* key, std::size_t actual) {
  auto it = doc.find(key);
  if (it == doc.end()) return;
  const std::int64_t declared = as_integer(*it, key);
  if (declared < 0 || static_cast<std::size_t>(declared) != actual) {
    throw ValidationError(std::string("field '") + key + "' = " +
                          std::to_string(declared) + " disagrees with the data (" +
                          std::to_string(actual) + ")");
  }
}

template <typename T>
void append_number(std::string& out, T value) {
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, end);
}

template <typename Range>
void append_int_array(std::string& out, const Range& values) {
  out += '[';
  bool first = true;
  for (auto v : values) {
    if (!first) out += ", ";
    first = false;
    append_number(out, v);
  }
  out += ']';
}

void append_adjacency(std::string& out, const char* key,
                      const std::vector<std::vector<std::int32_t>>& rows,
                      bool trailing_comma) {
  out += "  \"";
  out += key;
  out += "\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += i == 0 ? "\n    " : ",\n    ";
    append_int_array(out, rows[i]);
  }
  out += rows.empty() ? "]" : "\n  ]";
  out += trailing_comma ? ",\n" : "\n";
}

void append_string_array(std::string& out, const std::vector<std::string>& names) {
  out += '[';
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += json(names[i]).dump();
  }
  out += ']';
}

void throw_if_invalid(const Instance& instance) {
  auto violations = validate_instance(instance);
  if (violations.empty()) return;
  std::string msg = std::to_string(violations.size()) + " instance violation(s):";
  const std::size_t shown = std::min<std::size_t>(violations.size(), 10);
  for (std::size_t v = 0; v < shown; ++v) {
    msg += "\n  " + violations[v].where + ": " + violations[v].message;
  }
  if (shown < violations.size()) msg += "\n  ...";
  throw ValidationError(msg);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text, "instance");
  const json& capacities = require(doc, "capacities", "instance");
  const json& compat = require(doc, "compat", "instance");
  const json& usage = require(doc, "usage", "instance");
  check_version(doc, "instance");

  Instance inst;
  if (!capacities.is_array()) throw ValidationError("field 'capacities' must be an array");
  inst.capacity.reserve(capacities.size());
  for (std::size_t k = 0; k < capacities.size(); ++k) {
    inst.capacity.push_back(as_integer(capacities[k], "capacities[" + std::to_string(k) + "]"));
  }
  inst.compat = as_adjacency(compat, "compat");
  inst.usage = as_adjacency(usage, "usage");
  check_count(doc, "num_candidates", inst.num_candidates());
  check_count(doc, "num_schedules", inst.num_schedules());
  check_count(doc, "num_resources", inst.num_resources());

  if (auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_object()) throw ValidationError("field 'labels' must be an object");
    if (auto c = it->find("candidates"); c != it->end()) {
      inst.labels.candidates = as_strings(*c, "labels.candidates");
    }
    if (auto s = it->find("schedules"); s != it->end()) {
      inst.labels.schedules = as_strings(*s, "labels.schedules");
    }
    if (auto r = it->find("resources"); r != it->end()) {
      inst.labels.resources = as_strings(*r, "labels.resources");
    }
  }
  throw_if_invalid(inst);
  return inst;
}

void write_instance(std::ostream& out, const Instance& instance) {
  out << serialize_instance(instance);
}

std::string serialize_instance(const Instance& instance) {
  if (!validate_instance(instance).empty()) {
    throw ContractError("refusing to serialize an invalid instance");
  }
  std::string out;
  out.reserve(64 + 8 * instance.num_relations() + 8 * instance.num_schedules());
  out += "{\n  \"version\": ";
  append_number(out, kDocumentVersion);
  out += ",\n  \"num_candidates\": ";
  append_number(out, instance.num_candidates());
  out += ",\n  \"num_schedules\": ";
  append_number(out, instance.num_schedules());
  out += ",\n  \"num_resources\": ";
  append_number(out, instance.num_resources());
  out += ",\n  \"capacities\": ";
  append_int_array(out, instance.capacity);
  out += ",\n";
  const bool labels = !instance.labels.empty();
  append_adjacency(out, "compat", instance.compat, true);
  append_adjacency(out, "usage", instance.usage, labels);
  if (labels) {
    const Labels& l = instance.labels;
    out += "  \"labels\": {\n    \"candidates\": ";
    append_string_array(out, l.candidates);
    out += ",\n    \"schedules\": ";
    append_string_array(out, l.schedules);
    out += ",\n    \"resources\": ";
    append_string_array(out, l.resources);
    out += "\n  }\n";
  }
  out += "}\n";
  return out;
}

Solution parse_solution(std::string_view text, const Instance& instance) {
  const json doc = parse_json(text, "solution");
  const json& assignment = require(doc, "assignment", "solution");
  check_version(doc, "solution");
  if (!assignment.is_array()) throw ValidationError("field 'assignment' must be an array");
  if (assignment.size() != instance.num_candidates()) {
    throw ValidationError("solution assigns " + std::to_string(assignment.size()) +
                          " candidates, instance has " +
                          std::to_string(instance.num_candidates()));
  }
  Solution sol = Solution::empty(instance.num_candidates());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const json& v = assignment[i];
    if (v.is_null()) continue;
    const std::string field = "assignment[" + std::to_string(i) + "]";
    const std::int32_t j = as_id(v, field);
    if (j < 0 || static_cast<std::size_t>(j) >= instance.num_schedules()) {
      throw ValidationError("field '" + field + "': unknown schedule id " +
                            std::to_string(j));
    }
    sol.assignment[i] = j;
  }
  if (auto it = doc.find("value"); it != doc.end()) {
    const std::int64_t declared = as_integer(*it, "value");
    if (declared != sol.value()) {
      throw ValidationError("field 'value' = " + std::to_string(declared) +
                            " but " + std::to_string(sol.value()) +
                            " candidates are assigned");
    }
  }
  return sol;
}

std::string serialize_solution(const Solution& solution) {
  std::string out = "{\n  \"version\": ";
  append_number(out, kDocumentVersion);
  out += ",\n  \"value\": ";
  append_number(out, solution.value());
  out += ",\n  \"assignment\": [";
  for (std::size_t i = 0; i < solution.assignment.size(); ++i) {
    if (i) out += ", ";
    const ScheduleId j = solution.assignment[i];
    if (j == kUnassigned) {
      out += "null";
    } else {
      append_number(out, j);
    }
  }
  out += "]\n}\n";
  return out;
}

std::string column_name(CandidateId candidate, ScheduleId schedule) {
  return "y_" + std::to_string(candidate) + "_" + std::to_string(schedule);
}

std::optional<std::pair<CandidateId, ScheduleId>> parse_column_name(
    std::string_view name) {
  if (name.size() < 5 || name.substr(0, 2) != "y_") return std::nullopt;
  name.remove_prefix(2);
  const auto sep = name.find('_');
  if (sep == std::string_view::npos) return std::nullopt;
  auto parse = [](std::string_view digits, std::int32_t& out) {
    if (digits.empty() || (digits.size() > 1 && digits[0] == '0')) return false;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
    return ec == std::errc() && p == digits.data() + digits.size() && out >= 0;
  };
  std::int32_t i = 0;
  std::int32_t j = 0;
  if (!parse(name.substr(0, sep), i) || !parse(name.substr(sep + 1), j)) {
    return std::nullopt;
  }
  return std::make_pair(i, j);
}

void write_mps(std::ostream& out, const Instance& instance,
               const MpsOptions& options) {
  if (!validate_instance(instance).empty()) {
    throw ContractError("refusing to export an invalid instance");
  }
  const char* obj_coef = options.negate_objective ? "-1" : "1";
  out << "* Unit-profit multidimensional knapsack with choice sets\n";
  out << "* columns y_<candidate>_<schedule>, rows cap_<resource> and assign_<candidate>\n";
  if (options.negate_objective) {
    out << "* objective negated: minimise -(number of assigned candidates)\n";
  }
  out << "NAME " << options.name << "\n";
  if (!options.negate_objective) out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N  OBJ\n";
  for (std::size_t k = 0; k < instance.num_resources(); ++k) out << " L  cap_" << k << "\n";
  for (std::size_t i = 0; i < instance.num_candidates(); ++i) out << " L  assign_" << i << "\n";

  out << "COLUMNS\n";
  out << "    MARKER  'MARKER'  'INTORG'\n";
  std::string line;
  for (std::size_t i = 0; i < instance.num_candidates(); ++i) {
    for (ScheduleId j : instance.compat[i]) {
      const std::string col = column_name(static_cast<CandidateId>(i), j);
      line.clear();
      line += "    " + col + "  OBJ  " + obj_coef + "  assign_" + std::to_string(i) + "  1\n";
      const auto& use = instance.usage[j];
      for (std::size_t p = 0; p < use.size(); p += 2) {
        line += "    " + col + "  cap_" + std::to_string(use[p]) + "  1";
        if (p + 1 < use.size()) line += "  cap_" + std::to_string(use[p + 1]) + "  1";
        line += '\n';
      }
      out << line;
    }
  }
  out << "    MARKER  'MARKER'  'INTEND'\n";

  out << "RHS\n";
  for (std::size_t k = 0; k < instance.num_resources(); ++k) {
    out << "    RHS  cap_" << k << "  " << instance.capacity[k] << "\n";
  }
  for (std::size_t i = 0; i < instance.num_candidates(); ++i) {
    out << "    RHS  assign_" << i << "  1\n";
  }
  out << "BOUNDS\n";
  for (std::size_t i = 0; i < instance.num_candidates(); ++i) {
    for (ScheduleId j : instance.compat[i]) {
      out << " BV BND  " << column_name(static_cast<CandidateId>(i), j) << "\n";
    }
  }
  out << "ENDATA\n";
}

std::string export_mps(const Instance& instance, const MpsOptions& options) {
  std::ostringstream out;
  write_mps(out, instance, options);
  return std::move(out).str();
}

void write_warm_start(std::ostream& out, const Instance& instance,
                      const Solution& solution) {
  const Evaluation ev = evaluate_solution(instance, solution);
  if (!ev.feasible) {
    throw ContractError("warm start must be feasible (" + ev.violations.front().where +
                        ": " + ev.violations.front().message + ")");
  }
  for (std::size_t i = 0; i < solution.assignment.size(); ++i) {
    const ScheduleId j = solution.assignment[i];
    if (j != kUnassigned) out << column_name(static_cast<CandidateId>(i), j) << " 1\n";
  }
}

std::string export_warm_start(const Instance& instance, const Solution& solution) {
  std::ostringstream out;
  write_warm_start(out, instance, solution);
  return std::move(out).str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace oetp
