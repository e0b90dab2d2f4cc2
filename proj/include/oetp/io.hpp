#pragma once

// Document formats.
//
// Instance document (JSON):
//   { "version": 1, "num_candidates": C, "num_schedules": P,
//     "num_resources": R, "capacities": [b_0, ...],
//     "compat": [[j, ...], ...], "usage": [[k, ...], ...],
//     "labels": { "candidates": [...], "schedules": [...],
//                 "resources": [...] } }
// The count fields are written for readability and, when present on input,
// must agree with the array lengths. "labels" is optional.
//
// Solution document (JSON):
//   { "version": 1, "value": v, "assignment": [j or null, ...] }
//
// Model export: free-format MPS with one binary column y_<i>_<j> per
// compatible pair, capacity rows cap_<k> (<= b_k) and assignment rows
// assign_<i> (<= 1). By default the objective is maximised through an
// OBJSENSE MAX section; with negate_objective the section is omitted and the
// objective coefficients are -1 (minimise the negated count).
//
// Warm start: one "y_<i>_<j> 1" line per assigned candidate, nothing else.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "oetp/model.hpp"

namespace oetp {

inline constexpr int kDocumentVersion = 1;

// Throws ParseError for malformed text or a missing required section,
// ValidationError for schema or invariant violations.
Instance parse_instance(std::string_view text);

// Byte-deterministic. Throws ContractError for an invalid instance.
std::string serialize_instance(const Instance& instance);
void write_instance(std::ostream& out, const Instance& instance);

// Throws ParseError / ValidationError like parse_instance; ids are checked
// against `instance`.
Solution parse_solution(std::string_view text, const Instance& instance);
std::string serialize_solution(const Solution& solution);

struct MpsOptions {
  bool negate_objective = false;
  std::string name = "OETP";
};

void write_mps(std::ostream& out, const Instance& instance,
               const MpsOptions& options = {});
std::string export_mps(const Instance& instance, const MpsOptions& options = {});

// Throws ContractError when the solution is infeasible for the instance.
void write_warm_start(std::ostream& out, const Instance& instance,
                      const Solution& solution);
std::string export_warm_start(const Instance& instance, const Solution& solution);

std::string column_name(CandidateId candidate, ScheduleId schedule);
std::optional<std::pair<CandidateId, ScheduleId>> parse_column_name(
    std::string_view name);

// File helpers; throw oetp::Error on I/O failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace oetp
