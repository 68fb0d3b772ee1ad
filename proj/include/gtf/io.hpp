#pragma once

// CSV and JSON ingestion/emission for signals, labels, solutions and traces.

#include <string>
#include <vector>

#include <json.hpp>

#include "gtf/map_ssl.hpp"
#include "gtf/model.hpp"
#include "gtf/potts.hpp"
#include "gtf/types.hpp"

namespace gtf {

using Json = nlohmann::json;

/// Comma separated numbers, one row per line. Blank lines are skipped.
/// Throws ParseError on ragged rows or non-numeric fields.
Matrix parse_csv_matrix(const std::string& text, bool header = false);
Matrix read_csv_matrix(const std::string& path, bool header = false);

/// One integer per line (first column); -1 marks a missing label.
std::vector<int> parse_labels_csv(const std::string& text, bool header = false);
std::vector<int> read_labels_csv(const std::string& path, bool header = false);

std::string format_csv_matrix(const Matrix& m);

/// {k, labels[], mu[][], objective, cut_size}
Json solution_json(const GtfSolution& s);
/// {predicted[], k, q1_objective, per_class_counts}
Json map_solution_json(const MapSolution& s, int classes);

/// temperature,sweep,energy
std::string format_trace_csv(const std::vector<TracePoint>& trace);

std::string read_text_file(const std::string& path);
/// Throws InvalidArgument when the file cannot be written.
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace gtf
