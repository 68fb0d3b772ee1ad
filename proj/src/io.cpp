#include "gtf/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string_view>

#include "gtf/error.hpp"

namespace gtf {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::vector<std::string_view>> split_rows(const std::string& text, bool header) {
  std::vector<std::vector<std::string_view>> rows;
  std::string_view rest(text);
  bool skipped = !header;
  int line_no = 0;
  while (!rest.empty()) {
    const auto eol = rest.find('\n');
    std::string_view line = rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view{} : rest.substr(eol + 1);
    ++line_no;
    if (!skipped) {
      skipped = true;
      continue;
    }
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

double parse_double(std::string_view field, std::size_t row) {
  const std::string copy(field);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    fail(ErrorCode::ParseError, "row " + std::to_string(row + 1) + ": bad number '" + copy + "'");
  }
  return v;
}

}  // namespace

Matrix parse_csv_matrix(const std::string& text, bool header) {
  const auto rows = split_rows(text, header);
  if (rows.empty()) fail(ErrorCode::ParseError, "CSV has no data rows");
  const auto cols = rows.front().size();
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      fail(ErrorCode::ParseError, "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                      " fields, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_double(rows[i][j], i);
    }
  }
  return m;
}

Matrix read_csv_matrix(const std::string& path, bool header) {
  return parse_csv_matrix(read_text_file(path), header);
}

std::vector<int> parse_labels_csv(const std::string& text, bool header) {
  const auto rows = split_rows(text, header);
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto field = rows[i].front();
    int v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
      fail(ErrorCode::ParseError, "row " + std::to_string(i + 1) + ": bad label '" + std::string(field) + "'");
    }
    labels.push_back(v);
  }
  return labels;
}

std::vector<int> read_labels_csv(const std::string& path, bool header) {
  return parse_labels_csv(read_text_file(path), header);
}

std::string format_csv_matrix(const Matrix& m) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j != 0) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
  return out.str();
}

Json solution_json(const GtfSolution& s) {
  Json mu = Json::array();
  for (Eigen::Index c = 0; c < s.centroids.rows(); ++c) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < s.centroids.cols(); ++j) row.push_back(s.centroids(c, j));
    mu.push_back(std::move(row));
  }
  return Json{{"k", s.k},
              {"labels", s.assignment.labels()},
              {"mu", std::move(mu)},
              {"objective", s.p1_objective},
              {"cut_size", s.cut}};
}

Json map_solution_json(const MapSolution& s, int classes) {
  std::vector<int> counts(static_cast<std::size_t>(classes), 0);
  for (int p : s.predicted) ++counts[static_cast<std::size_t>(p)];
  return Json{{"predicted", s.predicted},
              {"k", s.k},
              {"q1_objective", s.q_objective},
              {"per_class_counts", counts}};
}

std::string format_trace_csv(const std::vector<TracePoint>& trace) {
  std::ostringstream out;
  out << std::setprecision(17) << "temperature,sweep,energy\n";
  for (const auto& p : trace) out << p.temperature << ',' << p.sweep << ',' << p.energy << '\n';
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::DataNotFound, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  out << contents;
  if (!out) fail(ErrorCode::InvalidArgument, "write failed for " + path);
}

}  // namespace gtf
