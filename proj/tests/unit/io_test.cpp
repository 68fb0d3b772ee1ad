#include <gtest/gtest.h>

#include <filesystem>

#include "gtf/io.hpp"
#include "helpers.hpp"

using namespace gtf;
using gtf::testkit::code_of;

TEST(CsvMatrix, ParseExamples) {
  const Matrix m = parse_csv_matrix("1,2.5\n-3,4e-1\n\n");
  ASSERT_EQ(m.rows(), 2);
  ASSERT_EQ(m.cols(), 2);
  EXPECT_EQ(m(0, 1), 2.5);
  EXPECT_EQ(m(1, 0), -3.0);
  EXPECT_EQ(m(1, 1), 0.4);
  const Matrix h = parse_csv_matrix("a,b\n1, 2\r\n", true);
  EXPECT_EQ(h.rows(), 1);
  EXPECT_EQ(h(0, 1), 2.0);
  EXPECT_EQ(parse_csv_matrix("7\n8\n").cols(), 1);
}

TEST(CsvMatrix, Errors) {
  EXPECT_EQ(code_of([] { parse_csv_matrix("1,2\n3\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_csv_matrix("1,x\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_csv_matrix("1,2x\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { read_csv_matrix("/nonexistent/signal.csv"); }), ErrorCode::DataNotFound);
}

TEST(CsvMatrix, RoundTrip) {
  Rng rng(1);
  const Matrix m = testkit::random_matrix(7, 3, rng);
  EXPECT_EQ(parse_csv_matrix(format_csv_matrix(m)), m);
}

TEST(LabelsCsv, Parse) {
  EXPECT_EQ(parse_labels_csv("0\n-1\n2,extra\n"), (std::vector<int>{0, -1, 2}));
  EXPECT_EQ(parse_labels_csv("label\n1\n", true), (std::vector<int>{1}));
  EXPECT_EQ(code_of([] { parse_labels_csv("0\n1.5\n"); }), ErrorCode::ParseError);
}

TEST(Files, WriteReadAndMissing) {
  const auto path = std::filesystem::temp_directory_path() / "gtf_io_test.txt";
  write_text_file(path.string(), "hello\n");
  EXPECT_EQ(read_text_file(path.string()), "hello\n");
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([] { read_text_file("/nonexistent/x"); }), ErrorCode::DataNotFound);
  EXPECT_EQ(code_of([] { write_text_file("/nonexistent/dir/x", "a"); }), ErrorCode::InvalidArgument);
}

TEST(Json, SolutionShape) {
  const Graph g = testkit::path_graph(4);
  Matrix y(4, 1);
  y << 0, 0, 5, 5;
  const GtfSolution s = make_solution(y, g, Assignment({0, 0, 1, 1}, 2), 0.5);
  const Json j = solution_json(s);
  EXPECT_EQ(j["k"], 2);
  EXPECT_EQ(j["labels"], Json({0, 0, 1, 1}));
  EXPECT_EQ(j["mu"][1][0], 5.0);
  EXPECT_EQ(j["cut_size"], 1);
  EXPECT_DOUBLE_EQ(j["objective"].get<double>(), 0.5);
}

TEST(Json, MapSolutionShape) {
  MapSolution s;
  s.predicted = {0, 2, 2, 1};
  s.k = 3;
  s.q_objective = 1.25;
  const Json j = map_solution_json(s, 3);
  EXPECT_EQ(j["predicted"], Json({0, 2, 2, 1}));
  EXPECT_EQ(j["per_class_counts"], Json({1, 1, 2}));
  EXPECT_EQ(j["q1_objective"], 1.25);
  EXPECT_EQ(j["k"], 3);
}

TEST(Trace, Csv) {
  const std::string csv = format_trace_csv({{10.0, 0, 3.5}, {9.9, 1, 2.0}});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "temperature,sweep,energy");
  const Matrix m = parse_csv_matrix(csv, true);
  ASSERT_EQ(m.rows(), 2);
  EXPECT_EQ(m(1, 0), 9.9);
  EXPECT_EQ(m(1, 1), 1.0);
  EXPECT_EQ(m(1, 2), 2.0);
}
