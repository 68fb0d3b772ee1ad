#include "gtf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gtf/error.hpp"

namespace gtf {

PartitionIterator::PartitionIterator(int n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "negative partition size");
  if (n > kMaxEnumerationSize) {
    fail(ErrorCode::TooLarge, "enumeration limited to n <= " + std::to_string(kMaxEnumerationSize));
  }
  current_.assign(static_cast<std::size_t>(n), 0);
  prefix_max_.assign(static_cast<std::size_t>(n), 0);
  done_ = n == 0;
}

void PartitionIterator::next() {
  if (done_) return;
  // Find the rightmost position that can still grow.
  for (int i = n() - 1; i >= 1; --i) {
    const auto ui = static_cast<std::size_t>(i);
    if (current_[ui] <= prefix_max_[ui - 1]) {
      ++current_[ui];
      prefix_max_[ui] = std::max(prefix_max_[ui - 1], current_[ui]);
      for (auto j = ui + 1; j < current_.size(); ++j) {
        current_[j] = 0;
        prefix_max_[j] = prefix_max_[ui];
      }
      return;
    }
  }
  done_ = true;
}

std::uint64_t bell_number(int n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "negative n");
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

void enumerate_partitions(int n, const std::function<void(const Assignment&)>& visit) {
  for (PartitionIterator it(n); !it.done(); it.next()) visit(it.assignment());
}

std::vector<Assignment> all_partitions(int n) {
  std::vector<Assignment> out;
  enumerate_partitions(n, [&](const Assignment& x) { out.push_back(x); });
  return out;
}

GtfSolution brute_force_p1(const SignalMatrix& y, const Graph& g, double lambda) {
  if (y.rows() != g.n()) fail(ErrorCode::DimensionMismatch, "Y rows must equal graph size");
  double best = std::numeric_limits<double>::infinity();
  Assignment best_x;
  enumerate_partitions(g.n(), [&](const Assignment& x) {
    const double value = objective_p1(y, x, centroid_closed_form(x, y), g, lambda);
    if (value < best) {
      best = value;
      best_x = x;
    }
  });
  return make_solution(y, g, best_x, lambda);
}

MapSolution brute_force_q1(const MapInstance& inst) {
  inst.validate();
  double best = std::numeric_limits<double>::infinity();
  Assignment best_x;
  enumerate_partitions(inst.n(), [&](const Assignment& x) {
    double value = 0.0;
    try {
      value = objective_q1(x, inst);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularSystem) return;
      throw;
    }
    if (value < best) {
      best = value;
      best_x = x;
    }
  });
  if (best_x.n() == 0) fail(ErrorCode::SingularSystem, "every partition has a singular score system");
  MapSolution out;
  out.assignment = best_x;
  out.k = best_x.k();
  out.b_tilde = closed_form_b(best_x, inst);
  out.b_full = reconstruct(best_x, out.b_tilde);
  out.q_objective = best;
  out.predicted = predict(out.b_full);
  return out;
}

Matrix numeric_gradient(const std::function<double(const Matrix&)>& f, const Matrix& at, double h) {
  Matrix grad(at.rows(), at.cols());
  Matrix probe = at;
  for (Eigen::Index i = 0; i < at.rows(); ++i) {
    for (Eigen::Index j = 0; j < at.cols(); ++j) {
      const double step = h * std::max(1.0, std::abs(at(i, j)));
      probe(i, j) = at(i, j) + step;
      const double up = f(probe);
      probe(i, j) = at(i, j) - step;
      const double down = f(probe);
      probe(i, j) = at(i, j);
      grad(i, j) = (up - down) / (2.0 * step);
    }
  }
  return grad;
}

}  // namespace gtf
