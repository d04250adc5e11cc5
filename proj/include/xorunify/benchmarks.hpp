// Built-in benchmark corpus.
#pragma once

#include <string>
#include <vector>

namespace xorunify {

struct BenchmarkProblem {
  int number;
  std::string text;
  /// Size of the complete set returned with the identification pruning on.
  std::size_t expected_size;
};

/// The five runtime/size benchmarks: a recursive-authentication instance,
/// two self-referential encryptions and two large pair sums.
const std::vector<BenchmarkProblem>& table1_problems();

/// "0 =? pair(x1, y1) + ... + pair(xn, yn)".
std::string pair_sum_problem(int n);

}  // namespace xorunify
