#include "xorunify/benchmarks.hpp"

namespace xorunify {

std::string pair_sum_problem(int n) {
  std::string s = "0 =? ";
  for (int i = 1; i <= n; ++i) {
    if (i > 1) s += " + ";
    s += "pair(x" + std::to_string(i) + ", y" + std::to_string(i) + ")";
  }
  return s;
}

const std::vector<BenchmarkProblem>& table1_problems() {
  static const std::vector<BenchmarkProblem> problems = {
      {1,
       "pair(x, pair(enc(x + y, a), enc(enc(x + y, a) + z, a)))\n"
       "  =? pair(enc(b + c, a), pair(enc(enc(b + c, a) + d, a), enc(enc(enc(b + c, a) + d, a) + e, a)))",
       1},
      {2, "z =? enc(pair(x, pair(y, x + y)), inv(z + u))", 1},
      {3, "z =? enc(pair(x, pair(y, x + y)), inv(z + a))", 0},
      {4, pair_sum_problem(9), 0},
      {5, pair_sum_problem(10), 945},
  };
  return problems;
}

}  // namespace xorunify
