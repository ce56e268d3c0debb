#pragma once

// The eleven acceptance checks, shared by `klein verify-all` and the
// klein_acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

namespace klein::suite {

struct Options {
  std::uint64_t seed = 0;
  std::size_t max_m = 3;
  std::size_t min_degree = 1;
  std::size_t max_degree = 4;
  std::vector<int> only;  // empty: all criteria
  bool parallel = true;
};

struct Result {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Results sorted by id.
std::vector<Result> run(const Options& opt);
std::string line(const Result& r);

}  // namespace klein::suite
