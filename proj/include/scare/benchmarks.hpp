#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scare/problem.hpp"

namespace scare {

inline constexpr std::uint64_t kDefaultNoiseSeed = 2;

struct BenchmarkSpec {
  std::string id;              // ex1 .. ex8
  std::optional<double> eps;   // ex2 (default 0.01), ex4 (default 5)
  int m = 100;                 // ex5 vehicle count
  std::uint64_t seed = kDefaultNoiseSeed;
};

/// Parses "ex5", "ex5:m=20", "ex2:eps=0.1" (seed taken from the argument).
BenchmarkSpec parse_benchmark(const std::string& text, std::uint64_t seed = kDefaultNoiseSeed);
/// Comma-separated list of parse_benchmark items; "all" expands to ex1..ex8.
std::vector<BenchmarkSpec> parse_benchmark_list(const std::string& text,
                                                std::uint64_t seed = kDefaultNoiseSeed);
std::string describe(const BenchmarkSpec& spec);

/// SplitMix64 output function.
std::uint64_t splitmix64(std::uint64_t x);

/// rows×cols standard-normal matrix, column-major fill, from a counter-based
/// stream keyed by (seed, example, which, i); which = 0 for A0, 1 for B0.
Matrix normal_matrix(std::uint64_t seed, int example, int which, int i, Eigen::Index rows,
                     Eigen::Index cols);

/// Max absolute row sum.
double norm_inf(const Matrix& m);

/// Throws UnknownBenchmark for an unrecognized id.
ScareProblem make_benchmark(const BenchmarkSpec& spec);

}  // namespace scare
