#pragma once

#include <iosfwd>
#include <string>

#include "scare/problem.hpp"
#include "scare/solvers.hpp"

namespace scare {

/// Problem JSON: integer fields "n", "m", "r"; "A", "B", "Q", "R", "L" as
/// row-major nested arrays; "A0", "B0" as lists of r matrices; "L" optional.
/// Throws InvalidInput on malformed documents, DimensionMismatch on
/// inconsistent shapes.
ScareProblem parse_problem(const std::string& json_text);
ScareProblem read_problem(const std::string& path);
std::string problem_to_json(const ScareProblem& p);
void write_problem(const std::string& path, const ScareProblem& p);

/// A matrix as a nested array, or an object holding it under "X".
Matrix parse_matrix(const std::string& json_text);
Matrix read_matrix(const std::string& path);
std::string matrix_to_json(const Matrix& m);
void write_matrix(const std::string& path, const Matrix& m);

/// CSV with header iter,phase,nres,wall_ns; one row per outer iteration.
void write_history_csv(std::ostream& out, const SolveReport& report);

}  // namespace scare
