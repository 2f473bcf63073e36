#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "scl/gpna.hpp"
#include "scl/synthdata.hpp"
#include "scl/types.hpp"

namespace scl {
namespace io {

// Headerless numeric CSV, one row per sample, 17 significant digits, LF line
// endings. Values round-trip bit-exactly.

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
void write_vector_csv(const std::filesystem::path& path, const Vector& v);
Matrix read_matrix_csv(const std::filesystem::path& path);
Vector read_vector_csv(const std::filesystem::path& path);

std::string format_double(double x);  // %.17g

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

nlohmann::json spec_to_json(const SynthSpec& spec);
SynthSpec spec_from_json(const nlohmann::json& j);

nlohmann::json truth_to_json(const GroundTruth& truth);
nlohmann::json solution_to_json(const Iterate& beta);
Iterate solution_from_json(const nlohmann::json& j);

/// Instance directory layout: X.csv, Z.csv, y.csv, plus optional spec.json
/// and truth.json.
void write_instance(const std::filesystem::path& dir, const ProblemData& data);
ProblemData read_instance(const std::filesystem::path& dir, Loss loss);

/// trace.csv with header k,objective,alpha,q,step,gate,tol.
void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<IterationRecord>& trace);

}  // namespace io
}  // namespace scl
