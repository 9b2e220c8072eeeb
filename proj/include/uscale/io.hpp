#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uscale/experiment.hpp"
#include "uscale/matcore.hpp"
#include "uscale/scaler.hpp"
#include "uscale/zxz.hpp"

namespace uscale {

/// Malformed matrix or file contents. The message names the offending field.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits ("%.17g"), enough to round-trip a binary64.
std::string format_double(double x);

/// {"n": <int>, "entries": [[re, im], ...]} with n*n pairs in row-major order.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
Matrix read_matrix_file(const std::filesystem::path& path);

nlohmann::json phases_to_json(const DiagonalPhase& d);

/// {"status", "iterations", "residual", "psi", "matrix", "left", "right"}.
nlohmann::json scale_result_to_json(const ScaleResult& r);

/// {"alpha", "z1", "x", "z2"}.
nlohmann::json decomposition_to_json(const ZXZDecomposition& d);
/// {"x0": <permutation>, "z0", "z1p", "x", "z2"}.
nlohmann::json decomposition_to_json(const XZXZXZDecomposition& d);

/// Header `k,psi,residual`, one row per record, then `# event,<k>,<kind>` lines.
void write_trace_csv(std::ostream& out, const ScaleTrace& trace);

/// Header `k,min_psi,ave_psi,max_psi`.
void write_table_csv(std::ostream& out, const std::vector<CheckpointStats>& stats);
/// Header `sample,psi_<k>...`, one row per sample.
void write_hist_csv(std::ostream& out, const PotentialSamples& samples);
/// Header `sample,k,psi_k,psi_k1`, consecutive checkpoint pairs per sample.
void write_corr_csv(std::ostream& out, const PotentialSamples& samples);

/// Writes to a sibling temporary file and renames it over `path`, so a
/// failure never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace uscale
