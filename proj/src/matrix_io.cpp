#include "uscale/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace uscale {

using nlohmann::json;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (const auto& x : m.entries()) entries.push_back({x.real(), x.imag()});
  return {{"n", m.size()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("matrix JSON must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw FormatError("matrix JSON: \"n\" must be a positive integer");
  const auto n = j["n"].get<std::size_t>();
  if (!j.contains("entries") || !j["entries"].is_array())
    throw FormatError("matrix JSON: \"entries\" must be an array");
  const auto& entries = j["entries"];
  if (entries.size() != n * n) {
    std::ostringstream msg;
    msg << "matrix JSON: expected " << n * n << " entries for n = " << n << ", got "
        << entries.size();
    throw FormatError(msg.str());
  }
  std::vector<Complex> values;
  values.reserve(n * n);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      std::ostringstream msg;
      msg << "matrix JSON: entries[" << k << "] (row " << k / n << ", column " << k % n
          << ") must be a [re, im] pair of numbers";
      throw FormatError(msg.str());
    }
    values.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  try {
    return Matrix(n, std::move(values));
  } catch (const std::invalid_argument& err) {
    throw FormatError(std::string("matrix JSON: ") + err.what());
  }
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw FormatError(path.string() + ": " + err.what());
  }
  return matrix_from_json(j);
}

json phases_to_json(const DiagonalPhase& d) {
  return json(std::vector<double>(d.angles().begin(), d.angles().end()));
}

json scale_result_to_json(const ScaleResult& r) {
  const auto& last = r.trace.records.back();
  return {{"status", to_string(r.status)},
          {"iterations", last.k},
          {"residual", last.residual},
          {"psi", last.psi},
          {"matrix", matrix_to_json(r.scaled)},
          {"left", phases_to_json(r.left)},
          {"right", phases_to_json(r.right)}};
}

json decomposition_to_json(const ZXZDecomposition& d) {
  return {{"alpha", d.alpha},
          {"z1", phases_to_json(d.z1)},
          {"x", matrix_to_json(d.x)},
          {"z2", phases_to_json(d.z2)}};
}

json decomposition_to_json(const XZXZXZDecomposition& d) {
  return {{"x0", permutation_of(d.x0)},
          {"z0", phases_to_json(d.z0)},
          {"z1p", phases_to_json(d.z1p)},
          {"x", matrix_to_json(d.x)},
          {"z2", phases_to_json(d.z2)}};
}

void write_trace_csv(std::ostream& out, const ScaleTrace& trace) {
  out << "k,psi,residual\n";
  for (const auto& r : trace.records)
    out << r.k << ',' << format_double(r.psi) << ',' << format_double(r.residual) << '\n';
  for (const auto& e : trace.events) out << "# event," << e.iteration << ',' << to_string(e.kind) << '\n';
}

void write_table_csv(std::ostream& out, const std::vector<CheckpointStats>& stats) {
  out << "k,min_psi,ave_psi,max_psi\n";
  for (const auto& s : stats)
    out << s.k << ',' << format_double(s.min_psi) << ',' << format_double(s.ave_psi) << ','
        << format_double(s.max_psi) << '\n';
}

void write_hist_csv(std::ostream& out, const PotentialSamples& samples) {
  out << "sample";
  for (std::size_t k : samples.checkpoints) out << ",psi_" << k;
  out << '\n';
  for (std::size_t i = 0; i < samples.psi.size(); ++i) {
    out << i;
    for (double v : samples.psi[i]) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_corr_csv(std::ostream& out, const PotentialSamples& samples) {
  out << "sample,k,psi_k,psi_k1\n";
  for (std::size_t i = 0; i < samples.psi.size(); ++i)
    for (std::size_t c = 0; c + 1 < samples.checkpoints.size(); ++c)
      out << i << ',' << samples.checkpoints[c] << ',' << format_double(samples.psi[i][c]) << ','
          << format_double(samples.psi[i][c + 1]) << '\n';
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace uscale
