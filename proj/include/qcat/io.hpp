#pragma once

// Deterministic run artifacts: CSV tables with a fixed float format, 16-bit
// PGM images, key-value manifests with content checksums, and the
// whitespace/CSV matrix readers used by the CLI.

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "qcat/exact.hpp"

namespace qcat {

/// Shortest round-trip decimal representation (repeatable across runs).
std::string fmt_double(double x);

/// FNV-1a 64-bit content hash, hex encoded.
std::string fnv1a_hex(const std::string& bytes);
std::string file_checksum(const std::filesystem::path& p);

struct CsvWriter {
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(const std::vector<std::string>& cells);
  std::string str() const;
  void save(const std::filesystem::path& p) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// 16-bit binary PGM, values scaled from [lo, hi].
void write_pgm16(const std::filesystem::path& p, const Eigen::MatrixXd& img, double lo, double hi);

/// Ordered key = value document; re-running a command from its manifest
/// reproduces the outputs byte for byte within one build.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value) { set(key, fmt_double(value)); }
  void set(const std::string& key, long long value) { set(key, std::to_string(value)); }
  void add_output(const std::filesystem::path& file);  // records name + checksum
  std::string str() const;
  void save(const std::filesystem::path& p) const;
  static std::map<std::string, std::string> load(const std::filesystem::path& p);

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

/// Integer matrix from whitespace/CSV text (rows on lines) or an inline
/// literal "[[a,b],[c,d]]".
IntMatrix parse_int_matrix(const std::string& text);
IntMatrix read_int_matrix_file(const std::filesystem::path& p);

/// State files: text header "n N theta..." then little-endian interleaved
/// complex doubles.
void write_state(const std::filesystem::path& p, int n, long long bigN,
                 const std::vector<Rat>& theta, const Eigen::VectorXcd& v);
struct StateFile {
  int n;
  long long bigN;
  std::vector<Rat> theta;
  Eigen::VectorXcd v;
};
StateFile read_state(const std::filesystem::path& p);

/// Interval sets as "a b" per line.
std::vector<std::pair<double, double>> read_intervals(const std::filesystem::path& p);

}  // namespace qcat
