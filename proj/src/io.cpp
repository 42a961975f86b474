#include "qcat/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace qcat {

std::string fmt_double(double x) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

std::string file_checksum(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return fnv1a_hex(ss.str());
}

void CsvWriter::row(const std::vector<std::string>& cells) { rows_.push_back(cells); }

std::string CsvWriter::str() const {
  std::string out;
  for (size_t i = 0; i < header_.size(); i++) out += (i ? "," : "") + header_[i];
  out += "\n";
  for (const auto& r : rows_) {
    for (size_t i = 0; i < r.size(); i++) out += (i ? "," : "") + r[i];
    out += "\n";
  }
  return out;
}

void CsvWriter::save(const std::filesystem::path& p) const {
  std::ofstream f(p, std::ios::binary);
  f << str();
}

void write_pgm16(const std::filesystem::path& p, const Eigen::MatrixXd& img, double lo, double hi) {
  std::ofstream f(p, std::ios::binary);
  f << "P5\n" << img.cols() << " " << img.rows() << "\n65535\n";
  double span = hi > lo ? hi - lo : 1.0;
  for (long long i = 0; i < img.rows(); i++)
    for (long long j = 0; j < img.cols(); j++) {
      double t = (img(i, j) - lo) / span;
      t = std::min(1.0, std::max(0.0, t));
      unsigned v = unsigned(t * 65535.0 + 0.5);
      unsigned char b[2] = {static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v & 0xff)};
      f.write(reinterpret_cast<const char*>(b), 2);
    }
}

void Manifest::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : kv_)
    if (k == key) {
      v = value;
      return;
    }
  kv_.push_back({key, value});
}

void Manifest::add_output(const std::filesystem::path& file) {
  set("output." + file.filename().string(), file_checksum(file));
}

std::string Manifest::str() const {
  std::string out;
  for (const auto& [k, v] : kv_) out += k + " = " + v + "\n";
  return out;
}

void Manifest::save(const std::filesystem::path& p) const {
  std::ofstream f(p, std::ios::binary);
  f << str();
}

std::map<std::string, std::string> Manifest::load(const std::filesystem::path& p) {
  std::map<std::string, std::string> out;
  std::ifstream f(p);
  std::string line;
  while (std::getline(f, line)) {
    auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

IntMatrix parse_int_matrix(const std::string& text) {
  std::vector<std::vector<long long>> rows;
  if (text.find('[') != std::string::npos) {
    // inline literal [[a,b],[c,d]]
    std::vector<long long> cur;
    std::string num;
    int depth = 0;
    auto flushnum = [&]() {
      if (!num.empty()) {
        cur.push_back(std::stoll(num));
        num.clear();
      }
    };
    for (char c : text) {
      if (c == '[') {
        depth++;
      } else if (c == ']') {
        flushnum();
        if (depth == 2 && !cur.empty()) {
          rows.push_back(cur);
          cur.clear();
        }
        depth--;
      } else if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c))) {
        flushnum();
      } else {
        num += c;
      }
    }
  } else {
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      for (char& c : line)
        if (c == ',' || c == ';') c = ' ';
      std::istringstream ls(line);
      std::vector<long long> row;
      long long v;
      while (ls >> v) row.push_back(v);
      if (!row.empty()) rows.push_back(row);
    }
  }
  if (rows.empty()) throw std::invalid_argument("parse_int_matrix: no entries");
  return IntMatrix::from_rows(rows);
}

IntMatrix read_int_matrix_file(const std::filesystem::path& p) {
  std::ifstream f(p);
  if (!f) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_int_matrix(ss.str());
}

void write_state(const std::filesystem::path& p, int n, long long bigN,
                 const std::vector<Rat>& theta, const Eigen::VectorXcd& v) {
  std::ofstream f(p, std::ios::binary);
  f << "qcat-state n=" << n << " N=" << bigN << " theta=";
  for (size_t i = 0; i < theta.size(); i++) {
    if (i) f << ",";
    f << numerator(theta[i]).str() << "/" << denominator(theta[i]).str();
  }
  f << "\n";
  for (long long i = 0; i < v.size(); i++) {
    double re = v(i).real(), im = v(i).imag();
    f.write(reinterpret_cast<const char*>(&re), 8);
    f.write(reinterpret_cast<const char*>(&im), 8);
  }
}

StateFile read_state(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + p.string());
  std::string header;
  std::getline(f, header);
  StateFile s;
  auto get = [&](const std::string& key) {
    auto pos = header.find(key + "=");
    if (pos == std::string::npos) throw std::runtime_error("bad state header");
    auto end = header.find(' ', pos);
    return header.substr(pos + key.size() + 1,
                         (end == std::string::npos ? header.size() : end) - pos - key.size() - 1);
  };
  s.n = std::stoi(get("n"));
  s.bigN = std::stoll(get("N"));
  std::string th = get("theta");
  std::istringstream ts(th);
  std::string item;
  while (std::getline(ts, item, ',')) s.theta.push_back(rat_from_string(item));
  long long dim = 1;
  for (int i = 0; i < s.n; i++) dim *= s.bigN;
  s.v.resize(dim);
  for (long long i = 0; i < dim; i++) {
    double re, im;
    f.read(reinterpret_cast<char*>(&re), 8);
    f.read(reinterpret_cast<char*>(&im), 8);
    s.v(i) = {re, im};
  }
  return s;
}

std::vector<std::pair<double, double>> read_intervals(const std::filesystem::path& p) {
  std::ifstream f(p);
  if (!f) throw std::runtime_error("cannot open " + p.string());
  std::vector<std::pair<double, double>> out;
  double a, b;
  while (f >> a >> b) out.push_back({a, b});
  return out;
}

}  // namespace qcat
