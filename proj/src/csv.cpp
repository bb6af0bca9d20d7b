#include "snnlab/csv.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include "snnlab/errors.hpp"

namespace snnlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void CsvWriter::metadata(const std::string& comment) { content_ += "# " + comment + "\n"; }

void CsvWriter::header(const std::vector<std::string>& cols) { row(cols); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) content_ += ',';
    content_ += cells[i];
  }
  content_ += '\n';
}

void CsvWriter::row(const std::vector<double>& cells) {
  std::vector<std::string> s;
  s.reserve(cells.size());
  for (double v : cells) s.push_back(format_double(v));
  row(s);
}

void CsvWriter::commit(const std::string& path) const { write_text_file(path, content_); }

std::string run_metadata(std::uint64_t seed, double lambda, double u_th, std::size_t steps,
                         double rho, double chi, double omega) {
  return "seed=" + std::to_string(seed) + " lambda=" + format_double(lambda) +
         " u_th=" + format_double(u_th) + " T=" + std::to_string(steps) +
         " rho=" + format_double(rho) + " chi=" + format_double(chi) +
         " omega=" + format_double(omega);
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + tmp);
    out << content;
    if (!out) throw DataError("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw DataError("cannot rename into place: " + path);
  }
}

}  // namespace snnlab
