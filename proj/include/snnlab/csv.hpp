#pragma once

#include <string>
#include <vector>

namespace snnlab {

// Minimal CSV emitter: '#' metadata comment line first, then a header row,
// then rows. '.' decimal point, LF line endings. Content accumulates in
// memory and commit() writes temp-then-rename so failures leave no partial
// file.
class CsvWriter {
 public:
  void metadata(const std::string& comment);  // without the leading '#'
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<std::string>& cells);
  void row(const std::vector<double>& cells);

  const std::string& content() const { return content_; }
  void commit(const std::string& path) const;

 private:
  std::string content_;
};

std::string format_double(double v);

// Shared metadata line layout for run parameters.
std::string run_metadata(std::uint64_t seed, double lambda, double u_th, std::size_t steps,
                         double rho, double chi, double omega);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace snnlab
