#pragma once

#include "dlab/field.hpp"
#include "dlab/model.hpp"

#include <string>
#include <vector>

namespace dlab {

// Binary field dump, little-endian:
//   magic "DLF1" | n_points u64 | length f64 | representation u8 |
//   n_points (re f64, im f64) pairs.
void write_field(const Field& f, const std::string& path);
Field read_field(const std::string& path);

// Binary trajectory container:
//   magic "DLT1" | sample count u64 | components u8 |
//   per sample: time f64, then one field dump per component.
void write_trajectory(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory(const std::string& path);

// CSV export of a physical field, columns x,re,im.
void write_field_csv(const Field& f, const std::string& path,
                     const std::string& comment = "");

// Deterministic CSV writer: a comment line, a header row, then rows of
// 17-significant-digit floats (strings pass through unchanged).
class CsvWriter {
  public:
    CsvWriter(std::string path, std::string comment, std::vector<std::string> columns);
    void row(const std::vector<std::string>& cells);
    void row_values(const std::vector<double>& cells);
    void close();
    ~CsvWriter();

  private:
    std::string path_;
    std::string buffer_;
    bool closed_ = false;
};

std::string format_double(double v);

} // namespace dlab
