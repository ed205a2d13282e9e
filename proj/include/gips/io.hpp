#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gips/bench.hpp"
#include "gips/matrix.hpp"

namespace gips {

/// Shortest decimal form that round-trips the double exactly.
std::string fmt17(double v);

/// CSV matrix layout: one row per line, optional first line of integer
/// labels. Without a header the labels are 1..dim. The reader checks
/// symmetry within 1e-12 relative and symmetrizes.
void write_matrix_csv(std::ostream& os, const SymMatrix& a, bool header = true);
void write_matrix_csv(const std::string& path, const SymMatrix& a, bool header = true);
SymMatrix read_matrix_csv(std::istream& is);
SymMatrix read_matrix_csv(const std::string& path);

/// Plain numeric CSV, one sample per row.
Mat read_samples_csv(std::istream& is);
Mat read_samples_csv(const std::string& path);

void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records);
void write_bench_csv(const std::string& path, const std::vector<BenchRecord>& records);

void write_probe_csv(std::ostream& os, const std::vector<ProbeRecord>& records);
void write_probe_csv(const std::string& path, const std::vector<ProbeRecord>& records);

}  // namespace gips
