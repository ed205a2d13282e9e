#include "gips/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gips {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        size_t a = cell.find_first_not_of(" \t\r");
        size_t b = cell.find_last_not_of(" \t\r");
        out.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
    }
    return out;
}

std::vector<std::vector<std::string>> read_csv_rows(std::istream& is) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

double parse_double(const std::string& s, const char* what) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": bad number '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument(std::string(what) + ": bad number '" + s + "'");
    return v;
}

int parse_label(const std::string& s) {
    size_t pos = 0;
    int v;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("matrix CSV: bad label '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("matrix CSV: bad label '" + s + "'");
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
    return is;
}

}  // namespace

void write_matrix_csv(std::ostream& os, const SymMatrix& a, bool header) {
    if (header) {
        for (int j = 0; j < a.dim(); ++j) {
            if (j) os << ',';
            os << a.labels()[j];
        }
        os << '\n';
    }
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            if (j) os << ',';
            os << fmt17(a.at(i, j));
        }
        os << '\n';
    }
}

void write_matrix_csv(const std::string& path, const SymMatrix& a, bool header) {
    auto os = open_out(path);
    write_matrix_csv(os, a, header);
}

SymMatrix read_matrix_csv(std::istream& is) {
    auto rows = read_csv_rows(is);
    if (rows.empty()) throw std::invalid_argument("matrix CSV: empty input");
    const size_t width = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != width) throw std::invalid_argument("matrix CSV: ragged rows");

    bool header;
    if (rows.size() == width)
        header = false;
    else if (rows.size() == width + 1)
        header = true;
    else
        throw std::invalid_argument("matrix CSV: expected a square matrix");

    VertexSet labels(width);
    if (header) {
        for (size_t j = 0; j < width; ++j) labels[j] = parse_label(rows[0][j]);
        for (size_t j = 1; j < width; ++j)
            if (labels[j] <= labels[j - 1])
                throw std::invalid_argument("matrix CSV: header labels must be strictly ascending");
    } else {
        for (size_t j = 0; j < width; ++j) labels[j] = static_cast<int>(j) + 1;
    }

    Mat a(static_cast<int>(width), static_cast<int>(width));
    for (size_t i = 0; i < width; ++i)
        for (size_t j = 0; j < width; ++j)
            a(static_cast<int>(i), static_cast<int>(j)) =
                parse_double(rows[i + (header ? 1 : 0)][j], "matrix CSV");
    return SymMatrix::from_mat(a, labels, 1e-12);
}

SymMatrix read_matrix_csv(const std::string& path) {
    auto is = open_in(path);
    return read_matrix_csv(is);
}

Mat read_samples_csv(std::istream& is) {
    auto rows = read_csv_rows(is);
    if (rows.empty()) throw std::invalid_argument("samples CSV: empty input");
    const size_t width = rows[0].size();
    Mat data(static_cast<int>(rows.size()), static_cast<int>(width));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != width) throw std::invalid_argument("samples CSV: ragged rows");
        for (size_t j = 0; j < width; ++j)
            data(static_cast<int>(i), static_cast<int>(j)) =
                parse_double(rows[i][j], "samples CSV");
    }
    return data;
}

Mat read_samples_csv(const std::string& path) {
    auto is = open_in(path);
    return read_samples_csv(is);
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
    os << "dim,mode,reps,mean_step_seconds,mean_step_flops_mult,mean_step_flops_div,"
          "mean_step_flops_sub,mean_sweeps,converged_fraction\n";
    for (const BenchRecord& r : records)
        os << r.dim << ',' << mode_name(r.mode) << ',' << r.reps << ','
           << fmt17(r.mean_step_seconds) << ',' << fmt17(r.mean_step_flops_mult) << ','
           << fmt17(r.mean_step_flops_div) << ',' << fmt17(r.mean_step_flops_sub) << ','
           << fmt17(r.mean_sweeps) << ',' << fmt17(r.converged_fraction) << '\n';
}

void write_bench_csv(const std::string& path, const std::vector<BenchRecord>& records) {
    auto os = open_out(path);
    write_bench_csv(os, records);
}

void write_probe_csv(std::ostream& os, const std::vector<ProbeRecord>& records) {
    os << "dim,seconds\n";
    for (const ProbeRecord& r : records) os << r.dim << ',' << fmt17(r.seconds) << '\n';
}

void write_probe_csv(const std::string& path, const std::vector<ProbeRecord>& records) {
    auto os = open_out(path);
    write_probe_csv(os, records);
}

}  // namespace gips
