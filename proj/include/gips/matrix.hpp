#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gips/vset.hpp"

namespace gips {

/// Arithmetic-operation counters. Instrumented kernels add the exact
/// number of multiplications, divisions, subtractions and additions they
/// execute; square roots are not tracked.
struct FlopCount {
    std::uint64_t mults = 0;
    std::uint64_t divs = 0;
    std::uint64_t subs = 0;
    std::uint64_t adds = 0;

    std::uint64_t total() const { return mults + divs + subs + adds; }
    FlopCount& operator+=(const FlopCount& o) {
        mults += o.mults;
        divs += o.divs;
        subs += o.subs;
        adds += o.adds;
        return *this;
    }
    bool operator==(const FlopCount&) const = default;
};

/// Recoverable signal that a symmetric matrix failed a positive
/// definiteness check. `index` is the failing pivot position (or vertex
/// label where the caller works with labeled matrices).
class not_positive_definite : public std::runtime_error {
public:
    not_positive_definite(int index, double pivot)
        : std::runtime_error("matrix not positive definite: pivot " + std::to_string(index) +
                             " = " + std::to_string(pivot)),
          index_(index),
          pivot_(pivot) {}
    int index() const { return index_; }
    double pivot() const { return pivot_; }

private:
    int index_;
    double pivot_;
};

/// Dense row-major matrix of doubles.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0.0) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    bool operator==(const Mat&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);
double max_abs_diff(const Mat& a, const Mat& b);

/// Dense symmetric matrix whose rows/columns carry vertex labels.
/// Writes mirror automatically so storage stays exactly symmetric.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(VertexSet labels);

    static SymMatrix identity(VertexSet labels);
    /// Validates |a - a'| against `sym_tol * max_abs` and symmetrizes.
    static SymMatrix from_mat(const Mat& a, VertexSet labels, double sym_tol = 1e-12);

    int dim() const { return static_cast<int>(labels_.size()); }
    const VertexSet& labels() const { return labels_; }
    bool has_label(int v) const { return vset_contains(labels_, v); }
    int index_of(int label) const;

    double at(int i, int j) const { return a_[size_t(i) * dim() + j]; }
    void set(int i, int j, double v) {
        a_[size_t(i) * dim() + j] = v;
        a_[size_t(j) * dim() + i] = v;
    }
    double at_label(int u, int v) const { return at(index_of(u), index_of(v)); }
    void set_label(int u, int v, double x) { set(index_of(u), index_of(v), x); }

    Mat to_mat() const;
    double max_abs() const;

private:
    VertexSet labels_;
    std::vector<double> a_;
};

/// Ordered set of labels selecting rows/columns of a SymMatrix.
using IndexSet = std::vector<int>;

/// Block a[rows, cols] in the given label orders.
Mat submatrix(const SymMatrix& a, const IndexSet& rows, const IndexSet& cols);

/// |labels|x|labels| matrix with `block` at the (rows, cols) positions and
/// zeros elsewhere.
Mat embed(const Mat& block, const IndexSet& rows, const IndexSet& cols, const VertexSet& labels);

/// Lower-triangular Cholesky factor, or nullopt when a pivot falls at or
/// below pd_pivot_tol() * max(diagonal). On failure `fail_index`/`fail_pivot`
/// (when given) receive the offending position and value.
std::optional<Mat> chol_factor(const Mat& a, FlopCount* fc = nullptr, int* fail_index = nullptr,
                               double* fail_pivot = nullptr);
std::optional<Mat> chol_factor(const SymMatrix& a, FlopCount* fc = nullptr,
                               int* fail_index = nullptr, double* fail_pivot = nullptr);

double pd_pivot_tol();
bool is_positive_definite(const SymMatrix& a);
bool is_positive_definite(const Mat& a);

/// Inverse of a positive definite matrix via its Cholesky factor.
/// Throws not_positive_definite on failure.
Mat inverse_pd(const Mat& a, FlopCount* fc = nullptr);
SymMatrix inverse_pd(const SymMatrix& a);

/// Solves L x = b in place for lower-triangular L (columns of b are
/// independent right-hand sides).
void forward_solve_inplace(const Mat& lower, Mat& b, FlopCount* fc = nullptr);

/// x' * x with symmetric output.
Mat crossprod(const Mat& x, FlopCount* fc = nullptr);

/// ((a^{-1})[d1, d1])^{-1} computed as a[d1,d1] - a[d1,d2] a[d2,d2]^{-1} a[d2,d1]
/// without forming the full inverse; d2 is the complement of d1.
Mat schur_inverse_block(const SymMatrix& a, const IndexSet& d1, FlopCount* fc = nullptr);

/// block -= col col' / pivot. Throws not_positive_definite when pivot <= 0.
/// Counts |Q| divisions and |Q|^2 multiplications/subtractions.
void rank1_downdate(Mat& block, const std::vector<double>& col, double pivot,
                    FlopCount* fc = nullptr);

}  // namespace gips
