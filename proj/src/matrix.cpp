#include "gips/matrix.hpp"

#include <cmath>

namespace gips {

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix sum: shape mismatch");
    Mat c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix difference: shape mismatch");
    Mat c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

Mat operator*(double s, const Mat& a) {
    Mat c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

double max_abs_diff(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

SymMatrix::SymMatrix(VertexSet labels) : labels_(std::move(labels)) {
    VertexSet check = vset_sorted(labels_);
    if (check.size() != labels_.size())
        throw std::invalid_argument("SymMatrix: duplicate labels");
    a_.assign(labels_.size() * labels_.size(), 0.0);
}

SymMatrix SymMatrix::identity(VertexSet labels) {
    SymMatrix m(std::move(labels));
    for (int i = 0; i < m.dim(); ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::from_mat(const Mat& a, VertexSet labels, double sym_tol) {
    if (a.rows() != a.cols() || a.rows() != static_cast<int>(labels.size()))
        throw std::invalid_argument("SymMatrix::from_mat: shape mismatch");
    double scale = a.max_abs();
    double tol = sym_tol * std::max(scale, 1.0);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j)
            if (std::abs(a(i, j) - a(j, i)) > tol)
                throw std::invalid_argument("SymMatrix::from_mat: input not symmetric at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
    SymMatrix m(std::move(labels));
    for (int i = 0; i < a.rows(); ++i) {
        m.set(i, i, a(i, i));
        for (int j = i + 1; j < a.cols(); ++j) m.set(i, j, 0.5 * (a(i, j) + a(j, i)));
    }
    return m;
}

int SymMatrix::index_of(int label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label)
        throw std::invalid_argument("SymMatrix: unknown label " + std::to_string(label));
    return static_cast<int>(it - labels_.begin());
}

Mat SymMatrix::to_mat() const {
    Mat m(dim(), dim());
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) m(i, j) = at(i, j);
    return m;
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

Mat submatrix(const SymMatrix& a, const IndexSet& rows, const IndexSet& cols) {
    std::vector<int> ri(rows.size()), ci(cols.size());
    for (size_t i = 0; i < rows.size(); ++i) ri[i] = a.index_of(rows[i]);
    for (size_t j = 0; j < cols.size(); ++j) ci[j] = a.index_of(cols[j]);
    Mat b(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) b(int(i), int(j)) = a.at(ri[i], ci[j]);
    return b;
}

Mat embed(const Mat& block, const IndexSet& rows, const IndexSet& cols, const VertexSet& labels) {
    if (block.rows() != static_cast<int>(rows.size()) ||
        block.cols() != static_cast<int>(cols.size()))
        throw std::invalid_argument("embed: block shape does not match index sets");
    SymMatrix probe(labels);  // reuse label lookup/validation
    Mat out(probe.dim(), probe.dim());
    for (size_t i = 0; i < rows.size(); ++i) {
        int ri = probe.index_of(rows[i]);
        for (size_t j = 0; j < cols.size(); ++j) out(ri, probe.index_of(cols[j])) = block(int(i), int(j));
    }
    return out;
}

double pd_pivot_tol() { return 1e-12; }

std::optional<Mat> chol_factor(const Mat& a, FlopCount* fc, int* fail_index, double* fail_pivot) {
    if (a.rows() != a.cols()) throw std::invalid_argument("chol_factor: matrix not square");
    const int n = a.rows();
    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
    const double tol = pd_pivot_tol() * std::max(max_diag, 0.0);

    Mat l(n, n);
    for (int j = 0; j < n; ++j) {
        double s = a(j, j);
        for (int k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
        if (fc) {
            fc->mults += j;
            fc->subs += j;
        }
        if (s <= tol || !std::isfinite(s)) {
            if (fail_index) *fail_index = j;
            if (fail_pivot) *fail_pivot = s;
            return std::nullopt;
        }
        double ljj = std::sqrt(s);
        l(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double t = a(i, j);
            for (int k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
            l(i, j) = t / ljj;
        }
        if (fc) {
            fc->mults += std::uint64_t(j) * (n - 1 - j);
            fc->subs += std::uint64_t(j) * (n - 1 - j);
            fc->divs += n - 1 - j;
        }
    }
    return l;
}

std::optional<Mat> chol_factor(const SymMatrix& a, FlopCount* fc, int* fail_index,
                               double* fail_pivot) {
    return chol_factor(a.to_mat(), fc, fail_index, fail_pivot);
}

bool is_positive_definite(const Mat& a) { return chol_factor(a).has_value(); }
bool is_positive_definite(const SymMatrix& a) { return chol_factor(a).has_value(); }

void forward_solve_inplace(const Mat& lower, Mat& b, FlopCount* fc) {
    const int n = lower.rows();
    if (b.rows() != n) throw std::invalid_argument("forward_solve: shape mismatch");
    for (int c = 0; c < b.cols(); ++c) {
        for (int i = 0; i < n; ++i) {
            double t = b(i, c);
            for (int k = 0; k < i; ++k) t -= lower(i, k) * b(k, c);
            b(i, c) = t / lower(i, i);
        }
    }
    if (fc) {
        std::uint64_t tri = std::uint64_t(n) * (n - 1) / 2;
        fc->mults += tri * b.cols();
        fc->subs += tri * b.cols();
        fc->divs += std::uint64_t(n) * b.cols();
    }
}

Mat crossprod(const Mat& x, FlopCount* fc) {
    const int n = x.rows(), c = x.cols();
    Mat out(c, c);
    for (int i = 0; i < c; ++i)
        for (int j = i; j < c; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += x(k, i) * x(k, j);
            out(i, j) = s;
            out(j, i) = s;
        }
    if (fc) {
        std::uint64_t pairs = std::uint64_t(c) * (c + 1) / 2;
        fc->mults += pairs * n;
        fc->adds += n > 0 ? pairs * (n - 1) : 0;
    }
    return out;
}

Mat inverse_pd(const Mat& a, FlopCount* fc) {
    int bad = -1;
    double piv = 0.0;
    auto l = chol_factor(a, fc, &bad, &piv);
    if (!l) throw not_positive_definite(bad, piv);
    Mat inv = Mat::identity(a.rows());
    forward_solve_inplace(*l, inv, fc);  // inv = L^{-1}
    return crossprod(inv, fc);           // (L^{-1})' L^{-1} = a^{-1}
}

SymMatrix inverse_pd(const SymMatrix& a) {
    Mat inv = inverse_pd(a.to_mat());
    return SymMatrix::from_mat(inv, a.labels(), 1e-9);
}

Mat schur_inverse_block(const SymMatrix& a, const IndexSet& d1, FlopCount* fc) {
    VertexSet d1s = vset_sorted(d1);
    if (d1s.size() != d1.size()) throw std::invalid_argument("schur_inverse_block: duplicate labels");
    VertexSet d2 = vset_diff(a.labels(), d1s);
    Mat a11 = submatrix(a, d1, d1);
    if (d2.empty()) return a11;
    Mat a21 = submatrix(a, d2, d1);  // rows d2, cols d1
    Mat a22 = submatrix(a, d2, d2);
    int bad = -1;
    double piv = 0.0;
    auto l = chol_factor(a22, fc, &bad, &piv);
    if (!l) throw not_positive_definite(bad, piv);
    forward_solve_inplace(*l, a21, fc);   // L^{-1} a[d2,d1]
    Mat correction = crossprod(a21, fc);  // a[d1,d2] a[d2,d2]^{-1} a[d2,d1]
    if (fc) fc->subs += std::uint64_t(a11.rows()) * a11.cols();
    return a11 - correction;
}

void rank1_downdate(Mat& block, const std::vector<double>& col, double pivot, FlopCount* fc) {
    const int q = block.rows();
    if (block.cols() != q || static_cast<int>(col.size()) != q)
        throw std::invalid_argument("rank1_downdate: shape mismatch");
    if (pivot <= 0.0) throw not_positive_definite(-1, pivot);
    std::vector<double> scaled(q);
    for (int i = 0; i < q; ++i) scaled[i] = col[i] / pivot;
    // Mirror writes keep the block exactly symmetric; counters follow the
    // q divisions + q^2 multiplications + q^2 subtractions cost of the
    // plain outer-product update.
    for (int i = 0; i < q; ++i)
        for (int j = i; j < q; ++j) {
            block(i, j) -= scaled[i] * col[j];
            if (i != j) block(j, i) = block(i, j);
        }
    if (fc) {
        fc->divs += q;
        fc->mults += std::uint64_t(q) * q;
        fc->subs += std::uint64_t(q) * q;
    }
}

}  // namespace gips
