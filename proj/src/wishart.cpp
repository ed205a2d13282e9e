#include "gips/wishart.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gips {

double NormalSampler::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // 1 - u keeps the log argument in (0, 1].
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

SymMatrix wishart_sample(int dim, int dof, std::uint64_t seed, int* redraws) {
    if (dim < 1) throw std::invalid_argument("wishart_sample: dim must be >= 1");
    if (dof < 1) throw std::invalid_argument("wishart_sample: dof must be >= 1");

    VertexSet labels(dim);
    for (int i = 0; i < dim; ++i) labels[i] = i + 1;
    NormalSampler rng(seed);
    if (redraws) *redraws = 0;

    if (dof < dim) {
        // Singular regime: W = sum of dof outer products of N(0, I) draws.
        SymMatrix w(labels);
        std::vector<double> x(dim);
        for (int t = 0; t < dof; ++t) {
            for (int i = 0; i < dim; ++i) x[i] = rng.next();
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j) w.set(i, j, w.at(i, j) + x[i] * x[j]);
        }
        return w;
    }

    for (int attempt = 0; attempt < 1000; ++attempt) {
        // Bartlett: A lower triangular, A_ii = sqrt(chi^2 with dof-i
        // degrees of freedom) (i zero-based), A_ij ~ N(0,1) below the
        // diagonal; W = A A'.
        Mat a(dim, dim);
        for (int i = 0; i < dim; ++i) {
            double chi2 = 0.0;
            for (int k = 0; k < dof - i; ++k) {
                double z = rng.next();
                chi2 += z * z;
            }
            a(i, i) = std::sqrt(chi2);
            for (int j = 0; j < i; ++j) a(i, j) = rng.next();
        }
        SymMatrix w(labels);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                double acc = 0.0;
                for (int k = 0; k <= std::min(i, j); ++k) acc += a(i, k) * a(j, k);
                w.set(i, j, acc);
            }
        if (is_positive_definite(w)) return w;
        if (redraws) ++*redraws;
    }
    throw std::runtime_error("wishart_sample: could not draw a positive definite matrix");
}

}  // namespace gips
