#pragma once

#include <cstdint>
#include <random>

#include "gips/matrix.hpp"

namespace gips {

/// Deterministic standard-normal stream: 53-bit uniforms from a seeded
/// mt19937_64 pushed through Box-Muller. Hand-rolled rather than
/// std::normal_distribution so identical seeds give identical streams
/// on every standard library.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

    /// Uniform draw in [0, 1) with 53 random bits.
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    double next();

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// One draw W ~ Wishart(I_dim, dof), labels 1..dim. For dof >= dim the
/// Bartlett construction is used (lower-triangular A with chi-square
/// diagonal, standard-normal subdiagonal, W = A A'); the draw is then
/// verified positive definite and redrawn from the continuing stream on
/// the measure-zero numerical failure, with `redraws` (when supplied)
/// counting how often. For dof < dim, where W is singular, the draw
/// falls back to the plain sum of dof outer products.
SymMatrix wishart_sample(int dim, int dof, std::uint64_t seed, int* redraws = nullptr);

}  // namespace gips
