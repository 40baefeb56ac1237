#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "conceptvec/embedding.hpp"
#include "conceptvec/transform.hpp"

namespace conceptvec {

struct SvdOptions {
    std::size_t oversample = 10;
    std::size_t min_iters = 4;
    std::size_t max_iters = 5000;
    double tol = 1e-12;  // Ritz residual tolerance relative to sigma_max
};

/// Truncated factors X ~= U diag(sigma) V^T. Columns of U and V are
/// orthonormal; sigma is nonincreasing and positive. Sign convention:
/// the largest-magnitude entry of each U column is positive (V flipped
/// jointly).
struct SvdFactors {
    Eigen::MatrixXd U;
    Eigen::VectorXd sigma;
    Eigen::MatrixXd V;
};

struct SymTriplet {
    std::uint32_t row, col;
    double value;
};

/// Rank-d SVD of a sparse symmetric matrix given as explicit entries
/// (both orientations, diagonal allowed). Blocked subspace iteration with
/// oversampling; seeded Gaussian start; deterministic for fixed inputs.
/// Throws when d > n, when fewer than d numerically nonzero singular
/// values exist, or on convergence failure (message carries residuals).
SvdFactors truncated_svd_sym(std::size_t n, const std::vector<SymTriplet>& entries,
                             std::size_t d, std::uint64_t seed,
                             const SvdOptions& opts = {});

SvdFactors truncated_svd(const SparseWeightMatrix& x, std::size_t d, std::uint64_t seed,
                         const SvdOptions& opts = {});

/// W = U sqrt(Sigma) + V sqrt(Sigma), rows labeled by the vocabulary.
EmbeddingSet assemble_embeddings(const SvdFactors& f, const ConceptVocabulary& vocab,
                                 Provenance provenance);

/// SVD of the raw counts treated as reals, then the same assembly;
/// provenance method "raw_svd".
EmbeddingSet raw_svd_baseline(const CoocMatrix& m, const ConceptVocabulary& vocab,
                              std::size_t d, std::uint64_t seed);

}  // namespace conceptvec
