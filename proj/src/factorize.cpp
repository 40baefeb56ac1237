#include "conceptvec/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Sparse>

#include "conceptvec/rng.hpp"
#include "conceptvec/tsv.hpp"

namespace conceptvec {

namespace {

Eigen::SparseMatrix<double> sparse_from_triplets(std::size_t n,
                                                 const std::vector<SymTriplet>& entries) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(entries.size());
    for (const auto& e : entries) {
        if (e.row >= n || e.col >= n) throw std::invalid_argument("triplet index out of range");
        if (!std::isfinite(e.value)) throw std::invalid_argument("non-finite triplet value");
        trips.emplace_back(e.row, e.col, e.value);
    }
    Eigen::SparseMatrix<double> x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    x.setFromTriplets(trips.begin(), trips.end());  // duplicates are summed
    return x;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& y) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

// Indices of eigenvalues ordered for a truncated SVD: by |lambda| descending,
// positive eigenvalue first on magnitude ties.
std::vector<Eigen::Index> svd_order(const Eigen::VectorXd& lambda) {
    std::vector<Eigen::Index> order(lambda.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        double ma = std::abs(lambda[a]), mb = std::abs(lambda[b]);
        if (ma != mb) return ma > mb;
        return lambda[a] > lambda[b];
    });
    return order;
}

void apply_sign_convention(Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
        Eigen::Index pivot = 0;
        u.col(k).cwiseAbs().maxCoeff(&pivot);
        if (u(pivot, k) < 0.0) {
            u.col(k) = -u.col(k);
            v.col(k) = -v.col(k);
        }
    }
}

std::string hex_digest(const std::string& canonical) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical)));
    return std::string(buf, 16);
}

}  // namespace

SvdFactors truncated_svd_sym(std::size_t n, const std::vector<SymTriplet>& entries,
                             std::size_t d, std::uint64_t seed, const SvdOptions& opts) {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    if (d > n) {
        throw std::invalid_argument("d = " + std::to_string(d) + " exceeds matrix size " +
                                    std::to_string(n));
    }
    const Eigen::SparseMatrix<double> x = sparse_from_triplets(n, entries);
    const Eigen::Index ni = static_cast<Eigen::Index>(n);
    const Eigen::Index block = static_cast<Eigen::Index>(std::min(n, d + opts.oversample));

    std::mt19937_64 rng(splitmix64(seed));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd q(ni, block);
    for (Eigen::Index j = 0; j < block; ++j) {
        for (Eigen::Index i = 0; i < ni; ++i) q(i, j) = gauss(rng);
    }
    q = orthonormalize(q);

    Eigen::VectorXd ritz(d);
    Eigen::MatrixXd ritz_vecs;
    Eigen::VectorXd residuals = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(d),
                                                          std::numeric_limits<double>::max());
    double sigma_max = 0.0;
    bool converged = false;

    for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
        Eigen::MatrixXd xq = x * q;
        Eigen::MatrixXd small = q.transpose() * xq;
        small = 0.5 * (small + small.transpose().eval());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(small);
        if (eig.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");

        const auto order = svd_order(eig.eigenvalues());
        sigma_max = std::abs(eig.eigenvalues()[order[0]]);
        if (sigma_max == 0.0) break;  // zero matrix: no nonzero singular values

        ritz_vecs.resize(ni, static_cast<Eigen::Index>(d));
        for (std::size_t k = 0; k < d; ++k) {
            const Eigen::Index src = order[k];
            ritz[static_cast<Eigen::Index>(k)] = eig.eigenvalues()[src];
            ritz_vecs.col(static_cast<Eigen::Index>(k)) = q * eig.eigenvectors().col(src);
            residuals[static_cast<Eigen::Index>(k)] =
                (xq * eig.eigenvectors().col(src) -
                 eig.eigenvalues()[src] * ritz_vecs.col(static_cast<Eigen::Index>(k)))
                    .norm();
        }
        if (iter + 1 >= opts.min_iters && residuals.maxCoeff() <= opts.tol * sigma_max) {
            converged = true;
            break;
        }
        q = orthonormalize(xq);
    }

    if (sigma_max == 0.0) {
        throw std::runtime_error("fewer than " + std::to_string(d) +
                                 " nonzero singular values");
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "truncated SVD failed to converge after " << opts.max_iters
            << " iterations; relative residuals:";
        for (Eigen::Index k = 0; k < residuals.size(); ++k) {
            msg << ' ' << format_real(residuals[k] / sigma_max);
        }
        throw std::runtime_error(msg.str());
    }
    const double rank_tol =
        sigma_max * std::numeric_limits<double>::epsilon() * std::max<double>(10.0, double(n));
    if (std::abs(ritz[static_cast<Eigen::Index>(d - 1)]) <= rank_tol) {
        throw std::runtime_error("fewer than " + std::to_string(d) +
                                 " nonzero singular values");
    }

    SvdFactors f;
    f.sigma.resize(static_cast<Eigen::Index>(d));
    f.U.resize(ni, static_cast<Eigen::Index>(d));
    f.V.resize(ni, static_cast<Eigen::Index>(d));
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(d); ++k) {
        f.sigma[k] = std::abs(ritz[k]);
        f.V.col(k) = ritz_vecs.col(k);
        f.U.col(k) = ritz[k] < 0.0 ? (-ritz_vecs.col(k)).eval() : ritz_vecs.col(k);
    }
    apply_sign_convention(f.U, f.V);
    return f;
}

SvdFactors truncated_svd(const SparseWeightMatrix& x, std::size_t d, std::uint64_t seed,
                         const SvdOptions& opts) {
    std::vector<SymTriplet> entries;
    const auto cells = x.sorted_cells();
    entries.reserve(cells.size() * 2);
    for (const auto& cell : cells) {
        entries.push_back({cell.i, cell.j, cell.value});
        entries.push_back({cell.j, cell.i, cell.value});
    }
    return truncated_svd_sym(x.size(), entries, d, seed, opts);
}

EmbeddingSet assemble_embeddings(const SvdFactors& f, const ConceptVocabulary& vocab,
                                 Provenance provenance) {
    if (static_cast<std::size_t>(f.U.rows()) != vocab.size()) {
        throw std::invalid_argument("factor rows do not match vocabulary size");
    }
    EmbeddingSet set;
    set.ids = vocab.ids();
    set.provenance = std::move(provenance);
    const Eigen::VectorXd scale = f.sigma.cwiseSqrt();
    set.vectors = (f.U + f.V) * scale.asDiagonal();
    set.validate();
    return set;
}

EmbeddingSet raw_svd_baseline(const CoocMatrix& m, const ConceptVocabulary& vocab,
                              std::size_t d, std::uint64_t seed) {
    SvdFactors f = truncated_svd(counts_as_weights(m), d, seed);
    Provenance prov;
    prov.method = "raw_svd";
    prov.seed = seed;
    prov.config_digest =
        hex_digest("method=raw_svd;d=" + std::to_string(d) + ";seed=" + std::to_string(seed));
    return assemble_embeddings(f, vocab, std::move(prov));
}

}  // namespace conceptvec
