#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace conceptvec {

struct Provenance {
    std::string method;         // svd_sppmi | svd_pmi | glove | raw_svd
    std::string config_digest;  // hex FNV-1a of the canonical config string
    std::uint64_t seed = 0;
};

/// Dense n x d concept vectors; row order follows the vocabulary.
struct EmbeddingSet {
    std::vector<std::string> ids;
    Eigen::MatrixXd vectors;  // rows align with ids
    Provenance provenance;

    std::size_t dim() const { return static_cast<std::size_t>(vectors.cols()); }
    std::size_t size() const { return ids.size(); }

    /// Throws std::logic_error on NaN/Inf entries or row-count mismatch.
    void validate() const;
};

}  // namespace conceptvec
