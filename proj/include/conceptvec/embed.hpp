#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "conceptvec/embedding.hpp"

namespace conceptvec {

/// Immutable embedding store with precomputed row norms. Zero-norm rows
/// are kept but excluded from similarity queries.
class EmbeddingStore {
public:
    explicit EmbeddingStore(EmbeddingSet set);

    const EmbeddingSet& set() const { return set_; }
    std::size_t size() const { return set_.size(); }
    std::size_t dim() const { return set_.dim(); }

    bool contains(const std::string& id) const { return rows_.count(id) > 0; }
    /// Present with a nonzero norm.
    bool usable(const std::string& id) const;
    /// Throws std::out_of_range naming the id.
    std::size_t row_of(const std::string& id) const;
    double norm(std::size_t row) const { return norms_[row]; }

    /// Ids of zero-norm rows, in row order.
    std::vector<std::string> degenerate_ids() const;

    /// Throws std::out_of_range for missing ids, std::domain_error for
    /// zero-norm vectors.
    double cosine(const std::string& a, const std::string& b) const;
    double cosine_rows(std::size_t i, std::size_t j) const;

    struct Neighbor {
        std::string id;
        double cosine;
    };
    /// The k usable concepts closest to q by cosine, descending, ties
    /// broken by id; q itself is excluded. Requires k <= size() - 1.
    std::vector<Neighbor> nearest_neighbors(const std::string& q, std::size_t k) const;

    /// Text format: header "n d", then "concept_id v1 ... vd" per row,
    /// 17 significant digits. Round-trips bit-exactly.
    void save(const std::string& path) const;
    static EmbeddingStore load(const std::string& path);

private:
    EmbeddingSet set_;
    std::vector<double> norms_;
    std::unordered_map<std::string, std::size_t> rows_;
};

}  // namespace conceptvec
