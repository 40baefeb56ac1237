#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "conceptvec/cooc.hpp"

namespace conceptvec {

struct TransformConfig {
    double alpha = 0.75;   // marginal smoothing exponent, in (0, 1]
    double shift_k = 1.0;  // negative-sampling shift, >= 1

    void validate() const;
};

enum class WeightKind { pmi, sppmi, raw };

std::string to_string(WeightKind kind);

/// Sparse symmetric real-valued association matrix; storage layout matches
/// CoocMatrix (i < j only, no diagonal). sppmi matrices never store values
/// <= 0.
class SparseWeightMatrix {
public:
    SparseWeightMatrix(std::size_t n, WeightKind kind);

    std::size_t size() const { return n_; }
    WeightKind kind() const { return kind_; }
    std::size_t cell_count() const { return cells_.size(); }

    /// Symmetric lookup; 0 when the pair is not stored.
    double value(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, double v);

    struct Cell {
        std::uint32_t i, j;  // i < j
        double value;
    };
    std::vector<Cell> sorted_cells() const;

    /// Same TSV layout as CoocMatrix with a real-valued third column
    /// (17 significant digits).
    void save(const std::string& path, const ConceptVocabulary& vocab) const;
    static SparseWeightMatrix load(const std::string& path, const ConceptVocabulary& vocab,
                                   WeightKind kind);

private:
    std::size_t n_;
    WeightKind kind_;
    std::unordered_map<std::uint64_t, double> cells_;
};

/// Smoothed unigram distribution: totals[i]^alpha / sum_j totals[j]^alpha.
std::vector<double> smoothed_marginal_distribution(const std::vector<std::int64_t>& row_totals,
                                                   double alpha);

/// value(w, c) = ln( p(w,c) / (p_a(w) * p_a(c)) ) with p(w,c) = count / D,
/// D the grand total, and p_a the smoothed marginal distribution. Only
/// cells with a positive count are materialized.
SparseWeightMatrix pmi(const CoocMatrix& m, const TransformConfig& cfg);

/// max(pmi - ln(shift_k), 0), with zero-valued results dropped from storage.
SparseWeightMatrix sppmi(const CoocMatrix& m, const TransformConfig& cfg);

/// Counts reinterpreted as real weights (kind = raw).
SparseWeightMatrix counts_as_weights(const CoocMatrix& m);

}  // namespace conceptvec
