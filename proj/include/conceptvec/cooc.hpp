#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "conceptvec/vocab.hpp"

namespace conceptvec {

struct EventRecord {
    std::string entity_id;
    std::int64_t day = 0;
    std::string concept_id;
};

/// Sparse symmetric co-occurrence counts. Only (i, j) with i < j is stored;
/// the diagonal is always empty. Counts are 64-bit.
class CoocMatrix {
public:
    explicit CoocMatrix(std::size_t n);

    std::size_t size() const { return n_; }
    std::size_t cell_count() const { return cells_.size(); }
    std::int64_t grand_total() const { return grand_total_; }
    const std::vector<std::int64_t>& row_totals() const { return row_totals_; }

    /// Symmetric lookup; 0 when the pair is not stored.
    std::int64_t count(std::size_t i, std::size_t j) const;

    /// i != j required; orientation is normalized internally.
    void add(std::size_t i, std::size_t j, std::int64_t delta);

    struct Cell {
        std::uint32_t i, j;  // i < j
        std::int64_t count;
    };
    /// Cells in ascending (i, j) order.
    std::vector<Cell> sorted_cells() const;

    /// Throws std::logic_error if marginals or the grand total are out of
    /// sync with the cells.
    void check_invariants() const;

    /// TSV: concept_a <TAB> concept_b <TAB> count, concept_a < concept_b
    /// lexicographically, lines sorted.
    void save(const std::string& path, const ConceptVocabulary& vocab) const;
    static CoocMatrix load(const std::string& path, const ConceptVocabulary& vocab);

private:
    std::size_t n_;
    std::unordered_map<std::uint64_t, std::int64_t> cells_;
    std::vector<std::int64_t> row_totals_;
    std::int64_t grand_total_ = 0;
};

/// Documents are chunked into consecutive windows of window_len tokens
/// (final partial chunk kept). Within a chunk every unordered pair of
/// occurrences of two distinct in-vocabulary concepts counts once;
/// out-of-vocabulary tokens fill positions but contribute no pairs.
CoocMatrix build_from_text(const std::vector<std::vector<std::string>>& docs,
                           const ConceptVocabulary& vocab, std::size_t window_len = 10);

/// Pair (a, b) gains one count per entity that has events (a, t1), (b, t2)
/// with |t1 - t2| <= span_days, regardless of how many such event pairs exist.
CoocMatrix build_from_intervals(const std::vector<EventRecord>& events,
                                const ConceptVocabulary& vocab, std::int64_t span_days = 30);

/// Events fall into bins of bin_days (floor division); each (entity, bin)
/// contributes one count per unordered pair of distinct concepts present.
CoocMatrix build_from_bins(const std::vector<EventRecord>& events,
                           const ConceptVocabulary& vocab, std::int64_t bin_days = 30);

/// Cellwise sum over matrices of identical size.
CoocMatrix merge_matrices(const std::vector<const CoocMatrix*>& parts);

/// TSV: entity_id <TAB> day <TAB> concept_id
std::vector<EventRecord> load_events(const std::string& path);

}  // namespace conceptvec
