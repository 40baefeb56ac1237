#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace conceptvec {

/// Bidirectional mapping between concept id strings and dense indices,
/// with per-source membership. Indices follow first appearance across the
/// input streams, so rebuilding from the same streams is reproducible.
/// Immutable once built; safe to share across threads.
class ConceptVocabulary {
public:
    using Stream = std::pair<std::string, std::vector<std::string>>;

    static ConceptVocabulary build(const std::vector<Stream>& streams);

    std::size_t size() const { return ids_.size(); }
    bool contains(const std::string& id) const { return index_.count(id) > 0; }

    /// Throws std::out_of_range naming the id / index.
    std::size_t index_of(const std::string& id) const;
    const std::string& id_of(std::size_t index) const;

    const std::vector<std::string>& ids() const { return ids_; }
    const std::vector<std::string>& sources() const { return sources_; }
    const std::set<std::string>& membership(const std::string& id) const;

    /// TSV: concept_id <TAB> index <TAB> comma-joined-sources
    void save(const std::string& path) const;
    static ConceptVocabulary load(const std::string& path);

private:
    std::vector<std::string> ids_;                        // index -> id
    std::unordered_map<std::string, std::size_t> index_;  // id -> index
    std::vector<std::string> sources_;                    // registration order
    std::unordered_map<std::string, std::set<std::string>> membership_;
};

struct IntersectionRow {
    std::vector<std::string> sources;  // in source-registration order
    std::size_t count = 0;
    std::string label() const;  // comma-joined sources
};

/// One row per nonempty source combination with at least one concept;
/// counts partition the vocabulary. Rows ordered by descending count,
/// then label.
std::vector<IntersectionRow> intersection_report(const ConceptVocabulary& v);

}  // namespace conceptvec
