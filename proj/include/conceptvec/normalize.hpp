#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace conceptvec {

/// Phrase -> concept id table. Phrases are canonicalized on insert
/// (lowercased, punctuation stripped, single-space separated), so lookup
/// keys match normalized token runs exactly.
class ConceptLexicon {
public:
    ConceptLexicon() = default;

    /// Throws std::invalid_argument for empty phrases/ids or conflicting
    /// duplicate phrases.
    void add(std::string_view phrase, std::string_view concept_id);

    /// TSV: phrase <TAB> concept_id
    static ConceptLexicon load(const std::string& path);

    std::size_t size() const { return phrases_.size(); }
    std::size_t max_phrase_len() const { return max_phrase_len_; }

    /// nullptr when the phrase is not in the table.
    const std::string* find(const std::string& phrase) const;

    /// True if the token is one of the table's concept ids. Such tokens
    /// pass through normalization verbatim, which makes re-normalizing
    /// already-normalized text a fixed point.
    bool is_concept_id(const std::string& token) const {
        return concept_ids_.count(token) > 0;
    }

private:
    std::unordered_map<std::string, std::string> phrases_;
    std::unordered_set<std::string> concept_ids_;
    std::size_t max_phrase_len_ = 0;
};

/// Lowercases, strips Unicode punctuation, splits on whitespace, then
/// replaces maximal-length lexicon phrases by their concept id
/// (greedy leftmost-longest). Empty input yields an empty list.
std::vector<std::string> normalize_text(std::string_view raw, const ConceptLexicon& lex);

}  // namespace conceptvec
