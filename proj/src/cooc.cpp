#include "conceptvec/cooc.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "conceptvec/tsv.hpp"

namespace conceptvec {

namespace {

std::uint64_t cell_key(std::size_t i, std::size_t j) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Events grouped by entity, preserving first-appearance entity order.
std::vector<std::vector<const EventRecord*>> group_by_entity(
    const std::vector<EventRecord>& events) {
    std::unordered_map<std::string, std::size_t> slot;
    std::vector<std::vector<const EventRecord*>> groups;
    for (const auto& e : events) {
        auto [it, inserted] = slot.try_emplace(e.entity_id, groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(&e);
    }
    return groups;
}

}  // namespace

CoocMatrix::CoocMatrix(std::size_t n) : n_(n), row_totals_(n, 0) {}

std::int64_t CoocMatrix::count(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("cell index out of range");
    if (i == j) return 0;
    if (i > j) std::swap(i, j);
    auto it = cells_.find(cell_key(i, j));
    return it == cells_.end() ? 0 : it->second;
}

void CoocMatrix::add(std::size_t i, std::size_t j, std::int64_t delta) {
    if (i >= n_ || j >= n_) throw std::out_of_range("cell index out of range");
    if (i == j) throw std::invalid_argument("diagonal cells are not stored");
    if (delta <= 0) throw std::invalid_argument("count increments must be positive");
    if (i > j) std::swap(i, j);
    cells_[cell_key(i, j)] += delta;
    row_totals_[i] += delta;
    row_totals_[j] += delta;
    grand_total_ += delta;
}

std::vector<CoocMatrix::Cell> CoocMatrix::sorted_cells() const {
    std::vector<Cell> out;
    out.reserve(cells_.size());
    for (const auto& [key, count] : cells_) {
        out.push_back({static_cast<std::uint32_t>(key >> 32),
                       static_cast<std::uint32_t>(key & 0xFFFFFFFFu), count});
    }
    std::sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    return out;
}

void CoocMatrix::check_invariants() const {
    std::vector<std::int64_t> totals(n_, 0);
    std::int64_t grand = 0;
    for (const auto& [key, count] : cells_) {
        std::size_t i = key >> 32, j = key & 0xFFFFFFFFu;
        if (i >= j || j >= n_) throw std::logic_error("malformed cell key");
        if (count <= 0) throw std::logic_error("nonpositive stored count");
        totals[i] += count;
        totals[j] += count;
        grand += count;
    }
    if (totals != row_totals_) throw std::logic_error("row totals out of sync");
    if (grand != grand_total_) throw std::logic_error("grand total out of sync");
}

void CoocMatrix::save(const std::string& path, const ConceptVocabulary& vocab) const {
    if (vocab.size() != n_) throw std::invalid_argument("vocabulary size mismatch");
    std::vector<std::pair<std::pair<std::string, std::string>, std::int64_t>> rows;
    rows.reserve(cells_.size());
    for (const auto& [key, count] : cells_) {
        std::string a = vocab.id_of(key >> 32);
        std::string b = vocab.id_of(key & 0xFFFFFFFFu);
        if (b < a) std::swap(a, b);
        rows.push_back({{std::move(a), std::move(b)}, count});
    }
    std::sort(rows.begin(), rows.end());
    std::ostringstream out;
    for (const auto& [ids, count] : rows) {
        out << ids.first << '\t' << ids.second << '\t' << count << '\n';
    }
    write_file(path, out.str());
}

CoocMatrix CoocMatrix::load(const std::string& path, const ConceptVocabulary& vocab) {
    CoocMatrix m(vocab.size());
    auto lines = read_lines(path);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        auto fields = split_tabs(lines[ln]);
        if (fields.size() != 3) parse_fail(path, ln + 1, "expected 3 tab-separated fields");
        std::string a(fields[0]), b(fields[1]);
        if (!vocab.contains(a)) parse_fail(path, ln + 1, "unknown concept id: " + a);
        if (!vocab.contains(b)) parse_fail(path, ln + 1, "unknown concept id: " + b);
        if (a == b) parse_fail(path, ln + 1, "diagonal cell: " + a);
        std::int64_t count = parse_int(fields[2], path, ln + 1);
        if (count <= 0) parse_fail(path, ln + 1, "count must be positive");
        std::size_t i = vocab.index_of(a), j = vocab.index_of(b);
        if (m.count(i, j) != 0) parse_fail(path, ln + 1, "duplicate cell " + a + "/" + b);
        m.add(i, j, count);
    }
    return m;
}

CoocMatrix build_from_text(const std::vector<std::vector<std::string>>& docs,
                           const ConceptVocabulary& vocab, std::size_t window_len) {
    if (window_len < 2) throw std::invalid_argument("window_len must be >= 2");
    CoocMatrix m(vocab.size());
    std::vector<std::int64_t> in_vocab;  // vocab index or -1 per position
    for (const auto& doc : docs) {
        in_vocab.clear();
        in_vocab.reserve(doc.size());
        for (const auto& tok : doc) {
            in_vocab.push_back(vocab.contains(tok)
                                   ? static_cast<std::int64_t>(vocab.index_of(tok))
                                   : -1);
        }
        for (std::size_t chunk = 0; chunk < doc.size(); chunk += window_len) {
            std::size_t end = std::min(chunk + window_len, doc.size());
            for (std::size_t p = chunk; p < end; ++p) {
                if (in_vocab[p] < 0) continue;
                for (std::size_t q = p + 1; q < end; ++q) {
                    if (in_vocab[q] < 0 || in_vocab[q] == in_vocab[p]) continue;
                    m.add(static_cast<std::size_t>(in_vocab[p]),
                          static_cast<std::size_t>(in_vocab[q]), 1);
                }
            }
        }
    }
    return m;
}

CoocMatrix build_from_intervals(const std::vector<EventRecord>& events,
                                const ConceptVocabulary& vocab, std::int64_t span_days) {
    if (span_days < 1) throw std::invalid_argument("span_days must be >= 1");
    CoocMatrix m(vocab.size());
    for (const auto& group : group_by_entity(events)) {
        std::vector<std::pair<std::int64_t, std::size_t>> timeline;  // (day, index)
        for (const EventRecord* e : group) {
            if (e->concept_id.empty()) throw std::invalid_argument("empty concept id in event");
            if (vocab.contains(e->concept_id)) {
                timeline.push_back({e->day, vocab.index_of(e->concept_id)});
            }
        }
        std::sort(timeline.begin(), timeline.end());
        std::set<std::pair<std::size_t, std::size_t>> entity_pairs;
        std::size_t lo = 0;
        for (std::size_t hi = 0; hi < timeline.size(); ++hi) {
            while (timeline[hi].first - timeline[lo].first > span_days) ++lo;
            for (std::size_t k = lo; k < hi; ++k) {
                auto a = timeline[k].second, b = timeline[hi].second;
                if (a == b) continue;
                entity_pairs.insert({std::min(a, b), std::max(a, b)});
            }
        }
        for (const auto& [a, b] : entity_pairs) m.add(a, b, 1);
    }
    return m;
}

CoocMatrix build_from_bins(const std::vector<EventRecord>& events,
                           const ConceptVocabulary& vocab, std::int64_t bin_days) {
    if (bin_days < 1) throw std::invalid_argument("bin_days must be >= 1");
    CoocMatrix m(vocab.size());
    for (const auto& group : group_by_entity(events)) {
        std::map<std::int64_t, std::set<std::size_t>> bins;
        for (const EventRecord* e : group) {
            if (e->concept_id.empty()) throw std::invalid_argument("empty concept id in event");
            if (vocab.contains(e->concept_id)) {
                bins[floor_div(e->day, bin_days)].insert(vocab.index_of(e->concept_id));
            }
        }
        for (const auto& [bin, present] : bins) {
            for (auto a = present.begin(); a != present.end(); ++a) {
                for (auto b = std::next(a); b != present.end(); ++b) {
                    m.add(*a, *b, 1);
                }
            }
        }
    }
    return m;
}

CoocMatrix merge_matrices(const std::vector<const CoocMatrix*>& parts) {
    if (parts.empty()) throw std::invalid_argument("nothing to merge");
    std::size_t n = parts.front()->size();
    for (const CoocMatrix* part : parts) {
        if (part->size() != n) {
            throw std::invalid_argument("cannot merge matrices of different sizes: " +
                                        std::to_string(part->size()) + " vs " +
                                        std::to_string(n));
        }
    }
    CoocMatrix merged(n);
    for (const CoocMatrix* part : parts) {
        for (const auto& cell : part->sorted_cells()) {
            merged.add(cell.i, cell.j, cell.count);
        }
    }
    return merged;
}

std::vector<EventRecord> load_events(const std::string& path) {
    std::vector<EventRecord> events;
    auto lines = read_lines(path);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        auto fields = split_tabs(lines[ln]);
        if (fields.size() != 3) {
            parse_fail(path, ln + 1, "expected entity_id<TAB>day<TAB>concept_id");
        }
        if (fields[0].empty()) parse_fail(path, ln + 1, "empty entity id");
        if (fields[2].empty()) parse_fail(path, ln + 1, "empty concept id");
        events.push_back({std::string(fields[0]), parse_int(fields[1], path, ln + 1),
                          std::string(fields[2])});
    }
    return events;
}

}  // namespace conceptvec
