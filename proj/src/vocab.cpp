#include "conceptvec/vocab.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "conceptvec/tsv.hpp"

namespace conceptvec {

ConceptVocabulary ConceptVocabulary::build(const std::vector<Stream>& streams) {
    ConceptVocabulary v;
    for (const auto& [label, concepts] : streams) {
        if (label.empty()) throw std::invalid_argument("empty source label");
        if (std::find(v.sources_.begin(), v.sources_.end(), label) != v.sources_.end()) {
            throw std::invalid_argument("duplicate source label: " + label);
        }
        v.sources_.push_back(label);
        for (const std::string& id : concepts) {
            if (id.empty()) throw std::invalid_argument("empty concept id in source " + label);
            auto [it, inserted] = v.index_.try_emplace(id, v.ids_.size());
            if (inserted) v.ids_.push_back(id);
            v.membership_[id].insert(label);
        }
    }
    if (v.ids_.empty()) throw std::invalid_argument("no concepts");
    return v;
}

std::size_t ConceptVocabulary::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("unknown concept id: " + id);
    return it->second;
}

const std::string& ConceptVocabulary::id_of(std::size_t index) const {
    if (index >= ids_.size()) {
        throw std::out_of_range("concept index out of range: " + std::to_string(index));
    }
    return ids_[index];
}

const std::set<std::string>& ConceptVocabulary::membership(const std::string& id) const {
    auto it = membership_.find(id);
    if (it == membership_.end()) throw std::out_of_range("unknown concept id: " + id);
    return it->second;
}

void ConceptVocabulary::save(const std::string& path) const {
    std::ostringstream out;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        const auto& member = membership_.at(ids_[i]);
        out << ids_[i] << '\t' << i << '\t';
        bool first = true;
        // Join in source-registration order for stable output.
        for (const auto& src : sources_) {
            if (member.count(src)) {
                if (!first) out << ',';
                out << src;
                first = false;
            }
        }
        out << '\n';
    }
    write_file(path, out.str());
}

ConceptVocabulary ConceptVocabulary::load(const std::string& path) {
    ConceptVocabulary v;
    auto lines = read_lines(path);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        auto fields = split_tabs(lines[ln]);
        if (fields.size() != 3) parse_fail(path, ln + 1, "expected 3 tab-separated fields");
        std::string id(fields[0]);
        std::int64_t index = parse_int(fields[1], path, ln + 1);
        if (id.empty()) parse_fail(path, ln + 1, "empty concept id");
        if (index != static_cast<std::int64_t>(v.ids_.size())) {
            parse_fail(path, ln + 1, "indices must be contiguous from 0, got " +
                                         std::to_string(index));
        }
        if (v.index_.count(id)) parse_fail(path, ln + 1, "duplicate concept id: " + id);
        std::set<std::string> member;
        std::string src;
        std::istringstream srcs{std::string(fields[2])};
        while (std::getline(srcs, src, ',')) {
            if (src.empty()) parse_fail(path, ln + 1, "empty source label");
            member.insert(src);
            if (std::find(v.sources_.begin(), v.sources_.end(), src) == v.sources_.end()) {
                v.sources_.push_back(src);
            }
        }
        if (member.empty()) parse_fail(path, ln + 1, "empty membership set");
        v.index_[id] = v.ids_.size();
        v.ids_.push_back(id);
        v.membership_[id] = std::move(member);
    }
    if (v.ids_.empty()) throw ParseError(path + ": no concepts");
    return v;
}

std::string IntersectionRow::label() const {
    std::string out;
    for (const auto& s : sources) {
        if (!out.empty()) out += ',';
        out += s;
    }
    return out;
}

std::vector<IntersectionRow> intersection_report(const ConceptVocabulary& v) {
    if (v.size() == 0) throw std::invalid_argument("empty vocabulary");
    std::map<std::set<std::string>, std::size_t> counts;
    for (const auto& id : v.ids()) ++counts[v.membership(id)];

    std::vector<IntersectionRow> rows;
    rows.reserve(counts.size());
    for (const auto& [member, count] : counts) {
        IntersectionRow row;
        for (const auto& src : v.sources()) {
            if (member.count(src)) row.sources.push_back(src);
        }
        row.count = count;
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const IntersectionRow& a, const IntersectionRow& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.label() < b.label();
    });
    return rows;
}

}  // namespace conceptvec
