#include "conceptvec/embed.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "conceptvec/tsv.hpp"

namespace conceptvec {

EmbeddingStore::EmbeddingStore(EmbeddingSet set) : set_(std::move(set)) {
    set_.validate();
    norms_.resize(set_.size());
    for (std::size_t i = 0; i < set_.size(); ++i) {
        norms_[i] = set_.vectors.row(static_cast<Eigen::Index>(i)).norm();
        auto [it, inserted] = rows_.try_emplace(set_.ids[i], i);
        if (!inserted) throw std::invalid_argument("duplicate concept id: " + set_.ids[i]);
    }
}

bool EmbeddingStore::usable(const std::string& id) const {
    auto it = rows_.find(id);
    return it != rows_.end() && norms_[it->second] > 0.0;
}

std::size_t EmbeddingStore::row_of(const std::string& id) const {
    auto it = rows_.find(id);
    if (it == rows_.end()) throw std::out_of_range("no embedding for concept: " + id);
    return it->second;
}

std::vector<std::string> EmbeddingStore::degenerate_ids() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < set_.size(); ++i) {
        if (norms_[i] == 0.0) out.push_back(set_.ids[i]);
    }
    return out;
}

double EmbeddingStore::cosine_rows(std::size_t i, std::size_t j) const {
    if (norms_[i] == 0.0 || norms_[j] == 0.0) {
        throw std::domain_error("cosine undefined for zero-norm vector (" +
                                set_.ids[norms_[i] == 0.0 ? i : j] + ")");
    }
    const double dot = set_.vectors.row(static_cast<Eigen::Index>(i))
                           .dot(set_.vectors.row(static_cast<Eigen::Index>(j)));
    return dot / (norms_[i] * norms_[j]);
}

double EmbeddingStore::cosine(const std::string& a, const std::string& b) const {
    return cosine_rows(row_of(a), row_of(b));
}

std::vector<EmbeddingStore::Neighbor> EmbeddingStore::nearest_neighbors(const std::string& q,
                                                                        std::size_t k) const {
    const std::size_t qrow = row_of(q);
    if (norms_[qrow] == 0.0) throw std::domain_error("cosine undefined for zero-norm vector (" + q + ")");
    if (k > size() - 1) throw std::invalid_argument("k exceeds number of other concepts");

    std::vector<Neighbor> all;
    all.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        if (i == qrow || norms_[i] == 0.0) continue;
        all.push_back({set_.ids[i], cosine_rows(qrow, i)});
    }
    const std::size_t take = std::min(k, all.size());
    auto better = [](const Neighbor& a, const Neighbor& b) {
        if (a.cosine != b.cosine) return a.cosine > b.cosine;
        return a.id < b.id;
    };
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                      better);
    all.resize(take);
    return all;
}

void EmbeddingStore::save(const std::string& path) const {
    std::ostringstream out;
    out << size() << ' ' << dim() << '\n';
    for (std::size_t i = 0; i < size(); ++i) {
        out << set_.ids[i];
        for (std::size_t k = 0; k < dim(); ++k) {
            out << ' '
                << format_real(set_.vectors(static_cast<Eigen::Index>(i),
                                            static_cast<Eigen::Index>(k)));
        }
        out << '\n';
    }
    write_file(path, out.str());
}

EmbeddingStore EmbeddingStore::load(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.empty() || lines[0].empty()) throw ParseError(path + ":1: missing header");
    auto header = split_whitespace(lines[0]);
    if (header.size() != 2) parse_fail(path, 1, "header must be 'n d'");
    const std::int64_t n = parse_int(header[0], path, 1);
    const std::int64_t d = parse_int(header[1], path, 1);
    if (n < 0 || d < 1) parse_fail(path, 1, "invalid dimensions in header");

    EmbeddingSet set;
    set.vectors.resize(n, d);
    std::size_t row = 0;
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        auto fields = split_whitespace(lines[ln]);
        if (static_cast<std::int64_t>(fields.size()) != d + 1) {
            parse_fail(path, ln + 1,
                       "expected concept id and " + std::to_string(d) + " values, got " +
                           std::to_string(fields.size()) + " fields");
        }
        if (row >= static_cast<std::size_t>(n)) {
            parse_fail(path, ln + 1, "more rows than the header declares");
        }
        for (std::int64_t k = 0; k < d; ++k) {
            set.vectors(static_cast<Eigen::Index>(row), k) =
                parse_real(fields[static_cast<std::size_t>(k + 1)], path, ln + 1);
        }
        set.ids.push_back(fields[0]);
        ++row;
    }
    if (row != static_cast<std::size_t>(n)) {
        throw ParseError(path + ": header declares " + std::to_string(n) + " rows, found " +
                         std::to_string(row));
    }
    try {
        return EmbeddingStore(std::move(set));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace conceptvec
