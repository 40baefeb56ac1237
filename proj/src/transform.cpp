#include "conceptvec/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "conceptvec/tsv.hpp"

namespace conceptvec {

namespace {

std::uint64_t cell_key(std::size_t i, std::size_t j) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
}

}  // namespace

void TransformConfig::validate() const {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("alpha must be in (0, 1], got " + format_real(alpha));
    }
    if (!(shift_k >= 1.0)) {
        throw std::invalid_argument("shift_k must be >= 1, got " + format_real(shift_k));
    }
}

std::string to_string(WeightKind kind) {
    switch (kind) {
        case WeightKind::pmi: return "pmi";
        case WeightKind::sppmi: return "sppmi";
        case WeightKind::raw: return "raw";
    }
    throw std::logic_error("unreachable");
}

SparseWeightMatrix::SparseWeightMatrix(std::size_t n, WeightKind kind)
    : n_(n), kind_(kind) {}

double SparseWeightMatrix::value(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("cell index out of range");
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    auto it = cells_.find(cell_key(i, j));
    return it == cells_.end() ? 0.0 : it->second;
}

void SparseWeightMatrix::set(std::size_t i, std::size_t j, double v) {
    if (i >= n_ || j >= n_) throw std::out_of_range("cell index out of range");
    if (i == j) throw std::invalid_argument("diagonal cells are not stored");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite cell value");
    if (kind_ == WeightKind::sppmi && v <= 0.0) {
        throw std::invalid_argument("sppmi cells must be positive");
    }
    if (i > j) std::swap(i, j);
    cells_[cell_key(i, j)] = v;
}

std::vector<SparseWeightMatrix::Cell> SparseWeightMatrix::sorted_cells() const {
    std::vector<Cell> out;
    out.reserve(cells_.size());
    for (const auto& [key, v] : cells_) {
        out.push_back({static_cast<std::uint32_t>(key >> 32),
                       static_cast<std::uint32_t>(key & 0xFFFFFFFFu), v});
    }
    std::sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    return out;
}

void SparseWeightMatrix::save(const std::string& path, const ConceptVocabulary& vocab) const {
    if (vocab.size() != n_) throw std::invalid_argument("vocabulary size mismatch");
    std::vector<std::pair<std::pair<std::string, std::string>, double>> rows;
    rows.reserve(cells_.size());
    for (const auto& [key, v] : cells_) {
        std::string a = vocab.id_of(key >> 32);
        std::string b = vocab.id_of(key & 0xFFFFFFFFu);
        if (b < a) std::swap(a, b);
        rows.push_back({{std::move(a), std::move(b)}, v});
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream out;
    for (const auto& [ids, v] : rows) {
        out << ids.first << '\t' << ids.second << '\t' << format_real(v) << '\n';
    }
    write_file(path, out.str());
}

SparseWeightMatrix SparseWeightMatrix::load(const std::string& path,
                                            const ConceptVocabulary& vocab, WeightKind kind) {
    SparseWeightMatrix m(vocab.size(), kind);
    auto lines = read_lines(path);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        auto fields = split_tabs(lines[ln]);
        if (fields.size() != 3) parse_fail(path, ln + 1, "expected 3 tab-separated fields");
        std::string a(fields[0]), b(fields[1]);
        if (!vocab.contains(a)) parse_fail(path, ln + 1, "unknown concept id: " + a);
        if (!vocab.contains(b)) parse_fail(path, ln + 1, "unknown concept id: " + b);
        if (a == b) parse_fail(path, ln + 1, "diagonal cell: " + a);
        double v = parse_real(fields[2], path, ln + 1);
        std::size_t i = vocab.index_of(a), j = vocab.index_of(b);
        if (m.cells_.count(cell_key(std::min(i, j), std::max(i, j)))) {
            parse_fail(path, ln + 1, "duplicate cell " + a + "/" + b);
        }
        try {
            m.set(i, j, v);
        } catch (const std::invalid_argument& e) {
            parse_fail(path, ln + 1, e.what());
        }
    }
    return m;
}

std::vector<double> smoothed_marginal_distribution(const std::vector<std::int64_t>& row_totals,
                                                   double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    std::vector<double> mass(row_totals.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < row_totals.size(); ++i) {
        if (row_totals[i] < 0) throw std::invalid_argument("negative marginal count");
        if (row_totals[i] > 0) {
            mass[i] = std::pow(static_cast<double>(row_totals[i]), alpha);
            total += mass[i];
        }
    }
    if (total <= 0.0) throw std::invalid_argument("all marginal counts are zero");
    for (double& m : mass) m /= total;
    return mass;
}

SparseWeightMatrix pmi(const CoocMatrix& m, const TransformConfig& cfg) {
    cfg.validate();
    if (m.grand_total() <= 0) throw std::invalid_argument("empty co-occurrence matrix");
    const double log_d = std::log(static_cast<double>(m.grand_total()));
    const std::vector<double> p = smoothed_marginal_distribution(m.row_totals(), cfg.alpha);

    SparseWeightMatrix out(m.size(), WeightKind::pmi);
    for (const auto& cell : m.sorted_cells()) {
        double v = std::log(static_cast<double>(cell.count)) - log_d -
                   std::log(p[cell.i]) - std::log(p[cell.j]);
        out.set(cell.i, cell.j, v);
    }
    return out;
}

SparseWeightMatrix sppmi(const CoocMatrix& m, const TransformConfig& cfg) {
    cfg.validate();
    const double shift = std::log(cfg.shift_k);
    SparseWeightMatrix base = pmi(m, cfg);
    SparseWeightMatrix out(m.size(), WeightKind::sppmi);
    for (const auto& cell : base.sorted_cells()) {
        double v = cell.value - shift;
        if (v > 0.0) out.set(cell.i, cell.j, v);
    }
    return out;
}

SparseWeightMatrix counts_as_weights(const CoocMatrix& m) {
    SparseWeightMatrix out(m.size(), WeightKind::raw);
    for (const auto& cell : m.sorted_cells()) {
        out.set(cell.i, cell.j, static_cast<double>(cell.count));
    }
    return out;
}

}  // namespace conceptvec
