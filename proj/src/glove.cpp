#include "conceptvec/glove.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "conceptvec/rng.hpp"
#include "conceptvec/tsv.hpp"

namespace conceptvec {

namespace {

struct DirectedPair {
    std::uint32_t word, ctx;
    double y;
};

// Each stored symmetric cell trains both orientations once per epoch.
std::vector<DirectedPair> directed_pairs(const CoocMatrix& m) {
    std::vector<DirectedPair> pairs;
    pairs.reserve(m.cell_count() * 2);
    for (const auto& cell : m.sorted_cells()) {
        const double y = static_cast<double>(cell.count);
        pairs.push_back({cell.i, cell.j, y});
        pairs.push_back({cell.j, cell.i, y});
    }
    return pairs;
}

double evaluate_loss(const GloveModel& model, const std::vector<DirectedPair>& pairs,
                     const GloveConfig& cfg) {
    double total = 0.0;
    const std::size_t d = model.dim;
    for (const auto& p : pairs) {
        const double* w = model.word_vec.data() + p.word * d;
        const double* c = model.ctx_vec.data() + p.ctx * d;
        double dot = 0.0;
        for (std::size_t k = 0; k < d; ++k) dot += w[k] * c[k];
        const double r = dot + model.word_bias[p.word] + model.ctx_bias[p.ctx] - std::log(p.y);
        total += glove_weight(p.y, cfg) * r * r;
    }
    return total;
}

void train_range(GloveModel& model, const std::vector<DirectedPair>& pairs, std::size_t begin,
                 std::size_t end, const GloveConfig& cfg, std::size_t epoch) {
    const std::size_t d = model.dim;
    const double lr = cfg.learning_rate;
    for (std::size_t idx = begin; idx < end; ++idx) {
        const auto& p = pairs[idx];
        double* w = model.word_vec.data() + p.word * d;
        double* c = model.ctx_vec.data() + p.ctx * d;
        double* wg = model.word_vec_gsq.data() + p.word * d;
        double* cg = model.ctx_vec_gsq.data() + p.ctx * d;

        double dot = 0.0;
        for (std::size_t k = 0; k < d; ++k) dot += w[k] * c[k];
        const double residual =
            dot + model.word_bias[p.word] + model.ctx_bias[p.ctx] - std::log(p.y);
        if (!std::isfinite(residual)) {
            throw std::runtime_error("non-finite residual at epoch " + std::to_string(epoch) +
                                     ", cell (" + std::to_string(p.word) + ", " +
                                     std::to_string(p.ctx) + ")");
        }
        const double coeff = 2.0 * glove_weight(p.y, cfg) * residual;

        for (std::size_t k = 0; k < d; ++k) {
            const double gw = coeff * c[k];
            const double gc = coeff * w[k];
            w[k] -= lr * gw / std::sqrt(wg[k]);
            c[k] -= lr * gc / std::sqrt(cg[k]);
            wg[k] += gw * gw;
            cg[k] += gc * gc;
        }
        model.word_bias[p.word] -= lr * coeff / std::sqrt(model.word_bias_gsq[p.word]);
        model.ctx_bias[p.ctx] -= lr * coeff / std::sqrt(model.ctx_bias_gsq[p.ctx]);
        model.word_bias_gsq[p.word] += coeff * coeff;
        model.ctx_bias_gsq[p.ctx] += coeff * coeff;
    }
}

std::string glove_config_digest(const GloveConfig& cfg) {
    std::string canonical = "method=glove;d=" + std::to_string(cfg.dim) +
                            ";y_max=" + format_real(cfg.y_max) +
                            ";weight_alpha=" + format_real(cfg.weight_alpha) +
                            ";learning_rate=" + format_real(cfg.learning_rate) +
                            ";epochs=" + std::to_string(cfg.epochs) +
                            ";seed=" + std::to_string(cfg.seed);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical)));
    return std::string(buf, 16);
}

}  // namespace

void GloveConfig::validate() const {
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (!(y_max > 0.0)) throw std::invalid_argument("y_max must be positive");
    if (!(weight_alpha > 0.0) || weight_alpha > 1.0) {
        throw std::invalid_argument("weight_alpha must be in (0, 1]");
    }
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

double glove_weight(double y, const GloveConfig& cfg) {
    if (!(y > 0.0)) throw std::invalid_argument("weight requires y > 0, got " + format_real(y));
    if (y >= cfg.y_max) return 1.0;
    return std::pow(y / cfg.y_max, cfg.weight_alpha);
}

GloveModel GloveModel::init(std::size_t n, const GloveConfig& cfg) {
    cfg.validate();
    GloveModel m;
    m.n = n;
    m.dim = cfg.dim;
    m.word_vec.resize(n * cfg.dim);
    m.ctx_vec.resize(n * cfg.dim);
    m.word_bias.resize(n);
    m.ctx_bias.resize(n);
    m.word_vec_gsq.assign(n * cfg.dim, 1.0);
    m.ctx_vec_gsq.assign(n * cfg.dim, 1.0);
    m.word_bias_gsq.assign(n, 1.0);
    m.ctx_bias_gsq.assign(n, 1.0);

    const double half = 0.5 / static_cast<double>(cfg.dim);
    std::mt19937_64 rng = substream(cfg.seed, "glove-init");
    std::uniform_real_distribution<double> uniform(-half, half);
    for (double& v : m.word_vec) v = uniform(rng);
    for (double& v : m.ctx_vec) v = uniform(rng);
    for (double& v : m.word_bias) v = uniform(rng);
    for (double& v : m.ctx_bias) v = uniform(rng);
    return m;
}

CellGradient cell_loss_and_gradient(const GloveModel& model, std::size_t i, std::size_t j,
                                    double y, const GloveConfig& cfg) {
    if (i >= model.n || j >= model.n) throw std::out_of_range("cell index out of range");
    const std::size_t d = model.dim;
    const double* w = model.word_vec.data() + i * d;
    const double* c = model.ctx_vec.data() + j * d;
    double dot = 0.0;
    for (std::size_t k = 0; k < d; ++k) dot += w[k] * c[k];
    const double f = glove_weight(y, cfg);
    const double residual = dot + model.word_bias[i] + model.ctx_bias[j] - std::log(y);

    CellGradient g;
    g.loss = f * residual * residual;
    g.grad_word.resize(d);
    g.grad_ctx.resize(d);
    const double coeff = 2.0 * f * residual;
    for (std::size_t k = 0; k < d; ++k) {
        g.grad_word[k] = coeff * c[k];
        g.grad_ctx[k] = coeff * w[k];
    }
    g.grad_word_bias = coeff;
    g.grad_ctx_bias = coeff;
    return g;
}

GloveTrainResult glove_train(const CoocMatrix& m, const ConceptVocabulary& vocab,
                             const GloveConfig& cfg) {
    cfg.validate();
    if (vocab.size() != m.size()) throw std::invalid_argument("vocabulary size mismatch");
    if (m.cell_count() == 0) throw std::invalid_argument("empty co-occurrence matrix");

    std::vector<DirectedPair> pairs = directed_pairs(m);
    GloveModel model = GloveModel::init(m.size(), cfg);
    std::mt19937_64 shuffle_rng = substream(cfg.seed, "glove-shuffle");

    GloveTrainResult result;
    result.epoch_loss.reserve(cfg.epochs + 1);
    result.epoch_loss.push_back(evaluate_loss(model, pairs, cfg));

    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::shuffle(pairs.begin(), pairs.end(), shuffle_rng);
        if (cfg.threads <= 1) {
            train_range(model, pairs, 0, pairs.size(), cfg, epoch);
        } else {
            // Lock-free concurrent updates; lost updates are tolerated.
            const std::size_t chunk = (pairs.size() + cfg.threads - 1) / cfg.threads;
            std::vector<std::thread> workers;
            std::vector<std::exception_ptr> errors(cfg.threads);
            for (unsigned t = 0; t < cfg.threads; ++t) {
                const std::size_t begin = std::min(pairs.size(), t * chunk);
                const std::size_t end = std::min(pairs.size(), begin + chunk);
                workers.emplace_back([&, t, begin, end] {
                    try {
                        train_range(model, pairs, begin, end, cfg, epoch);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
            for (auto& w : workers) w.join();
            for (auto& e : errors) {
                if (e) std::rethrow_exception(e);
            }
        }
        result.epoch_loss.push_back(evaluate_loss(model, pairs, cfg));
    }

    EmbeddingSet set;
    set.ids = vocab.ids();
    set.vectors.resize(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(cfg.dim));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t k = 0; k < cfg.dim; ++k) {
            set.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                model.word_vec[i * cfg.dim + k] + model.ctx_vec[i * cfg.dim + k];
        }
    }
    set.provenance = {"glove", glove_config_digest(cfg), cfg.seed};
    set.validate();
    result.embeddings = std::move(set);
    return result;
}

}  // namespace conceptvec
