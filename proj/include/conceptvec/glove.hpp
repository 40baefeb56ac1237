#pragma once

#include <cstdint>
#include <vector>

#include "conceptvec/cooc.hpp"
#include "conceptvec/embedding.hpp"

namespace conceptvec {

struct GloveConfig {
    std::size_t dim = 100;
    double y_max = 100.0;
    double weight_alpha = 0.75;
    double learning_rate = 0.05;
    std::size_t epochs = 25;  // 0 leaves the model at its initialization
    std::uint64_t seed = 0;
    unsigned threads = 1;  // 1 = deterministic; >1 = lock-free concurrent updates

    void validate() const;
};

/// Weighting function for one cell: (y / y_max)^alpha below y_max, else 1.
/// y must be positive.
double glove_weight(double y, const GloveConfig& cfg);

/// Word/context vectors and biases plus per-parameter accumulated squared
/// gradients (initialized to 1).
struct GloveModel {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<double> word_vec, ctx_vec;    // n * dim, row-major
    std::vector<double> word_bias, ctx_bias;  // n
    std::vector<double> word_vec_gsq, ctx_vec_gsq, word_bias_gsq, ctx_bias_gsq;

    /// Uniform initialization in [-0.5/dim, 0.5/dim], seeded.
    static GloveModel init(std::size_t n, const GloveConfig& cfg);
};

struct CellGradient {
    double loss = 0.0;
    std::vector<double> grad_word, grad_ctx;  // d(loss)/d(word_vec[i]), d/d(ctx_vec[j])
    double grad_word_bias = 0.0, grad_ctx_bias = 0.0;
};

/// Loss f(y) * (w_i . c_j + b_i + b_j - ln y)^2 and its exact partial
/// derivatives at the model's current parameters.
CellGradient cell_loss_and_gradient(const GloveModel& model, std::size_t i, std::size_t j,
                                    double y, const GloveConfig& cfg);

struct GloveTrainResult {
    EmbeddingSet embeddings;        // word + context vectors, biases dropped
    std::vector<double> epoch_loss; // [0] pre-training; [e] after epoch e
};

/// Adagrad training over all stored cells, each presented in both
/// orientations once per epoch in seeded-shuffled order. Throws on
/// non-finite values, naming the epoch and cell.
GloveTrainResult glove_train(const CoocMatrix& m, const ConceptVocabulary& vocab,
                             const GloveConfig& cfg);

}  // namespace conceptvec
