#include "conceptvec/embedding.hpp"

#include <stdexcept>

namespace conceptvec {

void EmbeddingSet::validate() const {
    if (static_cast<std::size_t>(vectors.rows()) != ids.size()) {
        throw std::logic_error("embedding row count does not match id count");
    }
    if (!vectors.allFinite()) {
        throw std::logic_error("embedding contains NaN or Inf entries");
    }
}

}  // namespace conceptvec
