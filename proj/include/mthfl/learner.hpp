#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mthfl/dataset.hpp"
#include "mthfl/rng.hpp"

namespace mthfl {

// Multinomial logistic regression parameters: row-major d x k weight matrix
// followed by the k biases, flattened to one vector.
struct ModelParams {
    int d = 0;
    int k = 0;
    std::vector<double> values;  // d * k + k

    double weight(int j, int c) const { return values[static_cast<std::size_t>(j * k + c)]; }
    double bias(int c) const { return values[static_cast<std::size_t>(d * k + c)]; }
    std::size_t size() const { return values.size(); }
};

struct TrainSpec {
    double learning_rate = 0.1;
    int local_iterations = 5;
    int batch_size = 20;
};

struct LossGrad {
    double loss = 0.0;
    std::vector<double> grad;
};

struct EvalResult {
    double loss = 0.0;
    double accuracy = 0.0;
};

// Entries i.i.d. uniform in [-scale, scale], deterministic per seed.
ModelParams init_params(int d, int k, std::uint64_t seed, double scale);

// Mean softmax cross-entropy and its gradient over the given dataset rows.
// Log-sum-exp is computed with max subtraction, so the result stays finite
// for any finite inputs.
LossGrad loss_and_grad(const ModelParams& p, const Dataset& ds, std::span<const int> batch);

// spec.local_iterations SGD steps. Each step draws a fresh batch without
// replacement (reshuffled between steps) of min(batch_size, shard size)
// rows. The input params are left untouched.
ModelParams local_train(const ModelParams& p, const Dataset& ds, const std::vector<int>& shard, const TrainSpec& spec, Rng rng);

// Mean loss and argmax accuracy over the whole dataset (ties go to the
// lowest class index). Rows are reduced in fixed-size blocks and the block
// partials are summed in order, so serial and OpenMP runs produce
// bit-identical results for any thread count.
EvalResult evaluate(const ModelParams& p, const Dataset& ds, bool parallel = false);

// Element-wise sum(w_i * m_i) / sum(w_i), accumulated in ascending model
// index order. Throws EmptyAggregateError when the list is empty or no
// weight is positive.
ModelParams weighted_average(const std::vector<ModelParams>& models, const std::vector<double>& weights);

}  // namespace mthfl
