#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mthfl {

// Labeled feature vectors, row-major. Invariants: n >= 1, d >= 1, k >= 2,
// every label in [0, k), every class present at least once.
struct Dataset {
    int n = 0;
    int d = 0;
    int k = 0;
    std::vector<double> features;  // n * d
    std::vector<int> labels;       // n

    const double* row(int i) const { return features.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(d); }
    void check() const;  // throws FormatError on invariant violations
};

// Per-client index partition. Indices are strictly increasing rows of the
// dataset the shard was built from.
struct Shard {
    int client_id = -1;
    std::vector<int> indices;
};

// Gaussian-mixture classification set: class c has mean class_sep * u_c
// (u_c the c-th canonical axis while c < d, a fixed pseudo-random unit
// direction beyond that) and identity covariance. Classes are balanced
// within one sample and rows are shuffled deterministically by seed.
Dataset generate_synthetic(std::uint64_t seed, int n, int d, int k, double class_sep);

// Dirichlet(alpha) label-skew partition over num_clients. Per class, the
// class's rows are split by proportions drawn from Dirichlet(alpha, ...);
// the whole draw is retried (bounded) until every shard has at least
// min_size rows. Shards are pairwise disjoint and jointly cover all rows.
// client_id fields are filled with 0..num_clients-1.
std::vector<Shard> partition_dirichlet(const Dataset& ds, int num_clients, double alpha, int min_size, std::uint64_t seed);

// Dataset CSV: line 1 "d,<d>,k,<k>", then one row per sample of d reals and
// one integer label. UTF-8, LF endings.
Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& ds, const std::string& path);

// Mean over classes of the max-over-clients share of that class: 1/C when
// perfectly balanced, 1.0 when every class lives on a single client.
double label_skew_metric(const Dataset& ds, const std::vector<Shard>& shards);

}  // namespace mthfl
