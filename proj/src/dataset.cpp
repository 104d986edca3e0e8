#include "mthfl/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mthfl/errors.hpp"
#include "mthfl/rng.hpp"

namespace mthfl {

void Dataset::check() const {
    if (n < 1 || d < 1 || k < 2) throw FormatError("dataset: need n >= 1, d >= 1, k >= 2");
    if (features.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(d)) throw FormatError("dataset: feature size mismatch");
    if (labels.size() != static_cast<std::size_t>(n)) throw FormatError("dataset: label size mismatch");
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int y : labels) {
        if (y < 0 || y >= k) throw LabelRangeError("dataset: label " + std::to_string(y) + " outside [0, " + std::to_string(k) + ")");
        ++counts[static_cast<std::size_t>(y)];
    }
    for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0) throw FormatError("dataset: class " + std::to_string(c) + " absent");
    }
    for (double v : features) {
        if (!std::isfinite(v)) throw FormatError("dataset: non-finite feature value");
    }
}

namespace {

// Fixed unit direction for class c: canonical axis e_c while c < d, a
// pseudo-random unit vector (fixed per class, independent of the user seed)
// beyond that.
std::vector<double> class_direction(int c, int d) {
    std::vector<double> u(static_cast<std::size_t>(d), 0.0);
    if (c < d) {
        u[static_cast<std::size_t>(c)] = 1.0;
        return u;
    }
    Rng rng(0xd1c5a55ULL + static_cast<std::uint64_t>(c));
    double norm2 = 0.0;
    for (int j = 0; j < d; ++j) {
        u[static_cast<std::size_t>(j)] = rng.normal();
        norm2 += u[static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(j)];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : u) v *= inv;
    return u;
}

}  // namespace

Dataset generate_synthetic(std::uint64_t seed, int n, int d, int k, double class_sep) {
    if (class_sep < 0.0) throw ConfigError("generate_synthetic: class_sep must be >= 0");
    if (k < 2 || d < 1) throw ConfigError("generate_synthetic: need k >= 2 and d >= 1");
    if (n < k) throw ConfigError("generate_synthetic: n < k leaves some class empty");

    Dataset ds;
    ds.n = n;
    ds.d = d;
    ds.k = k;
    ds.features.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    ds.labels.resize(static_cast<std::size_t>(n));

    // Balanced labels: the first n % k classes get one extra sample.
    std::vector<int> order(static_cast<std::size_t>(n));
    {
        int i = 0;
        for (int c = 0; c < k; ++c) {
            const int cnt = n / k + (c < n % k ? 1 : 0);
            for (int j = 0; j < cnt; ++j) order[static_cast<std::size_t>(i++)] = c;
        }
    }
    Rng rng = substream(seed, Stream::DataGen);
    rng.shuffle(order);

    std::vector<std::vector<double>> dirs;
    dirs.reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) dirs.push_back(class_direction(c, d));

    for (int i = 0; i < n; ++i) {
        const int c = order[static_cast<std::size_t>(i)];
        ds.labels[static_cast<std::size_t>(i)] = c;
        double* row = ds.features.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(d);
        const std::vector<double>& u = dirs[static_cast<std::size_t>(c)];
        for (int j = 0; j < d; ++j) row[j] = class_sep * u[static_cast<std::size_t>(j)] + rng.normal();
    }
    ds.check();
    return ds;
}

std::vector<Shard> partition_dirichlet(const Dataset& ds, int num_clients, double alpha, int min_size, std::uint64_t seed) {
    if (alpha <= 0.0) throw ConfigError("partition_dirichlet: alpha must be > 0");
    if (num_clients < 1) throw ConfigError("partition_dirichlet: num_clients must be >= 1");
    if (min_size < 1) throw ConfigError("partition_dirichlet: min_size must be >= 1");
    if (static_cast<long long>(min_size) * num_clients > ds.n) {
        throw PartitionError("partition_dirichlet: min_size * num_clients exceeds dataset size");
    }

    std::vector<std::vector<int>> by_class(static_cast<std::size_t>(ds.k));
    for (int i = 0; i < ds.n; ++i) by_class[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(i)])].push_back(i);

    Rng rng = substream(seed, Stream::Partition);
    constexpr int kMaxRetries = 100;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        std::vector<std::vector<int>> assigned(static_cast<std::size_t>(num_clients));
        for (int c = 0; c < ds.k; ++c) {
            const std::vector<int>& rows = by_class[static_cast<std::size_t>(c)];
            std::vector<double> w(static_cast<std::size_t>(num_clients));
            double total = 0.0;
            for (double& v : w) {
                v = rng.gamma(alpha);
                total += v;
            }
            // Split the class's rows at the cumulative-proportion boundaries.
            const int m = static_cast<int>(rows.size());
            double cum = 0.0;
            int start = 0;
            for (int i = 0; i < num_clients; ++i) {
                cum += w[static_cast<std::size_t>(i)];
                const int end = (i == num_clients - 1) ? m : static_cast<int>(std::llround(cum / total * m));
                for (int r = start; r < std::max(start, std::min(end, m)); ++r) {
                    assigned[static_cast<std::size_t>(i)].push_back(rows[static_cast<std::size_t>(r)]);
                }
                start = std::max(start, std::min(end, m));
            }
        }
        const bool ok = std::all_of(assigned.begin(), assigned.end(),
                                    [&](const std::vector<int>& v) { return static_cast<int>(v.size()) >= min_size; });
        if (!ok) continue;
        std::vector<Shard> shards(static_cast<std::size_t>(num_clients));
        for (int i = 0; i < num_clients; ++i) {
            shards[static_cast<std::size_t>(i)].client_id = i;
            std::sort(assigned[static_cast<std::size_t>(i)].begin(), assigned[static_cast<std::size_t>(i)].end());
            shards[static_cast<std::size_t>(i)].indices = std::move(assigned[static_cast<std::size_t>(i)]);
        }
        return shards;
    }
    throw PartitionError("partition_dirichlet: could not reach min_size=" + std::to_string(min_size) + " for " +
                         std::to_string(num_clients) + " clients after " + std::to_string(kMaxRetries) +
                         " draws (alpha=" + std::to_string(alpha) + "); the config is infeasible");
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_real(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw FormatError(where + ": bad real value '" + s + "'");
    }
}

int parse_int(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw FormatError(where + ": bad integer '" + s + "'");
    }
}

}  // namespace

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ":1: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_commas(line);
    if (header.size() != 4 || header[0] != "d" || header[2] != "k") {
        throw FormatError(path + ":1: bad header, expected d,<d>,k,<k>");
    }
    const int d = parse_int(header[1], path + ":1");
    const int k = parse_int(header[3], path + ":1");
    if (d < 1 || k < 2) throw FormatError(path + ":1: need d >= 1 and k >= 2");

    Dataset ds;
    ds.d = d;
    ds.k = k;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        const std::vector<std::string> fields = split_commas(line);
        if (static_cast<int>(fields.size()) != d + 1) {
            throw FormatError(where + ": expected " + std::to_string(d) + " features and one label, got " + std::to_string(fields.size()) +
                              " fields");
        }
        for (int j = 0; j < d; ++j) ds.features.push_back(parse_real(fields[static_cast<std::size_t>(j)], where));
        const int y = parse_int(fields[static_cast<std::size_t>(d)], where);
        if (y < 0 || y >= k) throw LabelRangeError(where + ": label " + std::to_string(y) + " outside [0, " + std::to_string(k) + ")");
        ds.labels.push_back(y);
    }
    ds.n = static_cast<int>(ds.labels.size());
    ds.check();
    return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) {
    ds.check();
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw IoError("cannot write dataset file: " + path);
    out << "d," << ds.d << ",k," << ds.k << "\n";
    char buf[64];
    for (int i = 0; i < ds.n; ++i) {
        const double* row = ds.row(i);
        for (int j = 0; j < ds.d; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
            out << buf << ',';
        }
        out << ds.labels[static_cast<std::size_t>(i)] << "\n";
    }
    if (!out) throw IoError("failed writing dataset file: " + path);
}

double label_skew_metric(const Dataset& ds, const std::vector<Shard>& shards) {
    std::vector<double> class_total(static_cast<std::size_t>(ds.k), 0.0);
    std::vector<std::vector<double>> counts(shards.size(), std::vector<double>(static_cast<std::size_t>(ds.k), 0.0));
    for (std::size_t s = 0; s < shards.size(); ++s) {
        for (int idx : shards[s].indices) {
            const int y = ds.labels[static_cast<std::size_t>(idx)];
            counts[s][static_cast<std::size_t>(y)] += 1.0;
            class_total[static_cast<std::size_t>(y)] += 1.0;
        }
    }
    double acc = 0.0;
    int used = 0;
    for (int c = 0; c < ds.k; ++c) {
        if (class_total[static_cast<std::size_t>(c)] == 0.0) continue;
        double mx = 0.0;
        for (std::size_t s = 0; s < shards.size(); ++s) mx = std::max(mx, counts[s][static_cast<std::size_t>(c)]);
        acc += mx / class_total[static_cast<std::size_t>(c)];
        ++used;
    }
    return used > 0 ? acc / used : 0.0;
}

}  // namespace mthfl
