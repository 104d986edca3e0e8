#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mthfl {

// Network tiers, ordered bottom-up. UAV relays and terrestrial base
// stations both map to LocalAggregator; satellite and central cloud are
// collapsed into the single GlobalServer.
enum class Tier : int {
    EdgeDevice = 0,
    LocalAggregator = 1,
    RegionalServer = 2,
    GlobalServer = 3,
};

const char* tier_name(Tier t);

struct Position {
    double x = 0.0;  // m
    double y = 0.0;  // m
    double alt = 0.0;  // m above ground
};

struct Node {
    int id = -1;
    Tier tier = Tier::EdgeDevice;
    Position position;
    double compute_rate = 0.0;  // samples/s, meaningful for EdgeDevice only
    std::optional<int> parent;
};

// Tree rooted at the unique GlobalServer. Node ids are dense from 0:
// global server first, then regional servers, local aggregators, and
// clients last, so ascending-id iteration is top-down and ascending client
// ids match selection order.
struct Topology {
    std::vector<Node> nodes;
    std::map<int, std::vector<int>> children;  // parent id -> child ids, ascending

    const Node& node(int id) const { return nodes.at(static_cast<std::size_t>(id)); }
    std::vector<int> tier_ids(Tier t) const;
    std::vector<int> client_ids() const { return tier_ids(Tier::EdgeDevice); }
    // Tier whose nodes serve the clients (the lowest populated aggregator tier).
    Tier serving_tier() const;
    // Total clients in the subtree rooted at id.
    int clients_under(int id) const;
};

struct TopologyConfig {
    int clients = 0;
    int locals = 0;
    int regionals = 0;
    int globals = 1;
    double area_width_m = 0.0;
    double area_height_m = 0.0;
    double coverage_radius_m = 0.0;
    double local_altitude_m = 30.0;
    double regional_altitude_m = 25000.0;
    double global_altitude_m = 600000.0;
    double compute_rate = 100.0;  // samples/s per client
    std::uint64_t seed = 0;
};

// Euclidean distance in 3D, meters.
double slant_distance(const Node& a, const Node& b);

// Build and validate a tiered topology. Clients are placed uniformly at
// random over the area and attached to the nearest covering aggregator of
// the serving tier (ties broken by lower aggregator id). Throws ConfigError
// for unusable counts and CoverageError listing any unserved clients.
Topology build_topology(const TopologyConfig& config);

// Structural invariant check; empty result means the topology is valid.
std::vector<std::string> validate(const Topology& t);

}  // namespace mthfl
