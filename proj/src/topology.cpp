#include "mthfl/topology.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mthfl/errors.hpp"
#include "mthfl/rng.hpp"

namespace mthfl {

const char* tier_name(Tier t) {
    switch (t) {
        case Tier::EdgeDevice:
            return "EdgeDevice";
        case Tier::LocalAggregator:
            return "LocalAggregator";
        case Tier::RegionalServer:
            return "RegionalServer";
        case Tier::GlobalServer:
            return "GlobalServer";
    }
    return "?";
}

double slant_distance(const Node& a, const Node& b) {
    const double dx = a.position.x - b.position.x;
    const double dy = a.position.y - b.position.y;
    const double dz = a.position.alt - b.position.alt;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::vector<int> Topology::tier_ids(Tier t) const {
    std::vector<int> out;
    for (const auto& n : nodes) {
        if (n.tier == t) out.push_back(n.id);
    }
    return out;
}

Tier Topology::serving_tier() const {
    for (Tier t : {Tier::LocalAggregator, Tier::RegionalServer, Tier::GlobalServer}) {
        if (!tier_ids(t).empty()) return t;
    }
    return Tier::GlobalServer;
}

int Topology::clients_under(int id) const {
    const Node& n = node(id);
    if (n.tier == Tier::EdgeDevice) return 1;
    int total = 0;
    auto it = children.find(id);
    if (it == children.end()) return 0;
    for (int c : it->second) total += clients_under(c);
    return total;
}

namespace {

// Deterministic grid of m cell centers over the area.
std::vector<Position> grid_positions(int m, double w, double h, double alt) {
    std::vector<Position> out;
    if (m <= 0) return out;
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m))));
    const int rows = (m + cols - 1) / cols;
    for (int i = 0; i < m; ++i) {
        const int cx = i % cols;
        const int cy = i / cols;
        out.push_back({(cx + 0.5) * w / cols, (cy + 0.5) * h / rows, alt});
    }
    return out;
}

double horizontal_distance(const Position& a, const Position& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

Topology build_topology(const TopologyConfig& config) {
    if (config.globals != 1) throw ConfigError("topology: exactly one global server is supported");
    if (config.clients < 1) throw ConfigError("topology: at least one client is required");
    if (config.locals < 0 || config.regionals < 0) throw ConfigError("topology: negative tier count");
    if (config.area_width_m <= 0.0 || config.area_height_m <= 0.0) throw ConfigError("topology: placement area must be positive");
    if (config.coverage_radius_m <= 0.0) throw ConfigError("topology: coverage radius must be positive");
    if (config.compute_rate <= 0.0) throw ConfigError("topology: client compute_rate must be positive");

    Topology t;
    const double cw = config.area_width_m;
    const double ch = config.area_height_m;

    // Global server at the area center.
    Node global;
    global.id = 0;
    global.tier = Tier::GlobalServer;
    global.position = {cw / 2.0, ch / 2.0, config.global_altitude_m};
    t.nodes.push_back(global);

    auto add_tier = [&](Tier tier, int count, double alt) {
        for (const Position& p : grid_positions(count, cw, ch, alt)) {
            Node n;
            n.id = static_cast<int>(t.nodes.size());
            n.tier = tier;
            n.position = p;
            t.nodes.push_back(n);
        }
    };
    add_tier(Tier::RegionalServer, config.regionals, config.regional_altitude_m);
    add_tier(Tier::LocalAggregator, config.locals, config.local_altitude_m);

    // Attach each aggregator to the nearest node of the next populated tier above.
    auto attach_up = [&](Tier from, Tier candidate_a, Tier candidate_b) {
        std::vector<int> uppers = t.tier_ids(candidate_a);
        if (uppers.empty()) uppers = t.tier_ids(candidate_b);
        for (auto& n : t.nodes) {
            if (n.tier != from) continue;
            int best = -1;
            double best_d = 0.0;
            for (int u : uppers) {
                const double d = slant_distance(n, t.node(u));
                if (best < 0 || d < best_d) {
                    best = u;
                    best_d = d;
                }
            }
            n.parent = best;
        }
    };
    attach_up(Tier::RegionalServer, Tier::GlobalServer, Tier::GlobalServer);
    attach_up(Tier::LocalAggregator, Tier::RegionalServer, Tier::GlobalServer);

    // Clients: uniform placement, nearest covering serving-tier aggregator.
    std::vector<int> serving;
    if (config.locals > 0) {
        serving = t.tier_ids(Tier::LocalAggregator);
    } else if (config.regionals > 0) {
        serving = t.tier_ids(Tier::RegionalServer);
    } else {
        serving = t.tier_ids(Tier::GlobalServer);
    }

    Rng rng = substream(config.seed, Stream::Topology);
    std::vector<int> uncovered;
    for (int i = 0; i < config.clients; ++i) {
        Node n;
        n.id = static_cast<int>(t.nodes.size());
        n.tier = Tier::EdgeDevice;
        n.position = {rng.uniform(0.0, cw), rng.uniform(0.0, ch), 0.0};
        n.compute_rate = config.compute_rate;
        int best = -1;
        double best_d = 0.0;
        for (int a : serving) {
            const double hd = horizontal_distance(n.position, t.node(a).position);
            if (hd > config.coverage_radius_m) continue;  // footprint test is horizontal
            const double d = slant_distance(n, t.node(a));
            if (best < 0 || d < best_d) {  // strict < keeps the lower id on ties
                best = a;
                best_d = d;
            }
        }
        if (best < 0) {
            uncovered.push_back(n.id);
        } else {
            n.parent = best;
        }
        t.nodes.push_back(n);
    }
    if (!uncovered.empty()) {
        std::ostringstream msg;
        msg << "topology: " << uncovered.size() << " client(s) covered by no aggregator:";
        const std::size_t shown = std::min<std::size_t>(uncovered.size(), 20);
        for (std::size_t i = 0; i < shown; ++i) msg << ' ' << uncovered[i];
        if (uncovered.size() > shown) msg << " ...";
        throw CoverageError(msg.str());
    }

    for (const auto& n : t.nodes) {
        if (n.parent) t.children[*n.parent].push_back(n.id);
    }
    for (auto& [p, kids] : t.children) std::sort(kids.begin(), kids.end());

    // Terrestrial base stations must each serve < 100 clients.
    if (config.locals > 0) {
        for (int a : t.tier_ids(Tier::LocalAggregator)) {
            const int served = t.clients_under(a);
            if (served >= 100) {
                throw ConfigError("topology: local aggregator " + std::to_string(a) + " serves " + std::to_string(served) +
                                  " clients (limit is 99); add aggregators or shrink the area");
            }
        }
    }
    return t;
}

std::vector<std::string> validate(const Topology& t) {
    std::vector<std::string> out;
    const auto violation = [&](const std::string& s) { out.push_back(s); };

    // Dense unique ids.
    std::set<int> ids;
    for (const auto& n : t.nodes) ids.insert(n.id);
    if (ids.size() != t.nodes.size() || (!t.nodes.empty() && (*ids.begin() != 0 || *ids.rbegin() != static_cast<int>(t.nodes.size()) - 1))) {
        violation("node ids are not dense from 0");
    }

    const std::vector<int> globals = t.tier_ids(Tier::GlobalServer);
    if (globals.size() != 1) {
        violation("expected exactly one GlobalServer, found " + std::to_string(globals.size()));
    }

    // Populated tiers, for the parent-is-next-tier-above rule. A tier with
    // no nodes is skipped: e.g. clients may sit directly under a HAPS
    // regional server when no terrestrial aggregators exist.
    std::vector<Tier> populated;
    for (Tier tier : {Tier::EdgeDevice, Tier::LocalAggregator, Tier::RegionalServer, Tier::GlobalServer}) {
        if (!t.tier_ids(tier).empty()) populated.push_back(tier);
    }
    auto next_populated_above = [&](Tier tier) -> std::optional<Tier> {
        for (Tier p : populated) {
            if (static_cast<int>(p) > static_cast<int>(tier)) return p;
        }
        return std::nullopt;
    };

    for (const auto& n : t.nodes) {
        if (n.tier == Tier::GlobalServer) {
            if (n.parent) violation("GlobalServer node " + std::to_string(n.id) + " has a parent");
            continue;
        }
        if (!n.parent) {
            violation("node " + std::to_string(n.id) + " has no parent");
            continue;
        }
        if (*n.parent < 0 || *n.parent >= static_cast<int>(t.nodes.size())) {
            violation("node " + std::to_string(n.id) + " has an unknown parent id");
            continue;
        }
        const Tier expected = next_populated_above(n.tier).value_or(Tier::GlobalServer);
        const Tier actual = t.node(*n.parent).tier;
        if (actual != expected) {
            violation("node " + std::to_string(n.id) + " (" + tier_name(n.tier) + ") has parent of tier " + tier_name(actual) +
                      ", expected " + tier_name(expected));
        }
        if (n.tier == Tier::EdgeDevice && n.compute_rate <= 0.0) {
            violation("client " + std::to_string(n.id) + " has non-positive compute_rate");
        }
    }

    // Edge devices are leaves; adjacency matches the parent pointers.
    std::map<int, std::vector<int>> expect_children;
    for (const auto& n : t.nodes) {
        if (n.parent) expect_children[*n.parent].push_back(n.id);
    }
    for (auto& [p, kids] : expect_children) std::sort(kids.begin(), kids.end());
    if (expect_children != t.children) violation("children adjacency does not match parent pointers");
    for (const auto& n : t.nodes) {
        if (n.tier == Tier::EdgeDevice && t.children.count(n.id)) {
            violation("client " + std::to_string(n.id) + " has children");
        }
    }
    return out;
}

}  // namespace mthfl
