#include "chase/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chase {

void MultiGraph::add_edge(int u, int v) {
    const auto eid = static_cast<std::uint32_t>(edges_.size());
    edges_.emplace_back(u, v);
    adj_[u].push_back({eid, static_cast<std::uint32_t>(v)});
    adj_[v].push_back({eid, static_cast<std::uint32_t>(u)});
}

void MultiGraph::set_raw_degrees(std::vector<int> raw, int parity) {
    raw_degrees_ = std::move(raw);
    parity_bit_ = parity;
}

MultiGraph MultiGraph::match_half_edges(const std::vector<int>& degrees, Rng& rng) {
    long long total = 0;
    for (int d : degrees) {
        if (d < 0) throw std::invalid_argument("negative degree");
        total += d;
    }
    if (total % 2 != 0)
        throw std::invalid_argument("half-edge count is odd; apply the parity fix first");

    MultiGraph g;
    g.n_ = static_cast<int>(degrees.size());
    g.adj_.resize(g.n_ + 1);
    g.raw_degrees_.assign(g.n_ + 1, 0);
    for (int i = 0; i < g.n_; ++i) g.raw_degrees_[i + 1] = degrees[i];

    std::vector<int> stubs;
    stubs.reserve(total);
    for (int i = 0; i < g.n_; ++i)
        for (int c = 0; c < degrees[i]; ++c) stubs.push_back(i + 1);
    // a uniform shuffle followed by pairing consecutive stubs is a uniform
    // perfect matching
    std::shuffle(stubs.begin(), stubs.end(), rng);
    g.edges_.reserve(total / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
        g.add_edge(stubs[i], stubs[i + 1]);
    return g;
}

MultiGraph MultiGraph::sample(const DegreeModel& model, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("need at least one vertex");
    std::vector<int> degrees(n);
    long long total = 0;
    for (int i = 0; i < n; ++i) {
        degrees[i] = model.sample(rng);
        total += degrees[i];
    }
    const int parity = static_cast<int>(total % 2);
    std::vector<int> raw = degrees;
    degrees[n - 1] += parity;

    MultiGraph g = match_half_edges(degrees, rng);
    g.set_raw_degrees([&] {
        std::vector<int> r(n + 1, 0);
        for (int i = 0; i < n; ++i) r[i + 1] = raw[i];
        return r;
    }(), parity);
    g.seed_edge_ = g.edge_count();
    g.add_edge(0, 1);
    return g;
}

MultiGraph MultiGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                  bool attach_seed) {
    if (n < 1) throw std::invalid_argument("need at least one vertex");
    MultiGraph g;
    g.n_ = n;
    g.adj_.resize(n + 1);
    for (const auto& [u, v] : edges) {
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::invalid_argument("fixture endpoints must lie in 1..n");
        g.add_edge(u, v);
    }
    if (attach_seed) {
        g.seed_edge_ = g.edge_count();
        g.add_edge(0, 1);
    }
    g.raw_degrees_.assign(n + 1, 0);
    for (int v = 1; v <= n; ++v)
        g.raw_degrees_[v] = g.degree(v) - (attach_seed && v == 1 ? 1 : 0);
    return g;
}

std::string MultiGraph::serialize() const {
    std::ostringstream os;
    os << "n=" << n_ << " seed_edge=" << (has_seed_edge() ? "0-1" : "none")
       << " parity=" << parity_bit_ << "\n";
    for (std::size_t eid = 0; eid < edges_.size(); ++eid)
        os << edges_[eid].first << " " << edges_[eid].second << " " << eid << "\n";
    return os.str();
}

MultiGraph MultiGraph::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("empty graph text");

    int n = -1, parity = -1;
    std::string seed_field;
    {
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("malformed graph header: " + header);
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            if (key == "n") n = std::stoi(val);
            else if (key == "seed_edge") seed_field = val;
            else if (key == "parity") parity = std::stoi(val);
            else throw std::invalid_argument("unknown graph header key: " + key);
        }
    }
    if (n < 1 || parity < 0 || seed_field.empty())
        throw std::invalid_argument("incomplete graph header: " + header);
    const bool seeded = seed_field == "0-1";
    if (!seeded && seed_field != "none")
        throw std::invalid_argument("unsupported seed edge field: " + seed_field);

    MultiGraph g;
    g.n_ = n;
    g.adj_.resize(n + 1);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        long long u, v, eid;
        if (!(ls >> u >> v >> eid)) throw std::invalid_argument("malformed edge line: " + line);
        if (eid != static_cast<long long>(g.edges_.size()))
            throw std::invalid_argument("edge ids must be consecutive from 0");
        if (u < 0 || u > n || v < 0 || v > n)
            throw std::invalid_argument("edge endpoint out of range: " + line);
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    if (seeded) {
        if (g.edges_.empty() || g.edges_.back() != std::pair<int, int>(0, 1))
            throw std::invalid_argument("seeded graph must end with the 0 1 edge");
        g.seed_edge_ = g.edge_count() - 1;
    }
    g.parity_bit_ = parity;
    g.raw_degrees_.assign(n + 1, 0);
    for (int v = 1; v <= n; ++v) {
        g.raw_degrees_[v] = g.degree(v) - (seeded && v == 1 ? 1 : 0)
                            - (v == n ? parity : 0);
        if (g.raw_degrees_[v] < 0)
            throw std::invalid_argument("header inconsistent with edge list");
    }
    return g;
}

namespace {

struct Dsu {
    std::vector<int> parent, rank_;
    explicit Dsu(int n) : parent(n), rank_(n, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }
};

} // namespace

ComponentLabels components(const MultiGraph& g, bool include_seed) {
    const int n = g.vertex_count();
    const int lo = include_seed ? 0 : 1;
    Dsu dsu(n + 1);
    for (int eid = 0; eid < g.edge_count(); ++eid) {
        const auto [u, v] = g.edge(eid);
        if (u < lo || v < lo) continue;
        dsu.unite(u, v);
    }
    ComponentLabels out;
    out.label.assign(n + 1, -1);
    std::vector<int> root_to_label(n + 1, -1);
    std::vector<int> counts;
    for (int v = lo; v <= n; ++v) {
        const int r = dsu.find(v);
        if (root_to_label[r] < 0) {
            root_to_label[r] = static_cast<int>(counts.size());
            counts.push_back(0);
        }
        out.label[v] = root_to_label[r];
        ++counts[root_to_label[r]];
    }
    out.label_sizes = counts;
    out.sizes = std::move(counts);
    std::sort(out.sizes.begin(), out.sizes.end(), std::greater<int>());
    return out;
}

namespace {

void sa_dfs(const MultiGraph& g, int v, int depth, int k_max,
            std::vector<char>& visited, std::vector<long long>& counts) {
    if (depth == k_max) return;
    for (const AdjEntry& e : g.neighbors(v)) {
        const int w = static_cast<int>(e.other);
        if (w == 0 || visited[w]) continue;  // seed edge and repeats excluded
        ++counts[depth + 1];
        visited[w] = 1;
        sa_dfs(g, w, depth + 1, k_max, visited, counts);
        visited[w] = 0;
    }
}

} // namespace

std::vector<long long> count_sa_paths(const MultiGraph& g, int k_max) {
    if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
    if (k_max > 12)
        throw std::invalid_argument("k_max above 12 refused: path counts grow exponentially");
    std::vector<long long> counts(k_max + 1, 0);
    counts[0] = 1;
    std::vector<char> visited(g.vertex_count() + 1, 0);
    visited[1] = 1;
    sa_dfs(g, 1, 0, k_max, visited, counts);
    return counts;
}

} // namespace chase
