#include "chase/percolation.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace chase {

int OpenMask::open_count() const {
    int c = 0;
    for (std::size_t v = 1; v < open.size(); ++v) c += open[v] != 0;
    return c;
}

OpenMask mark_open(const MultiGraph& g, const PassageTimes& pt) {
    if (!pt.matches(g))
        throw std::invalid_argument("passage times were drawn for a different graph");
    const int n = g.vertex_count();
    OpenMask mask;
    mask.lambda = pt.lambda();
    mask.source = MaskSource::SharedPassageTimes;
    mask.open.assign(n + 1, 0);
    for (int v = 1; v <= n; ++v)
        mask.open[v] = pt.t_red(v) < pt.t_blue(v) ? 1 : 0;
    return mask;
}

OpenMask mark_open_direct(const MultiGraph& g, double lambda, Rng& rng) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    const int n = g.vertex_count();
    OpenMask mask;
    mask.lambda = lambda;
    mask.source = MaskSource::DirectDraw;
    mask.open.assign(n + 1, 0);
    std::exponential_distribution<double> red_dist(lambda);
    std::exponential_distribution<double> blue_dist(1.0);
    for (int v = 1; v <= n; ++v) {
        double t_red = 0.0;
        double t_blue = std::numeric_limits<double>::infinity();
        for (const AdjEntry& e : g.neighbors(v)) {
            if (g.is_self_loop(e.edge_id)) continue;
            if (static_cast<int>(e.edge_id) != g.seed_edge_id())
                t_red = std::max(t_red, red_dist(rng));
            t_blue = std::min(t_blue, blue_dist(rng));
        }
        mask.open[v] = t_red < t_blue ? 1 : 0;
    }
    return mask;
}

OpenSubgraph build_open_subgraph(const MultiGraph& g, const OpenMask& mask) {
    const int n = g.vertex_count();
    OpenSubgraph sub;
    sub.hat_degrees.assign(n + 1, 0);
    for (int eid = 0; eid < g.edge_count(); ++eid) {
        if (eid == g.seed_edge_id()) continue;
        const auto [u, v] = g.edge(eid);
        if (u == 0 || v == 0) continue;
        if (!mask.is_open(u) || !mask.is_open(v)) continue;
        sub.edge_ids.push_back(static_cast<std::uint32_t>(eid));
        ++sub.hat_degrees[u];
        ++sub.hat_degrees[v];
    }
    return sub;
}

JprrStats jprr_stats(const std::vector<int>& degrees) {
    if (degrees.empty()) throw std::invalid_argument("empty degree sequence");
    std::vector<int> sorted = degrees;
    std::sort(sorted.begin(), sorted.end());
    const long long n = static_cast<long long>(sorted.size());

    JprrStats st;
    st.j_n = n;
    long long acc = 0;
    for (long long i = 0; i < n; ++i) {
        const long long d = sorted[i];
        acc += d * (d - 2);
        if (acc > 0) {
            st.j_n = i + 1;  // 1-based
            break;
        }
    }
    for (long long i = st.j_n - 1; i < n; ++i) st.s_n += sorted[i];
    for (const int d : degrees)
        if (d != 2) st.m_n += d;
    return st;
}

bool giant_check(const JprrStats& stats, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
    return static_cast<double>(stats.s_n) >= eps * static_cast<double>(stats.m_n);
}

long long half_edges_closed(const MultiGraph& g, const OpenMask& mask) {
    long long total = 0;
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (!mask.is_open(v)) total += g.degree(v);
    return total;
}

namespace {

// components of H: DSU over open vertices with the open-subgraph edges
void open_components(const MultiGraph& g, const OpenMask& mask, const OpenSubgraph& sub,
                     int& largest, int& root_component) {
    const int n = g.vertex_count();
    std::vector<int> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const std::uint32_t eid : sub.edge_ids) {
        const auto [u, v] = g.edge(eid);
        const int ru = find(u), rv = find(v);
        if (ru != rv) parent[ru] = rv;
    }
    std::vector<int> count(n + 1, 0);
    largest = 0;
    for (int v = 1; v <= n; ++v) {
        if (!mask.is_open(v)) continue;
        const int r = find(v);
        ++count[r];
        if (count[r] > largest) largest = count[r];
    }
    root_component = mask.is_open(1) ? count[find(1)] : 0;
}

} // namespace

PercReport perc_report(const MultiGraph& g, const OpenMask& mask, std::uint64_t seed) {
    PercReport rep;
    rep.n = g.vertex_count();
    rep.lambda = mask.lambda;
    rep.seed = seed;

    const OpenSubgraph sub = build_open_subgraph(g, mask);
    rep.hat_degrees.assign(sub.hat_degrees.begin() + 1, sub.hat_degrees.end());

    const JprrStats st = jprr_stats(rep.hat_degrees);
    rep.j_n = st.j_n;
    rep.s_n = st.s_n;
    rep.m_n = st.m_n;
    rep.e_n = half_edges_closed(g, mask);
    rep.root_open = mask.is_open(1);
    rep.degenerate = st.m_n == 0;
    rep.ratio = rep.degenerate ? 0.0
                               : static_cast<double>(st.s_n) / static_cast<double>(st.m_n);
    open_components(g, mask, sub, rep.largest_open_component, rep.root_open_component);
    return rep;
}

std::string perc_csv_header() {
    return "n,lambda,seed,j_n,S_n,M_n,E_n,ratio,largest_open_component,"
           "root_open_component,root_open";
}

std::string perc_csv_row(const PercReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%.10g,%llu,%lld,%lld,%lld,%lld,%.10g,%d,%d,%d",
                  r.n, r.lambda, static_cast<unsigned long long>(r.seed), r.j_n, r.s_n,
                  r.m_n, r.e_n, r.ratio, r.largest_open_component, r.root_open_component,
                  r.root_open ? 1 : 0);
    return buf;
}

} // namespace chase
