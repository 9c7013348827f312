#pragma once

#include <cstdint>
#include <vector>

#include "chase/multigraph.hpp"
#include "chase/passage_times.hpp"
#include "chase/rng.hpp"

namespace chase {

enum class MaskSource { SharedPassageTimes, DirectDraw };

// Per-vertex open flags: v is open when its slowest outbound red traversal
// beats its fastest inbound blue traversal.
struct OpenMask {
    std::vector<std::uint8_t> open;  // index 1..n; [0] unused
    double lambda = 0.0;
    MaskSource source = MaskSource::SharedPassageTimes;
    bool is_open(int v) const { return open[v] != 0; }
    int open_count() const;
};

// Open marks from a shared passage-time realization (couples with
// run_quenched on the same object).
OpenMask mark_open(const MultiGraph& g, const PassageTimes& pt);

// Cheaper standalone marks: draws only the per-vertex max/min directly.
OpenMask mark_open_direct(const MultiGraph& g, double lambda, Rng& rng);

// The subgraph H of open vertices and the edge instances between them. The
// seed vertex and seed edge are always excluded. hat_degrees counts, for an
// open vertex, only its edge endpoints inside H (self-loops count twice);
// closed vertices get 0.
struct OpenSubgraph {
    std::vector<int> hat_degrees;       // index 1..n; [0] unused
    std::vector<std::uint32_t> edge_ids;
};
OpenSubgraph build_open_subgraph(const MultiGraph& g, const OpenMask& mask);

// Order-statistic quantities over a degree sequence sorted ascending:
//   j_n: first prefix index where sum of d(d-2) turns positive (n if never),
//   s_n: sum of the entries from position j_n to n,
//   m_n: sum of the entries different from 2.
struct JprrStats {
    long long j_n = 0;
    long long s_n = 0;
    long long m_n = 0;
};
JprrStats jprr_stats(const std::vector<int>& degrees);

// Sufficient-condition predicate for a giant component: s_n >= eps * m_n.
bool giant_check(const JprrStats& stats, double eps);

// Sum of full-graph degrees (adjacency length, seed edge included at the
// root) over closed vertices.
long long half_edges_closed(const MultiGraph& g, const OpenMask& mask);

// One replica's percolation record.
struct PercReport {
    int n = 0;
    double lambda = 0.0;
    std::uint64_t seed = 0;
    std::vector<int> hat_degrees;
    long long j_n = 0, s_n = 0, m_n = 0, e_n = 0;
    int largest_open_component = 0;
    int root_open_component = 0;  // 0 when the root is closed
    bool root_open = false;
    double ratio = 0.0;           // s_n / m_n; 0 and degenerate when m_n = 0
    bool degenerate = false;
};

PercReport perc_report(const MultiGraph& g, const OpenMask& mask, std::uint64_t seed);

// CSV row format shared by the percolate subcommand and sweep outputs.
std::string perc_csv_header();
std::string perc_csv_row(const PercReport& r);

} // namespace chase
