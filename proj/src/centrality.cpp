#include "commdet/centrality.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>

namespace commdet {

const char* to_string(DistanceMode mode) {
    return mode == DistanceMode::unit ? "unit" : "inverse-weight";
}

DistanceMode distance_mode_from_string(const std::string& name) {
    if (name == "unit") return DistanceMode::unit;
    if (name == "inverse-weight" || name == "inverse") return DistanceMode::inverse_weight;
    throw std::invalid_argument("unknown distance mode '" + name + "' (unit|inverse-weight)");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Two path lengths are considered equal when |d1-d2| <= 1e-12 * max(1, d),
// keeping sigma counts deterministic in inverse-weight mode. Unreached
// distances never tie.
bool near_equal(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return false;
    return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::max(a, b));
}

struct Compact {
    std::vector<NodeId> ids;  // index -> id, ascending
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor index, edge index)
    std::vector<std::pair<int, int>> edge_ends;         // edge -> (u,v), u < v
    std::vector<double> len;

    int n() const { return static_cast<int>(ids.size()); }
    int m() const { return static_cast<int>(edge_ends.size()); }
};

Compact compact_view(const InteractionGraph& g, DistanceMode mode) {
    Compact c;
    c.ids = g.node_ids();
    std::map<NodeId, int> index;
    for (int i = 0; i < static_cast<int>(c.ids.size()); ++i) index[c.ids[i]] = i;
    c.adj.resize(c.ids.size());
    for (const auto& e : g.edges()) {
        double length = 1.0;
        if (mode == DistanceMode::inverse_weight) {
            if (!(e.weight > 0.0))
                throw std::invalid_argument("inverse-weight distance requires positive weights");
            length = 1.0 / e.weight;
        }
        int u = index[e.u], v = index[e.v];
        int idx = c.m();
        c.edge_ends.emplace_back(u, v);
        c.len.push_back(length);
        c.adj[u].emplace_back(v, idx);
        c.adj[v].emplace_back(u, idx);
    }
    for (auto& a : c.adj) std::sort(a.begin(), a.end());
    return c;
}

struct Sssp {
    std::vector<double> dist;
    std::vector<double> sigma;
    std::vector<std::vector<std::pair<int, int>>> preds;  // (pred index, edge index)
    std::vector<int> order;                               // settle order
};

void shortest_paths(const Compact& c, int src, Sssp& s) {
    int n = c.n();
    s.dist.assign(n, kInf);
    s.sigma.assign(n, 0.0);
    s.preds.assign(n, {});
    s.order.clear();
    s.dist[src] = 0.0;
    s.sigma[src] = 1.0;

    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    std::vector<char> settled(n, 0);
    pq.emplace(0.0, src);
    while (!pq.empty()) {
        int v = pq.top().second;
        pq.pop();
        if (settled[v]) continue;
        settled[v] = 1;
        s.order.push_back(v);
        for (auto [w, e] : c.adj[v]) {
            double nd = s.dist[v] + c.len[e];
            if (near_equal(nd, s.dist[w])) {
                s.sigma[w] += s.sigma[v];
                s.preds[w].emplace_back(v, e);
            } else if (nd < s.dist[w]) {
                s.dist[w] = nd;
                s.sigma[w] = s.sigma[v];
                s.preds[w].assign(1, {v, e});
                pq.emplace(nd, w);
            }
        }
    }
}

// One source's dependency accumulation into vertex/edge partials.
void accumulate(const Compact& c, const Sssp& s, int src, std::vector<double>& vacc,
                std::vector<double>& eacc) {
    std::vector<double> delta(c.n(), 0.0);
    for (auto it = s.order.rbegin(); it != s.order.rend(); ++it) {
        int w = *it;
        for (auto [v, e] : s.preds[w]) {
            double flow = s.sigma[v] / s.sigma[w] * (1.0 + delta[w]);
            eacc[e] += flow;
            delta[v] += flow;
        }
        if (w != src) vacc[w] += delta[w];
    }
}

// Sources are processed in fixed blocks and block partials reduced in order,
// so the result is bit-identical for every worker count.
constexpr int kSourceBlock = 8;

}  // namespace

BetweennessScores betweenness(const InteractionGraph& g, DistanceMode mode, int threads) {
    Compact c = compact_view(g, mode);
    int n = c.n(), m = c.m();
    BetweennessScores out;
    for (NodeId id : c.ids) out.vertex[id] = 0.0;
    for (const auto& e : g.edges()) out.edge[{e.u, e.v}] = 0.0;
    if (n < 2 || m == 0) return out;

    int nblocks = (n + kSourceBlock - 1) / kSourceBlock;
    std::vector<std::vector<double>> vparts(nblocks), eparts(nblocks);

    std::atomic<int> next_block{0};
    auto worker = [&]() {
        Sssp s;
        for (;;) {
            int b = next_block.fetch_add(1);
            if (b >= nblocks) return;
            auto& vacc = vparts[b];
            auto& eacc = eparts[b];
            vacc.assign(n, 0.0);
            eacc.assign(m, 0.0);
            int lo = b * kSourceBlock, hi = std::min(n, lo + kSourceBlock);
            for (int src = lo; src < hi; ++src) {
                if (c.adj[src].empty()) continue;
                shortest_paths(c, src, s);
                accumulate(c, s, src, vacc, eacc);
            }
        }
    };

    int nthreads = std::clamp(threads, 1, nblocks);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads - 1; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
    }

    std::vector<double> vtotal(n, 0.0), etotal(m, 0.0);
    for (int b = 0; b < nblocks; ++b) {
        for (int i = 0; i < n; ++i) vtotal[i] += vparts[b][i];
        for (int e = 0; e < m; ++e) etotal[e] += eparts[b][e];
    }

    // halve the directed-pair sums: scores are over unordered {s,t}
    for (int i = 0; i < n; ++i) out.vertex[c.ids[i]] = vtotal[i] / 2.0;
    for (int e = 0; e < m; ++e) {
        auto [u, v] = c.edge_ends[e];
        out.edge[{c.ids[u], c.ids[v]}] = etotal[e] / 2.0;
    }
    return out;
}

namespace {

// Oracle-local single-source distances; deliberately free of the sigma and
// predecessor bookkeeping the main algorithm relies on.
std::vector<double> oracle_distances(const Compact& c, int src) {
    std::vector<double> dist(c.n(), kInf);
    dist[src] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.emplace(0.0, src);
    std::vector<char> done(c.n(), 0);
    while (!pq.empty()) {
        int v = pq.top().second;
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (auto [w, e] : c.adj[v])
            if (dist[v] + c.len[e] < dist[w]) {
                dist[w] = dist[v] + c.len[e];
                pq.emplace(dist[w], w);
            }
    }
    return dist;
}

constexpr std::size_t kMaxEnumeratedPaths = 2'000'000;

// All shortest s-t paths, walked backward from t along distance-consistent
// neighbors. Paths are returned as edge-index sequences.
void enumerate_paths(const Compact& c, const std::vector<double>& dist, int s, int t,
                     std::vector<std::vector<std::pair<int, int>>>& paths) {
    paths.clear();
    std::vector<std::pair<int, int>> walk;  // (interior node, edge taken)
    auto dfs = [&](auto&& self, int v) -> void {
        if (v == s) {
            paths.push_back(walk);
            if (paths.size() > kMaxEnumeratedPaths)
                throw std::runtime_error("too many shortest paths to enumerate");
            return;
        }
        for (auto [u, e] : c.adj[v]) {
            if (dist[u] == kInf) continue;
            if (near_equal(dist[u] + c.len[e], dist[v]) && dist[u] < dist[v]) {
                walk.emplace_back(v, e);
                self(self, u);
                walk.pop_back();
            }
        }
    };
    dfs(dfs, t);
}

}  // namespace

BetweennessScores betweenness_bruteforce(const InteractionGraph& g, DistanceMode mode,
                                         std::size_t node_cap) {
    if (g.node_count() > node_cap)
        throw std::runtime_error("graph exceeds the brute-force node cap (" +
                                 std::to_string(node_cap) + ")");
    Compact c = compact_view(g, mode);
    BetweennessScores out;
    for (NodeId id : c.ids) out.vertex[id] = 0.0;
    for (const auto& e : g.edges()) out.edge[{e.u, e.v}] = 0.0;

    std::vector<double> vacc(c.n(), 0.0), eacc(c.m(), 0.0);
    std::vector<std::vector<std::pair<int, int>>> paths;
    for (int s = 0; s < c.n(); ++s) {
        std::vector<double> dist = oracle_distances(c, s);
        for (int t = s + 1; t < c.n(); ++t) {
            if (dist[t] == kInf) continue;
            enumerate_paths(c, dist, s, t, paths);
            double share = 1.0 / static_cast<double>(paths.size());
            for (const auto& path : paths) {
                for (const auto& [node, edge] : path) {
                    eacc[edge] += share;
                    if (node != t) vacc[node] += share;  // interior vertices only
                }
            }
        }
    }
    for (int i = 0; i < c.n(); ++i) out.vertex[c.ids[i]] = vacc[i];
    for (int e = 0; e < c.m(); ++e) {
        auto [u, v] = c.edge_ends[e];
        out.edge[{c.ids[u], c.ids[v]}] = eacc[e];
    }
    return out;
}

namespace {

// Exhaustive best bipartition of `d` neighbor positions given the symmetric
// pairwise flow matrix: position 0 stays on side A, masks select side B.
std::pair<double, unsigned> best_split_exhaustive(const std::vector<std::vector<double>>& flows) {
    int d = static_cast<int>(flows.size());
    unsigned full = 1u << (d - 1);
    std::vector<double> rowsum(d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rowsum[i] += flows[i][j];

    // subset[p][mask] = sum of flows[p][q] over positions q encoded in mask
    std::vector<std::vector<double>> subset(d, std::vector<double>(full, 0.0));
    for (int p = 0; p < d; ++p)
        for (unsigned mask = 1; mask < full; ++mask) {
            unsigned low = mask & (mask - 1);
            int q = std::countr_zero(mask) + 1;
            subset[p][mask] = subset[p][low] + flows[p][q];
        }

    std::vector<double> cross(full, 0.0);
    double best = -1.0;
    unsigned best_mask = 1;
    for (unsigned mask = 1; mask < full; ++mask) {
        unsigned low = mask & (mask - 1);
        int b = std::countr_zero(mask) + 1;
        cross[mask] = cross[low] + rowsum[b] - 2.0 * subset[b][low];
        if (cross[mask] > best) {
            best = cross[mask];
            best_mask = mask;
        }
    }
    return {best, best_mask};
}

double cross_flow(const std::vector<std::vector<double>>& flows, const std::vector<char>& side_b) {
    int d = static_cast<int>(flows.size());
    double sum = 0.0;
    for (int i = 0; i < d; ++i) {
        if (side_b[i]) continue;
        for (int j = 0; j < d; ++j)
            if (side_b[j]) sum += flows[i][j];
    }
    return sum;
}

// Best-improvement single moves until no side swap raises the cross flow.
double refine_split(const std::vector<std::vector<double>>& flows, std::vector<char>& side_b) {
    int d = static_cast<int>(flows.size());
    double score = cross_flow(flows, side_b);
    for (;;) {
        int count_b = 0;
        for (char c : side_b) count_b += c;
        int best_p = -1;
        double best_score = score;
        for (int p = 0; p < d; ++p) {
            if (side_b[p] ? count_b == 1 : d - count_b == 1) continue;  // keep sides nonempty
            double delta = 0.0;
            for (int k = 0; k < d; ++k) {
                if (k == p) continue;
                // moving p across flips which of its flows cross
                delta += (side_b[k] == side_b[p] ? flows[p][k] : -flows[p][k]);
            }
            if (score + delta > best_score) {
                best_score = score + delta;
                best_p = p;
            }
        }
        if (best_p < 0) break;
        side_b[best_p] = !side_b[best_p];
        score = best_score;
    }
    return score;
}

// Greedy fallback for high degrees: merge the two neighbor groups with
// minimum inter-group flow until two remain, then polish with single-move
// refinement; singleton-seeded starts keep it honest on lumpy flow
// matrices.
std::pair<double, std::vector<char>> best_split_greedy(
    const std::vector<std::vector<double>>& flows) {
    int d = static_cast<int>(flows.size());
    std::vector<std::vector<double>> f = flows;
    std::vector<std::vector<int>> members(d);
    std::vector<char> active(d, 1);
    for (int i = 0; i < d; ++i) members[i] = {i};

    int remaining = d;
    while (remaining > 2) {
        int bi = -1, bj = -1;
        double best = kInf;
        for (int i = 0; i < d; ++i) {
            if (!active[i]) continue;
            for (int j = i + 1; j < d; ++j) {
                if (!active[j]) continue;
                if (f[i][j] < best) {
                    best = f[i][j];
                    bi = i;
                    bj = j;
                }
            }
        }
        for (int k = 0; k < d; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            f[bi][k] += f[bj][k];
            f[k][bi] = f[bi][k];
        }
        members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
        active[bj] = 0;
        --remaining;
    }

    int b = -1;
    for (int i = d - 1; i >= 0; --i)
        if (active[i]) {
            b = i;
            break;
        }
    std::vector<char> side_b(d, 0);
    for (int p : members[b]) side_b[p] = 1;
    double best_score = refine_split(flows, side_b);

    for (int seed = 0; seed < d; ++seed) {
        std::vector<char> candidate(d, 0);
        candidate[seed] = 1;
        double score = refine_split(flows, candidate);
        if (score > best_score) {
            best_score = score;
            side_b = candidate;
        }
    }

    // canonical orientation: position 0 belongs to side A
    if (side_b[0])
        for (int p = 0; p < d; ++p) side_b[p] = !side_b[p];
    return {best_score, side_b};
}

}  // namespace

SplitScores split_betweenness(const InteractionGraph& g,
                              [[maybe_unused]] const BetweennessScores& scores, DistanceMode mode,
                              SplitMethod method) {
    Compact c = compact_view(g, mode);
    int n = c.n();

    // Pair flows through each vertex, accumulated per source from the
    // shortest-path DAG: a path entering v by u and leaving by w adds
    // sigma_u/sigma_v times the edge flow (v,w).
    std::vector<std::vector<int>> nbr(n);       // vertex -> neighbor positions as node indices
    std::vector<std::map<int, int>> pos(n);     // vertex -> node index -> position
    std::vector<std::vector<double>> pair_acc(n);
    for (int v = 0; v < n; ++v) {
        for (const auto& entry : c.adj[v]) nbr[v].push_back(entry.first);
        for (int p = 0; p < static_cast<int>(nbr[v].size()); ++p) pos[v][nbr[v][p]] = p;
        std::size_t d = nbr[v].size();
        pair_acc[v].assign(d * d, 0.0);
    }

    Sssp s;
    for (int src = 0; src < n; ++src) {
        if (c.adj[src].empty()) continue;
        shortest_paths(c, src, s);
        std::vector<double> delta(n, 0.0);
        for (auto it = s.order.rbegin(); it != s.order.rend(); ++it) {
            int w = *it;
            for (auto [v, e] : s.preds[w]) {
                double flow = s.sigma[v] / s.sigma[w] * (1.0 + delta[w]);
                delta[v] += flow;
                if (v == src) continue;
                std::size_t d = nbr[v].size();
                int pw = pos[v].at(w);
                for (const auto& pred : s.preds[v]) {
                    int pu = pos[v].at(pred.first);
                    pair_acc[v][pu * d + pw] += s.sigma[pred.first] / s.sigma[v] * flow;
                }
            }
        }
    }

    SplitScores out;
    for (int v = 0; v < n; ++v) {
        int d = static_cast<int>(nbr[v].size());
        if (d < 2) continue;

        std::vector<std::vector<double>> flows(d, std::vector<double>(d, 0.0));
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                double f = (pair_acc[v][i * d + j] + pair_acc[v][j * d + i]) / 2.0;
                flows[i][j] = f;
                flows[j][i] = f;
            }

#ifndef NDEBUG
        {
            double total = 0.0;
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) total += flows[i][j];
            auto it = scores.vertex.find(c.ids[v]);
            assert(it == scores.vertex.end() ||
                   std::fabs(total - it->second) <= 1e-6 * std::max(1.0, it->second));
        }
#endif

        SplitChoice choice;
        std::vector<char> in_b(d, 0);
        bool exhaustive = method == SplitMethod::exhaustive ||
                          (method == SplitMethod::automatic && d <= 12);
        if (exhaustive) {
            if (d > 24) throw std::invalid_argument("exhaustive split search capped at degree 24");
            auto [score, mask] = best_split_exhaustive(flows);
            choice.score = score;
            for (int j = 1; j < d; ++j)
                if (mask & (1u << (j - 1))) in_b[j] = 1;
        } else {
            auto [score, side_b] = best_split_greedy(flows);
            choice.score = score;
            in_b = side_b;
        }
        for (int p = 0; p < d; ++p)
            (in_b[p] ? choice.side_b : choice.side_a).push_back(c.ids[nbr[v][p]]);
        out.best_split[c.ids[v]] = std::move(choice);
    }
    return out;
}

}  // namespace commdet
