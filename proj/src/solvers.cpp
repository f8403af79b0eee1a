#include "passopt/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace passopt {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

}  // namespace

long long scale_cost(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("scale_cost: non-finite value");
    const double scaled = value * static_cast<double>(kCostScale);
    if (std::abs(scaled) > 9.0e18 / 2.0) throw std::invalid_argument("scale_cost: value too large");
    return std::llround(scaled);
}

IASolution solve_ia(const MatD& C) {
    const int n = C.rows();
    if (n < 1 || C.cols() != n) throw std::invalid_argument("solve_ia: square matrix required");

    // quantized minimization costs, 1-indexed for the potential method
    std::vector<std::vector<long long>> a(static_cast<std::size_t>(n) + 1,
                                          std::vector<long long>(static_cast<std::size_t>(n) + 1, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j) + 1] =
                -scale_cost(C(i, j));

    std::vector<long long> u(static_cast<std::size_t>(n) + 1, 0);
    std::vector<long long> v(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<long long> minv(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            long long delta = kInf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const long long cur = a[static_cast<std::size_t>(i0)][static_cast<std::size_t>(j)] -
                                      u[static_cast<std::size_t>(i0)] -
                                      v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> images(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j) images[static_cast<std::size_t>(p[static_cast<std::size_t>(j)]) - 1] = j - 1;

    // exact certificate: dual feasibility plus a zero duality gap
    long long primal = 0;
    for (int i = 0; i < n; ++i)
        primal += a[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(images[static_cast<std::size_t>(i)]) + 1];
    long long dual = 0;
    for (int i = 1; i <= n; ++i) dual += u[static_cast<std::size_t>(i)];
    for (int j = 1; j <= n; ++j) dual += v[static_cast<std::size_t>(j)];
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (u[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(j)] >
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                throw std::runtime_error("solve_ia: dual feasibility violated");
    if (primal != dual) throw std::runtime_error("solve_ia: nonzero duality gap");

    double value = 0.0;
    for (int i = 0; i < n; ++i) value += C(i, images[static_cast<std::size_t>(i)]);
    return IASolution{Permutation(std::move(images)), value, -primal};
}

namespace {

// Min-cost max-flow by successive shortest paths; exact on integer costs.
class FlowNetwork {
public:
    explicit FlowNetwork(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

    void add_edge(int from, int to, long long cap, long long cost) {
        adj_[static_cast<std::size_t>(from)].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({to, cap, cost, 0});
        adj_[static_cast<std::size_t>(to)].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({from, 0, -cost, 0});
    }

    long long flow_on(int edge_index) const { return edges_[static_cast<std::size_t>(edge_index) * 2].flow; }

    std::pair<long long, long long> run(int src, int dst) {
        const int n = static_cast<int>(adj_.size());
        long long flow = 0, cost = 0;
        for (;;) {
            std::vector<long long> dist(static_cast<std::size_t>(n), kInf);
            std::vector<int> parent(static_cast<std::size_t>(n), -1);
            dist[static_cast<std::size_t>(src)] = 0;
            for (int round = 0; round < n - 1; ++round) {
                bool changed = false;
                for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
                    const Edge& ed = edges_[static_cast<std::size_t>(e)];
                    const int from = edges_[static_cast<std::size_t>(e ^ 1)].to;
                    if (ed.cap - ed.flow <= 0 || dist[static_cast<std::size_t>(from)] >= kInf)
                        continue;
                    if (dist[static_cast<std::size_t>(from)] + ed.cost <
                        dist[static_cast<std::size_t>(ed.to)]) {
                        dist[static_cast<std::size_t>(ed.to)] =
                            dist[static_cast<std::size_t>(from)] + ed.cost;
                        parent[static_cast<std::size_t>(ed.to)] = e;
                        changed = true;
                    }
                }
                if (!changed) break;
            }
            if (dist[static_cast<std::size_t>(dst)] >= kInf) break;

            long long push = kInf;
            for (int node = dst; node != src;) {
                const int e = parent[static_cast<std::size_t>(node)];
                push = std::min(push, edges_[static_cast<std::size_t>(e)].cap -
                                          edges_[static_cast<std::size_t>(e)].flow);
                node = edges_[static_cast<std::size_t>(e ^ 1)].to;
            }
            for (int node = dst; node != src;) {
                const int e = parent[static_cast<std::size_t>(node)];
                edges_[static_cast<std::size_t>(e)].flow += push;
                edges_[static_cast<std::size_t>(e ^ 1)].flow -= push;
                node = edges_[static_cast<std::size_t>(e ^ 1)].to;
            }
            flow += push;
            cost += push * dist[static_cast<std::size_t>(dst)];
        }
        return {flow, cost};
    }

    // True when the residual graph holds no negative cycle, which certifies
    // the flow as cheapest among all flows of its value.
    bool is_cost_optimal() const {
        const int n = static_cast<int>(adj_.size());
        std::vector<long long> dist(static_cast<std::size_t>(n), 0);
        for (int round = 0; round < n; ++round) {
            bool changed = false;
            for (std::size_t e = 0; e < edges_.size(); ++e) {
                const Edge& ed = edges_[e];
                const int from = edges_[e ^ 1].to;
                if (ed.cap - ed.flow <= 0) continue;
                if (dist[static_cast<std::size_t>(from)] + ed.cost <
                    dist[static_cast<std::size_t>(ed.to)]) {
                    dist[static_cast<std::size_t>(ed.to)] =
                        dist[static_cast<std::size_t>(from)] + ed.cost;
                    changed = true;
                }
            }
            if (!changed) return true;
        }
        return false;
    }

private:
    struct Edge {
        int to;
        long long cap;
        long long cost;
        long long flow;
    };

    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

}  // namespace

SASolution solve_sa(const PerformanceMatrix& T, const std::vector<long long>& p,
                    const std::vector<long long>& g, const Permutation& pi) {
    const int L = T.segments();
    const int J = T.sections();
    if (static_cast<int>(p.size()) != L)
        throw std::invalid_argument("solve_sa: segment population length mismatch");
    if (static_cast<int>(g.size()) != J)
        throw std::invalid_argument("solve_sa: section capacity length mismatch");
    if (pi.size() != J) throw std::invalid_argument("solve_sa: placement size mismatch");
    long long supply = 0, demand = 0;
    for (long long x : p) {
        if (x < 0) throw std::invalid_argument("solve_sa: negative segment population");
        supply += x;
    }
    for (long long x : g) {
        if (x < 0) throw std::invalid_argument("solve_sa: negative section capacity");
        demand += x;
    }
    if (supply != demand)
        throw std::invalid_argument("solve_sa: populations and capacities must balance");

    // nodes: 0 = source, 1..L = segments, L+1..L+J = sections, L+J+1 = sink
    const int src = 0, dst = L + J + 1;
    FlowNetwork net(L + J + 2);
    std::vector<int> cell_edge(static_cast<std::size_t>(L) * static_cast<std::size_t>(J), -1);
    int next_edge = 0;
    for (int l = 0; l < L; ++l) {
        net.add_edge(src, 1 + l, p[static_cast<std::size_t>(l)], 0);
        ++next_edge;
    }
    for (int l = 0; l < L; ++l)
        for (int j = 0; j < J; ++j) {
            const long long w = scale_cost(T.at(pi(j), l));
            net.add_edge(1 + l, 1 + L + j, supply, -w);
            cell_edge[static_cast<std::size_t>(l) * static_cast<std::size_t>(J) +
                      static_cast<std::size_t>(j)] = next_edge++;
        }
    for (int j = 0; j < J; ++j) {
        net.add_edge(1 + L + j, dst, g[static_cast<std::size_t>(j)], 0);
        ++next_edge;
    }

    const auto [flow, cost] = net.run(src, dst);
    if (flow != supply) throw std::runtime_error("solve_sa: transportation infeasible");
    if (!net.is_cost_optimal()) throw std::runtime_error("solve_sa: optimality check failed");

    std::vector<long long> entries(static_cast<std::size_t>(L) * static_cast<std::size_t>(J), 0);
    for (int l = 0; l < L; ++l)
        for (int j = 0; j < J; ++j)
            entries[static_cast<std::size_t>(l) * static_cast<std::size_t>(J) +
                    static_cast<std::size_t>(j)] =
                net.flow_on(cell_edge[static_cast<std::size_t>(l) * static_cast<std::size_t>(J) +
                                      static_cast<std::size_t>(j)]);
    GroupAssignmentMatrix G(L, J, std::move(entries), p, g);

    double value = 0.0;
    for (int j = 0; j < J; ++j)
        for (int l = 0; l < L; ++l)
            value += T.at(pi(j), l) * static_cast<double>(G.at(l, j));
    return SASolution{std::move(G), value, -cost};
}

}  // namespace passopt
