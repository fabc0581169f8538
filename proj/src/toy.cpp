#include "stripes/toy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "stripes/error.hpp"
#include "stripes/rng.hpp"

namespace stripes {

std::vector<double> ToyDataset::centers() const {
    std::vector<double> c(context_count);
    for (std::size_t k = 0; k < context_count; ++k)
        c[k] = static_cast<double>(k + 1) * std::numbers::pi /
               static_cast<double>(context_count + 1);
    return c;
}

std::vector<std::size_t> ToyDataset::order_by_psi() const {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [this](std::size_t a, std::size_t b) { return points[a].psi < points[b].psi; });
    return order;
}

ToyDataset generate_toy(std::size_t contexts, std::size_t points, double sigma,
                        std::uint64_t seed) {
    if (contexts < 1) throw Error(ErrorCode::InvalidArgument, "need at least one context");
    if (points < 1) throw Error(ErrorCode::InvalidArgument, "need at least one point");
    if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");

    ToyDataset ds;
    ds.context_count = contexts;
    ds.sigma = sigma;
    ds.seed = seed;
    std::vector<double> centers = ds.centers();
    CounterRng rng(seed, 0x707u);
    ds.points.resize(points);
    for (std::size_t j = 0; j < points; ++j) {
        std::size_t k = j % contexts;
        ds.points[j].context_id = k;
        ds.points[j].xi = centers[k];
        ds.points[j].psi = centers[k] + sigma * rng.normal();
    }
    return ds;
}

double toy_score(Method method, double psi_q, double xi_q, double psi_k, double xi_k, double f) {
    switch (method) {
        case Method::RoPE:
            return std::cos((psi_q - psi_k) + f * (xi_q - xi_k));
        case Method::FStripe1:
            return std::cos(psi_q - psi_k) * std::cos(f * (xi_q - xi_k));
        case Method::RoPEPool: {
            constexpr double quarter = std::numbers::pi / 4.0;
            return 2.0 * std::cos(psi_q + f * xi_q - quarter) *
                   std::cos(psi_k + f * xi_k - quarter);
        }
    }
    return 0.0;
}

Heatmap heatmap(Method method, const ToyDataset& ds, std::size_t query_index,
                std::span<const double> f_grid) {
    if (query_index >= ds.points.size())
        throw Error(ErrorCode::IndexOutOfRange, "query index exceeds point count");

    std::vector<std::size_t> order = ds.order_by_psi();
    Heatmap map;
    map.f_grid.assign(f_grid.begin(), f_grid.end());
    map.query_index = query_index;
    map.sorted_psi.resize(order.size());
    map.sorted_context.resize(order.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
        map.sorted_psi[j] = ds.points[order[j]].psi;
        map.sorted_context[j] = ds.points[order[j]].context_id;
    }

    const ToyPoint& query = ds.points[order[query_index]];
    map.values = Matrix(f_grid.size(), order.size());
    for (std::size_t i = 0; i < f_grid.size(); ++i) {
        for (std::size_t j = 0; j < order.size(); ++j) {
            const ToyPoint& key = ds.points[order[j]];
            map.values(i, j) = toy_score(method, query.psi, query.xi, key.psi, key.xi, f_grid[i]);
        }
    }
    return map;
}

std::pair<double, double> mirror_asymmetry(Method method, double psi, double xi, double dpsi,
                                           double dxi, double f) {
    double plus = toy_score(method, psi, xi, psi + dpsi, xi + dxi, f);
    double minus = toy_score(method, psi, xi, psi - dpsi, xi - dxi, f);
    return {plus, minus};
}

double discriminability(Method method, const ToyDataset& ds, std::size_t query_index, double f) {
    if (ds.context_count < 2)
        throw Error(ErrorCode::SingleContext, "discriminability needs at least two contexts");
    if (query_index >= ds.points.size())
        throw Error(ErrorCode::IndexOutOfRange, "query index exceeds point count");

    std::vector<std::size_t> order = ds.order_by_psi();
    const ToyPoint& query = ds.points[order[query_index]];

    double same_sum = 0.0, diff_sum = 0.0;
    std::size_t same_n = 0, diff_n = 0;
    for (const ToyPoint& key : ds.points) {
        double score = toy_score(method, query.psi, query.xi, key.psi, key.xi, f);
        if (key.context_id == query.context_id) {
            same_sum += score;
            ++same_n;
        } else {
            diff_sum += score;
            ++diff_n;
        }
    }
    if (diff_n == 0)
        throw Error(ErrorCode::SingleContext, "every point shares the query's context");
    return same_sum / static_cast<double>(same_n) - diff_sum / static_cast<double>(diff_n);
}

} // namespace stripes
