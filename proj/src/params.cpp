#include "stripes/params.hpp"

#include <cmath>

#include "stripes/error.hpp"
#include "stripes/rng.hpp"

namespace stripes {

const char* to_string(Method method) {
    switch (method) {
        case Method::FStripe1: return "fstripe1";
        case Method::RoPE: return "rope";
        case Method::RoPEPool: return "ropepool";
    }
    return "?";
}

const char* to_string(InitScheme scheme) {
    switch (scheme) {
        case InitScheme::ExponentialShared: return "exponential-shared";
        case InitScheme::ExponentialPerHead: return "exponential-per-head";
        case InitScheme::Explicit: return "explicit";
        case InitScheme::RandomUniform: return "random-uniform";
    }
    return "?";
}

std::size_t unit_count_for(Method method, std::size_t dim) {
    if (method == Method::FStripe1) return dim;
    if (dim % 2 != 0)
        throw Error(ErrorCode::OddDimension, "pair-based methods require an even dimension");
    return dim / 2;
}

PEParams PEParams::for_head(std::size_t head) const {
    if (head >= head_count) throw Error(ErrorCode::IndexOutOfRange, "head index out of range");
    PEParams out(*this);
    out.head_count = 1;
    out.frequencies = {frequencies[head]};
    out.gains = {gains[head]};
    out.phases = {phases[head]};
    return out;
}

PEParams make_params(Method method, std::size_t dim, std::size_t label_dim, InitScheme scheme,
                     double base, std::uint64_t seed, std::size_t head_count) {
    if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
    if (label_dim < 1) throw Error(ErrorCode::InvalidArgument, "label dimension must be >= 1");
    if (head_count < 1) throw Error(ErrorCode::InvalidArgument, "head count must be >= 1");
    if (scheme == InitScheme::Explicit)
        throw Error(ErrorCode::InvalidArgument, "use make_explicit_params for explicit values");

    const bool exponential =
        scheme == InitScheme::ExponentialShared || scheme == InitScheme::ExponentialPerHead;
    if (exponential && base <= 1.0)
        throw Error(ErrorCode::BadBase, "exponential schemes need base > 1");
    if (exponential && label_dim != 1)
        throw Error(ErrorCode::DimensionMismatch,
                    "exponential schemes are defined for scalar labels only");

    const std::size_t units = unit_count_for(method, dim);

    PEParams params;
    params.method = method;
    params.dim = dim;
    params.label_dim = label_dim;
    params.head_count = head_count;
    params.scheme = scheme;
    params.base = base;
    params.seed = seed;
    params.frequencies.resize(head_count);
    params.gains.assign(head_count, std::vector<double>(units, 1.0));
    params.phases.assign(head_count, std::vector<double>(units, 0.0));

    for (std::size_t h = 0; h < head_count; ++h) {
        auto& head = params.frequencies[h];
        head.resize(units);
        switch (scheme) {
            case InitScheme::ExponentialShared:
            case InitScheme::ExponentialPerHead: {
                // f_u = base_h^(-2u / D); per-head variants double the base per head.
                double head_base = scheme == InitScheme::ExponentialShared
                                       ? base
                                       : base * std::pow(2.0, static_cast<double>(h));
                for (std::size_t u = 0; u < units; ++u) {
                    double exponent = -2.0 * static_cast<double>(u) / static_cast<double>(dim);
                    head[u] = {std::pow(head_base, exponent)};
                }
                break;
            }
            case InitScheme::RandomUniform: {
                CounterRng rng(seed, mix64(0x5eedU + h));
                for (std::size_t u = 0; u < units; ++u) {
                    head[u].resize(label_dim);
                    for (std::size_t l = 0; l < label_dim; ++l) head[u][l] = rng.uniform01();
                }
                break;
            }
            case InitScheme::Explicit:
                break;
        }
    }
    return params;
}

PEParams make_explicit_params(Method method, std::size_t dim,
                              std::vector<std::vector<double>> frequencies,
                              std::vector<double> gains, std::vector<double> phases) {
    const std::size_t units = unit_count_for(method, dim);
    if (frequencies.size() != units)
        throw Error(ErrorCode::UnitCountMismatch, "expected one frequency vector per unit");
    std::size_t label_dim = frequencies.empty() ? 1 : frequencies.front().size();
    if (label_dim == 0) throw Error(ErrorCode::DimensionMismatch, "frequency vectors must be non-empty");
    for (const auto& f : frequencies)
        if (f.size() != label_dim)
            throw Error(ErrorCode::DimensionMismatch, "frequency vectors have mixed dimensions");
    if (gains.empty()) gains.assign(units, 1.0);
    if (phases.empty()) phases.assign(units, 0.0);
    if (gains.size() != units || phases.size() != units)
        throw Error(ErrorCode::UnitCountMismatch, "gain/phase count must match unit count");
    for (double g : gains)
        if (g < 0.0) throw Error(ErrorCode::InvalidArgument, "gains must be nonnegative");

    PEParams params;
    params.method = method;
    params.dim = dim;
    params.label_dim = label_dim;
    params.head_count = 1;
    params.scheme = InitScheme::Explicit;
    params.frequencies = {std::move(frequencies)};
    params.gains = {std::move(gains)};
    params.phases = {std::move(phases)};
    return params;
}

} // namespace stripes
