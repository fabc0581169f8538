#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace stripes {

/// The three positional-encoding methods the library computes and
/// cross-checks. FStripe1 treats single dimensions as units; RoPE and
/// RoPEPool work on dimension pairs.
enum class Method { FStripe1, RoPE, RoPEPool };

enum class InitScheme { ExponentialShared, ExponentialPerHead, Explicit, RandomUniform };

const char* to_string(Method method);
const char* to_string(InitScheme scheme);

/// Number of analysis units for a method at content dimension D:
/// D for FStripe1, D/2 for the pair-based methods (throws on odd D).
std::size_t unit_count_for(Method method, std::size_t dim);

/// Frequencies, gains and phase shifts per head and per unit. Immutable
/// after construction; score paths read head 0 unless told otherwise.
struct PEParams {
    Method method = Method::FStripe1;
    std::size_t dim = 0;       // content dimension D
    std::size_t label_dim = 1; // positional label dimension L
    std::size_t head_count = 1;
    InitScheme scheme = InitScheme::Explicit;
    double base = 10000.0;
    std::uint64_t seed = 0;

    // indexed [head][unit]; frequency entries are L-vectors
    std::vector<std::vector<std::vector<double>>> frequencies;
    std::vector<std::vector<double>> gains;
    std::vector<std::vector<double>> phases;

    std::size_t unit_count() const { return frequencies.empty() ? 0 : frequencies.front().size(); }

    const std::vector<double>& frequency(std::size_t unit, std::size_t head = 0) const {
        return frequencies[head][unit];
    }
    double gain(std::size_t unit, std::size_t head = 0) const { return gains[head][unit]; }
    double phase(std::size_t unit, std::size_t head = 0) const { return phases[head][unit]; }

    /// Single-head slice of a multi-head parameter set.
    PEParams for_head(std::size_t head) const;
};

/// Deterministic parameter construction. Exponential schemes ignore the
/// seed and require scalar labels (L = 1); RandomUniform draws every
/// frequency component from U(0, 1].
PEParams make_params(Method method, std::size_t dim, std::size_t label_dim, InitScheme scheme,
                     double base = 10000.0, std::uint64_t seed = 0, std::size_t head_count = 1);

/// Explicit single-head construction from caller-provided values. Gains and
/// phases may be empty (defaulting to 1 and 0).
PEParams make_explicit_params(Method method, std::size_t dim,
                              std::vector<std::vector<double>> frequencies,
                              std::vector<double> gains = {}, std::vector<double> phases = {});

} // namespace stripes
