#include "stripes/kernel.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "stripes/error.hpp"
#include "stripes/rng.hpp"

namespace stripes {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) acc += a(i, j) * a(i, j);
    return std::sqrt(acc);
}

QKMatrices stack_samples(const std::vector<KernelSample>& samples) {
    if (samples.empty()) throw Error(ErrorCode::EmptyInput, "sample set is empty");
    std::size_t d = samples.front().content.size();
    QKMatrices qk;
    qk.q = Matrix(samples.size(), d);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].content.size() != d)
            throw Error(ErrorCode::DimensionMismatch, "samples have mixed content dimensions");
        for (std::size_t j = 0; j < d; ++j) qk.q(i, j) = samples[i].content[j];
    }
    qk.k = qk.q;
    return qk;
}

PositionalIndexSequence stack_positions(const std::vector<KernelSample>& samples) {
    std::vector<std::vector<double>> labels;
    labels.reserve(samples.size());
    for (const auto& s : samples) labels.push_back(s.position);
    return PositionalIndexSequence::structural(std::move(labels));
}

} // namespace

std::vector<double> jacobi_eigenvalues(const Matrix& input, double off_tol) {
    if (input.rows() != input.cols()) throw Error(ErrorCode::NonSquare, "matrix must be square");
    const std::size_t n = input.rows();
    if (n == 0) return {};

    Matrix a = input;
    double frob = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) frob += a(i, j) * a(i, j);
    frob = std::sqrt(frob);
    const double stop = off_tol * std::max(1.0, frob);

    for (int sweep = 0; sweep < 128 && off_diagonal_norm(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (std::size_t i = 0; i < n; ++i) {
                    double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

Matrix gram_matrix(Method method, const std::vector<KernelSample>& samples,
                   const PEParams& params) {
    QKMatrices qk = stack_samples(samples);
    PositionalIndexSequence pos = stack_positions(samples);
    return exact_attention(method, qk, pos, pos, params).values;
}

PDReport pd_check(const Matrix& g, double tol) {
    if (g.rows() != g.cols()) throw Error(ErrorCode::NonSquare, "matrix must be square");
    const std::size_t n = g.rows();
    PDReport report;
    report.matrix_size = n;
    if (n == 0) {
        report.is_pd = true;
        return report;
    }

    Matrix sym(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sym(i, j) = 0.5 * (g(i, j) + g(j, i));

    std::vector<double> eig = jacobi_eigenvalues(sym);
    report.min_eigenvalue = eig.front();
    report.max_eigenvalue = eig.back();
    report.is_pd = report.min_eigenvalue >= -tol * std::max(1.0, std::abs(report.max_eigenvalue));

    // Independent probe: quadratic forms on random directions. Symmetrization
    // hides nothing the eigenvalues see, but this cross-checks the solver.
    CounterRng rng(0xACEDu, n);
    report.min_quadratic_form = report.max_eigenvalue;
    for (int probe = 0; probe < 32; ++probe) {
        std::vector<double> x(n);
        double norm2 = 0.0;
        for (auto& v : x) {
            v = rng.normal();
            norm2 += v * v;
        }
        if (norm2 == 0.0) continue;
        double form = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) form += x[i] * sym(i, j) * x[j];
        report.min_quadratic_form = std::min(report.min_quadratic_form, form / norm2);
    }
    return report;
}

PDReport pd_witness_search_fn(const SampleScorer& scorer, std::size_t content_dim,
                              std::size_t n_points, std::size_t budget, std::uint64_t seed) {
    if (n_points < 2) throw Error(ErrorCode::InvalidArgument, "need at least two points");
    PDReport best;
    best.is_pd = true;
    best.min_eigenvalue = 0.0;

    for (std::size_t trial = 0; trial < budget; ++trial) {
        CounterRng rng(seed, mix64(0xBADCAB1Eu + trial));
        std::vector<KernelSample> samples(n_points);
        for (auto& s : samples) {
            s.content.resize(content_dim);
            for (auto& v : s.content) v = rng.normal();
            s.position = {rng.uniform(-10.0, 10.0)};
        }
        Matrix g(n_points, n_points);
        for (std::size_t i = 0; i < n_points; ++i)
            for (std::size_t j = 0; j < n_points; ++j) g(i, j) = scorer(samples[i], samples[j]);

        PDReport report = pd_check(g, 1e-6);
        best.trials_used = trial + 1;
        best.min_eigenvalue = std::min(best.min_eigenvalue, report.min_eigenvalue);
        if (!report.is_pd) {
            report.trials_used = trial + 1;
            report.witness = WitnessSet{std::move(samples), PEParams{}};
            return report;
        }
    }
    best.matrix_size = n_points;
    return best;
}

PDReport pd_witness_search(Method method, std::size_t n_points, std::size_t budget,
                           std::uint64_t seed, std::size_t dim) {
    if (n_points < 2) throw Error(ErrorCode::InvalidArgument, "need at least two points");
    PDReport best;
    best.is_pd = true;
    best.min_eigenvalue = 0.0;

    for (std::size_t trial = 0; trial < budget; ++trial) {
        CounterRng rng(seed, mix64(0xD1CEu + trial));
        PEParams params = make_params(method, dim, 1, InitScheme::RandomUniform, 10000.0,
                                      rng.next_u64());
        std::vector<KernelSample> samples(n_points);
        for (auto& s : samples) {
            s.content.resize(dim);
            for (auto& v : s.content) v = rng.normal();
            s.position = {rng.uniform(-10.0, 10.0)};
        }
        Matrix g = gram_matrix(method, samples, params);
        PDReport report = pd_check(g, 1e-6);
        best.trials_used = trial + 1;
        best.min_eigenvalue = std::min(best.min_eigenvalue, report.min_eigenvalue);
        if (!report.is_pd) {
            report.trials_used = trial + 1;
            report.witness = WitnessSet{std::move(samples), std::move(params)};
            return report;
        }
    }
    best.matrix_size = n_points;
    return best;
}

double factorization_check(const std::vector<KernelSample>& samples, const PEParams& params) {
    if (params.method != Method::FStripe1)
        throw Error(ErrorCode::InvalidArgument, "factorization check is defined for fstripe1");
    QKMatrices qk = stack_samples(samples);
    PositionalIndexSequence pos = stack_positions(samples);
    Matrix exact = exact_attention(Method::FStripe1, qk, pos, pos, params).values;

    // Tensor-product route: per-dimension linear content kernel times the
    // unit's positional matrix.
    const std::size_t n = samples.size();
    Matrix product(n, n);
    for (std::size_t d = 0; d < params.unit_count(); ++d) {
        PositionalMatrix pm = positional_matrix_rff(params, d, pos, pos);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                product(i, j) += qk.q(i, d) * qk.k(j, d) * pm.values(i, j);
    }
    return max_abs_diff(exact, product);
}

std::string witness_to_json(const PDReport& report) {
    nlohmann::json j;
    j["min_eigenvalue"] = report.min_eigenvalue;
    j["max_eigenvalue"] = report.max_eigenvalue;
    j["matrix_size"] = report.matrix_size;
    j["is_pd"] = report.is_pd;
    j["trials_used"] = report.trials_used;
    if (report.witness.has_value()) {
        nlohmann::json w;
        w["method"] = to_string(report.witness->params.method);
        w["dim"] = report.witness->params.dim;
        nlohmann::json freqs = nlohmann::json::array();
        if (!report.witness->params.frequencies.empty())
            for (const auto& f : report.witness->params.frequencies.front()) freqs.push_back(f);
        w["frequencies"] = freqs;
        nlohmann::json samples = nlohmann::json::array();
        for (const auto& s : report.witness->samples)
            samples.push_back({{"content", s.content}, {"position", s.position}});
        w["samples"] = samples;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j.dump(2);
}

std::optional<WitnessSet> witness_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("witness") || j["witness"].is_null()) return std::nullopt;
    const auto& w = j["witness"];
    WitnessSet ws;
    std::string method = w.value("method", "fstripe1");
    Method m = Method::FStripe1;
    if (method == "rope") m = Method::RoPE;
    if (method == "ropepool") m = Method::RoPEPool;
    std::vector<std::vector<double>> freqs;
    for (const auto& f : w["frequencies"]) freqs.push_back(f.get<std::vector<double>>());
    ws.params = make_explicit_params(m, w["dim"].get<std::size_t>(), std::move(freqs));
    for (const auto& s : w["samples"]) {
        KernelSample ks;
        ks.content = s["content"].get<std::vector<double>>();
        ks.position = s["position"].get<std::vector<double>>();
        ws.samples.push_back(std::move(ks));
    }
    return ws;
}

} // namespace stripes
