#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "retstats/discrete_law.hpp"

namespace retstats {

struct CompoundPoissonParams {
    double t = 1.0;  // expected number of clusters per window
    ClusterLaw law;

    void validate() const {
        if (!(t > 0.0)) throw std::invalid_argument("CompoundPoissonParams: t must be positive");
        law.validate();
    }
};

struct PolyaAeppliParams {
    double lambda = 1.0;
    double theta = 0.0;

    // theta = 1 would put all mass on infinite clusters; the pmf below is
    // identically zero there for k >= 1, so it is rejected outright.
    void validate() const {
        if (!(lambda > 0.0))
            throw std::invalid_argument("PolyaAeppliParams: lambda must be positive");
        if (theta < 0.0 || theta >= 1.0)
            throw std::invalid_argument(
                "PolyaAeppliParams: theta must lie in [0,1); theta = 1 is degenerate");
    }
};

// Convolution powers of a cluster law: pmf(i, k) = P(X_1 + ... + X_i = k),
// built row by row up to k = kmax. Row i has support starting at i because
// cluster sizes are at least one. Values for k <= kmax are exact for the
// truncated law: size-j clusters with j > kmax cannot contribute there.
class ClusterConvolution {
public:
    ClusterConvolution(const ClusterLaw& law, std::size_t kmax) : kmax_(kmax) {
        std::vector<double> base(kmax + 1, 0.0);
        for (std::size_t k = 1; k <= std::min(kmax, law.max_size()); ++k)
            base[k] = law.lambda(k);
        rows_.reserve(kmax + 1);
        std::vector<double> row(kmax + 1, 0.0);
        row[0] = 1.0;
        rows_.push_back(row);
        for (std::size_t i = 1; i <= kmax; ++i) {
            const std::vector<double>& prev = rows_.back();
            std::vector<double> next(kmax + 1, 0.0);
            for (std::size_t k = i; k <= kmax; ++k) {
                double acc = 0.0;
                for (std::size_t j = 1; j + (i - 1) <= k; ++j) acc += base[j] * prev[k - j];
                next[k] = acc;
            }
            rows_.push_back(std::move(next));
        }
    }

    double pmf(std::size_t i, std::size_t k) const {
        if (k > kmax_ || i >= rows_.size()) return 0.0;
        return rows_[i][k];
    }

private:
    std::size_t kmax_;
    std::vector<std::vector<double>> rows_;
};

namespace detail {

inline void check_truncation(const ClusterLaw& law, std::size_t k) {
    if (k > law.max_size() && law.tail_mass > kMassTolerance)
        throw std::invalid_argument(
            "cluster law truncated below requested k with non-negligible tail mass; "
            "extend the law's support");
}

}  // namespace detail

// P(W = k) for W a Poisson(t) sum of i.i.d. cluster sizes:
// e^{-t} sum_{i=1..k} (t^i / i!) P(S_i = k), with P(W = 0) = e^{-t}.
inline double compound_poisson_pmf(const CompoundPoissonParams& params, std::size_t k) {
    params.validate();
    if (k == 0) return std::exp(-params.t);
    detail::check_truncation(params.law, k);
    const ClusterConvolution conv(params.law, k);
    double weight = std::exp(-params.t);
    double acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
        weight *= params.t / static_cast<double>(i);
        acc += weight * conv.pmf(i, k);
    }
    return acc;
}

// pmf table for k = 0..kmax, sharing one convolution table across entries.
inline DiscreteLaw compound_poisson_table(const CompoundPoissonParams& params,
                                          std::size_t kmax) {
    params.validate();
    detail::check_truncation(params.law, kmax);
    const ClusterConvolution conv(params.law, kmax);
    DiscreteLaw out;
    out.probs.assign(kmax + 1, 0.0);
    out.probs[0] = std::exp(-params.t);
    for (std::size_t k = 1; k <= kmax; ++k) {
        double weight = out.probs[0];
        double acc = 0.0;
        for (std::size_t i = 1; i <= k; ++i) {
            weight *= params.t / static_cast<double>(i);
            acc += weight * conv.pmf(i, k);
        }
        out.probs[k] = acc;
    }
    out.tail_mass = std::max(0.0, 1.0 - out.total_mass());
    return out;
}

// Geometric-cluster compound Poisson in closed form:
// P(W = k) = e^{-lambda} sum_{j=1..k} theta^{k-j} (1-theta)^j (lambda^j / j!) C(k-1, j-1)
// and P(W = 0) = e^{-lambda}. Terms are accumulated from j = k downward so
// theta = 0 needs no special casing.
inline double polya_aeppli_pmf(const PolyaAeppliParams& params, std::size_t k) {
    params.validate();
    const double expl = std::exp(-params.lambda);
    if (k == 0) return expl;
    const double base = (1.0 - params.theta) * params.lambda;
    // a = (1-theta)^j lambda^j / j!, c = C(k-1, j-1), th = theta^{k-j}
    double a = 1.0;
    for (std::size_t j = 1; j <= k; ++j) a *= base / static_cast<double>(j);
    double c = 1.0;
    double th = 1.0;
    double acc = 0.0;
    for (std::size_t j = k; j >= 1; --j) {
        acc += th * a * c;
        if (j == 1) break;
        a *= static_cast<double>(j) / base;
        c *= static_cast<double>(j - 1) / static_cast<double>(k - j + 1);
        th *= params.theta;
    }
    return expl * acc;
}

inline DiscreteLaw polya_aeppli_table(const PolyaAeppliParams& params, std::size_t kmax) {
    DiscreteLaw out;
    out.probs.resize(kmax + 1);
    for (std::size_t k = 0; k <= kmax; ++k) out.probs[k] = polya_aeppli_pmf(params, k);
    out.tail_mass = std::max(0.0, 1.0 - out.total_mass());
    return out;
}

// P(W = k) for W a Binomial(n, p) sum of i.i.d. cluster sizes. The generating
// function is (1 - p(1 - phi(z)))^n. Computed in plain binary64; for very
// large n with p bounded away from 0 the binomial weights underflow, which is
// outside the intended p*n ~ t regime.
inline double compound_binomial_pmf(double p, long long n, const ClusterLaw& law,
                                    std::size_t k) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("compound_binomial_pmf: p must lie in (0,1)");
    if (n < 1) throw std::invalid_argument("compound_binomial_pmf: n must be positive");
    law.validate();
    detail::check_truncation(law, k);
    const ClusterConvolution conv(law, k);
    double b = std::pow(1.0 - p, static_cast<double>(n));  // P(B = i), starting at i = 0
    if (k == 0) return b;
    const double ratio = p / (1.0 - p);
    const std::size_t imax = std::min<std::size_t>(k, static_cast<std::size_t>(n));
    double acc = 0.0;
    for (std::size_t i = 1; i <= imax; ++i) {
        b *= ratio * static_cast<double>(n - static_cast<long long>(i) + 1) /
             static_cast<double>(i);
        acc += b * conv.pmf(i, k);
    }
    return acc;
}

inline DiscreteLaw compound_binomial_table(double p, long long n, const ClusterLaw& law,
                                           std::size_t kmax) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("compound_binomial_table: p must lie in (0,1)");
    if (n < 1) throw std::invalid_argument("compound_binomial_table: n must be positive");
    law.validate();
    detail::check_truncation(law, kmax);
    const ClusterConvolution conv(law, kmax);
    DiscreteLaw out;
    out.probs.assign(kmax + 1, 0.0);
    const double b0 = std::pow(1.0 - p, static_cast<double>(n));
    out.probs[0] = b0;
    const double ratio = p / (1.0 - p);
    for (std::size_t k = 1; k <= kmax; ++k) {
        double b = b0;
        double acc = 0.0;
        const std::size_t imax = std::min<std::size_t>(k, static_cast<std::size_t>(n));
        for (std::size_t i = 1; i <= imax; ++i) {
            b *= ratio * static_cast<double>(n - static_cast<long long>(i) + 1) /
                 static_cast<double>(i);
            acc += b * conv.pmf(i, k);
        }
        out.probs[k] = acc;
    }
    out.tail_mass = std::max(0.0, 1.0 - out.total_mass());
    return out;
}

}  // namespace retstats
