#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace retstats {

inline constexpr double kMassTolerance = 1e-12;

// Law on {0,1,2,...} truncated at probs.size()-1. Mass beyond the truncation
// is kept explicit in tail_mass instead of being renormalized away, so
// truncation error stays visible to every consumer.
struct DiscreteLaw {
    std::vector<double> probs;  // probs[k] = P(X = k)
    double tail_mass = 0.0;

    double at(std::size_t k) const { return k < probs.size() ? probs[k] : 0.0; }

    double total_mass() const {
        double s = tail_mass;
        for (double p : probs) s += p;
        return s;
    }

    void validate() const {
        if (tail_mass < -kMassTolerance)
            throw std::invalid_argument("DiscreteLaw: negative tail mass");
        for (std::size_t k = 0; k < probs.size(); ++k)
            if (probs[k] < -kMassTolerance)
                throw std::invalid_argument("DiscreteLaw: negative probability at k=" +
                                            std::to_string(k));
        if (std::abs(total_mass() - 1.0) > kMassTolerance)
            throw std::invalid_argument("DiscreteLaw: mass " +
                                        std::to_string(total_mass()) + " != 1");
    }
};

// Cluster-size law: probabilities of cluster sizes k = 1, 2, ... Clusters are
// nonempty, so indexing starts at one; lambda(k) is the size-k probability.
struct ClusterLaw {
    std::vector<double> probs;  // probs[i] = P(size = i+1)
    double tail_mass = 0.0;

    std::size_t max_size() const { return probs.size(); }

    double lambda(std::size_t k) const {
        if (k == 0) throw std::invalid_argument("ClusterLaw: sizes start at 1");
        return k <= probs.size() ? probs[k - 1] : 0.0;
    }

    double total_mass() const {
        double s = tail_mass;
        for (double p : probs) s += p;
        return s;
    }

    double mean_size() const {
        double s = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i)
            s += static_cast<double>(i + 1) * probs[i];
        return s;
    }

    void validate() const {
        if (probs.empty())
            throw std::invalid_argument("ClusterLaw: empty support");
        if (tail_mass < -kMassTolerance)
            throw std::invalid_argument("ClusterLaw: negative tail mass");
        for (double p : probs)
            if (p < -kMassTolerance)
                throw std::invalid_argument("ClusterLaw: negative probability");
        if (std::abs(total_mass() - 1.0) > kMassTolerance)
            throw std::invalid_argument("ClusterLaw: mass " +
                                        std::to_string(total_mass()) + " != 1");
    }

    // All clusters have size one.
    static ClusterLaw point_mass() { return ClusterLaw{{1.0}, 0.0}; }

    // P(size = j) = (1-theta) theta^(j-1), truncated at max_size. theta = 0 is
    // the point mass at one.
    static ClusterLaw geometric(double theta, std::size_t max_size) {
        if (theta < 0.0 || theta >= 1.0)
            throw std::invalid_argument("ClusterLaw::geometric: theta must be in [0,1)");
        if (max_size == 0)
            throw std::invalid_argument("ClusterLaw::geometric: empty support");
        ClusterLaw law;
        law.probs.resize(max_size);
        double w = 1.0 - theta;
        for (std::size_t i = 0; i < max_size; ++i) {
            law.probs[i] = w;
            w *= theta;
        }
        law.tail_mass = std::pow(theta, static_cast<double>(max_size));
        return law;
    }
};

// Probability generating function sum_k p_k z^k for z in [0,1]. Evaluates to
// 1 - tail_mass at z = 1.
inline double pgf_eval(const DiscreteLaw& law, double z) {
    if (z < 0.0 || z > 1.0)
        throw std::invalid_argument("pgf_eval: z must lie in [0,1]");
    double acc = 0.0;
    for (std::size_t k = law.probs.size(); k-- > 0;) acc = acc * z + law.probs[k];
    return acc;
}

// Total variation distance; the two truncation tails are compared as a single
// lumped bin.
inline double total_variation(const DiscreteLaw& a, const DiscreteLaw& b) {
    const std::size_t kmax = std::max(a.probs.size(), b.probs.size());
    double s = std::abs(a.tail_mass - b.tail_mass);
    for (std::size_t k = 0; k < kmax; ++k) s += std::abs(a.at(k) - b.at(k));
    return 0.5 * s;
}

}  // namespace retstats
