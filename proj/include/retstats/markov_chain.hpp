#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace retstats {

// A word over the chain's alphabet naming the cylinder set of points whose
// first n partition symbols match it.
struct CylinderWord {
    std::vector<int> symbols;

    CylinderWord() = default;
    explicit CylinderWord(std::vector<int> syms) : symbols(std::move(syms)) {
        if (symbols.empty())
            throw std::invalid_argument("CylinderWord: depth must be at least 1");
    }

    int length() const { return static_cast<int>(symbols.size()); }

    // All-equal word of the given depth, e.g. repeated(0, 12).
    static CylinderWord repeated(int symbol, int depth) {
        if (depth < 1) throw std::invalid_argument("CylinderWord: depth must be at least 1");
        return CylinderWord(std::vector<int>(static_cast<std::size_t>(depth), symbol));
    }

    // True when other extends *this, i.e. the cylinder of other is nested
    // inside the cylinder of *this.
    bool is_prefix_of(const CylinderWord& other) const {
        if (symbols.size() > other.symbols.size()) return false;
        return std::equal(symbols.begin(), symbols.end(), other.symbols.begin());
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(symbols[i]);
        }
        return s;
    }
};

// Uniform mixing coefficient upper bound phi(k) <= C * rho^k, optionally with
// a tabulated prefix. alpha_mode marks the same shape used as an absolute
// (alpha-mixing) bound rather than a relative (phi-mixing) one.
struct MixingBound {
    double C = 1.0;
    double rho = 0.0;
    bool alpha_mode = false;
    std::vector<double> table;  // optional tabulated phi(k), k = 0,1,...

    // Gaps <= 0 carry no information: the trivial bound 1 is returned.
    double operator()(double gap) const {
        if (!(gap > 0.0)) return 1.0;
        if (!table.empty()) {
            const std::size_t idx = static_cast<std::size_t>(gap);
            if (idx < table.size()) return table[idx];
        }
        return std::min(1.0, C * std::pow(rho, gap));
    }

    void validate() const {
        if (!(C > 0.0)) throw std::invalid_argument("MixingBound: C must be positive");
        if (rho < 0.0 || rho >= 1.0)
            throw std::invalid_argument("MixingBound: rho must lie in [0,1)");
        for (std::size_t i = 1; i < table.size(); ++i)
            if (table[i] > table[i - 1] + 1e-15)
                throw std::invalid_argument("MixingBound: tabulated values must be nonincreasing");
    }
};

namespace detail {

// Solves pi^T P = pi^T, sum pi = 1 by Gaussian elimination on (P^T - I) with
// the last equation replaced by the normalization.
inline std::vector<double> solve_stationary(const std::vector<std::vector<double>>& p) {
    const std::size_t m = p.size();
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    for (std::size_t i = 0; i + 1 < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) a[i][j] = p[j][i] - (i == j ? 1.0 : 0.0);
        a[i][m] = 0.0;
    }
    for (std::size_t j = 0; j < m; ++j) a[m - 1][j] = 1.0;
    a[m - 1][m] = 1.0;

    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-14)
            throw std::invalid_argument("stationary solve: singular system");
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j <= m; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<double> pi(m);
    for (std::size_t i = 0; i < m; ++i) pi[i] = a[i][m] / a[i][i];
    return pi;
}

}  // namespace detail

// Finite-alphabet stationary Markov measure. Construction validates that the
// transition matrix is row-stochastic, irreducible and aperiodic, and that
// the stationary vector (given or solved for) is invariant.
class MarkovChainModel {
public:
    explicit MarkovChainModel(std::vector<std::vector<double>> transition,
                              std::optional<std::vector<double>> stationary = std::nullopt)
        : p_(std::move(transition)) {
        m_ = static_cast<int>(p_.size());
        if (m_ < 1) throw std::invalid_argument("MarkovChainModel: empty alphabet");
        for (std::size_t i = 0; i < p_.size(); ++i) {
            if (static_cast<int>(p_[i].size()) != m_)
                throw std::invalid_argument("MarkovChainModel: transition row " +
                                            std::to_string(i) + " has wrong length");
            double sum = 0.0;
            for (double v : p_[i]) {
                if (v < 0.0)
                    throw std::invalid_argument("MarkovChainModel: negative entry in row " +
                                                std::to_string(i));
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw std::invalid_argument("MarkovChainModel: row " + std::to_string(i) +
                                            " sums to " + std::to_string(sum));
        }
        check_irreducible_aperiodic();
        if (stationary) {
            pi_ = std::move(*stationary);
            if (static_cast<int>(pi_.size()) != m_)
                throw std::invalid_argument("MarkovChainModel: stationary vector has wrong length");
            double sum = 0.0;
            for (double v : pi_) {
                if (v < 0.0)
                    throw std::invalid_argument("MarkovChainModel: negative stationary entry");
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw std::invalid_argument("MarkovChainModel: stationary vector sums to " +
                                            std::to_string(sum));
        } else {
            pi_ = detail::solve_stationary(p_);
        }
        for (int j = 0; j < m_; ++j) {
            double acc = 0.0;
            for (int i = 0; i < m_; ++i) acc += pi_[i] * p_[i][j];
            if (std::abs(acc - pi_[j]) > 1e-10)
                throw std::invalid_argument("MarkovChainModel: vector is not invariant");
        }
    }

    // Product measure: every row equals the given marginal.
    static MarkovChainModel iid(const std::vector<double>& marginal) {
        return MarkovChainModel(
            std::vector<std::vector<double>>(marginal.size(), marginal),
            std::optional<std::vector<double>>(marginal));
    }

    int alphabet_size() const { return m_; }
    double transition(int from, int to) const { return p_[from][to]; }
    const std::vector<std::vector<double>>& transition_matrix() const { return p_; }
    double stationary(int s) const { return pi_[s]; }
    const std::vector<double>& stationary_vector() const { return pi_; }

private:
    void check_irreducible_aperiodic() const {
        // strong connectivity in both directions from state 0
        auto reach = [&](bool transpose) {
            std::vector<char> seen(m_, 0);
            std::vector<int> stack{0};
            seen[0] = 1;
            while (!stack.empty()) {
                const int u = stack.back();
                stack.pop_back();
                for (int v = 0; v < m_; ++v) {
                    const double w = transpose ? p_[v][u] : p_[u][v];
                    if (w > 0.0 && !seen[v]) {
                        seen[v] = 1;
                        stack.push_back(v);
                    }
                }
            }
            return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
        };
        if (!reach(false) || !reach(true))
            throw std::invalid_argument("MarkovChainModel: chain is not irreducible");

        // period = gcd over edges of depth(u) + 1 - depth(v) on a BFS tree
        std::vector<int> depth(m_, -1);
        depth[0] = 0;
        std::vector<int> queue{0};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            for (int v = 0; v < m_; ++v)
                if (p_[u][v] > 0.0 && depth[v] < 0) {
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
        }
        int g = 0;
        for (int u = 0; u < m_; ++u)
            for (int v = 0; v < m_; ++v)
                if (p_[u][v] > 0.0) g = std::gcd(g, std::abs(depth[u] + 1 - depth[v]));
        if (g != 1)
            throw std::invalid_argument("MarkovChainModel: chain is periodic (period " +
                                        std::to_string(g) + ")");
    }

    int m_;
    std::vector<std::vector<double>> p_;
    std::vector<double> pi_;
};

// Measure of the cylinder named by the word: pi(w_0) * prod P(w_i, w_{i+1}).
inline double word_measure(const MarkovChainModel& chain, const CylinderWord& word) {
    for (int s : word.symbols)
        if (s < 0 || s >= chain.alphabet_size())
            throw std::invalid_argument("word_measure: symbol outside alphabet");
    double mu = chain.stationary(word.symbols[0]);
    for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i)
        mu *= chain.transition(word.symbols[i], word.symbols[i + 1]);
    return mu;
}

namespace detail {

inline double dobrushin(const std::vector<std::vector<double>>& p) {
    const std::size_t m = p.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            double tv = 0.0;
            for (std::size_t a = 0; a < m; ++a) tv += std::abs(p[i][a] - p[j][a]);
            worst = std::max(worst, 0.5 * tv);
        }
    return worst;
}

inline std::vector<std::vector<double>> mat_mul(const std::vector<std::vector<double>>& a,
                                                const std::vector<std::vector<double>>& b) {
    const std::size_t m = a.size();
    std::vector<std::vector<double>> c(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            const double v = a[i][k];
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += v * b[k][j];
        }
    return c;
}

}  // namespace detail

// Certified exponential mixing bound phi(k) <= C * rho^k from the Dobrushin
// contraction coefficient. When a single step does not contract, the first
// contracting power P^h (h <= m^2) is used, giving phi(k) <= rho_h^(k/h - 1).
inline MixingBound phi_bound(const MarkovChainModel& chain) {
    const double rho1 = detail::dobrushin(chain.transition_matrix());
    if (rho1 < 1.0 - 1e-12) return MixingBound{1.0, rho1, false, {}};
    auto power = chain.transition_matrix();
    const int m = chain.alphabet_size();
    for (int h = 2; h <= m * m; ++h) {
        power = detail::mat_mul(power, chain.transition_matrix());
        const double rho_h = detail::dobrushin(power);
        if (rho_h < 1.0 - 1e-12)
            return MixingBound{1.0 / rho_h, std::pow(rho_h, 1.0 / h), false, {}};
    }
    throw std::invalid_argument("phi_bound: no power up to m^2 scrambles");
}

}  // namespace retstats
