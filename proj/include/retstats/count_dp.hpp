#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "retstats/markov_chain.hpp"
#include "retstats/pattern_automaton.hpp"

namespace retstats {

// Exact law of the occurrence count over a window of length L, truncated at
// kmax with the excess lumped into tail_mass. probs[0] equals the hitting
// time tail P(no occurrence before L).
struct CountDistribution {
    long long window = 0;
    std::vector<double> probs;
    double tail_mass = 0.0;

    std::size_t kmax() const { return probs.empty() ? 0 : probs.size() - 1; }
    double at(std::size_t k) const { return k < probs.size() ? probs[k] : 0.0; }
    double p_at_least_one() const { return 1.0 - probs.at(0); }

    double total_mass() const {
        double s = tail_mass;
        for (double p : probs) s += p;
        return s;
    }

    void validate() const {
        for (double p : probs)
            if (p < -1e-12) throw std::logic_error("CountDistribution: negative probability");
        if (std::abs(total_mass() - 1.0) > 1e-10)
            throw std::logic_error("CountDistribution: mass " + std::to_string(total_mass()) +
                                   " != 1");
    }
};

namespace detail {

// Joint law of (automaton state, last symbol, occurrence count) pushed through
// the chain one symbol at a time. Counts above kcap collapse into an overflow
// bucket. State iteration order is fixed, so identical queries are
// bit-identical no matter where the run stops.
class CountStepper {
public:
    CountStepper(const MarkovChainModel& chain, const CylinderWord& word, int kcap)
        : chain_(&chain),
          automaton_(word.symbols, chain.alphabet_size()),
          m_(chain.alphabet_size()),
          n_(word.length()),
          last_symbol_(word.symbols.back()),
          kcap_(kcap),
          buckets_(static_cast<std::size_t>(kcap) + 2),
          weight_(static_cast<std::size_t>(n_ + 1) * m_ * buckets_, 0.0),
          scratch_(weight_.size(), 0.0) {
        if (kcap < 0) throw std::invalid_argument("CountStepper: negative count cap");
        if (word_measure(chain, word) <= 0.0)
            throw std::invalid_argument("CountStepper: word has zero stationary probability");
    }

    // Feed the first symbol from the stationary law.
    void start_stationary() {
        std::fill(weight_.begin(), weight_.end(), 0.0);
        for (int a = 0; a < m_; ++a) {
            const double w = chain_->stationary(a);
            if (w == 0.0) continue;
            const int q = automaton_.next(0, a);
            const int k = (q == automaton_.match_state() && kcap_ >= 1) ? 1 : 0;
            // a one-symbol pattern can match immediately; count cap 0 sends
            // that straight to overflow
            const std::size_t bucket =
                (q == automaton_.match_state() && kcap_ == 0) ? overflow_index() : k;
            weight_[idx(q, a) + bucket] += w;
        }
        fed_ = 1;
    }

    // Condition on the word occupying positions 0..n-1: the automaton sits in
    // the match state, the chain in the word's last symbol, and the count
    // starts at zero (only subsequent occurrences are recorded).
    void start_conditioned() {
        std::fill(weight_.begin(), weight_.end(), 0.0);
        weight_[idx(automaton_.match_state(), last_symbol_)] = 1.0;
        fed_ = n_;
    }

    // Feed one more symbol through the chain.
    void step() {
        std::fill(scratch_.begin(), scratch_.end(), 0.0);
        const int match = automaton_.match_state();
        for (int q = 0; q <= n_; ++q) {
            for (int c = 0; c < m_; ++c) {
                const std::size_t base = idx(q, c);
                bool occupied = false;
                for (std::size_t k = 0; k < buckets_; ++k)
                    if (weight_[base + k] != 0.0) {
                        occupied = true;
                        break;
                    }
                if (!occupied) continue;
                for (int a = 0; a < m_; ++a) {
                    const double p = chain_->transition(c, a);
                    if (p == 0.0) continue;
                    const int qn = automaton_.next(q, a);
                    const std::size_t nbase = idx(qn, a);
                    if (qn == match) {
                        for (int k = 0; k < kcap_; ++k)
                            scratch_[nbase + k + 1] += p * weight_[base + k];
                        scratch_[nbase + overflow_index()] +=
                            p * (weight_[base + kcap_] + weight_[base + overflow_index()]);
                    } else {
                        for (std::size_t k = 0; k < buckets_; ++k)
                            scratch_[nbase + k] += p * weight_[base + k];
                    }
                }
            }
        }
        weight_.swap(scratch_);
        ++fed_;
    }

    long long symbols_fed() const { return fed_; }

    double mass_with_count(int k) const {
        double acc = 0.0;
        for (int q = 0; q <= n_; ++q)
            for (int c = 0; c < m_; ++c) acc += weight_[idx(q, c) + k];
        return acc;
    }

    double overflow_mass() const {
        double acc = 0.0;
        for (int q = 0; q <= n_; ++q)
            for (int c = 0; c < m_; ++c) acc += weight_[idx(q, c) + overflow_index()];
        return acc;
    }

    // P(count <= k) for k <= kcap.
    double mass_with_count_le(int k) const {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) acc += mass_with_count(j);
        return acc;
    }

    int kcap() const { return kcap_; }

private:
    std::size_t idx(int q, int c) const {
        return (static_cast<std::size_t>(q) * m_ + c) * buckets_;
    }
    std::size_t overflow_index() const { return buckets_ - 1; }
    int word_last_symbol() const;

    const MarkovChainModel* chain_;
    PatternAutomaton automaton_;
    int m_;
    int n_;
    int kcap_;
    std::size_t buckets_;
    std::vector<double> weight_;
    std::vector<double> scratch_;
    long long fed_ = 0;

    friend CountStepper make_conditioned_stepper(const MarkovChainModel&, const CylinderWord&,
                                                 int);
};

}  // namespace detail

// Exact law of Z^L = #{ j in [0, L) : the word occupies positions j..j+n-1 }
// under the stationary chain, i.e. occurrence counts (overlaps included) in a
// random string of length L + n - 1.
inline CountDistribution count_distribution_exact(const MarkovChainModel& chain,
                                                  const CylinderWord& word, long long window,
                                                  int kmax) {
    if (window < 1) throw std::invalid_argument("count_distribution_exact: window must be >= 1");
    if (kmax < 0 || kmax > window)
        throw std::invalid_argument("count_distribution_exact: kmax must lie in [0, window]");
    detail::CountStepper dp(chain, word, kmax);
    dp.start_stationary();
    const long long total = window + word.length() - 1;
    while (dp.symbols_fed() < total) dp.step();
    CountDistribution out;
    out.window = window;
    out.probs.resize(static_cast<std::size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k) out.probs[k] = dp.mass_with_count(k);
    out.tail_mass = dp.overflow_mass();
    return out;
}

// Hitting-time tail P(no occurrence starts before ell) for ell = 0..lmax;
// entry 0 is 1 by convention. Entry L is produced by the same recurrence as
// count_distribution_exact(L).probs[0], so the two agree exactly.
inline std::vector<double> entry_time_tail(const MarkovChainModel& chain,
                                           const CylinderWord& word, long long lmax) {
    if (lmax < 1) throw std::invalid_argument("entry_time_tail: lmax must be >= 1");
    std::vector<double> tail(static_cast<std::size_t>(lmax) + 1);
    tail[0] = 1.0;
    detail::CountStepper dp(chain, word, 0);
    dp.start_stationary();
    const int n = word.length();
    const long long total = lmax + n - 1;
    if (dp.symbols_fed() >= n) tail[dp.symbols_fed() - n + 1] = dp.mass_with_count(0);
    while (dp.symbols_fed() < total) {
        dp.step();
        if (dp.symbols_fed() >= n) tail[dp.symbols_fed() - n + 1] = dp.mass_with_count(0);
    }
    return tail;
}

// Conditional k-th return tail P(tau^k >= ell | word at positions 0..n-1) for
// ell = 1..lmax (index ell-1). Returns are occurrences starting at j >= 1;
// overlaps with the conditioning word count.
inline std::vector<double> conditional_return_tail(const MarkovChainModel& chain,
                                                   const CylinderWord& word, long long lmax,
                                                   int k) {
    if (lmax < 1) throw std::invalid_argument("conditional_return_tail: lmax must be >= 1");
    if (k < 1) throw std::invalid_argument("conditional_return_tail: k must be >= 1");
    detail::CountStepper dp(chain, word, k - 1);
    dp.start_conditioned();
    std::vector<double> tail(static_cast<std::size_t>(lmax));
    tail[0] = 1.0;  // tau >= 1 always
    for (long long ell = 2; ell <= lmax; ++ell) {
        dp.step();
        // tau^k >= ell  <=>  at most k-1 occurrences among positions 1..ell-1
        tail[ell - 1] = 1.0 - dp.overflow_mass();
    }
    return tail;
}

// Conditional law of the number of returns within positions 1..window-1 given
// the word at positions 0..n-1: entries 0..kcount-1 are exact, entry kcount
// holds P(>= kcount returns).
inline std::vector<double> conditional_hit_counts(const MarkovChainModel& chain,
                                                  const CylinderWord& word, long long window,
                                                  int kcount) {
    if (window < 1) throw std::invalid_argument("conditional_hit_counts: window must be >= 1");
    if (kcount < 1) throw std::invalid_argument("conditional_hit_counts: kcount must be >= 1");
    detail::CountStepper dp(chain, word, kcount - 1);
    dp.start_conditioned();
    for (long long step = 1; step < window; ++step) dp.step();
    std::vector<double> out(static_cast<std::size_t>(kcount) + 1);
    for (int j = 0; j < kcount; ++j) out[j] = dp.mass_with_count(j);
    out[kcount] = dp.overflow_mass();
    return out;
}

namespace detail {
inline int CountStepper::word_last_symbol() const {
    // the automaton's match state is only reachable by reading the word's
    // last symbol, recovered here from the transition table
    for (int c = 0; c < m_; ++c)
        for (int q = 0; q < n_; ++q)
            if (automaton_.next(q, c) == automaton_.match_state()) return c;
    return 0;
}
}  // namespace detail

}  // namespace retstats
