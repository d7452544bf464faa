#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace retstats {

// Deterministic automaton tracking the longest prefix of a pattern that is a
// suffix of the text read so far (states 0..n). Built from the pattern's
// failure function, so overlapping occurrences are tracked: every transition
// into the match state n is one occurrence, and state n continues as its
// longest proper border would.
class PatternAutomaton {
public:
    PatternAutomaton(const std::vector<int>& word, int alphabet) {
        if (word.empty()) throw std::invalid_argument("PatternAutomaton: empty word");
        if (alphabet < 1) throw std::invalid_argument("PatternAutomaton: empty alphabet");
        for (int s : word)
            if (s < 0 || s >= alphabet)
                throw std::invalid_argument("PatternAutomaton: symbol outside alphabet");
        n_ = static_cast<int>(word.size());
        m_ = alphabet;

        std::vector<int> border(n_, 0);  // failure function of the pattern
        for (int i = 1; i < n_; ++i) {
            int k = border[i - 1];
            while (k > 0 && word[i] != word[k]) k = border[k - 1];
            if (word[i] == word[k]) ++k;
            border[i] = k;
        }

        delta_.assign(static_cast<std::size_t>(n_ + 1) * m_, 0);
        for (int a = 0; a < m_; ++a) delta_[a] = (a == word[0]) ? 1 : 0;
        for (int q = 1; q <= n_; ++q) {
            const int f = border[q - 1];
            for (int a = 0; a < m_; ++a)
                delta_[static_cast<std::size_t>(q) * m_ + a] =
                    (q < n_ && a == word[q]) ? q + 1
                                             : delta_[static_cast<std::size_t>(f) * m_ + a];
        }
    }

    int next(int state, int symbol) const {
        return delta_[static_cast<std::size_t>(state) * m_ + symbol];
    }

    int match_state() const { return n_; }
    int state_count() const { return n_ + 1; }
    int alphabet() const { return m_; }

    // Occurrences of the pattern in a symbol sequence (overlaps counted).
    template <typename Seq>
    long long count_occurrences(const Seq& text) const {
        int q = 0;
        long long hits = 0;
        for (int a : text) {
            q = next(q, a);
            if (q == n_) ++hits;
        }
        return hits;
    }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<int> delta_;
};

}  // namespace retstats
