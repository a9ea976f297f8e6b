#pragma once

// Test-only reference implementations. They deliberately avoid the library's
// algorithms so they can act as independent checks.

#include "cis/words.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace oracle {

/// Longest j such that 1..j is a subsequence, by trying every j and every
/// embedding position via a full DP table (no greedy argument).
inline int l_start_exhaustive(std::span<const cis::Letter> w, int start) {
    int best = 0;
    for (int j = start;; ++j) {
        const int len = j - start + 1;
        // can[i][p]: first p pattern letters embed into the first i letters
        std::vector<std::vector<char>> can(w.size() + 1, std::vector<char>(len + 1, 0));
        for (std::size_t i = 0; i <= w.size(); ++i) can[i][0] = 1;
        for (std::size_t i = 1; i <= w.size(); ++i)
            for (int p = 1; p <= len; ++p)
                can[i][p] = can[i - 1][p] || (can[i - 1][p - 1] && w[i - 1] == start + p - 1);
        if (!can[w.size()][len]) break;
        best = len;
    }
    return best;
}

/// Distribution of L_{m,n} over all of S_{m,n}: counts[k] = #{pi : L(pi) = k}.
inline std::map<int, std::uint64_t> lmax_histogram(int m, int n) {
    std::map<int, std::uint64_t> h;
    cis::enumerate_words(m, n, [&](const cis::Word& w) {
        int best = 0;
        for (int i = 1; i <= n; ++i) best = std::max(best, l_start_exhaustive(w.letters(), i));
        ++h[best];
    });
    return h;
}

}  // namespace oracle
