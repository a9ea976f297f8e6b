#include "cis/words.hpp"

#include "cis/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace cis {

namespace {

void check_shape(int m, int n) {
    if (m < 1 || n < 1) throw InvalidArgument("m and n must be positive");
    if (static_cast<std::int64_t>(m) * n > std::numeric_limits<std::int32_t>::max())
        throw InvalidArgument("m*n exceeds 2^31-1");
}

std::vector<Letter> sorted_multiset(int m, int n) {
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(m) * n);
    for (Letter v = 1; v <= n; ++v) out.insert(out.end(), m, v);
    return out;
}

}  // namespace

Word::Word(std::vector<Letter> letters, int m, int n) : letters_(std::move(letters)), m_(m), n_(n) {
    check_shape(m, n);
    std::vector<int> counts(static_cast<std::size_t>(n) + 1, 0);
    for (Letter v : letters_) {
        if (v < 1 || v > n)
            throw AlphabetViolation("letter " + std::to_string(v) + " outside [1, " +
                                    std::to_string(n) + "]");
        ++counts[v];
    }
    for (int v = 1; v <= n; ++v) {
        if (counts[v] != m)
            throw MultiplicityViolation("value " + std::to_string(v) + " occurs " +
                                        std::to_string(counts[v]) + " times, expected " +
                                        std::to_string(m));
    }
}

Word::Word(Unchecked, std::vector<Letter> letters, int m, int n)
    : letters_(std::move(letters)), m_(m), n_(n) {}

std::string Word::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (n_ > 9 && i > 0) os << ' ';
        os << letters_[i];
    }
    return os.str();
}

Word make_word(std::vector<Letter> letters, int m, int n) {
    return Word(std::move(letters), m, n);
}

Word parse_word(const std::string& text, int m, int n) {
    std::vector<Letter> letters;
    if (text.find_first_of(" ,") == std::string::npos) {
        for (char c : text) {
            if (c < '0' || c > '9') throw InvalidArgument("bad letter '" + std::string(1, c) + "'");
            letters.push_back(c - '0');
        }
    } else {
        std::string cleaned = text;
        std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
        std::istringstream is(cleaned);
        long v;
        while (is >> v) letters.push_back(static_cast<Letter>(v));
        if (!is.eof()) throw InvalidArgument("cannot parse word '" + text + "'");
    }
    return Word(std::move(letters), m, n);
}

void sample_uniform_into(int m, int n, RandomSource& rng, std::vector<Letter>& out) {
    check_shape(m, n);
    const std::size_t len = static_cast<std::size_t>(m) * n;
    out.resize(len);
    std::size_t pos = 0;
    for (Letter v = 1; v <= n; ++v)
        for (int c = 0; c < m; ++c) out[pos++] = v;
    // Fisher-Yates: every arrangement of the labeled multiset is equally
    // likely, and each word has (m!)^n labeled preimages.
    for (std::size_t i = len; i > 1; --i) {
        auto j = static_cast<std::size_t>(rng.uniform(0, i - 1));
        std::swap(out[i - 1], out[j]);
    }
}

Word sample_uniform(int m, int n, RandomSource& rng) {
    std::vector<Letter> letters;
    sample_uniform_into(m, n, rng, letters);
    return Word(Word::Unchecked{}, std::move(letters), m, n);
}

int l_start(std::span<const Letter> letters, int i) {
    Letter target = i;
    for (Letter v : letters)
        if (v == target) ++target;
    return target - i;
}

int l_max(std::span<const Letter> letters, int n) {
    std::vector<int> best(static_cast<std::size_t>(n) + 1, 0);
    int answer = 0;
    for (Letter v : letters) {
        int cand = best[v - 1] + 1;
        if (cand > best[v]) {
            best[v] = cand;
            answer = std::max(answer, cand);
        }
    }
    return answer;
}

int longest_increasing(std::span<const Letter> letters) {
    std::vector<Letter> tails;
    for (Letter v : letters) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end())
            tails.push_back(v);
        else
            *it = v;
    }
    return static_cast<int>(tails.size());
}

bool contains_subsequence(std::span<const Letter> letters, std::span<const Letter> pattern) {
    std::size_t k = 0;
    for (Letter v : letters) {
        if (k == pattern.size()) break;
        if (v == pattern[k]) ++k;
    }
    return k == pattern.size();
}

BigInt multiset_count(int m, int n) {
    check_shape(m, n);
    BigInt denom = 1;
    BigInt mf = factorial(static_cast<unsigned>(m));
    for (int i = 0; i < n; ++i) denom *= mf;
    return factorial(static_cast<unsigned>(m) * static_cast<unsigned>(n)) / denom;
}

void enumerate_words(int m, int n, const std::function<void(const Word&)>& visit,
                     std::uint64_t cap) {
    check_shape(m, n);
    BigInt size = multiset_count(m, n);
    if (size > cap)
        throw SpaceTooLarge("|S_{" + std::to_string(m) + "," + std::to_string(n) +
                            "}| = " + size.str() + " exceeds enumeration cap " +
                            std::to_string(cap));
    std::vector<Letter> letters = sorted_multiset(m, n);
    do {
        visit(Word(Word::Unchecked{}, letters, m, n));
    } while (std::next_permutation(letters.begin(), letters.end()));
}

std::vector<Word> all_words(int m, int n, std::uint64_t cap) {
    std::vector<Word> out;
    enumerate_words(m, n, [&](const Word& w) { out.push_back(w); }, cap);
    return out;
}

BigInt count_complete_bruteforce(int m, int n, std::uint64_t cap) {
    std::uint64_t count = 0;
    enumerate_words(m, n, [&](const Word& w) { count += (l1(w) == n); }, cap);
    return BigInt(count);
}

}  // namespace cis
