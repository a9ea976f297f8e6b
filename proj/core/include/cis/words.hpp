#pragma once

#include "cis/numeric.hpp"
#include "cis/random.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cis {

using Letter = std::int32_t;

/// A multiset permutation: every value of [n] = {1..n} appears exactly m
/// times. Immutable after construction.
class Word {
public:
    /// Validates the multiplicity and alphabet constraints.
    Word(std::vector<Letter> letters, int m, int n);

    std::span<const Letter> letters() const { return letters_; }
    int m() const { return m_; }
    int n() const { return n_; }
    std::size_t size() const { return letters_.size(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }

    /// Digits concatenated when n <= 9 ("211323"), otherwise space separated.
    std::string to_string() const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    struct Unchecked {};
    Word(Unchecked, std::vector<Letter> letters, int m, int n);

    std::vector<Letter> letters_;
    int m_;
    int n_;

    friend Word sample_uniform(int, int, RandomSource&);
    friend void enumerate_words(int, int, const std::function<void(const Word&)>&, std::uint64_t);
};

Word make_word(std::vector<Letter> letters, int m, int n);
/// Parses "211323" (single digits) or "2 1 1 3 2 3".
Word parse_word(const std::string& text, int m, int n);

/// Uniform element of S_{m,n} via Fisher-Yates over the sorted multiset.
Word sample_uniform(int m, int n, RandomSource& rng);
/// Same law, written into a caller-owned buffer of size m*n (hot loops).
void sample_uniform_into(int m, int n, RandomSource& rng, std::vector<Letter>& out);

/// Length of the longest subsequence i, i+1, ..., j (greedy scan).
int l_start(std::span<const Letter> letters, int i);
inline int l_start(const Word& w, int i) { return l_start(w.letters(), i); }
inline int l1(std::span<const Letter> letters) { return l_start(letters, 1); }
inline int l1(const Word& w) { return l_start(w.letters(), 1); }

/// max over i of l_start, via a single pass dynamic program. `n` is the
/// alphabet size.
int l_max(std::span<const Letter> letters, int n);
inline int l_max(const Word& w) { return l_max(w.letters(), w.n()); }

/// Longest strictly increasing subsequence (patience sorting).
int longest_increasing(std::span<const Letter> letters);

/// True when `pattern` occurs as a (not necessarily contiguous) subsequence.
bool contains_subsequence(std::span<const Letter> letters, std::span<const Letter> pattern);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// |S_{m,n}| = (mn)! / (m!)^n.
BigInt multiset_count(int m, int n);

/// Visits each element of S_{m,n} exactly once in lexicographic order.
/// Throws SpaceTooLarge when |S_{m,n}| exceeds `cap`.
void enumerate_words(int m, int n, const std::function<void(const Word&)>& visit,
                     std::uint64_t cap = kDefaultEnumerationCap);
std::vector<Word> all_words(int m, int n, std::uint64_t cap = kDefaultEnumerationCap);

/// Number of words with l1 = n, by enumeration.
BigInt count_complete_bruteforce(int m, int n, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace cis
