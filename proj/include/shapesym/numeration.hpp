#pragma once

#include <gmpxx.h>

#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "shapesym/dfa.hpp"

namespace shapesym {

using Nat = mpz_class;

// A finite alphabet with a total order; the rank of a letter is its index
// in the declared sequence.
class OrderedAlphabet {
public:
    OrderedAlphabet() = default; // empty placeholder
    explicit OrderedAlphabet(std::vector<Symbol> letters);
    int size() const { return static_cast<int>(letters_.size()); }
    const std::vector<Symbol>& letters() const { return letters_; }
    const Symbol& letter(int rank) const { return letters_[rank]; }
    int rank(const Symbol& s) const;
    std::optional<int> find(const Symbol& s) const;
    bool contains(const Symbol& s) const { return find(s).has_value(); }

    bool operator==(const OrderedAlphabet& other) const { return letters_ == other.letters_; }

private:
    std::vector<Symbol> letters_;
    std::map<Symbol, int> ranks_;
};

enum class Ordering { Less, Equal, Greater };

// Genealogical (radix) order: shorter words first, ties broken
// lexicographically by letter rank.
Ordering genealogical_cmp(std::span<const Symbol> u, std::span<const Symbol> v,
                          const OrderedAlphabet& alphabet);

// An abstract numeration system: the words of an infinite regular language
// enumerated in genealogical order. rep maps n to the (n+1)st word; val is
// its inverse on the language.
class NumerationSystem {
public:
    // The automaton must use arity-1 labels over the alphabet and accept an
    // infinite language.
    NumerationSystem(OrderedAlphabet alphabet, Dfa language);
    NumerationSystem(const NumerationSystem& other);
    NumerationSystem& operator=(const NumerationSystem& other);

    const OrderedAlphabet& alphabet() const { return alphabet_; }
    const Dfa& language() const { return language_; }
    bool contains_epsilon() const { return language_.is_final(language_.initial()); }

    bool accepts(std::span<const Symbol> w) const;

    Word rep(const Nat& n) const;
    Nat val(std::span<const Symbol> w) const;

    // Number of words of length exactly s.
    Nat count_words(int s) const;
    // Number of words of length at most s.
    Nat count_up_to(int s) const;

    bool operator==(const NumerationSystem& other) const {
        return alphabet_ == other.alphabet_ && language_ == other.language_;
    }

private:
    OrderedAlphabet alphabet_;
    Dfa language_;
    std::vector<int> letter_label_; // label id per alphabet rank, -1 if unused

    // counts_[s][q] = number of words of length s accepted from state q.
    mutable std::vector<std::vector<Nat>> counts_;
    mutable std::vector<Nat> cumulative_; // cumulative_[s] = sum of counts from the initial state
    mutable std::mutex lock_;
    void ensure_counts(int s) const; // callers must hold lock_
    Nat count_locked(int s, int q) const;
};

// A tuple of words left-padded to a common length with a symbol that occurs
// in none of them.
struct PaddedTuple {
    Symbol pad;
    std::vector<Word> padded; // all components share the same length

    int width() const { return static_cast<int>(padded.size()); }
    int length() const { return padded.empty() ? 0 : static_cast<int>(padded[0].size()); }
    // Column t, read as one label over the padded alphabet.
    Label column(int t) const;
    std::vector<Label> columns() const;
};

PaddedTuple pad_tuple(const std::vector<Word>& words, const Symbol& pad);

// "@eps" for the empty word; letters joined directly when they are all
// single characters, with "." otherwise.
std::string word_str(std::span<const Symbol> w);

// Inverse of word_str for a given alphabet. Accepts "@eps", a "."-joined
// form, or a plain concatenation resolved by greedy longest match.
Word parse_word_over(const OrderedAlphabet& alphabet, const std::string& text);

} // namespace shapesym
