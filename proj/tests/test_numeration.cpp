#include <doctest.h>

#include <atomic>
#include <random>
#include <thread>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace shapesym;
using fixtures::word_of;

TEST_CASE("genealogical order: length first, then rank") {
    OrderedAlphabet ab({"a", "b"});
    CHECK(genealogical_cmp(word_of("a"), word_of("ba"), ab) == Ordering::Less);
    CHECK(genealogical_cmp(word_of("abba"), word_of("abba"), ab) == Ordering::Equal);
    CHECK(genealogical_cmp(word_of("ab"), word_of("ba"), ab) == Ordering::Less);
    CHECK(genealogical_cmp(word_of("ba"), word_of("ab"), ab) == Ordering::Greater);
    CHECK_THROWS_AS(genealogical_cmp(word_of("ax"), word_of("a"), ab), Error);
}

TEST_CASE("alphabet rejects duplicates") {
    CHECK_THROWS_AS(OrderedAlphabet({"a", "a"}), Error);
    CHECK_THROWS_AS(OrderedAlphabet(std::vector<Symbol>{}), Error);
}

TEST_CASE("rep and val on the bb-free language") {
    auto s = fixtures::no_bb_system();
    CHECK(word_str(s.rep(5)) == "ba");
    CHECK(s.rep(0).empty());
    CHECK(s.val(word_of("b")) == 2);
    CHECK(s.val(Word{}) == 0);

    std::vector<std::string> first{"@eps", "a", "b", "aa", "ab", "ba", "aaa", "aab"};
    for (size_t n = 0; n < first.size(); ++n)
        CHECK(word_str(s.rep(static_cast<long>(n))) == first[n]);
}

TEST_CASE("val rejects words outside the language") {
    auto s = fixtures::no_bb_system();
    CHECK_THROWS_WITH_AS(s.val(word_of("abba")), doctest::Contains("not accepted"), Error);
    CHECK_THROWS_AS(s.val(word_of("xy")), Error);
    // with a partial automaton the failing prefix is named
    Dfa partial;
    int q0 = partial.add_state("q0", true);
    int q1 = partial.add_state("q1", true);
    partial.set_initial(q0);
    partial.add_transition(q0, {"a"}, q1);
    partial.add_transition(q1, {"b"}, q0);
    NumerationSystem sp(OrderedAlphabet({"a", "b"}), partial);
    CHECK_THROWS_WITH_AS(sp.val(word_of("aa")), doctest::Contains("prefix 'aa'"), Error);
}

TEST_CASE("count_words matches direct enumeration") {
    auto s = fixtures::no_bb_system();
    CHECK(s.count_words(0) == 1);
    CHECK(s.count_words(2) == 3);
    CHECK(s.count_words(4) == 8); // enumerated: all length-4 words over {a,b} without bb
    auto words = oracles::enumerate_language(s.language(), s.alphabet(), 8);
    std::map<size_t, int> by_len;
    for (const auto& w : words) by_len[w.size()]++;
    for (int len = 0; len <= 8; ++len) CHECK(s.count_words(len) == by_len[len]);
}

TEST_CASE("cumulative counts index the first word of the next length") {
    auto s = fixtures::no_bb_system();
    for (int len = 0; len <= 6; ++len) {
        Nat idx = s.count_up_to(len);
        CHECK(static_cast<int>(s.rep(idx).size()) == len + 1);
        if (idx > 0) CHECK(static_cast<int>(s.rep(idx - 1).size()) == len);
    }
}

TEST_CASE("rep and val are mutually inverse and monotone") {
    auto s = fixtures::no_bb_system();
    OrderedAlphabet ab = s.alphabet();
    Word prev;
    for (long n = 0; n < 2000; ++n) {
        Word w = s.rep(n);
        CHECK(s.val(w) == n);
        if (n > 0) CHECK(genealogical_cmp(prev, w, ab) == Ordering::Less);
        prev = w;
    }
}

TEST_CASE("enumeration agrees with the brute-force oracle") {
    std::mt19937 rng(517);
    for (int trial = 0; trial < 5; ++trial) {
        auto s = oracles::random_numeration(rng, 4, {"a", "b"}, trial % 2 == 0);
        auto words = oracles::enumerate_language(s.language(), s.alphabet(), 6);
        for (size_t n = 0; n < words.size(); ++n) {
            CHECK(s.rep(static_cast<long>(n)) == words[n]);
            CHECK(s.val(words[n]) == static_cast<long>(n));
        }
    }
}

TEST_CASE("finite languages are rejected") {
    Dfa finite;
    int q0 = finite.add_state("q0", true);
    int q1 = finite.add_state("q1", true);
    finite.set_initial(q0);
    finite.add_transition(q0, {"a"}, q1);
    CHECK_THROWS_WITH_AS(NumerationSystem(OrderedAlphabet({"a"}), finite),
                         doctest::Contains("infinite"), Error);
    // a cycle that cannot reach a final state does not help
    Dfa trap;
    q0 = trap.add_state("q0", true);
    q1 = trap.add_state("q1", false);
    trap.set_initial(q0);
    trap.add_transition(q0, {"a"}, q1);
    trap.add_transition(q1, {"a"}, q1);
    CHECK_THROWS_AS(NumerationSystem(OrderedAlphabet({"a"}), trap), Error);
}

TEST_CASE("pad_tuple left-pads to the longest component") {
    auto t = pad_tuple({word_of("ab"), word_of("bbaa")}, "#");
    CHECK(t.padded[0] == word_of("##ab"));
    CHECK(t.padded[1] == word_of("bbaa"));
    CHECK(t.column(0) == Label{"#", "b"});
    CHECK(t.column(3) == Label{"b", "a"});

    auto same = pad_tuple({word_of("ab"), word_of("ba")}, "#");
    CHECK(same.padded[0] == word_of("ab"));
    CHECK(same.padded[1] == word_of("ba"));

    auto eps = pad_tuple({Word{}, word_of("b")}, "#");
    CHECK(eps.padded[0] == word_of("#"));
    CHECK(eps.padded[1] == word_of("b"));

    CHECK_THROWS_WITH_AS(pad_tuple({word_of("a#b")}, "#"), doctest::Contains("pad symbol"),
                         Error);
}

TEST_CASE("counts are safe under concurrent use") {
    auto s = fixtures::no_bb_system();
    std::vector<std::thread> threads;
    std::atomic<bool> ok{true};
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&s, &ok, t] {
            for (long n = t; n < 400; n += 4)
                if (s.val(s.rep(n)) != n) ok = false;
        });
    for (auto& t : threads) t.join();
    CHECK(ok);
}

TEST_CASE("word round trip through text") {
    OrderedAlphabet ab({"a", "b"});
    CHECK(word_str(Word{}) == "@eps");
    CHECK(parse_word_over(ab, "@eps").empty());
    CHECK(parse_word_over(ab, "ba") == word_of("ba"));
    OrderedAlphabet digits({"10", "1"});
    Word w{"10", "1"};
    CHECK(parse_word_over(digits, word_str(w)) == w);
    CHECK_THROWS_AS(parse_word_over(ab, "abx"), Error);
}
