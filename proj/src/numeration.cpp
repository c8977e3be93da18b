#include "shapesym/numeration.hpp"

#include <algorithm>

namespace shapesym {

OrderedAlphabet::OrderedAlphabet(std::vector<Symbol> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw Error("alphabet must not be empty");
    for (int i = 0; i < size(); ++i) {
        if (letters_[i].empty()) throw Error("alphabet letter must not be empty");
        if (!ranks_.emplace(letters_[i], i).second)
            throw Error("duplicate alphabet letter '" + letters_[i] + "'");
    }
}

int OrderedAlphabet::rank(const Symbol& s) const {
    auto it = ranks_.find(s);
    if (it == ranks_.end()) throw Error("letter '" + s + "' is not in the alphabet");
    return it->second;
}

std::optional<int> OrderedAlphabet::find(const Symbol& s) const {
    auto it = ranks_.find(s);
    if (it == ranks_.end()) return std::nullopt;
    return it->second;
}

Ordering genealogical_cmp(std::span<const Symbol> u, std::span<const Symbol> v,
                          const OrderedAlphabet& alphabet) {
    for (const auto& s : u) alphabet.rank(s);
    for (const auto& s : v) alphabet.rank(s);
    if (u.size() != v.size()) return u.size() < v.size() ? Ordering::Less : Ordering::Greater;
    for (size_t i = 0; i < u.size(); ++i) {
        int ru = alphabet.rank(u[i]);
        int rv = alphabet.rank(v[i]);
        if (ru != rv) return ru < rv ? Ordering::Less : Ordering::Greater;
    }
    return Ordering::Equal;
}

namespace {

// An infinite regular language is one whose trim automaton (reachable and
// co-reachable states) contains a cycle.
bool language_is_infinite(const Dfa& a) {
    auto reach = reachable_states(a);
    auto co = coreachable_states(a);
    std::vector<bool> trim(a.n_states());
    for (int q = 0; q < a.n_states(); ++q) trim[q] = reach[q] && co[q];
    // cycle detection restricted to trim states
    enum { White, Grey, Black };
    std::vector<int> color(a.n_states(), White);
    std::function<bool(int)> dfs = [&](int q) {
        color[q] = Grey;
        for (int l = 0; l < a.n_labels(); ++l) {
            int t = a.next(q, l);
            if (t < 0 || !trim[t]) continue;
            if (color[t] == Grey) return true;
            if (color[t] == White && dfs(t)) return true;
        }
        color[q] = Black;
        return false;
    };
    for (int q = 0; q < a.n_states(); ++q)
        if (trim[q] && color[q] == White && dfs(q)) return true;
    return false;
}

} // namespace

NumerationSystem::NumerationSystem(OrderedAlphabet alphabet, Dfa language)
    : alphabet_(std::move(alphabet)), language_(std::move(language)) {
    if (language_.n_labels() > 0 && language_.label_arity() != 1)
        throw Error("numeration language automaton must use single-letter labels");
    for (const auto& label : language_.labels())
        if (!alphabet_.contains(label[0]))
            throw Error("transition letter '" + label[0] + "' is not in the alphabet");
    letter_label_.assign(alphabet_.size(), -1);
    for (int r = 0; r < alphabet_.size(); ++r)
        letter_label_[r] = language_.find_label({alphabet_.letter(r)});
    if (!language_is_infinite(language_))
        throw Error("numeration language must be infinite");
    counts_.clear();
    cumulative_.clear();
}

NumerationSystem::NumerationSystem(const NumerationSystem& other)
    : alphabet_(other.alphabet_), language_(other.language_), letter_label_(other.letter_label_) {
    std::lock_guard<std::mutex> g(other.lock_);
    counts_ = other.counts_;
    cumulative_ = other.cumulative_;
}

NumerationSystem& NumerationSystem::operator=(const NumerationSystem& other) {
    if (this == &other) return *this;
    std::scoped_lock g(lock_, other.lock_);
    alphabet_ = other.alphabet_;
    language_ = other.language_;
    letter_label_ = other.letter_label_;
    counts_ = other.counts_;
    cumulative_ = other.cumulative_;
    return *this;
}

void NumerationSystem::ensure_counts(int s) const {
    while (static_cast<int>(counts_.size()) <= s) {
        int len = static_cast<int>(counts_.size());
        std::vector<Nat> row(language_.n_states(), 0);
        if (len == 0) {
            for (int q = 0; q < language_.n_states(); ++q)
                if (language_.is_final(q)) row[q] = 1;
        } else {
            const auto& prev = counts_[len - 1];
            for (int q = 0; q < language_.n_states(); ++q) {
                Nat sum = 0;
                for (int r = 0; r < alphabet_.size(); ++r) {
                    int l = letter_label_[r];
                    if (l < 0) continue;
                    int t = language_.next(q, l);
                    if (t >= 0) sum += prev[t];
                }
                row[q] = sum;
            }
        }
        counts_.push_back(std::move(row));
        Nat c = counts_[len][language_.initial()];
        cumulative_.push_back(len == 0 ? c : cumulative_[len - 1] + c);
    }
}

Nat NumerationSystem::count_locked(int s, int q) const { return counts_[s][q]; }

Nat NumerationSystem::count_words(int s) const {
    if (s < 0) throw Error("word length must be non-negative");
    std::lock_guard<std::mutex> g(lock_);
    ensure_counts(s);
    return counts_[s][language_.initial()];
}

Nat NumerationSystem::count_up_to(int s) const {
    if (s < 0) return 0;
    std::lock_guard<std::mutex> g(lock_);
    ensure_counts(s);
    return cumulative_[s];
}

bool NumerationSystem::accepts(std::span<const Symbol> w) const {
    int q = language_.initial();
    for (const auto& letter : w) {
        int r = alphabet_.rank(letter);
        int l = letter_label_[r];
        int t = l < 0 ? -1 : language_.next(q, l);
        if (t < 0) return false;
        q = t;
    }
    return language_.is_final(q);
}

Word NumerationSystem::rep(const Nat& n) const {
    if (n < 0) throw Error("rep is defined on non-negative integers");
    std::lock_guard<std::mutex> g(lock_);
    int s = 0;
    ensure_counts(s);
    while (cumulative_[s] <= n) ensure_counts(++s);
    Nat m = s == 0 ? n : n - cumulative_[s - 1];

    Word out;
    int q = language_.initial();
    for (int pos = 0; pos < s; ++pos) {
        int remaining = s - pos - 1;
        bool placed = false;
        for (int r = 0; r < alphabet_.size() && !placed; ++r) {
            int l = letter_label_[r];
            if (l < 0) continue;
            int t = language_.next(q, l);
            if (t < 0) continue;
            const Nat& c = count_locked(remaining, t);
            if (m < c) {
                out.push_back(alphabet_.letter(r));
                q = t;
                placed = true;
            } else {
                m -= c;
            }
        }
        if (!placed) throw Error("internal error: rep ran out of branches");
    }
    return out;
}

Nat NumerationSystem::val(std::span<const Symbol> w) const {
    // membership first, with a diagnostic naming the first failing prefix
    {
        int q = language_.initial();
        for (size_t i = 0; i < w.size(); ++i) {
            int r = alphabet_.rank(w[i]);
            int l = letter_label_[r];
            int t = l < 0 ? -1 : language_.next(q, l);
            if (t < 0)
                throw Error("word is not in the language: no continuation after prefix '" +
                            word_str(w.subspan(0, i + 1)) + "'");
            q = t;
        }
        if (!language_.is_final(q))
            throw Error("word is not in the language: '" + word_str(w) + "' is not accepted");
    }
    std::lock_guard<std::mutex> g(lock_);
    int s = static_cast<int>(w.size());
    ensure_counts(s);
    Nat value = s == 0 ? Nat(0) : cumulative_[s - 1];
    int q = language_.initial();
    for (int pos = 0; pos < s; ++pos) {
        int remaining = s - pos - 1;
        int rw = alphabet_.rank(w[pos]);
        for (int r = 0; r < rw; ++r) {
            int l = letter_label_[r];
            if (l < 0) continue;
            int t = language_.next(q, l);
            if (t >= 0) value += count_locked(remaining, t);
        }
        q = language_.next(q, letter_label_[rw]);
    }
    return value;
}

Label PaddedTuple::column(int t) const {
    Label out;
    out.reserve(padded.size());
    for (const auto& w : padded) out.push_back(w[t]);
    return out;
}

std::vector<Label> PaddedTuple::columns() const {
    std::vector<Label> out;
    out.reserve(length());
    for (int t = 0; t < length(); ++t) out.push_back(column(t));
    return out;
}

PaddedTuple pad_tuple(const std::vector<Word>& words, const Symbol& pad) {
    if (words.empty()) throw Error("pad_tuple needs at least one component");
    size_t m = 0;
    for (const auto& w : words) {
        m = std::max(m, w.size());
        for (const auto& letter : w)
            if (letter == pad)
                throw Error("pad symbol '" + pad + "' occurs inside a component word");
    }
    PaddedTuple out;
    out.pad = pad;
    for (const auto& w : words) {
        Word p(m - w.size(), pad);
        p.insert(p.end(), w.begin(), w.end());
        out.padded.push_back(std::move(p));
    }
    return out;
}

std::string word_str(std::span<const Symbol> w) {
    if (w.empty()) return "@eps";
    bool simple = std::all_of(w.begin(), w.end(), [](const Symbol& s) { return s.size() == 1; });
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i && !simple) out += ".";
        out += w[i];
    }
    return out;
}

Word parse_word_over(const OrderedAlphabet& alphabet, const std::string& text) {
    if (text == "@eps" || text.empty()) return {};
    Word out;
    if (text.find('.') != std::string::npos) {
        size_t start = 0;
        while (start <= text.size()) {
            size_t dot = text.find('.', start);
            std::string part = text.substr(start, dot == std::string::npos ? dot : dot - start);
            if (part.empty()) throw Error("empty letter in word '" + text + "'");
            if (!alphabet.contains(part)) throw Error("letter '" + part + "' is not in the alphabet");
            out.push_back(part);
            if (dot == std::string::npos) break;
            start = dot + 1;
        }
        return out;
    }
    // greedy longest match
    size_t pos = 0;
    while (pos < text.size()) {
        int best = -1;
        size_t best_len = 0;
        for (const auto& letter : alphabet.letters()) {
            if (letter.size() > best_len && text.compare(pos, letter.size(), letter) == 0) {
                best_len = letter.size();
                best = alphabet.rank(letter);
            }
        }
        if (best < 0)
            throw Error("cannot read a letter at position " + std::to_string(pos) + " of '" +
                        text + "'");
        out.push_back(alphabet.letter(best));
        pos += best_len;
    }
    return out;
}

} // namespace shapesym
