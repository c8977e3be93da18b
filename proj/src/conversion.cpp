#include "shapesym/conversion.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace shapesym {

Picture MorphicPresentation::coded_window(std::span<const int> shape) const {
    return map_letters(fixed_point_window(mu, seed, shape), coding);
}

Picture AutomaticPresentation::window(std::span<const int> shape) const {
    return automatic_window(dfao, system, shape, pad);
}

void validate_morphic(const MorphicPresentation& m) {
    auto check = check_morphism(m.mu, {m.seed});
    if (!check.ok) throw Error(check.describe());
    if (!is_prolongable(m.mu, m.seed))
        throw Error("morphism is not prolongable on '" + m.seed + "'");
    auto sym = check_shape_symmetric(m.mu, m.seed);
    if (!sym.ok) throw Error(sym.describe());
    for (const auto& letter : reachable_letters(m.mu, m.seed))
        if (!m.coding.count(letter))
            throw Error("coding is undefined on reachable letter '" + letter + "'");
}

void validate_automatic(const AutomaticPresentation& a) {
    if (a.dims < 1) throw Error("presentation dimension must be positive");
    if (!a.system.contains_epsilon())
        throw Error("the language must contain the empty word");
    if (a.system.alphabet().contains(a.pad))
        throw Error("pad symbol '" + a.pad + "' must not belong to the alphabet");
    if (a.dfao.m.label_arity() != a.dims)
        throw Error("DFAO labels must have one component per axis");
    for (const auto& label : a.dfao.m.labels())
        for (const auto& c : label)
            if (c != a.pad && !a.system.alphabet().contains(c))
                throw Error("DFAO label letter '" + c + "' is neither pad nor in the alphabet");
    Label all_pad(a.dims, a.pad);
    for (int q = 0; q < a.dfao.m.n_states(); ++q)
        if (a.dfao.m.next(q, all_pad) != q)
            throw Error("state '" + a.dfao.m.state_name(q) +
                        "' is missing the all-pad self-loop");
}

std::string letter_type_name(LetterType t) {
    switch (t) {
        case LetterType::Dead: return "dead";
        case LetterType::Moribund: return "moribund";
        case LetterType::RobustNonFinal: return "robust-nonfinal";
        case LetterType::RobustFinal: return "robust-final";
    }
    return "?";
}

namespace {

// Boolean production matrices of a morphism, with eventual-cycle detection.
struct ProductionPowers {
    std::vector<Symbol> letters;
    std::map<Symbol, int> index;
    std::vector<std::vector<std::vector<bool>>> powers; // powers[n] = matrix of mu^n
    int cycle_start = 0;  // first index inside the cycle
    int cycle_length = 1; // period of the matrix sequence

    explicit ProductionPowers(const MultiMorphism& mu) {
        letters = mu.letters();
        for (int i = 0; i < static_cast<int>(letters.size()); ++i) index[letters[i]] = i;
        int n = static_cast<int>(letters.size());
        std::vector<std::vector<bool>> ident(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i) ident[i][i] = true;
        std::vector<std::vector<bool>> step(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i)
            for (const auto& c : mu.image(letters[i]).letters()) step[i][index.at(c)] = true;
        powers.push_back(ident);
        std::map<std::vector<std::vector<bool>>, int> seen{{ident, 0}};
        while (true) {
            const auto& last = powers.back();
            std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    if (last[i][k])
                        for (int j = 0; j < n; ++j)
                            if (step[k][j]) next[i][j] = true;
            auto it = seen.find(next);
            if (it != seen.end()) {
                cycle_start = it->second;
                cycle_length = static_cast<int>(powers.size()) - it->second;
                return;
            }
            seen.emplace(next, static_cast<int>(powers.size()));
            powers.push_back(std::move(next));
        }
    }

    const std::vector<std::vector<bool>>& at(long long n) const {
        if (n < static_cast<long long>(powers.size())) return powers[n];
        long long folded = cycle_start + (n - cycle_start) % cycle_length;
        return powers[folded];
    }
};

// True iff some letter outside psi occurs in mu^n(letter i).
bool meets_outside(const ProductionPowers& pp, const std::vector<bool>& outside, int i,
                   long long n) {
    const auto& row = pp.at(n)[i];
    for (size_t j = 0; j < row.size(); ++j)
        if (row[j] && outside[j]) return true;
    return false;
}

std::vector<bool> outside_mask(const ProductionPowers& pp, const std::set<Symbol>& psi) {
    std::vector<bool> outside(pp.letters.size());
    for (size_t j = 0; j < pp.letters.size(); ++j) outside[j] = psi.count(pp.letters[j]) == 0;
    return outside;
}

} // namespace

std::map<Symbol, LetterType> classify_letters(const MultiMorphism& mu,
                                              const std::set<Symbol>& psi) {
    ProductionPowers pp(mu);
    auto outside = outside_mask(pp, psi);
    int horizon = pp.cycle_start + pp.cycle_length;
    std::map<Symbol, LetterType> out;
    for (size_t i = 0; i < pp.letters.size(); ++i) {
        bool robust = false;
        for (int n = pp.cycle_start; n < horizon && !robust; ++n)
            robust = meets_outside(pp, outside, static_cast<int>(i), n);
        bool ever = robust;
        for (int n = 0; n < pp.cycle_start && !ever; ++n)
            ever = meets_outside(pp, outside, static_cast<int>(i), n);
        LetterType t;
        if (robust)
            t = outside[i] ? LetterType::RobustFinal : LetterType::RobustNonFinal;
        else
            t = ever ? LetterType::Moribund : LetterType::Dead;
        out.emplace(pp.letters[i], t);
    }
    return out;
}

int stabilizing_power(const MultiMorphism& mu, const std::set<Symbol>& psi) {
    ProductionPowers pp(mu);
    auto outside = outside_mask(pp, psi);
    int letters = static_cast<int>(pp.letters.size());

    auto verified = [&](int t) {
        // window [0, n0 + cycle] of sampled powers covers transient and cycle
        long long n0 = (pp.cycle_start + t - 1) / t;
        long long window = n0 + pp.cycle_length;
        for (int i = 0; i < letters; ++i) {
            bool robust = false;
            for (long long n = n0; n <= window && !robust; ++n)
                robust = meets_outside(pp, outside, i, n * t);
            if (robust) {
                for (long long n = 1; n <= window; ++n)
                    if (!meets_outside(pp, outside, i, n * t)) return false;
            } else {
                bool ever = false;
                for (long long n = 0; n <= window && !ever; ++n)
                    ever = meets_outside(pp, outside, i, n * t);
                if (!ever) continue; // dead
                // moribund: the only meeting power must be 0
                if (!outside[i]) return false;
                for (long long n = 1; n <= window; ++n)
                    if (meets_outside(pp, outside, i, n * t)) return false;
            }
        }
        return true;
    };

    // The smallest multiple of the period at or beyond the transient always
    // verifies, so this loop terminates.
    int guaranteed = pp.cycle_length;
    while (guaranteed < std::max(pp.cycle_start, 1)) guaranteed += pp.cycle_length;
    for (int t = 1; t <= guaranteed; ++t)
        if (verified(t)) return t;
    throw Error("internal error: no stabilizing power found");
}

LetterType state_type(const Dfa& language, int state) {
    bool final = language.is_final(state);
    bool has_accepting_step = false;
    for (int l = 0; l < language.n_labels() && !has_accepting_step; ++l) {
        int t = language.next(state, l);
        has_accepting_step = t >= 0 && language.is_final(t);
    }
    if (!has_accepting_step) return final ? LetterType::Moribund : LetterType::Dead;
    return final ? LetterType::RobustFinal : LetterType::RobustNonFinal;
}

long long DigitSystem::size() const {
    long long s = 1;
    for (int i = 0; i < power; ++i) s *= base.size();
    return s;
}

Word DigitSystem::word_of(long long n) const {
    Word out(power);
    for (int i = power - 1; i >= 0; --i) {
        out[i] = base.letter(static_cast<int>(n % base.size()));
        n /= base.size();
    }
    return out;
}

std::vector<int> accepting_digit_cuts(const Dfa& language, int state, const DigitSystem& digits) {
    std::vector<int> accepting;
    for (long long n = 0; n < digits.size(); ++n) {
        Word w = digits.word_of(n);
        int q = state;
        bool ok = true;
        for (const auto& letter : w) {
            q = language.next(q, Label{letter});
            if (q < 0) {
                ok = false;
                break;
            }
        }
        if (ok && language.is_final(q)) accepting.push_back(static_cast<int>(n));
    }
    if (accepting.empty()) return {};
    std::vector<int> cuts{0};
    for (size_t i = 1; i < accepting.size(); ++i) cuts.push_back(accepting[i - 1] + 1);
    cuts.push_back(static_cast<int>(digits.size()));
    return cuts;
}

int BlockDecomposition::flat(std::span<const int> offsets) const {
    int idx = 0, stride = 1;
    for (size_t i = 0; i < offsets.size(); ++i) {
        if (offsets[i] < 0 || offsets[i] >= h[i]) throw Error("block offset out of range");
        idx += stride * offsets[i];
        stride *= h[i];
    }
    return idx;
}

BlockDecomposition block_decomposition(const MultiMorphism& phi, const Symbol& letter,
                                       const std::vector<int>& lang_components,
                                       const Dfa& language, const DigitSystem& digits,
                                       const std::map<Symbol, LetterType>& types,
                                       const std::function<bool(const Symbol&)>& accepting,
                                       const Symbol& erase_marker) {
    int d = phi.dims();
    if (static_cast<int>(lang_components.size()) != d)
        throw Error("one language component per axis expected");

    BlockDecomposition out;
    out.letter = letter;
    for (int axis = 0; axis < d; ++axis) {
        auto cuts = accepting_digit_cuts(language, lang_components[axis], digits);
        if (cuts.empty())
            throw Error("robust letter '" + letter + "' has a component with no accepting digit");
        out.cuts.push_back(cuts);
        out.h.push_back(static_cast<int>(cuts.size()) - 1);
    }

    auto type_of = [&](const Symbol& s) {
        auto it = types.find(s);
        if (it == types.end()) throw Error("letter '" + s + "' has no classification");
        return it->second;
    };
    Picture image = phi.image(letter);
    Picture dead_erased = map_letters(image, [&](const Symbol& s) -> Symbol {
        return type_of(s) == LetterType::Dead ? erase_marker : s;
    });

    Shape grid(out.h.begin(), out.h.end());
    std::vector<int> lo(d), hi(d);
    for_each_coord(grid, [&](std::span<const int> off) {
        for (int axis = 0; axis < d; ++axis) {
            lo[axis] = out.cuts[axis][off[axis]];
            hi[axis] = out.cuts[axis][off[axis] + 1] - 1;
        }
        Picture w = factor(dead_erased, lo, hi);
        int accepted = 0;
        for (const auto& cell : w.cells())
            if (cell != erase_marker && accepting(cell)) ++accepted;
        if (accepted != 1)
            throw Error("block of '" + letter + "' holds " + std::to_string(accepted) +
                        " accepting letters, expected exactly one");
        // the coding of the block: erase everything but the accepting letter
        Picture coded = erase(map_letters(w,
                                          [&](const Symbol& s) -> Symbol {
                                              if (s == erase_marker) return erase_marker;
                                              return accepting(s) ? s : erase_marker;
                                          }),
                              erase_marker);
        if (coded.cell_count() != 1)
            throw Error("internal error: block coding did not reduce to a single letter");
        // erased block: moribund letters removed as well
        Picture v = erase(map_letters(w,
                                      [&](const Symbol& s) -> Symbol {
                                          if (s == erase_marker) return erase_marker;
                                          return type_of(s) == LetterType::Moribund ? erase_marker
                                                                                    : s;
                                      }),
                          erase_marker);
        if (v.letters().count(erase_marker))
            throw Error("internal error: erased block still contains the marker");
        out.w_blocks.push_back(std::move(w));
        out.v_blocks.push_back(std::move(v));
        out.block_letter.push_back(coded.corner());
    });
    return out;
}

Symbol xi_letter_name(const Symbol& product_letter, std::span<const int> offsets) {
    std::string s = "a[" + product_letter + ";";
    for (size_t i = 0; i < offsets.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(offsets[i]);
    }
    return s + "]";
}

namespace {

// Row-major pieces combined into one picture along each axis in turn.
Picture grid_concat(std::vector<Picture> pieces, const Shape& grid) {
    int d = static_cast<int>(grid.size());
    for (int axis = 0; axis < d; ++axis) {
        int run = grid[axis];
        std::vector<Picture> next;
        for (size_t i = 0; i < pieces.size(); i += run) {
            Picture acc = pieces[i];
            for (int j = 1; j < run; ++j) acc = concat(acc, pieces[i + j], axis);
            next.push_back(std::move(acc));
        }
        pieces = std::move(next);
    }
    if (pieces.size() != 1) throw Error("internal error: grid concatenation left extra pieces");
    return pieces[0];
}

} // namespace

XiSystem build_xi_morphism(
    const std::function<const BlockDecomposition&(const Symbol&)>& decomposition_of,
    const Symbol& start_letter, int dims) {
    XiSystem out;
    std::map<Symbol, XiLetter> known;
    std::deque<Symbol> todo;
    auto intern = [&](const Symbol& p, std::span<const int> offsets) {
        Symbol name = xi_letter_name(p, offsets);
        if (!known.count(name)) {
            XiLetter xl{name, p, std::vector<int>(offsets.begin(), offsets.end())};
            known.emplace(name, xl);
            out.letters.push_back(xl);
            todo.push_back(name);
        }
        return name;
    };

    std::vector<int> zeros(dims, 0);
    out.alpha = intern(start_letter, zeros);

    std::map<Symbol, Picture> images;
    while (!todo.empty()) {
        Symbol name = todo.front();
        todo.pop_front();
        const XiLetter& xl = known.at(name);
        const BlockDecomposition& dec = decomposition_of(xl.product_letter);
        const Picture& v = dec.v(xl.offsets);
        out.nu_prime[name] = dec.accepting(xl.offsets);

        std::vector<Picture> pieces;
        for_each_coord(v.shape(), [&](std::span<const int> cell) {
            const Symbol& p2 = v.at(cell);
            const BlockDecomposition& dec2 = decomposition_of(p2);
            Shape piece_shape(dec2.h.begin(), dec2.h.end());
            Picture piece = Picture::filled(piece_shape, "");
            for_each_coord(piece_shape, [&](std::span<const int> off) {
                piece.set(off, intern(p2, off));
            });
            pieces.push_back(std::move(piece));
        });
        images.emplace(name, grid_concat(std::move(pieces), v.shape()));
    }
    out.mu = MultiMorphism(dims, std::move(images));
    if (out.mu.image(out.alpha).corner() != out.alpha)
        throw Error("internal error: rebuilt morphism is not prolongable on its seed");
    return out;
}

bool Part2Pipeline::accepting_letter(const Symbol& product_letter) const {
    return prod.dfao.m.is_final(prod.dfao.m.state(product_letter));
}

const std::vector<int>& Part2Pipeline::lang_components(const Symbol& product_letter) const {
    return prod.lang_states[prod.dfao.m.state(product_letter)];
}

const BlockDecomposition& Part2Pipeline::decomposition(const Symbol& product_letter) {
    auto it = decompositions.find(product_letter);
    if (it != decompositions.end()) return it->second;
    auto dec = block_decomposition(
        phi, product_letter, lang_components(product_letter), language, digit_system, types,
        [this](const Symbol& s) { return accepting_letter(s); }, erase_marker);
    return decompositions.emplace(product_letter, std::move(dec)).first->second;
}

Part2Pipeline run_part2(const Dfao& dfao, const Dfa& padded_language,
                        const OrderedAlphabet& padded_digits, int dims) {
    Part2Pipeline p;
    p.language = padded_language;
    p.digits = padded_digits;
    p.prod = product(dfao, padded_language, dims);
    p.mu_p = canonical_morphism(p.prod.dfao.m, padded_digits, dims);

    std::set<Symbol> psi;
    for (int q = 0; q < p.prod.dfao.m.n_states(); ++q)
        if (!p.prod.dfao.m.is_final(q)) psi.insert(p.prod.dfao.m.state_name(q));

    p.power = stabilizing_power(p.mu_p, psi);
    p.digit_system = DigitSystem{padded_digits, p.power};
    if (p.digit_system.size() > 256)
        throw Error("stabilizing power " + std::to_string(p.power) +
                    " makes the digit alphabet too large");
    p.phi = p.power == 1 ? p.mu_p : morphism_power(p.mu_p, p.power);
    p.types = classify_letters(p.phi, psi);
    p.erase_marker = "e";

    const Symbol p0 = p.prod.dfao.m.state_name(p.prod.dfao.m.initial());
    if (p.types.at(p0) != LetterType::RobustFinal)
        throw Error("initial product letter must be robust and accepting");

    p.xi = build_xi_morphism(
        [&p](const Symbol& letter) -> const BlockDecomposition& {
            return p.decomposition(letter);
        },
        p0, dims);

    for (const auto& [name, target] : p.xi.nu_prime)
        p.coding[name] = p.prod.dfao.output_of(p.prod.dfao.m.state(target));
    return p;
}

MorphicPresentation automatic_to_morphic(const AutomaticPresentation& a) {
    validate_automatic(a);
    Dfa lang = a.system.language();
    for (const auto& s : a.system.alphabet().letters()) lang.add_label({s});
    Dfa padded = pad_star_language(lang, a.pad);

    std::vector<Symbol> digit_letters{a.pad};
    for (const auto& s : a.system.alphabet().letters()) digit_letters.push_back(s);
    OrderedAlphabet digits(digit_letters);

    // complete the DFAO over the full digit box; representations never reach
    // the sink, so its output is arbitrary
    Dfao dfao = a.dfao;
    {
        Shape box(a.dims, digits.size());
        std::vector<Label> all;
        for_each_coord(box, [&](std::span<const int> n) {
            Label l(a.dims);
            for (int i = 0; i < a.dims; ++i) l[i] = digits.letter(n[i]);
            dfao.m.add_label(l);
            all.push_back(std::move(l));
        });
        bool missing = false;
        for (int q = 0; q < dfao.m.n_states() && !missing; ++q)
            for (const auto& l : all)
                if (dfao.m.next(q, l) < 0) {
                    missing = true;
                    break;
                }
        if (missing) {
            Symbol name = "sink";
            while (dfao.m.has_state_named(name)) name += "'";
            int sink = dfao.m.add_state(name, false);
            dfao.outputs.push_back(dfao.output_of(dfao.m.initial()));
            for (int q = 0; q < dfao.m.n_states(); ++q)
                for (const auto& l : all)
                    if (dfao.m.next(q, l) < 0) dfao.m.add_transition(q, l, sink);
        }
    }

    auto pipeline = run_part2(dfao, padded, digits, a.dims);
    return MorphicPresentation{pipeline.xi.mu, pipeline.xi.alpha, pipeline.coding};
}

AutomaticPresentation morphic_to_automatic(const MorphicPresentation& m, const Symbol& pad) {
    validate_morphic(m);
    int d = m.dims();

    // restrict to the letters that actually occur in the fixed point
    auto reach = reachable_letters(m.mu, m.seed);
    std::map<Symbol, Picture> images;
    for (const auto& letter : reach) images.emplace(letter, m.mu.image(letter));
    MultiMorphism mu(d, std::move(images));

    UniMorphism line0 = line_morphism(mu, m.seed, 0);
    Dfa directive = directive_automaton(line0, m.seed);
    int r = mu.max_extent();
    if (line0.max_extent() != r)
        throw Error("internal error: line morphism misses the maximal extent");
    // shape-symmetry makes every axis produce the same directive language;
    // spot-check the counting sequences
    {
        NumerationSystem s0(OrderedAlphabet(digit_symbols(r)), directive);
        for (int axis = 1; axis < d; ++axis) {
            UniMorphism line = line_morphism(mu, m.seed, axis);
            NumerationSystem si(OrderedAlphabet(digit_symbols(line.max_extent())),
                                directive_automaton(line, m.seed));
            for (int len = 0; len <= 10; ++len)
                if (s0.count_words(len) != si.count_words(len))
                    throw Error("internal error: directive languages differ across axes");
        }
    }

    Dfa skeleton = multidim_directive_automaton(mu, m.seed);
    if (pad.empty() || OrderedAlphabet(digit_symbols(r)).contains(pad))
        throw Error("pad symbol must differ from every digit");

    // extend with pad behaviour: mixed labels act like digit 0, the all-pad
    // label is a self-loop everywhere
    Dfao out;
    out.m = skeleton;
    for (int q = 0; q < out.m.n_states(); ++q)
        out.outputs.push_back(m.coding.at(out.m.state_name(q)));
    Label all_pad(d, pad);
    Shape padded_box(d, r + 1);
    const Symbol zero = "0";
    for_each_coord(padded_box, [&](std::span<const int> n) {
        Label mixed(d), plain(d);
        bool has_pad = false;
        for (int i = 0; i < d; ++i) {
            if (n[i] == 0) {
                mixed[i] = pad;
                plain[i] = zero;
                has_pad = true;
            } else {
                mixed[i] = std::to_string(n[i] - 1);
                plain[i] = mixed[i];
            }
        }
        if (!has_pad) return;
        out.m.add_label(mixed);
        if (mixed == all_pad) return;
        for (int q = 0; q < out.m.n_states(); ++q) {
            int t = out.m.next(q, plain);
            if (t >= 0) out.m.add_transition(q, mixed, t);
        }
    });
    for (int q = 0; q < out.m.n_states(); ++q) out.m.add_transition(q, all_pad, q);

    NumerationSystem system(OrderedAlphabet(digit_symbols(r)), directive);
    return AutomaticPresentation{std::move(system), std::move(out), pad, d};
}

std::string CrossValidationReport::summary() const {
    if (ok()) return "OK";
    std::ostringstream s;
    s << mismatches.size() << " mismatching cell(s); first at (";
    const auto& [coord, mv, av] = mismatches.front();
    for (size_t i = 0; i < coord.size(); ++i) s << (i ? "," : "") << coord[i];
    s << "): morphic '" << mv << "' vs automatic '" << av << "'";
    return s.str();
}

CrossValidationReport cross_validate(const MorphicPresentation& m, const AutomaticPresentation& a,
                                     std::span<const int> shape) {
    if (m.dims() != a.dims)
        throw Error("presentations have different dimensions");
    if (static_cast<int>(shape.size()) != m.dims())
        throw Error("window shape must match the dimension");
    CrossValidationReport report;
    report.shape.assign(shape.begin(), shape.end());
    Picture coded = m.coded_window(shape);
    Picture automatic = a.window(shape);
    for_each_coord(report.shape, [&](std::span<const int> n) {
        const Symbol& x = coded.at(n);
        const Symbol& y = automatic.at(n);
        if (x != y)
            report.mismatches.emplace_back(std::vector<int>(n.begin(), n.end()), x, y);
    });
    return report;
}

} // namespace shapesym
