#pragma once

#include <functional>

#include "shapesym/automatic.hpp"

namespace shapesym {

// A coding applied to the fixed point of a prolongable morphism.
struct MorphicPresentation {
    MultiMorphism mu;
    Symbol seed;
    std::map<Symbol, Symbol> coding; // total on the letters reachable from the seed

    int dims() const { return mu.dims(); }
    Picture coded_window(std::span<const int> shape) const;
};

// A numeration system together with a DFAO over padded label tuples.
struct AutomaticPresentation {
    NumerationSystem system;
    Dfao dfao;
    Symbol pad;
    int dims = 1;

    Picture window(std::span<const int> shape) const;
};

// Throw when the presentation violates its contract (non-morphism, not
// prolongable, not shape-symmetric, partial coding, ...).
void validate_morphic(const MorphicPresentation& m);
// Requires the empty word in the language, pad outside the alphabet and an
// all-pad self-loop on every DFAO state.
void validate_automatic(const AutomaticPresentation& a);

enum class LetterType {
    Dead,           // iterated images never leave psi
    Moribund,       // they leave psi finitely often (at least once)
    RobustNonFinal, // infinitely often, letter inside psi
    RobustFinal,    // infinitely often, letter outside psi
};

std::string letter_type_name(LetterType t);
inline bool is_robust(LetterType t) {
    return t == LetterType::RobustNonFinal || t == LetterType::RobustFinal;
}

// Classification of every letter by how often its iterated images meet the
// complement of psi, computed from boolean production-matrix powers.
std::map<Symbol, LetterType> classify_letters(const MultiMorphism& mu,
                                              const std::set<Symbol>& psi);

// Smallest verified power T such that for phi = mu^T: moribund letters lie
// outside psi and keep all later images inside psi, while robust letters
// leave psi at every positive power.
int stabilizing_power(const MultiMorphism& mu, const std::set<Symbol>& psi);

// One-step type of a word-automaton state: finality combined with the
// existence of a single-letter transition into a final state.
LetterType state_type(const Dfa& language, int state);

// Digits after raising the construction to a power: index n stands for the
// length-`power` word over the base alphabet given by its expansion in base
// |base|, most significant letter first.
struct DigitSystem {
    OrderedAlphabet base;
    int power = 1;

    long long size() const;
    Word word_of(long long n) const;
};

// Cut positions splitting [0, digits.size()) so that every interval holds
// exactly one digit whose transition from `state` is accepting. The number
// of intervals is the accepting-digit count of the state.
std::vector<int> accepting_digit_cuts(const Dfa& language, int state, const DigitSystem& digits);

// The factorization of one robust letter's image into blocks, one accepting
// letter per block, together with the erased (robust-only) block contents.
struct BlockDecomposition {
    Symbol letter;
    std::vector<int> h;                 // blocks per axis
    std::vector<std::vector<int>> cuts; // per axis, h[axis]+1 positions
    std::vector<Picture> w_blocks;      // row-major over h
    std::vector<Picture> v_blocks;      // erased blocks
    std::vector<Symbol> block_letter;   // the unique accepting letter per block

    int flat(std::span<const int> offsets) const;
    const Picture& w(std::span<const int> offsets) const { return w_blocks[flat(offsets)]; }
    const Picture& v(std::span<const int> offsets) const { return v_blocks[flat(offsets)]; }
    const Symbol& accepting(std::span<const int> offsets) const {
        return block_letter[flat(offsets)];
    }
};

BlockDecomposition block_decomposition(const MultiMorphism& phi, const Symbol& letter,
                                       const std::vector<int>& lang_components,
                                       const Dfa& language, const DigitSystem& digits,
                                       const std::map<Symbol, LetterType>& types,
                                       const std::function<bool(const Symbol&)>& accepting,
                                       const Symbol& erase_marker);

// The rebuilt morphism over block letters, its seed and the coding back to
// product letters.
struct XiLetter {
    Symbol name;
    Symbol product_letter;
    std::vector<int> offsets;
};

struct XiSystem {
    MultiMorphism mu;
    Symbol alpha;
    std::map<Symbol, Symbol> nu_prime; // block letter -> product letter
    std::vector<XiLetter> letters;     // discovery order
};

Symbol xi_letter_name(const Symbol& product_letter, std::span<const int> offsets);

XiSystem build_xi_morphism(
    const std::function<const BlockDecomposition&(const Symbol&)>& decomposition_of,
    const Symbol& start_letter, int dims);

// All staged artifacts of the automatic-to-morphic construction, kept for
// inspection and testing.
struct Part2Pipeline {
    Dfa language;           // pad^* L automaton, complete over the padded alphabet
    OrderedAlphabet digits; // pad first, then the alphabet in rank order
    Product prod;
    MultiMorphism mu_p;  // canonical morphism of the product automaton
    int power = 1;       // stabilizing power
    MultiMorphism phi;   // mu_p raised to that power
    DigitSystem digit_system;
    std::map<Symbol, LetterType> types;
    Symbol erase_marker;
    std::map<Symbol, BlockDecomposition> decompositions; // letters reached by the closure
    XiSystem xi;
    std::map<Symbol, Symbol> coding; // block letter -> DFAO output

    bool accepting_letter(const Symbol& product_letter) const;
    const std::vector<int>& lang_components(const Symbol& product_letter) const;
    const BlockDecomposition& decomposition(const Symbol& product_letter);
};

// The engine behind automatic_to_morphic, starting from an already padded
// language automaton and the padded digit order.
Part2Pipeline run_part2(const Dfao& dfao, const Dfa& padded_language,
                        const OrderedAlphabet& padded_digits, int dims);

// Morphic-to-automatic direction: numeration system on the directive
// language of the axis-0 line, DFAO from the box-indexed transitions of the
// morphism, padding behaving like digit 0.
AutomaticPresentation morphic_to_automatic(const MorphicPresentation& m,
                                           const Symbol& pad = "#");

// Automatic-to-morphic direction: the full pipeline above.
MorphicPresentation automatic_to_morphic(const AutomaticPresentation& a);

struct CrossValidationReport {
    Shape shape;
    // coordinate, morphic-side letter, automatic-side letter
    std::vector<std::tuple<std::vector<int>, Symbol, Symbol>> mismatches;

    bool ok() const { return mismatches.empty(); }
    std::string summary() const;
};

// Cellwise comparison of the coded fixed-point window against the
// S-automatic window.
CrossValidationReport cross_validate(const MorphicPresentation& m, const AutomaticPresentation& a,
                                     std::span<const int> shape);

} // namespace shapesym
