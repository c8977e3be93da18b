#pragma once

#include "shapesym/morphism.hpp"
#include "shapesym/numeration.hpp"

namespace shapesym {

// One cell of the S-automatic word: the DFAO output on the padded tuple of
// representations of the coordinates.
Symbol automatic_cell(const Dfao& a, const NumerationSystem& s, std::span<const Nat> coords,
                      const Symbol& pad);
Symbol automatic_cell(const Dfao& a, const NumerationSystem& s, std::span<const int> coords,
                      const Symbol& pad);

// The window of the S-automatic word with the given shape.
Picture automatic_window(const Dfao& a, const NumerationSystem& s, std::span<const int> shape,
                         const Symbol& pad);

// Ensures every state has a self-loop on the all-pad label. An existing
// all-pad transition that is not a self-loop is a contract violation.
Dfao complete_pad_loops(const Dfao& a, const Symbol& pad);

// A complete automaton for pad^* L, whose initial state carries a pad
// self-loop. Built by duplicating the initial state when it has incoming
// transitions, adding the loop, completing into a sink, and trimming.
Dfa pad_star_language(const Dfa& language, const Symbol& pad);

// Product of a DFAO over d-tuple labels with d copies of a word automaton:
// the first component follows the DFAO, component i follows the i-th label
// letter. States are restricted to the reachable set.
struct Product {
    Dfao dfao;                                  // output of a state = DFAO output of its first component
    std::vector<int> dfao_state;                // per product state
    std::vector<std::vector<int>> lang_states;  // per product state, one id per axis
};

Product product(const Dfao& a, const Dfa& language, int dims);

// The morphism sending each state q to the square picture of size r+1 whose
// cell at n is the state reached from q on the digit tuple (a_{n_1},...).
// Requires the automaton to be complete on the digit alphabet.
MultiMorphism canonical_morphism(const Dfa& a, const OrderedAlphabet& digits, int dims);

} // namespace shapesym
