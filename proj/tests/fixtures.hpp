// Hand-checked reference data shared across the test suites: a small
// numeration system on the bb-free language, a four-state DFAO over padded
// pairs, an eight-letter bidimensional morphism, and the windows they
// generate.
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "shapesym/conversion.hpp"

namespace fixtures {

using namespace shapesym;

inline Word word_of(const std::string& chars) {
    Word w;
    for (char c : chars) w.push_back(std::string(1, c));
    return w;
}

// One row per line of the grid; cells separated by whitespace. Row r holds
// the cells with axis-1 coordinate r.
inline Picture pic2(const std::vector<std::string>& rows) {
    std::vector<std::vector<std::string>> grid;
    for (const auto& row : rows) {
        std::istringstream in(row);
        std::vector<std::string> cells;
        std::string tok;
        while (in >> tok) cells.push_back(tok);
        grid.push_back(std::move(cells));
    }
    int h = static_cast<int>(grid.size());
    int w = h == 0 ? 0 : static_cast<int>(grid[0].size());
    Picture p = Picture::filled({w, h}, "");
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            std::vector<int> n{c, r};
            p.set(n, grid[r][c]);
        }
    return p;
}

inline Picture pic1(const std::string& chars) {
    std::vector<Symbol> cells;
    for (char c : chars) cells.push_back(std::string(1, c));
    return Picture({static_cast<int>(cells.size())}, cells);
}

// Words over {a,b} without the factor bb, i.e. {a,ba}*{eps,b}. Complete
// three-state automaton: h (start, final), k (just read b, final), l (sink).
inline NumerationSystem no_bb_system() {
    Dfa a;
    int h = a.add_state("h", true);
    int k = a.add_state("k", true);
    int l = a.add_state("l", false);
    a.set_initial(h);
    a.add_transition(h, {"a"}, h);
    a.add_transition(h, {"b"}, k);
    a.add_transition(k, {"a"}, h);
    a.add_transition(k, {"b"}, l);
    a.add_transition(l, {"a"}, l);
    a.add_transition(l, {"b"}, l);
    return NumerationSystem(OrderedAlphabet({"a", "b"}), std::move(a));
}

// Four-state DFAO over pairs from {#,a,b}, outputs equal to state names.
// No all-pad loops; complete on the other eight labels.
inline Dfao four_state_dfao() {
    Dfao d;
    int p = d.m.add_state("p", false);
    int q = d.m.add_state("q", false);
    int r = d.m.add_state("r", false);
    int s = d.m.add_state("s", false);
    d.m.set_initial(p);
    d.outputs = {"p", "q", "r", "s"};
    auto t = [&](int from, const char* x, const char* y, int to) {
        d.m.add_transition(from, {x, y}, to);
    };
    t(p, "#", "a", p); t(p, "a", "a", p); t(p, "a", "b", p);
    t(p, "#", "b", q); t(p, "a", "#", q); t(p, "b", "#", q);
    t(p, "b", "a", s); t(p, "b", "b", s);
    t(q, "a", "a", s); t(q, "b", "b", s);
    t(q, "a", "b", q); t(q, "b", "#", q); t(q, "b", "a", q);
    t(q, "#", "a", p); t(q, "#", "b", p); t(q, "a", "#", p);
    t(r, "#", "a", p); t(r, "#", "b", p); t(r, "b", "b", p);
    t(r, "a", "#", s); t(r, "b", "#", s); t(r, "b", "a", s);
    t(r, "a", "a", r); t(r, "a", "b", r);
    t(s, "a", "b", s); t(s, "b", "#", s); t(s, "b", "a", s);
    t(s, "#", "a", r); t(s, "#", "b", r); t(s, "a", "#", r); t(s, "b", "b", r);
    t(s, "a", "a", q);
    return d;
}

// The 8x8 window generated by the DFAO above with the bb-free system.
inline Picture expected_automatic_8x8() {
    return pic2({
        "p q q p q p q q",
        "p p s s q s p s",
        "q p s q s q p s",
        "p p s p s q q s",
        "q p s p s s s r",
        "p s q p s q s q",
        "p p s p s q p s",
        "q p s p s s p s",
    });
}

// Eight-letter bidimensional morphism with a shape-symmetric fixed point.
inline MultiMorphism running_morphism() {
    std::map<Symbol, Picture> images;
    images.emplace("a", pic2({"a b", "c d"}));
    images.emplace("b", pic2({"e", "c"}));
    images.emplace("c", pic2({"e b"}));
    images.emplace("d", pic2({"f"}));
    images.emplace("e", pic2({"e b", "g d"}));
    images.emplace("f", pic2({"a b", "c d"}));
    images.emplace("g", pic2({"h b"}));
    images.emplace("h", pic2({"h b", "c d"}));
    return MultiMorphism(2, std::move(images));
}

inline Picture expected_fixed_point_10x10() {
    return pic2({
        "a b e e b e b e e b",
        "c d c g d g d c g d",
        "e b f e b h b f h b",
        "e b e a b e b e h b",
        "g d c c d g d c c d",
        "e b e e b a b e e b",
        "g d c g d c d c g d",
        "h b f e b e b f h b",
        "e b e e b e b e a b",
        "g d c g d g d c c d",
    });
}

// The map that fails to be a morphism at its second application.
inline MultiMorphism four_letter_nonmorphism() {
    std::map<Symbol, Picture> images;
    images.emplace("a", pic2({"a a", "b d"}));
    images.emplace("b", pic2({"c", "b"}));
    images.emplace("c", pic2({"a a"}));
    images.emplace("d", pic2({"d"}));
    return MultiMorphism(2, std::move(images));
}

// Complete automaton for #*L over {#,a,b}, L the bb-free language.
// States g (start), h, k and the sink l.
inline Dfa padded_no_bb_dfa() {
    Dfa a;
    int g = a.add_state("g", true);
    int h = a.add_state("h", true);
    int k = a.add_state("k", true);
    int l = a.add_state("l", false);
    a.set_initial(g);
    a.add_transition(g, {"#"}, g);
    a.add_transition(g, {"a"}, h);
    a.add_transition(g, {"b"}, k);
    a.add_transition(h, {"#"}, l);
    a.add_transition(h, {"a"}, h);
    a.add_transition(h, {"b"}, k);
    a.add_transition(k, {"#"}, l);
    a.add_transition(k, {"a"}, h);
    a.add_transition(k, {"b"}, l);
    a.add_transition(l, {"#"}, l);
    a.add_transition(l, {"a"}, l);
    a.add_transition(l, {"b"}, l);
    return a;
}

// Fixed-point window of the product construction on the two automata above:
// first 8 columns and 11 rows. Every cell is forced by the edge lists; the
// cells at (1,8) and (3,8) were re-derived from them by hand:
// (1,8) sits at offset (1,2) inside the image of the cell (0,2) = (q,g,k),
// so it equals the product step from (q,g,k) on (a,b), which is (q,h,l);
// (3,8) sits at offset (0,2) inside the image of (1,2) = (p,h,k), the step
// on (#,b), which is (q,l,l).
inline Picture expected_product_window_8x11() {
    return pic2({
        "(p,g,g) (q,h,g) (q,k,g) (q,l,g) (p,h,g) (q,k,g) (q,l,g) (p,h,g)",
        "(p,g,h) (p,h,h) (s,k,h) (p,l,h) (s,h,h) (q,k,h) (p,l,h) (s,h,h)",
        "(q,g,k) (p,h,k) (s,k,k) (p,l,k) (q,h,k) (s,k,k) (p,l,k) (q,h,k)",
        "(p,g,l) (q,h,l) (q,k,l) (p,l,l) (q,h,l) (q,k,l) (s,l,l) (r,h,l)",
        "(p,g,h) (p,h,h) (s,k,h) (p,l,h) (p,h,h) (s,k,h) (r,l,h) (q,h,h)",
        "(q,g,k) (p,h,k) (s,k,k) (q,l,k) (p,h,k) (s,k,k) (r,l,k) (s,h,k)",
        "(q,g,l) (p,h,l) (q,k,l) (p,l,l) (q,h,l) (q,k,l) (s,l,l) (r,h,l)",
        "(p,g,h) (s,h,h) (q,k,h) (p,l,h) (p,h,h) (s,k,h) (r,l,h) (q,h,h)",
        "(p,g,l) (q,h,l) (s,k,l) (q,l,l) (p,h,l) (s,k,l) (r,l,l) (s,h,l)",
        "(p,g,l) (q,h,l) (q,k,l) (q,l,l) (p,h,l) (q,k,l) (q,l,l) (p,h,l)",
        "(p,g,l) (p,h,l) (s,k,l) (p,l,l) (s,h,l) (q,k,l) (p,l,l) (s,h,l)",
    });
}

// Automatic presentation bundling the DFAO (with pad loops added) and the
// bb-free system.
inline AutomaticPresentation sample_automatic_presentation() {
    return AutomaticPresentation{no_bb_system(), complete_pad_loops(four_state_dfao(), "#"), "#",
                                 2};
}

} // namespace fixtures
