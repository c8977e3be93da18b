#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "shapesym/picture.hpp"

namespace shapesym {

// A map from letters to non-empty bounded pictures of a fixed dimension.
// Whether it extends to a morphism (all iterated applications well defined)
// is decided separately by check_morphism.
class MultiMorphism {
public:
    MultiMorphism() = default; // unset placeholder; every operation throws
    MultiMorphism(int dims, std::map<Symbol, Picture> images);

    int dims() const { return dims_; }
    const std::map<Symbol, Picture>& images() const { return images_; }
    bool has(const Symbol& letter) const { return images_.count(letter) > 0; }
    const Picture& image(const Symbol& letter) const;
    int extent(const Symbol& letter, int axis) const { return image(letter).extent(axis); }
    int max_extent() const; // largest image extent over all letters and axes
    std::vector<Symbol> letters() const;

    bool operator==(const MultiMorphism& other) const {
        return dims_ == other.dims_ && images_ == other.images_;
    }

private:
    int dims_ = 0;
    std::map<Symbol, Picture> images_;
};

// One-dimensional morphisms are the same object with dims() == 1.
using UniMorphism = MultiMorphism;

UniMorphism make_uni_morphism(const std::map<Symbol, Word>& images);
Word word_image(const UniMorphism& mu, const Symbol& letter);

// Image of a picture: every axis-i slice of x must consist of letters whose
// images agree in extent along axis i. Throws an Error naming the axis, the
// slice index and two offending letters otherwise.
Picture apply(const MultiMorphism& mu, const Picture& x);

// mu^power, computed by iterated application to each image.
MultiMorphism morphism_power(const MultiMorphism& mu, int power);

// Letters occurring in some iterated image of the seed (including the seed).
std::set<Symbol> reachable_letters(const MultiMorphism& mu, const Symbol& seed);

struct MorphismCheck {
    bool ok = true;
    // on failure: the smallest power whose application is undefined, plus the
    // axis and two letters with mismatched image extents
    int power = 0;
    int axis = -1;
    Symbol first, second;
    std::string describe() const;
};

// Decides whether mu^n(seed) is well defined for every n and every seed.
// Works on the closure of reachable slice alphabets, so it terminates.
MorphismCheck check_morphism(const MultiMorphism& mu, const std::vector<Symbol>& seeds);

// True iff the image of the seed has the seed in its corner and mu is a
// morphism on the letters reachable from the seed.
bool is_prolongable(const MultiMorphism& mu, const Symbol& seed);

// The prefix of the fixed point mu^omega(seed) with the given shape. Throws
// when the fixed point does not cover the requested window.
Picture fixed_point_window(const MultiMorphism& mu, const Symbol& seed,
                           std::span<const int> shape);

// First kmax terms of the sequence k -> extent along `axis` of the image of
// the k-th hyperplane of the fixed point.
std::vector<int> shape_sequence(const MultiMorphism& mu, const Symbol& seed, int axis, int kmax);

struct ShapeSymmetryCheck {
    bool ok = true;
    long long index = -1; // hyperplane index witnessing the mismatch
    int axis_a = -1, axis_b = -1;
    int extent_a = 0, extent_b = 0;
    std::string describe() const;
};

// Decides whether the fixed point is shape-symmetric, i.e. whether all
// per-axis shape sequences coincide. Runs on the closure of joint hyperplane
// alphabets; a failure is reported with the smallest witnessing index.
ShapeSymmetryCheck check_shape_symmetric(const MultiMorphism& mu, const Symbol& seed);

// The one-dimensional morphism generating the axis line of the fixed point,
// restricted to the letters reachable along that line.
UniMorphism line_morphism(const MultiMorphism& mu, const Symbol& seed, int axis);

// Digit symbols "0", "1", ..., as used by directive automata.
std::vector<Symbol> digit_symbols(int count);

// The automaton whose states are the letters of phi, with the digit-i
// transition from b landing on the i-th letter of phi(b); words with a
// leading zero are excluded, so the accepted language is exactly the
// directive language of (phi, seed). Every state is final.
Dfa directive_automaton(const UniMorphism& phi, const Symbol& seed);

// Multidimensional variant: transitions on digit tuples inside the image
// boxes. No leading-zero exclusion (padding is handled by the reader).
Dfa multidim_directive_automaton(const MultiMorphism& mu, const Symbol& seed);

} // namespace shapesym
