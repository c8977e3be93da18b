#include "shapesym/morphism.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace shapesym {

MultiMorphism::MultiMorphism(int dims, std::map<Symbol, Picture> images)
    : dims_(dims), images_(std::move(images)) {
    if (dims_ < 1) throw Error("morphism dimension must be at least 1");
    if (images_.empty()) throw Error("morphism must have at least one letter");
    for (const auto& [letter, img] : images_) {
        if (img.dims() != dims_)
            throw Error("image of '" + letter + "' has dimension " + std::to_string(img.dims()) +
                        ", expected " + std::to_string(dims_));
        if (img.is_empty())
            throw Error("image of '" + letter + "' is empty; images must have all extents >= 1");
    }
}

const Picture& MultiMorphism::image(const Symbol& letter) const {
    auto it = images_.find(letter);
    if (it == images_.end()) throw Error("morphism undefined on letter '" + letter + "'");
    return it->second;
}

int MultiMorphism::max_extent() const {
    int r = 0;
    for (const auto& [letter, img] : images_)
        for (int i = 0; i < dims_; ++i) r = std::max(r, img.extent(i));
    return r;
}

std::vector<Symbol> MultiMorphism::letters() const {
    std::vector<Symbol> out;
    out.reserve(images_.size());
    for (const auto& [letter, img] : images_) out.push_back(letter);
    return out;
}

UniMorphism make_uni_morphism(const std::map<Symbol, Word>& images) {
    std::map<Symbol, Picture> pics;
    for (const auto& [letter, word] : images)
        pics.emplace(letter, Picture({static_cast<int>(word.size())}, word));
    return UniMorphism(1, std::move(pics));
}

Word word_image(const UniMorphism& mu, const Symbol& letter) {
    if (mu.dims() != 1) throw Error("word_image requires a 1-dimensional morphism");
    return mu.image(letter).cells();
}

namespace {

// Common image extent along `axis` of all letters in `set`; on mismatch
// stores an offending pair and returns -1.
int common_extent(const MultiMorphism& mu, const std::set<Symbol>& set, int axis, Symbol* a_out,
                  Symbol* b_out) {
    int w = -1;
    Symbol first;
    for (const auto& letter : set) {
        int e = mu.extent(letter, axis);
        if (w < 0) {
            w = e;
            first = letter;
        } else if (e != w) {
            if (a_out) *a_out = first;
            if (b_out) *b_out = letter;
            return -1;
        }
    }
    return w;
}

// Letters in layer t (along `axis`) of the images of the letters of `set`.
std::set<Symbol> expand_layer(const MultiMorphism& mu, const std::set<Symbol>& set, int axis,
                              int t) {
    std::set<Symbol> out;
    for (const auto& letter : set) {
        auto layer = slice_letters(mu.image(letter), axis, t);
        out.insert(layer.begin(), layer.end());
    }
    return out;
}

// Alphabet of hyperplane 0 of the fixed point along `axis`: the closure of
// {seed} under taking layer 0 of images.
std::set<Symbol> axis_root_alphabet(const MultiMorphism& mu, const Symbol& seed, int axis) {
    std::set<Symbol> out{seed};
    std::vector<Symbol> todo{seed};
    while (!todo.empty()) {
        Symbol b = todo.back();
        todo.pop_back();
        for (const auto& c : slice_letters(mu.image(b), axis, 0))
            if (out.insert(c).second) todo.push_back(c);
    }
    return out;
}

} // namespace

Picture apply(const MultiMorphism& mu, const Picture& x) {
    int d = mu.dims();
    if (x.dims() != d) throw Error("picture dimension does not match the morphism");
    if (x.is_empty()) return Picture::empty(d);

    // Per axis: the common image extent of every slice, and offsets.
    std::vector<std::vector<int>> offsets(d);
    Shape out_shape(d);
    for (int axis = 0; axis < d; ++axis) {
        offsets[axis].resize(x.extent(axis) + 1, 0);
        for (int k = 0; k < x.extent(axis); ++k) {
            Symbol a, b;
            int w = common_extent(mu, slice_letters(x, axis, k), axis, &a, &b);
            if (w < 0)
                throw Error("incompatible slice on axis " + std::to_string(axis) + " at index " +
                            std::to_string(k) + ": letters '" + a + "' and '" + b +
                            "' have image extents " + std::to_string(mu.extent(a, axis)) +
                            " and " + std::to_string(mu.extent(b, axis)));
            offsets[axis][k + 1] = offsets[axis][k] + w;
        }
        out_shape[axis] = offsets[axis][x.extent(axis)];
    }

    Picture out = Picture::filled(out_shape, "");
    std::vector<int> dst(d);
    for_each_coord(x.shape(), [&](std::span<const int> n) {
        const Picture& img = mu.image(x.at(n));
        for_each_coord(img.shape(), [&](std::span<const int> m) {
            for (int i = 0; i < d; ++i) dst[i] = offsets[i][n[i]] + m[i];
            out.set(dst, img.at(m));
        });
    });
    return out;
}

MultiMorphism morphism_power(const MultiMorphism& mu, int power) {
    if (power < 1) throw Error("morphism power must be positive");
    std::map<Symbol, Picture> images;
    for (const auto& [letter, img] : mu.images()) {
        Picture z = img;
        for (int i = 1; i < power; ++i) z = apply(mu, z);
        images.emplace(letter, std::move(z));
    }
    return MultiMorphism(mu.dims(), std::move(images));
}

std::set<Symbol> reachable_letters(const MultiMorphism& mu, const Symbol& seed) {
    std::set<Symbol> out{seed};
    std::vector<Symbol> todo{seed};
    while (!todo.empty()) {
        Symbol b = todo.back();
        todo.pop_back();
        for (const auto& c : mu.image(b).letters())
            if (out.insert(c).second) todo.push_back(c);
    }
    return out;
}

std::string MorphismCheck::describe() const {
    if (ok) return "morphism";
    std::ostringstream s;
    s << "not a morphism: power " << power << " is undefined (axis " << axis << ", letters '"
      << first << "' and '" << second << "' have incompatible image extents)";
    return s.str();
}

MorphismCheck check_morphism(const MultiMorphism& mu, const std::vector<Symbol>& seeds) {
    // States are slice alphabets of iterated images, per axis, explored in
    // breadth-first order so the reported power is minimal.
    std::set<std::pair<int, std::set<Symbol>>> seen;
    std::deque<std::tuple<int, std::set<Symbol>, int>> queue; // axis, letters, level
    for (const auto& seed : seeds) {
        const Picture& img = mu.image(seed);
        for (int axis = 0; axis < mu.dims(); ++axis) {
            for (int t = 0; t < img.extent(axis); ++t) {
                auto set = slice_letters(img, axis, t);
                if (seen.emplace(axis, set).second) queue.emplace_back(axis, set, 1);
            }
        }
    }
    while (!queue.empty()) {
        auto [axis, set, level] = queue.front();
        queue.pop_front();
        Symbol a, b;
        int w = common_extent(mu, set, axis, &a, &b);
        if (w < 0) {
            MorphismCheck res;
            res.ok = false;
            res.power = level + 1;
            res.axis = axis;
            res.first = a;
            res.second = b;
            return res;
        }
        for (int t = 0; t < w; ++t) {
            auto child = expand_layer(mu, set, axis, t);
            if (seen.emplace(axis, child).second) queue.emplace_back(axis, child, level + 1);
        }
    }
    return {};
}

bool is_prolongable(const MultiMorphism& mu, const Symbol& seed) {
    if (!mu.has(seed)) return false;
    if (mu.image(seed).corner() != seed) return false;
    return check_morphism(mu, {seed}).ok;
}

Picture fixed_point_window(const MultiMorphism& mu, const Symbol& seed,
                           std::span<const int> shape) {
    int d = mu.dims();
    if (static_cast<int>(shape.size()) != d) throw Error("window shape must match the dimension");
    if (!is_prolongable(mu, seed))
        throw Error("morphism is not prolongable on '" + seed + "'");
    for (int s : shape)
        if (s <= 0) return Picture::empty(d);

    auto crop = [&](const Picture& p) {
        std::vector<int> lo(d, 0), hi(d);
        for (int i = 0; i < d; ++i) hi[i] = std::min(p.extent(i), static_cast<int>(shape[i])) - 1;
        return factor(p, lo, hi);
    };
    auto covered = [&](const Picture& p) {
        for (int i = 0; i < d; ++i)
            if (p.extent(i) < shape[i]) return false;
        return true;
    };

    Picture z = Picture::single(d, seed);
    while (!covered(z)) {
        Picture next = crop(apply(mu, z));
        bool grew = false;
        for (int i = 0; i < d; ++i) {
            if (z.extent(i) >= shape[i]) continue;
            if (next.extent(i) > z.extent(i)) grew = true;
        }
        if (!grew)
            throw Error("fixed point of '" + seed + "' does not cover the requested window");
        z = std::move(next);
    }
    return crop(z);
}

std::vector<int> shape_sequence(const MultiMorphism& mu, const Symbol& seed, int axis, int kmax) {
    if (axis < 0 || axis >= mu.dims()) throw Error("axis out of range");
    if (!is_prolongable(mu, seed))
        throw Error("morphism is not prolongable on '" + seed + "'");
    if (kmax <= 0) return {};

    auto term = [&](const std::set<Symbol>& set) {
        Symbol a, b;
        int w = common_extent(mu, set, axis, &a, &b);
        if (w < 0)
            throw Error("incompatible hyperplane alphabet on axis " + std::to_string(axis) +
                        ": letters '" + a + "' and '" + b + "'");
        return w;
    };

    std::set<Symbol> root = axis_root_alphabet(mu, seed, axis);
    std::vector<std::set<Symbol>> buf;
    auto expand_into = [&](std::set<Symbol> set) { // by value: buf may reallocate
        int w = term(set);
        for (int t = 0; t < w; ++t) buf.push_back(expand_layer(mu, set, axis, t));
    };
    expand_into(root); // buf[0] == root because the seed is prolongable
    size_t k = 1;
    while (static_cast<int>(buf.size()) < kmax) {
        if (k >= buf.size())
            throw Error("fixed point has fewer than " + std::to_string(kmax) +
                        " hyperplanes along axis " + std::to_string(axis));
        expand_into(buf[k]);
        ++k;
    }
    std::vector<int> out;
    out.reserve(kmax);
    for (int i = 0; i < kmax; ++i) out.push_back(term(buf[i]));
    return out;
}

std::string ShapeSymmetryCheck::describe() const {
    if (ok) return "shape-symmetric";
    std::ostringstream s;
    s << "not shape-symmetric: at hyperplane index " << index << ", axis " << axis_a
      << " expands to extent " << extent_a << " but axis " << axis_b << " expands to extent "
      << extent_b;
    return s.str();
}

ShapeSymmetryCheck check_shape_symmetric(const MultiMorphism& mu, const Symbol& seed) {
    int d = mu.dims();
    auto morphism = check_morphism(mu, {seed});
    if (!morphism.ok) throw Error(morphism.describe());
    if (!is_prolongable(mu, seed))
        throw Error("morphism is not prolongable on '" + seed + "'");

    using JointState = std::vector<std::set<Symbol>>;
    JointState root(d);
    for (int axis = 0; axis < d; ++axis) root[axis] = axis_root_alphabet(mu, seed, axis);

    // extents per axis; returns false on a cross-axis mismatch
    auto extents_of = [&](const JointState& st, std::vector<int>& ext, int* ax_a, int* ax_b) {
        ext.resize(d);
        for (int axis = 0; axis < d; ++axis) {
            Symbol a, b;
            int w = common_extent(mu, st[axis], axis, &a, &b);
            if (w < 0)
                throw Error("internal error: incompatible slice alphabet for a checked morphism");
            ext[axis] = w;
        }
        for (int axis = 1; axis < d; ++axis) {
            if (ext[axis] != ext[0]) {
                if (ax_a) *ax_a = 0;
                if (ax_b) *ax_b = axis;
                return false;
            }
        }
        return true;
    };
    auto children_of = [&](const JointState& st, int s) {
        std::vector<JointState> out;
        for (int t = 0; t < s; ++t) {
            JointState child(d);
            for (int axis = 0; axis < d; ++axis) child[axis] = expand_layer(mu, st[axis], axis, t);
            out.push_back(std::move(child));
        }
        return out;
    };

    // Closure pass for the verdict.
    bool violated = false;
    {
        std::set<JointState> seen{root};
        std::deque<JointState> queue{root};
        while (!queue.empty() && !violated) {
            JointState st = queue.front();
            queue.pop_front();
            std::vector<int> ext;
            if (!extents_of(st, ext, nullptr, nullptr)) {
                violated = true;
                break;
            }
            for (auto& child : children_of(st, ext[0]))
                if (seen.insert(child).second) queue.push_back(child);
        }
    }
    if (!violated) return {};

    // Streaming pass in hyperplane order to find the smallest witness index.
    ShapeSymmetryCheck res;
    res.ok = false;
    std::vector<JointState> buf;
    std::vector<int> ext;
    int ax_a = 0, ax_b = 0;
    if (!extents_of(root, ext, &ax_a, &ax_b)) {
        res.index = 0;
        res.axis_a = ax_a;
        res.axis_b = ax_b;
        res.extent_a = ext[ax_a];
        res.extent_b = ext[ax_b];
        return res;
    }
    for (auto& child : children_of(root, ext[0])) buf.push_back(std::move(child));
    constexpr long long kIndexCap = 1 << 22;
    for (long long k = 1; k < kIndexCap; ++k) {
        if (k >= static_cast<long long>(buf.size()))
            throw Error("internal error: shape-symmetry witness beyond the fixed point");
        if (!extents_of(buf[k], ext, &ax_a, &ax_b)) {
            res.index = k;
            res.axis_a = ax_a;
            res.axis_b = ax_b;
            res.extent_a = ext[ax_a];
            res.extent_b = ext[ax_b];
            return res;
        }
        for (auto& child : children_of(buf[k], ext[0])) buf.push_back(std::move(child));
    }
    throw Error("shape-symmetry witness index exceeds the search cap");
}

UniMorphism line_morphism(const MultiMorphism& mu, const Symbol& seed, int axis) {
    if (axis < 0 || axis >= mu.dims()) throw Error("axis out of range");
    if (!is_prolongable(mu, seed))
        throw Error("morphism is not prolongable on '" + seed + "'");
    auto border_word = [&](const Symbol& b) {
        const Picture& img = mu.image(b);
        Word out;
        std::vector<int> n(mu.dims(), 0);
        for (int t = 0; t < img.extent(axis); ++t) {
            n[axis] = t;
            out.push_back(img.at(n));
        }
        return out;
    };
    std::map<Symbol, Word> images;
    std::vector<Symbol> todo{seed};
    images.emplace(seed, border_word(seed));
    while (!todo.empty()) {
        Symbol b = todo.back();
        todo.pop_back();
        for (const auto& c : images[b])
            if (!images.count(c)) {
                images.emplace(c, border_word(c));
                todo.push_back(c);
            }
    }
    return make_uni_morphism(images);
}

std::vector<Symbol> digit_symbols(int count) {
    std::vector<Symbol> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(std::to_string(i));
    return out;
}

Dfa directive_automaton(const UniMorphism& phi, const Symbol& seed) {
    if (phi.dims() != 1) throw Error("directive automaton requires a 1-dimensional morphism");
    if (!is_prolongable(phi, seed))
        throw Error("morphism is not prolongable on '" + seed + "'");
    int r = phi.max_extent();
    auto digits = digit_symbols(r);

    Dfa a;
    Symbol init_name = seed + "'";
    while (phi.has(init_name)) init_name += "'";
    int init = a.add_state(init_name, true);
    a.set_initial(init);
    std::map<Symbol, int> ids;
    for (const auto& letter : phi.letters()) ids[letter] = a.add_state(letter, true);
    for (int i = 0; i < r; ++i) a.add_label({digits[i]});

    Word seed_word = word_image(phi, seed);
    for (size_t i = 1; i < seed_word.size(); ++i)
        a.add_transition(init, {digits[i]}, ids[seed_word[i]]);
    for (const auto& letter : phi.letters()) {
        Word w = word_image(phi, letter);
        for (size_t i = 0; i < w.size(); ++i)
            a.add_transition(ids[letter], {digits[i]}, ids[w[i]]);
    }
    return restrict_states(a, reachable_states(a));
}

Dfa multidim_directive_automaton(const MultiMorphism& mu, const Symbol& seed) {
    auto sym = check_shape_symmetric(mu, seed);
    if (!sym.ok) throw Error(sym.describe());
    int d = mu.dims();
    int r = mu.max_extent();
    auto digits = digit_symbols(r);

    Dfa a;
    std::map<Symbol, int> ids;
    auto reach = reachable_letters(mu, seed);
    ids[seed] = a.add_state(seed, true);
    for (const auto& letter : reach)
        if (letter != seed) ids[letter] = a.add_state(letter, true);
    a.set_initial(ids[seed]);

    // materialize the full digit-tuple alphabet
    Shape digit_box(d, r);
    for_each_coord(digit_box, [&](std::span<const int> n) {
        Label l(d);
        for (int i = 0; i < d; ++i) l[i] = digits[n[i]];
        a.add_label(l);
    });

    for (const auto& letter : reach) {
        const Picture& img = mu.image(letter);
        for_each_coord(img.shape(), [&](std::span<const int> n) {
            Label l(d);
            for (int i = 0; i < d; ++i) l[i] = digits[n[i]];
            a.add_transition(ids[letter], l, ids[img.at(n)]);
        });
    }
    return a;
}

} // namespace shapesym
