#pragma once

#include <functional>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "shapesym/dfa.hpp"
#include "shapesym/error.hpp"

namespace shapesym {

// Extents of a bounded picture, one per axis. Axis 0 is the first
// coordinate and is rendered horizontally; axis 1 vertically.
using Shape = std::vector<int>;

// A bounded array of letters over an integer box. A picture of dimension 0
// is a single letter (the base case of slicing); a picture with any extent
// equal to 0 is identified with the empty picture of its dimension.
class Picture {
public:
    Picture() = default; // empty 1-dimensional picture

    Picture(Shape shape, std::vector<Symbol> cells);

    static Picture empty(int dims);
    static Picture filled(Shape shape, const Symbol& letter);
    static Picture letter0d(Symbol letter);
    static Picture single(int dims, const Symbol& letter); // shape (1,...,1)

    int dims() const { return static_cast<int>(shape_.size()); }
    const Shape& shape() const { return shape_; }
    int extent(int axis) const { return shape_[axis]; }
    bool is_empty() const { return dims() > 0 && cells_.empty(); }
    long long cell_count() const { return static_cast<long long>(cells_.size()); }

    const Symbol& at(std::span<const int> n) const;
    void set(std::span<const int> n, const Symbol& letter);
    const Symbol& corner() const; // cell at the all-zero coordinate

    const std::vector<Symbol>& cells() const { return cells_; }
    std::set<Symbol> letters() const;

    bool operator==(const Picture& other) const {
        return shape_ == other.shape_ && cells_ == other.cells_;
    }
    bool operator<(const Picture& other) const {
        if (shape_ != other.shape_) return shape_ < other.shape_;
        return cells_ < other.cells_;
    }

    size_t index(std::span<const int> n) const; // axis 0 varies fastest

private:
    Shape shape_{0};
    std::vector<Symbol> cells_;
};

// Visits every coordinate of the box [0,shape) in index order.
void for_each_coord(const Shape& shape, const std::function<void(std::span<const int>)>& fn);

long long box_volume(const Shape& shape);

// Sub-box with inclusive corners lo and hi.
Picture factor(const Picture& x, std::span<const int> lo, std::span<const int> hi);

// Hyperplane at index k along the given axis, as a (d-1)-dimensional
// picture. For a 1-dimensional picture this is a single letter.
Picture slice(const Picture& x, int axis, int k);

// Letters occurring in slice(x, axis, k), without building the slice.
std::set<Symbol> slice_letters(const Picture& x, int axis, int k);

// Concatenation along an axis. The empty picture is a two-sided identity;
// otherwise the cross-sections must agree.
Picture concat(const Picture& x, const Picture& y, int axis);

// All factors of the given shape, deduplicated.
std::set<Picture> factors_of_shape(const Picture& x, std::span<const int> u);

// Removes every hyperplane consisting entirely of `e`, iterating until none
// remains. Idempotent and independent of removal order.
Picture erase(const Picture& x, const Symbol& e);

// True iff erase(x, e) contains no `e`; equivalently, every `e` cell lies on
// some constant-`e` hyperplane.
bool is_erasable(const Picture& x, const Symbol& e);

// Cellwise relabeling. The map must cover every letter of x.
Picture map_letters(const Picture& x, const std::map<Symbol, Symbol>& f);
Picture map_letters(const Picture& x, const std::function<Symbol(const Symbol&)>& f);

// Axis permutation: the result places x's axis i along axis perm[i].
Picture permute_axes(const Picture& x, std::span<const int> perm);

std::string render(const Picture& x, const std::string& sep = " ");

} // namespace shapesym
