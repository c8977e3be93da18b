#include "shapesym/picture.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace shapesym {

long long box_volume(const Shape& shape) {
    long long v = 1;
    for (int s : shape) v *= s;
    return v;
}

Picture::Picture(Shape shape, std::vector<Symbol> cells) : shape_(std::move(shape)) {
    for (int s : shape_)
        if (s < 0) throw Error("negative extent in picture shape");
    bool degenerate = std::any_of(shape_.begin(), shape_.end(), [](int s) { return s == 0; });
    if (degenerate && !shape_.empty()) {
        std::fill(shape_.begin(), shape_.end(), 0);
        return;
    }
    if (static_cast<long long>(cells.size()) != box_volume(shape_))
        throw Error("cell count does not match picture shape");
    cells_ = std::move(cells);
}

Picture Picture::empty(int dims) {
    if (dims < 1) throw Error("empty picture needs dimension >= 1");
    Picture p;
    p.shape_.assign(dims, 0);
    return p;
}

Picture Picture::filled(Shape shape, const Symbol& letter) {
    bool degenerate =
        !shape.empty() && std::any_of(shape.begin(), shape.end(), [](int s) { return s == 0; });
    std::vector<Symbol> cells;
    if (!degenerate) cells.assign(static_cast<size_t>(box_volume(shape)), letter);
    return Picture(std::move(shape), std::move(cells));
}

Picture Picture::letter0d(Symbol letter) {
    Picture p;
    p.shape_.clear();
    p.cells_ = {std::move(letter)};
    return p;
}

Picture Picture::single(int dims, const Symbol& letter) {
    return filled(Shape(dims, 1), letter);
}

size_t Picture::index(std::span<const int> n) const {
    size_t idx = 0, stride = 1;
    for (int i = 0; i < dims(); ++i) {
        if (n[i] < 0 || n[i] >= shape_[i])
            throw Error("coordinate " + std::to_string(n[i]) + " out of range on axis " +
                        std::to_string(i));
        idx += stride * static_cast<size_t>(n[i]);
        stride *= static_cast<size_t>(shape_[i]);
    }
    return idx;
}

const Symbol& Picture::at(std::span<const int> n) const { return cells_[index(n)]; }

void Picture::set(std::span<const int> n, const Symbol& letter) { cells_[index(n)] = letter; }

const Symbol& Picture::corner() const {
    if (cells_.empty()) throw Error("empty picture has no corner cell");
    return cells_[0];
}

std::set<Symbol> Picture::letters() const { return {cells_.begin(), cells_.end()}; }

void for_each_coord(const Shape& shape, const std::function<void(std::span<const int>)>& fn) {
    if (std::any_of(shape.begin(), shape.end(), [](int s) { return s == 0; })) return;
    std::vector<int> n(shape.size(), 0);
    while (true) {
        fn(n);
        size_t i = 0;
        for (; i < shape.size(); ++i) {
            if (++n[i] < shape[i]) break;
            n[i] = 0;
        }
        if (i == shape.size()) return;
        if (shape.empty()) return;
    }
}

Picture factor(const Picture& x, std::span<const int> lo, std::span<const int> hi) {
    int d = x.dims();
    if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d)
        throw Error("factor corners must have one coordinate per axis");
    Shape shape(d);
    for (int i = 0; i < d; ++i) {
        if (lo[i] < 0 || lo[i] > hi[i] || hi[i] >= x.extent(i))
            throw Error("factor corners out of bounds on axis " + std::to_string(i));
        shape[i] = hi[i] - lo[i] + 1;
    }
    Picture out = Picture::filled(shape, "");
    std::vector<int> src(d);
    for_each_coord(shape, [&](std::span<const int> n) {
        for (int i = 0; i < d; ++i) src[i] = n[i] + lo[i];
        out.set(n, x.at(src));
    });
    return out;
}

Picture slice(const Picture& x, int axis, int k) {
    int d = x.dims();
    if (axis < 0 || axis >= d) throw Error("slice axis out of range");
    if (k < 0 || k >= x.extent(axis))
        throw Error("slice index " + std::to_string(k) + " out of range on axis " +
                    std::to_string(axis));
    Shape shape;
    for (int i = 0; i < d; ++i)
        if (i != axis) shape.push_back(x.extent(i));
    if (d == 1) {
        std::vector<int> n{k};
        return Picture::letter0d(x.at(n));
    }
    Picture out = Picture::filled(shape, "");
    std::vector<int> src(d);
    for_each_coord(shape, [&](std::span<const int> n) {
        for (int i = 0, j = 0; i < d; ++i) src[i] = (i == axis) ? k : n[j++];
        out.set(n, x.at(src));
    });
    return out;
}

std::set<Symbol> slice_letters(const Picture& x, int axis, int k) {
    if (k < 0 || k >= x.extent(axis))
        throw Error("slice index " + std::to_string(k) + " out of range on axis " +
                    std::to_string(axis));
    std::set<Symbol> out;
    Shape rest = x.shape();
    rest[axis] = 1;
    std::vector<int> src(x.dims());
    for_each_coord(rest, [&](std::span<const int> n) {
        for (int i = 0; i < x.dims(); ++i) src[i] = (i == axis) ? k : n[i];
        out.insert(x.at(src));
    });
    return out;
}

Picture concat(const Picture& x, const Picture& y, int axis) {
    int d = x.dims();
    if (d != y.dims()) throw Error("concat operands have different dimensions");
    if (axis < 0 || axis >= d) throw Error("concat axis out of range");
    if (x.is_empty()) return y;
    if (y.is_empty()) return x;
    for (int i = 0; i < d; ++i) {
        if (i == axis) continue;
        if (x.extent(i) != y.extent(i)) {
            auto fmt = [&](const Picture& p) {
                std::string s = "(";
                for (int j = 0; j < d; ++j) {
                    if (j) s += ",";
                    s += (j == axis) ? "_" : std::to_string(p.extent(j));
                }
                return s + ")";
            };
            throw Error("concat cross-sections differ along axis " + std::to_string(axis) + ": " +
                        fmt(x) + " vs " + fmt(y));
        }
    }
    Shape shape = x.shape();
    shape[axis] += y.extent(axis);
    Picture out = Picture::filled(shape, "");
    std::vector<int> dst(d);
    for_each_coord(x.shape(), [&](std::span<const int> n) {
        std::copy(n.begin(), n.end(), dst.begin());
        out.set(dst, x.at(n));
    });
    for_each_coord(y.shape(), [&](std::span<const int> n) {
        std::copy(n.begin(), n.end(), dst.begin());
        dst[axis] += x.extent(axis);
        out.set(dst, y.at(n));
    });
    return out;
}

std::set<Picture> factors_of_shape(const Picture& x, std::span<const int> u) {
    int d = x.dims();
    if (static_cast<int>(u.size()) != d) throw Error("factor shape must have one extent per axis");
    Shape starts(d);
    for (int i = 0; i < d; ++i) {
        if (u[i] < 1 || u[i] > x.extent(i))
            throw Error("factor shape out of bounds on axis " + std::to_string(i));
        starts[i] = x.extent(i) - u[i] + 1;
    }
    std::set<Picture> out;
    std::vector<int> hi(d);
    for_each_coord(starts, [&](std::span<const int> lo) {
        for (int i = 0; i < d; ++i) hi[i] = lo[i] + u[i] - 1;
        out.insert(factor(x, lo, hi));
    });
    return out;
}

namespace {

bool hyperplane_is_constant(const Picture& x, int axis, int k, const Symbol& e) {
    auto ls = slice_letters(x, axis, k);
    return ls.size() == 1 && *ls.begin() == e;
}

// Removes the hyperplane at index k along axis (the two remaining parts are
// glued back together).
Picture drop_hyperplane(const Picture& x, int axis, int k) {
    Picture left = Picture::empty(x.dims());
    Picture right = Picture::empty(x.dims());
    std::vector<int> lo(x.dims(), 0), hi(x.shape().begin(), x.shape().end());
    for (auto& h : hi) h -= 1;
    if (k >= 1) {
        auto h2 = hi;
        h2[axis] = k - 1;
        left = factor(x, lo, h2);
    }
    if (k < x.extent(axis) - 1) {
        auto l2 = lo;
        l2[axis] = k + 1;
        right = factor(x, l2, hi);
    }
    return concat(left, right, axis);
}

} // namespace

Picture erase(const Picture& x, const Symbol& e) {
    Picture cur = x;
    bool changed = true;
    while (changed && !cur.is_empty()) {
        changed = false;
        for (int axis = 0; axis < cur.dims() && !changed; ++axis) {
            for (int k = 0; k < cur.extent(axis); ++k) {
                if (hyperplane_is_constant(cur, axis, k, e)) {
                    cur = drop_hyperplane(cur, axis, k);
                    changed = true;
                    break;
                }
            }
        }
    }
    return cur;
}

bool is_erasable(const Picture& x, const Symbol& e) {
    auto cleaned = erase(x, e);
    return cleaned.letters().count(e) == 0;
}

Picture map_letters(const Picture& x, const std::map<Symbol, Symbol>& f) {
    return map_letters(x, [&](const Symbol& s) -> Symbol {
        auto it = f.find(s);
        if (it == f.end()) throw Error("letter map undefined on '" + s + "'");
        return it->second;
    });
}

Picture map_letters(const Picture& x, const std::function<Symbol(const Symbol&)>& f) {
    std::vector<Symbol> cells;
    cells.reserve(x.cells().size());
    for (const auto& c : x.cells()) cells.push_back(f(c));
    return Picture(x.shape(), std::move(cells));
}

Picture permute_axes(const Picture& x, std::span<const int> perm) {
    int d = x.dims();
    if (static_cast<int>(perm.size()) != d) throw Error("permutation size mismatch");
    std::vector<bool> seen(d, false);
    for (int p : perm) {
        if (p < 0 || p >= d || seen[p]) throw Error("not a permutation of the axes");
        seen[p] = true;
    }
    Shape shape(d);
    for (int i = 0; i < d; ++i) shape[perm[i]] = x.extent(i);
    Picture out = Picture::filled(shape, "");
    std::vector<int> dst(d);
    for_each_coord(x.shape(), [&](std::span<const int> n) {
        for (int i = 0; i < d; ++i) dst[perm[i]] = n[i];
        out.set(dst, x.at(n));
    });
    return out;
}

std::string render(const Picture& x, const std::string& sep) {
    std::ostringstream out;
    if (x.dims() == 0) {
        out << x.corner();
        return out.str();
    }
    if (x.is_empty()) return "";
    int d = x.dims();
    std::vector<int> n(d, 0);
    // 2-dimensional slabs in index order of the remaining axes
    Shape slab_index(d > 2 ? Shape(x.shape().begin() + 2, x.shape().end()) : Shape{});
    auto emit_slab = [&](std::span<const int> rest) {
        if (d > 2) {
            out << "-- slice k=";
            for (size_t i = 0; i < rest.size(); ++i) out << (i ? "," : "") << rest[i];
            out << "\n";
        }
        int rows = d >= 2 ? x.extent(1) : 1;
        int cols = x.extent(0);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                n[0] = c;
                if (d >= 2) n[1] = r;
                for (size_t i = 0; i < rest.size(); ++i) n[2 + i] = rest[i];
                if (c) out << sep;
                out << x.at(n);
            }
            out << "\n";
        }
    };
    if (slab_index.empty())
        emit_slab({});
    else
        for_each_coord(slab_index, emit_slab);
    return out.str();
}

} // namespace shapesym
