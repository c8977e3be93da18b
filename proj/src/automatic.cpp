#include "shapesym/automatic.hpp"

#include <algorithm>

namespace shapesym {

Symbol automatic_cell(const Dfao& a, const NumerationSystem& s, std::span<const Nat> coords,
                      const Symbol& pad) {
    if (s.alphabet().contains(pad))
        throw Error("pad symbol '" + pad + "' must not belong to the alphabet");
    std::vector<Word> reps;
    reps.reserve(coords.size());
    for (const auto& n : coords) reps.push_back(s.rep(n));
    auto cols = pad_tuple(reps, pad).columns();
    return a.output_of(run(a.m, cols));
}

Symbol automatic_cell(const Dfao& a, const NumerationSystem& s, std::span<const int> coords,
                      const Symbol& pad) {
    std::vector<Nat> big(coords.begin(), coords.end());
    return automatic_cell(a, s, big, pad);
}

Picture automatic_window(const Dfao& a, const NumerationSystem& s, std::span<const int> shape,
                         const Symbol& pad) {
    Shape sh(shape.begin(), shape.end());
    Picture out = Picture::filled(sh, "");
    for_each_coord(sh, [&](std::span<const int> n) {
        out.set(n, automatic_cell(a, s, n, pad));
    });
    return out;
}

Dfao complete_pad_loops(const Dfao& a, const Symbol& pad) {
    Dfao out = a;
    Label all_pad(a.m.label_arity(), pad);
    out.m.add_label(all_pad);
    for (int q = 0; q < out.m.n_states(); ++q) {
        int t = out.m.next(q, all_pad);
        if (t == q) continue;
        if (t != -1)
            throw Error("state '" + out.m.state_name(q) +
                        "' already has a non-loop transition on " + label_str(all_pad));
        out.m.add_transition(q, all_pad, q);
    }
    return out;
}

Dfa pad_star_language(const Dfa& language, const Symbol& pad) {
    if (language.n_labels() > 0 && language.label_arity() != 1)
        throw Error("pad_star_language expects a word automaton");
    for (const auto& l : language.labels())
        if (l[0] == pad) throw Error("pad symbol '" + pad + "' already occurs in the language");

    // trim to useful states first, so exactly one dead sink remains afterwards
    Dfa a = language;
    {
        auto reach = reachable_states(a);
        auto co = coreachable_states(a);
        std::vector<bool> keep(a.n_states());
        for (int q = 0; q < a.n_states(); ++q) keep[q] = reach[q] && co[q];
        if (!keep[a.initial()]) throw Error("language automaton accepts nothing");
        a = restrict_states(a, keep);
    }

    int init = a.initial();
    bool has_incoming = false;
    for (int q = 0; q < a.n_states() && !has_incoming; ++q)
        for (int l = 0; l < a.n_labels() && !has_incoming; ++l)
            if (a.next(q, l) == init) has_incoming = true;
    if (has_incoming) {
        Symbol name = a.state_name(init) + "'";
        while (a.has_state_named(name)) name += "'";
        int fresh = a.add_state(name, a.is_final(init));
        for (int l = 0; l < a.n_labels(); ++l) {
            int t = a.next(init, l);
            if (t >= 0) a.add_transition(fresh, a.label(l), t);
        }
        a.set_initial(fresh);
        init = fresh;
    }
    a.add_transition(init, {pad}, init);

    // complete over the padded alphabet into a fresh sink
    bool missing = false;
    for (int q = 0; q < a.n_states() && !missing; ++q)
        for (int l = 0; l < a.n_labels() && !missing; ++l)
            if (a.next(q, l) < 0) missing = true;
    if (missing) {
        Symbol name = "sink";
        while (a.has_state_named(name)) name += "'";
        int sink = a.add_state(name, false);
        for (int q = 0; q < a.n_states(); ++q)
            for (int l = 0; l < a.n_labels(); ++l)
                if (a.next(q, l) < 0) a.add_transition(q, a.label(l), sink);
    }
    return restrict_states(a, reachable_states(a));
}

Product product(const Dfao& a, const Dfa& language, int dims) {
    if (dims < 1) throw Error("product dimension must be positive");
    if (a.m.label_arity() != dims)
        throw Error("DFAO labels have arity " + std::to_string(a.m.label_arity()) +
                    ", expected " + std::to_string(dims));
    if (language.label_arity() != 1) throw Error("language automaton must use word labels");

    auto name_of = [&](int qa, const std::vector<int>& ls) {
        std::string s = "(" + a.m.state_name(qa);
        for (int l : ls) s += "," + language.state_name(l);
        return s + ")";
    };
    auto is_final = [&](int qa, const std::vector<int>& ls) {
        (void)qa;
        return std::all_of(ls.begin(), ls.end(), [&](int l) { return language.is_final(l); });
    };

    Product out;
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<std::pair<int, std::vector<int>>> order;
    std::vector<int> lang0(dims, language.initial());
    auto intern = [&](int qa, const std::vector<int>& ls) {
        auto key = std::make_pair(qa, ls);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = out.dfao.m.add_state(name_of(qa, ls), is_final(qa, ls));
        out.dfao.outputs.push_back(a.output_of(qa));
        out.dfao_state.push_back(qa);
        out.lang_states.push_back(ls);
        ids.emplace(key, id);
        order.push_back(key);
        return id;
    };

    int start = intern(a.m.initial(), lang0);
    out.dfao.m.set_initial(start);
    for (const auto& label : a.m.labels()) out.dfao.m.add_label(label);

    for (size_t at = 0; at < order.size(); ++at) {
        auto [qa, ls] = order[at];
        int from = ids.at({qa, ls});
        for (const auto& label : a.m.labels()) {
            int ta = a.m.next(qa, label);
            if (ta < 0) continue;
            std::vector<int> tls(dims);
            bool ok = true;
            for (int i = 0; i < dims && ok; ++i) {
                tls[i] = language.next(ls[i], Label{label[i]});
                ok = tls[i] >= 0;
            }
            if (!ok) continue;
            out.dfao.m.add_transition(from, label, intern(ta, tls));
        }
    }
    return out;
}

MultiMorphism canonical_morphism(const Dfa& a, const OrderedAlphabet& digits, int dims) {
    if (a.label_arity() != dims)
        throw Error("automaton labels have arity " + std::to_string(a.label_arity()) +
                    ", expected " + std::to_string(dims));
    int r1 = digits.size();
    std::map<Symbol, Picture> images;
    Shape box(dims, r1);
    for (int q = 0; q < a.n_states(); ++q) {
        Picture img = Picture::filled(box, "");
        for_each_coord(box, [&](std::span<const int> n) {
            Label l(dims);
            for (int i = 0; i < dims; ++i) l[i] = digits.letter(n[i]);
            int t = a.next(q, l);
            if (t < 0)
                throw Error("state '" + a.state_name(q) + "' has no transition on " +
                            label_str(l) + "; the automaton must be complete on the digits");
            img.set(n, a.state_name(t));
        });
        images.emplace(a.state_name(q), std::move(img));
    }
    return MultiMorphism(dims, std::move(images));
}

} // namespace shapesym
