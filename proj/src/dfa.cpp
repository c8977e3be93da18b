#include "shapesym/dfa.hpp"

#include <algorithm>

namespace shapesym {

std::string label_str(const Label& label) {
    if (label.size() == 1) return label[0];
    std::string out = "(";
    for (size_t i = 0; i < label.size(); ++i) {
        if (i) out += ",";
        out += label[i];
    }
    out += ")";
    return out;
}

int Dfa::add_state(const Symbol& name, bool is_final) {
    if (state_ids_.count(name))
        throw Error("duplicate state name '" + name + "'");
    int id = n_states();
    names_.push_back(name);
    finals_.push_back(is_final);
    delta_.emplace_back(labels_.size(), -1);
    state_ids_[name] = id;
    return id;
}

int Dfa::add_label(const Label& label) {
    auto it = label_ids_.find(label);
    if (it != label_ids_.end()) return it->second;
    if (label.empty()) throw Error("empty transition label");
    if (arity_ < 0)
        arity_ = static_cast<int>(label.size());
    else if (arity_ != static_cast<int>(label.size()))
        throw Error("label arity mismatch: expected " + std::to_string(arity_) +
                    " components, got " + label_str(label));
    int id = n_labels();
    labels_.push_back(label);
    label_ids_[label] = id;
    for (auto& row : delta_) row.push_back(-1);
    return id;
}

int Dfa::label_arity() const {
    if (arity_ < 0) throw Error("automaton has no labels");
    return arity_;
}

void Dfa::add_transition(int from, const Label& label, int to) {
    int l = add_label(label);
    int& slot = delta_[from][l];
    if (slot != -1 && slot != to)
        throw Error("conflicting transition from '" + names_[from] + "' on " + label_str(label));
    slot = to;
}

int Dfa::state(const Symbol& name) const {
    auto it = state_ids_.find(name);
    if (it == state_ids_.end()) throw Error("unknown state '" + name + "'");
    return it->second;
}

std::optional<int> Dfa::find_state(const Symbol& name) const {
    auto it = state_ids_.find(name);
    if (it == state_ids_.end()) return std::nullopt;
    return it->second;
}

int Dfa::find_label(const Label& label) const {
    auto it = label_ids_.find(label);
    return it == label_ids_.end() ? -1 : it->second;
}

int Dfa::next(int q, const Label& label) const {
    int l = find_label(label);
    return l < 0 ? -1 : delta_[q][l];
}

bool Dfa::operator==(const Dfa& other) const {
    return names_ == other.names_ && finals_ == other.finals_ && labels_ == other.labels_ &&
           delta_ == other.delta_ && initial_ == other.initial_;
}

int run_from(const Dfa& a, int q, std::span<const Label> word) {
    for (size_t i = 0; i < word.size(); ++i) {
        int t = a.next(q, word[i]);
        if (t < 0)
            throw Error("undefined transition at position " + std::to_string(i) + " from state '" +
                        a.state_name(q) + "' on label " + label_str(word[i]));
        q = t;
    }
    return q;
}

int run(const Dfa& a, std::span<const Label> word) { return run_from(a, a.initial(), word); }

std::vector<bool> reachable_states(const Dfa& a) {
    std::vector<bool> seen(a.n_states(), false);
    std::vector<int> stack{a.initial()};
    seen[a.initial()] = true;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (int l = 0; l < a.n_labels(); ++l) {
            int t = a.next(q, l);
            if (t >= 0 && !seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }
    return seen;
}

std::vector<bool> coreachable_states(const Dfa& a) {
    std::vector<bool> co(a.n_states(), false);
    for (int q = 0; q < a.n_states(); ++q) co[q] = a.is_final(q);
    bool grew = true;
    while (grew) {
        grew = false;
        for (int q = 0; q < a.n_states(); ++q) {
            if (co[q]) continue;
            for (int l = 0; l < a.n_labels(); ++l) {
                int t = a.next(q, l);
                if (t >= 0 && co[t]) {
                    co[q] = true;
                    grew = true;
                    break;
                }
            }
        }
    }
    return co;
}

Dfa restrict_states(const Dfa& a, const std::vector<bool>& keep) {
    if (!keep[a.initial()]) throw Error("cannot drop the initial state");
    Dfa out;
    std::vector<int> remap(a.n_states(), -1);
    for (int q = 0; q < a.n_states(); ++q)
        if (keep[q]) remap[q] = out.add_state(a.state_name(q), a.is_final(q));
    for (const auto& label : a.labels()) out.add_label(label);
    for (int q = 0; q < a.n_states(); ++q) {
        if (!keep[q]) continue;
        for (int l = 0; l < a.n_labels(); ++l) {
            int t = a.next(q, l);
            if (t >= 0 && keep[t]) out.add_transition(remap[q], a.label(l), remap[t]);
        }
    }
    out.set_initial(remap[a.initial()]);
    return out;
}

} // namespace shapesym
