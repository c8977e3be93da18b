#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shapesym/error.hpp"

namespace shapesym {

// Letters, automaton state names and digits are all plain strings.
using Symbol = std::string;

// A finite word over symbols.
using Word = std::vector<Symbol>;

// A transition label: one symbol per axis. Word automata use arity 1.
using Label = std::vector<Symbol>;

// "a" for arity 1, "(a,b)" otherwise. Diagnostics and file output.
std::string label_str(const Label& label);

// Deterministic finite automaton over an explicit, materialized label
// alphabet. Transitions are partial: a missing entry means rejection.
class Dfa {
public:
    int add_state(const Symbol& name, bool is_final);
    // Registers a label (idempotent) and returns its id. All labels of one
    // automaton must share the same arity.
    int add_label(const Label& label);
    void set_initial(int q) { initial_ = q; }
    void set_final(int q, bool f) { finals_[q] = f; }
    void add_transition(int from, const Label& label, int to);

    int n_states() const { return static_cast<int>(names_.size()); }
    int n_labels() const { return static_cast<int>(labels_.size()); }
    int initial() const { return initial_; }
    bool is_final(int q) const { return finals_[q]; }
    const Symbol& state_name(int q) const { return names_[q]; }
    const std::vector<Symbol>& state_names() const { return names_; }
    const std::vector<Label>& labels() const { return labels_; }
    const Label& label(int id) const { return labels_[id]; }
    int label_arity() const;

    int state(const Symbol& name) const; // throws on unknown name
    std::optional<int> find_state(const Symbol& name) const;
    int find_label(const Label& label) const; // -1 if unregistered

    // Target of the transition, or -1 when undefined.
    int next(int q, int label_id) const { return delta_[q][label_id]; }
    int next(int q, const Label& label) const;

    bool has_state_named(const Symbol& name) const { return state_ids_.count(name) > 0; }

    bool operator==(const Dfa& other) const;

private:
    std::vector<Symbol> names_;
    std::vector<bool> finals_;
    std::vector<Label> labels_;
    std::vector<std::vector<int>> delta_; // [state][label] -> state or -1
    std::map<Symbol, int> state_ids_;
    std::map<Label, int> label_ids_;
    int initial_ = 0;
    int arity_ = -1;
};

// DFA with an output letter attached to every state. The final-state set
// of the underlying automaton is kept for serialization but plays no role
// in output semantics.
struct Dfao {
    Dfa m;
    std::vector<Symbol> outputs; // one per state

    const Symbol& output_of(int q) const { return outputs[q]; }
    bool operator==(const Dfao& other) const { return m == other.m && outputs == other.outputs; }
};

// Iterated transition from the initial state (resp. from q). Throws an
// Error naming the position and label when a transition is undefined.
int run(const Dfa& a, std::span<const Label> word);
int run_from(const Dfa& a, int q, std::span<const Label> word);

// States reachable from the initial state.
std::vector<bool> reachable_states(const Dfa& a);

// States from which some final state is reachable.
std::vector<bool> coreachable_states(const Dfa& a);

// Restriction of `a` to the given state subset (must contain the initial
// state). State order is preserved.
Dfa restrict_states(const Dfa& a, const std::vector<bool>& keep);

} // namespace shapesym
