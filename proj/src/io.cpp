#include "shapesym/io.hpp"

#include <fstream>
#include <sstream>

namespace shapesym {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

struct Lines {
    std::vector<std::vector<std::string>> rows; // tokenized, comments dropped
    size_t pos = 0;

    explicit Lines(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            auto toks = tokenize(line);
            if (toks.empty() || toks[0][0] == '#') continue;
            rows.push_back(std::move(toks));
        }
    }
    bool done() const { return pos >= rows.size(); }
    const std::vector<std::string>& peek() const {
        if (done()) throw ParseError("unexpected end of file");
        return rows[pos];
    }
    std::vector<std::string> take() {
        auto r = peek();
        ++pos;
        return r;
    }
};

// header line "key: v1 v2 ..." -> values; throws when the key differs
std::vector<std::string> expect_header(Lines& in, const std::string& key) {
    auto row = in.take();
    if (row[0] != key + ":")
        throw ParseError("expected '" + key + ":' but found '" + row[0] + "'");
    return {row.begin() + 1, row.end()};
}

bool peek_header(const Lines& in, const std::string& key) {
    return !in.done() && in.peek()[0] == key + ":";
}

std::string one_value(std::vector<std::string> vals, const std::string& key) {
    if (vals.size() != 1) throw ParseError("'" + key + ":' expects exactly one value");
    return vals[0];
}

Symbol decode_symbol(const std::string& tok, const Symbol& pad) {
    return tok == "@pad" ? pad : tok;
}

std::string encode_symbol(const Symbol& s, const Symbol& pad) {
    return s == pad ? "@pad" : s;
}

Label parse_label(const std::string& body, const Symbol& pad) {
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
        Label out;
        std::string inner = body.substr(1, body.size() - 2);
        size_t start = 0;
        while (true) {
            size_t comma = inner.find(',', start);
            out.push_back(decode_symbol(inner.substr(start, comma - start), pad));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }
    return {decode_symbol(body, pad)};
}

std::string print_label(const Label& l, const Symbol& pad) {
    if (l.size() == 1) return encode_symbol(l[0], pad);
    std::string out = "(";
    for (size_t i = 0; i < l.size(); ++i) {
        if (i) out += ",";
        out += encode_symbol(l[i], pad);
    }
    return out + ")";
}

// "q --label--> q2"
struct TransitionLine {
    Symbol from;
    Label label;
    Symbol to;
};

std::optional<TransitionLine> parse_transition(const std::vector<std::string>& row,
                                               const Symbol& pad) {
    if (row.size() != 3) return std::nullopt;
    const std::string& mid = row[1];
    if (mid.size() < 6 || mid.substr(0, 2) != "--" || mid.substr(mid.size() - 3) != "-->")
        return std::nullopt;
    TransitionLine t;
    t.from = row[0];
    t.label = parse_label(mid.substr(2, mid.size() - 5), pad);
    t.to = row[2];
    return t;
}

// shared by numeration sections and dfao sections
Dfa parse_automaton_body(Lines& in, bool with_outputs, std::vector<Symbol>* outputs_out,
                         const Symbol& pad) {
    Dfa a;
    auto states = expect_header(in, "states");
    if (states.empty()) throw ParseError("automaton needs at least one state");
    for (const auto& s : states) a.add_state(s, false);
    auto declared = [&](const Symbol& name) {
        auto id = a.find_state(name);
        if (!id) throw ParseError("unknown state '" + name + "'");
        return *id;
    };
    auto initial = one_value(expect_header(in, "initial"), "initial");
    a.set_initial(declared(initial));
    if (peek_header(in, "finals")) {
        for (const auto& s : expect_header(in, "finals")) a.set_final(declared(s), true);
    }
    if (with_outputs) {
        outputs_out->assign(states.size(), "");
        for (const auto& pair : expect_header(in, "outputs")) {
            size_t eq = pair.find('=');
            if (eq == std::string::npos)
                throw ParseError("outputs entries must look like state=letter");
            Symbol st = pair.substr(0, eq);
            (*outputs_out)[declared(st)] = decode_symbol(pair.substr(eq + 1), pad);
        }
        for (size_t i = 0; i < outputs_out->size(); ++i)
            if ((*outputs_out)[i].empty())
                throw ParseError("state '" + states[i] + "' has no output");
    }
    while (!in.done()) {
        auto t = parse_transition(in.peek(), pad);
        if (!t) break;
        in.take();
        if (!a.find_state(t->from) || !a.find_state(t->to))
            throw ParseError("transition uses an undeclared state: " + t->from + " or " + t->to);
        a.add_transition(a.state(t->from), t->label, a.state(t->to));
    }
    return a;
}

NumerationSystem parse_numeration_body(Lines& in) {
    auto letters = expect_header(in, "alphabet");
    for (const auto& s : letters)
        if (s.find(',') != std::string::npos || s.find('(') != std::string::npos ||
            s.find(')') != std::string::npos || s[0] == '@')
            throw ParseError("alphabet letter '" + s + "' uses a reserved character");
    OrderedAlphabet alphabet(letters);
    Dfa a = parse_automaton_body(in, false, nullptr, "");
    try {
        return NumerationSystem(std::move(alphabet), std::move(a));
    } catch (const Error& e) {
        throw ParseError(std::string("invalid numeration system: ") + e.what());
    }
}

MorphicPresentation parse_morphism_body(Lines& in) {
    int dim = std::stoi(one_value(expect_header(in, "dim"), "dim"));
    if (dim < 1) throw ParseError("dim must be positive");
    Symbol seed = one_value(expect_header(in, "seed"), "seed");
    std::map<Symbol, Symbol> coding;
    bool coding_given = peek_header(in, "coding");
    if (coding_given) {
        for (const auto& pair : expect_header(in, "coding")) {
            size_t eq = pair.find('=');
            if (eq == std::string::npos)
                throw ParseError("coding entries must look like letter=letter");
            coding[pair.substr(0, eq)] = pair.substr(eq + 1);
        }
    }
    std::map<Symbol, Picture> images;
    while (!in.done() && in.peek()[0] == "letter") {
        auto row = in.take();
        if (row.size() != static_cast<size_t>(3 + dim) || row[2] != "shape")
            throw ParseError("expected: letter <name> shape <extent per axis>");
        Symbol letter = row[1];
        Shape shape(dim);
        for (int i = 0; i < dim; ++i) shape[i] = std::stoi(row[3 + i]);
        Picture img = Picture::filled(shape, "");
        long long lines = 1;
        for (int i = 1; i < dim; ++i) lines *= shape[i];
        std::vector<int> n(dim, 0);
        for (long long li = 0; li < lines; ++li) {
            auto cells = in.take();
            if (static_cast<int>(cells.size()) != shape[0])
                throw ParseError("image row of '" + letter + "' has " +
                                 std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(shape[0]));
            long long rest = li;
            for (int i = 1; i < dim; ++i) {
                n[i] = static_cast<int>(rest % shape[i]);
                rest /= shape[i];
            }
            for (int c = 0; c < shape[0]; ++c) {
                n[0] = c;
                img.set(n, cells[c]);
            }
        }
        if (!images.emplace(letter, std::move(img)).second)
            throw ParseError("duplicate image for letter '" + letter + "'");
    }
    if (images.empty()) throw ParseError("morphism has no letters");
    if (!coding_given)
        for (const auto& [letter, img] : images) coding[letter] = letter;
    try {
        MultiMorphism mu(dim, std::move(images));
        if (!mu.has(seed)) throw Error("seed '" + seed + "' has no image");
        return MorphicPresentation{std::move(mu), seed, std::move(coding)};
    } catch (const Error& e) {
        throw ParseError(std::string("invalid morphism: ") + e.what());
    }
}

void print_automaton_body(std::ostringstream& out, const Dfa& a, const Symbol& pad,
                          const std::vector<Symbol>* outputs) {
    out << "states:";
    for (int q = 0; q < a.n_states(); ++q) out << " " << a.state_name(q);
    out << "\ninitial: " << a.state_name(a.initial()) << "\n";
    bool any_final = false;
    for (int q = 0; q < a.n_states(); ++q) any_final |= a.is_final(q);
    if (any_final) {
        out << "finals:";
        for (int q = 0; q < a.n_states(); ++q)
            if (a.is_final(q)) out << " " << a.state_name(q);
        out << "\n";
    }
    if (outputs) {
        out << "outputs:";
        for (int q = 0; q < a.n_states(); ++q)
            out << " " << a.state_name(q) << "=" << encode_symbol((*outputs)[q], pad);
        out << "\n";
    }
    for (int q = 0; q < a.n_states(); ++q)
        for (int l = 0; l < a.n_labels(); ++l)
            if (a.next(q, l) >= 0)
                out << a.state_name(q) << " --" << print_label(a.label(l), pad) << "--> "
                    << a.state_name(a.next(q, l)) << "\n";
}

void print_morphism_body(std::ostringstream& out, const MorphicPresentation& m) {
    out << "dim: " << m.dims() << "\n";
    out << "seed: " << m.seed << "\n";
    out << "coding:";
    for (const auto& [from, to] : m.coding) out << " " << from << "=" << to;
    out << "\n";
    for (const auto& [letter, img] : m.mu.images()) {
        out << "letter " << letter << " shape";
        for (int i = 0; i < m.dims(); ++i) out << " " << img.extent(i);
        out << "\n";
        long long lines = 1;
        for (int i = 1; i < m.dims(); ++i) lines *= img.extent(i);
        std::vector<int> n(m.dims(), 0);
        for (long long li = 0; li < lines; ++li) {
            long long rest = li;
            for (int i = 1; i < m.dims(); ++i) {
                n[i] = static_cast<int>(rest % img.extent(i));
                rest /= img.extent(i);
            }
            for (int c = 0; c < img.extent(0); ++c) {
                n[0] = c;
                out << (c ? " " : "") << img.at(n);
            }
            out << "\n";
        }
    }
}

} // namespace

SpecFile parse_spec_text(const std::string& text, const Symbol& default_pad) {
    Lines in(text);
    auto kind = one_value(expect_header(in, "kind"), "kind");
    SpecFile file;
    file.pad = default_pad;
    if (kind == "numeration") {
        file.kind = SpecFile::Kind::Numeration;
        file.numeration = parse_numeration_body(in);
    } else if (kind == "dfao") {
        file.kind = SpecFile::Kind::Dfao;
        int dim = std::stoi(one_value(expect_header(in, "dim"), "dim"));
        Dfao a;
        a.m = parse_automaton_body(in, true, &a.outputs, default_pad);
        if (a.m.n_labels() > 0 && a.m.label_arity() != dim)
            throw ParseError("label arity does not match dim");
        file.dfao = std::move(a);
    } else if (kind == "morphism") {
        file.kind = SpecFile::Kind::Morphism;
        file.morphic = parse_morphism_body(in);
    } else if (kind == "presentation") {
        file.kind = SpecFile::Kind::Presentation;
        auto type = one_value(expect_header(in, "type"), "type");
        if (type == "morphic") {
            file.morphic = parse_morphism_body(in);
        } else if (type == "automatic") {
            int dim = std::stoi(one_value(expect_header(in, "dim"), "dim"));
            Symbol pad = one_value(expect_header(in, "pad"), "pad");
            file.pad = pad;
            auto section = expect_header(in, "numeration");
            if (!section.empty()) throw ParseError("'numeration:' takes no values");
            NumerationSystem system = parse_numeration_body(in);
            section = expect_header(in, "dfao");
            if (!section.empty()) throw ParseError("'dfao:' takes no values");
            Dfao a;
            a.m = parse_automaton_body(in, true, &a.outputs, pad);
            if (a.m.n_labels() > 0 && a.m.label_arity() != dim)
                throw ParseError("DFAO label arity does not match dim");
            file.automatic =
                AutomaticPresentation{std::move(system), std::move(a), pad, dim};
        } else {
            throw ParseError("unknown presentation type '" + type + "'");
        }
    } else {
        throw ParseError("unknown file kind '" + kind + "'");
    }
    if (!in.done())
        throw ParseError("unexpected trailing line starting with '" + in.peek()[0] + "'");
    return file;
}

std::string print_spec_file(const SpecFile& file) {
    std::ostringstream out;
    switch (file.kind) {
        case SpecFile::Kind::Numeration: {
            out << "kind: numeration\n";
            const auto& s = *file.numeration;
            out << "alphabet:";
            for (const auto& l : s.alphabet().letters()) out << " " << l;
            out << "\n";
            print_automaton_body(out, s.language(), file.pad, nullptr);
            break;
        }
        case SpecFile::Kind::Dfao: {
            out << "kind: dfao\n";
            out << "dim: " << file.dfao->m.label_arity() << "\n";
            print_automaton_body(out, file.dfao->m, file.pad, &file.dfao->outputs);
            break;
        }
        case SpecFile::Kind::Morphism: {
            out << "kind: morphism\n";
            print_morphism_body(out, *file.morphic);
            break;
        }
        case SpecFile::Kind::Presentation: {
            out << "kind: presentation\n";
            if (file.morphic) {
                out << "type: morphic\n";
                print_morphism_body(out, *file.morphic);
            } else {
                const auto& a = *file.automatic;
                out << "type: automatic\n";
                out << "dim: " << a.dims << "\n";
                out << "pad: " << a.pad << "\n";
                out << "numeration:\n";
                out << "alphabet:";
                for (const auto& l : a.system.alphabet().letters()) out << " " << l;
                out << "\n";
                print_automaton_body(out, a.system.language(), a.pad, nullptr);
                out << "dfao:\n";
                print_automaton_body(out, a.dfao.m, a.pad, &a.dfao.outputs);
            }
            break;
        }
    }
    return out.str();
}

SpecFile load_spec_file(const std::string& path, const Symbol& default_pad) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str(), default_pad);
}

void save_spec_file(const std::string& path, const SpecFile& file) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file '" + path + "'");
    out << print_spec_file(file);
}

SpecFile wrap_numeration(NumerationSystem s) {
    SpecFile f;
    f.kind = SpecFile::Kind::Numeration;
    f.pad = "#";
    f.numeration = std::move(s);
    return f;
}

SpecFile wrap_dfao(Dfao a, Symbol pad) {
    SpecFile f;
    f.kind = SpecFile::Kind::Dfao;
    f.pad = std::move(pad);
    f.dfao = std::move(a);
    return f;
}

SpecFile wrap_morphic(MorphicPresentation m) {
    SpecFile f;
    f.kind = SpecFile::Kind::Morphism;
    f.pad = "#";
    f.morphic = std::move(m);
    return f;
}

SpecFile wrap_automatic(AutomaticPresentation a) {
    SpecFile f;
    f.kind = SpecFile::Kind::Presentation;
    f.pad = a.pad;
    f.automatic = std::move(a);
    return f;
}

} // namespace shapesym
