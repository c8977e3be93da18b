// Command-line front end: numeration queries, window generation, morphism
// checks, conversions between the two presentations, and cross-validation.

#include <CLI11.hpp>

#include <iostream>

#include "shapesym/io.hpp"

using namespace shapesym;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;

const NumerationSystem& system_of(const SpecFile& file) {
    if (file.numeration) return *file.numeration;
    if (file.automatic) return file.automatic->system;
    throw Error("this command needs a numeration system (kind numeration or an "
                "automatic presentation)");
}

Picture window_of(const SpecFile& file, std::span<const int> shape) {
    if (file.morphic) return file.morphic->coded_window(shape);
    if (file.automatic) return file.automatic->window(shape);
    throw Error("this command needs a presentation file (kind morphism or presentation)");
}

int dims_of(const SpecFile& file) {
    if (file.morphic) return file.morphic->dims();
    if (file.automatic) return file.automatic->dims;
    throw Error("this command needs a presentation file (kind morphism or presentation)");
}

std::string render_window(const Picture& p, const std::string& format) {
    return format == "tsv" ? render(p, "\t") : render(p, " ");
}

int run_cli(int argc, char** argv) {
    CLI::App app{"abstract numeration systems, S-automatic multidimensional words and "
                 "shape-symmetric morphisms"};
    app.require_subcommand(1);
    std::string pad = "#";
    app.add_option("--pad", pad, "pad symbol (default '#')");

    // rep
    auto* rep_cmd = app.add_subcommand("rep", "print the n-th word of the language");
    std::string rep_file;
    std::string rep_n;
    int count_len = -1;
    rep_cmd->add_option("file", rep_file, "numeration system file")->required();
    rep_cmd->add_option("n", rep_n, "index to represent");
    rep_cmd->add_option("--count", count_len, "print the number of words of this length instead");

    // val
    auto* val_cmd = app.add_subcommand("val", "print the index of a word of the language");
    std::string val_file, val_word;
    val_cmd->add_option("file", val_file, "numeration system file")->required();
    val_cmd->add_option("word", val_word, "word to value ('@eps' for the empty word)")->required();

    // window
    auto* win_cmd = app.add_subcommand("window", "print a window of the presented word");
    std::string win_file, win_format = "grid";
    std::vector<int> win_shape;
    win_cmd->add_option("file", win_file, "presentation file")->required();
    win_cmd->add_option("shape", win_shape, "extent per axis")->required()->expected(-1);
    win_cmd->add_option("--format", win_format, "grid or tsv")
        ->check(CLI::IsMember({"grid", "tsv"}));

    // check
    auto* check_cmd = app.add_subcommand("check", "decide morphism, prolongability and "
                                                  "shape-symmetry");
    std::string check_file;
    check_cmd->add_option("file", check_file, "morphism file")->required();

    // convert
    auto* conv_cmd = app.add_subcommand("convert", "convert between presentations");
    std::string conv_dir, conv_in, conv_out;
    conv_cmd->add_option("direction", conv_dir, "m2a or a2m")
        ->required()
        ->check(CLI::IsMember({"m2a", "a2m"}));
    conv_cmd->add_option("input", conv_in, "input file")->required();
    conv_cmd->add_option("output", conv_out, "output file")->required();

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "compare two presentations on a window");
    std::string ver_a, ver_b;
    std::vector<int> ver_shape;
    ver_cmd->add_option("fileA", ver_a, "first presentation")->required();
    ver_cmd->add_option("fileB", ver_b, "second presentation")->required();
    ver_cmd->add_option("shape", ver_shape, "extent per axis")->required()->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }

    if (rep_cmd->parsed()) {
        auto file = load_spec_file(rep_file, pad);
        const auto& system = system_of(file);
        if (count_len >= 0) {
            std::cout << system.count_words(count_len).get_str() << "\n";
            return kExitOk;
        }
        if (rep_n.empty()) throw Error("rep needs an index or --count");
        Nat n(rep_n);
        std::cout << word_str(system.rep(n)) << "\n";
        return kExitOk;
    }
    if (val_cmd->parsed()) {
        auto file = load_spec_file(val_file, pad);
        const auto& system = system_of(file);
        Word w = parse_word_over(system.alphabet(), val_word);
        std::cout << system.val(w).get_str() << "\n";
        return kExitOk;
    }
    if (win_cmd->parsed()) {
        auto file = load_spec_file(win_file, pad);
        if (static_cast<int>(win_shape.size()) != dims_of(file))
            throw Error("window shape must give one extent per axis");
        for (int s : win_shape)
            if (s <= 0) throw Error("window extents must be positive");
        std::cout << render_window(window_of(file, win_shape), win_format);
        return kExitOk;
    }
    if (check_cmd->parsed()) {
        auto file = load_spec_file(check_file, pad);
        if (!file.morphic) throw Error("check needs a morphism file");
        const auto& m = *file.morphic;
        auto morphism = check_morphism(m.mu, m.mu.letters());
        bool all = morphism.ok;
        std::cout << "morphism: " << (morphism.ok ? "yes" : "no (" + morphism.describe() + ")")
                  << "\n";
        bool prolongable =
            m.mu.has(m.seed) && check_morphism(m.mu, {m.seed}).ok && is_prolongable(m.mu, m.seed);
        all = all && prolongable;
        std::cout << "prolongable: " << (prolongable ? "yes" : "no") << "\n";
        if (prolongable) {
            auto sym = check_shape_symmetric(m.mu, m.seed);
            all = all && sym.ok;
            std::cout << "shape-symmetric: " << (sym.ok ? "yes" : "no (" + sym.describe() + ")")
                      << "\n";
        } else {
            all = false;
            std::cout << "shape-symmetric: no (not applicable without prolongability)\n";
        }
        return all ? kExitOk : kExitDomain;
    }
    if (conv_cmd->parsed()) {
        auto file = load_spec_file(conv_in, pad);
        if (conv_dir == "m2a") {
            if (!file.morphic) throw Error("m2a needs a morphism file");
            save_spec_file(conv_out, wrap_automatic(morphic_to_automatic(*file.morphic, pad)));
        } else {
            if (!file.automatic) throw Error("a2m needs an automatic presentation file");
            save_spec_file(conv_out, wrap_morphic(automatic_to_morphic(*file.automatic)));
        }
        return kExitOk;
    }
    if (ver_cmd->parsed()) {
        auto fa = load_spec_file(ver_a, pad);
        auto fb = load_spec_file(ver_b, pad);
        if (dims_of(fa) != dims_of(fb)) throw Error("presentations have different dimensions");
        if (static_cast<int>(ver_shape.size()) != dims_of(fa))
            throw Error("window shape must give one extent per axis");
        Picture wa = window_of(fa, ver_shape);
        Picture wb = window_of(fb, ver_shape);
        std::vector<std::string> lines;
        for_each_coord(wa.shape(), [&](std::span<const int> n) {
            if (wa.at(n) != wb.at(n)) {
                std::string c = "(";
                for (size_t i = 0; i < n.size(); ++i) c += (i ? "," : "") + std::to_string(n[i]);
                lines.push_back(c + "): '" + wa.at(n) + "' vs '" + wb.at(n) + "'");
            }
        });
        if (lines.empty()) {
            std::cout << "OK\n";
            return kExitOk;
        }
        for (const auto& l : lines) std::cout << l << "\n";
        return kExitMismatch;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}
