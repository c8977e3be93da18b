#pragma once

#include <optional>
#include <string>

#include "shapesym/conversion.hpp"

namespace shapesym {

// One parsed input file. The formats are line-based UTF-8 with full-line
// '#' comments; the pad symbol inside labels is always written '@pad'.
struct SpecFile {
    enum class Kind { Numeration, Dfao, Morphism, Presentation };

    Kind kind;
    Symbol pad; // concrete pad symbol used when (re)writing '@pad'

    std::optional<NumerationSystem> numeration;
    std::optional<Dfao> dfao;
    std::optional<MorphicPresentation> morphic;
    std::optional<AutomaticPresentation> automatic;
};

SpecFile parse_spec_text(const std::string& text, const Symbol& default_pad);
std::string print_spec_file(const SpecFile& file);

SpecFile load_spec_file(const std::string& path, const Symbol& default_pad);
void save_spec_file(const std::string& path, const SpecFile& file);

SpecFile wrap_numeration(NumerationSystem s);
SpecFile wrap_dfao(Dfao a, Symbol pad);
SpecFile wrap_morphic(MorphicPresentation m);
SpecFile wrap_automatic(AutomaticPresentation a);

} // namespace shapesym
