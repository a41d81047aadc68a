#pragma once

#include <string>

#include "bip/bunch.hpp"
#include "bip/formula.hpp"

namespace bip {

enum class Style {
    Text,  // concrete syntax; reparsing yields the same value
    Latex, // math-mode source
    Json,  // structural encoding, schema documented in the README
};

std::string render(const FormulaPtr& f, Style style = Style::Text);
std::string render(const BunchPtr& x, Style style = Style::Text);
std::string render(const RawSequent& s, Style style = Style::Text);

} // namespace bip
