#include "bip/render.hpp"

#include "json.hpp"

#include "bip/errors.hpp"

namespace bip {
namespace {

using nlohmann::json;

const char* op_word(FormulaKind k) {
    switch (k) {
    case FormulaKind::Top: return "top";
    case FormulaKind::Bot: return "bot";
    case FormulaKind::One: return "one";
    case FormulaKind::And: return "and";
    case FormulaKind::Or: return "or";
    case FormulaKind::Imp: return "imp";
    case FormulaKind::Tensor: return "tensor";
    case FormulaKind::Wand: return "wand";
    default: throw LogicError("op_word: not an operator");
    }
}

const char* op_text(FormulaKind k) {
    switch (k) {
    case FormulaKind::And: return "&";
    case FormulaKind::Or: return "|";
    case FormulaKind::Imp: return "->";
    case FormulaKind::Tensor: return "*";
    case FormulaKind::Wand: return "-*";
    default: throw LogicError("op_text: not an operator");
    }
}

const char* op_latex(FormulaKind k) {
    switch (k) {
    case FormulaKind::And: return "\\land";
    case FormulaKind::Or: return "\\lor";
    case FormulaKind::Imp: return "\\rightarrow";
    case FormulaKind::Tensor: return "\\otimes";
    case FormulaKind::Wand: return "\\multimap";
    default: throw LogicError("op_latex: not an operator");
    }
}

// Text and LaTeX renderings parenthesize every compound operand instead of
// tracking precedence; the output is unambiguous and reparses to the same
// value, which is all the round-trip contract asks for.
std::string formula_text(const FormulaPtr& f, bool parenthesize) {
    switch (f->kind()) {
    case FormulaKind::Var: return f->name();
    case FormulaKind::Top: return "top";
    case FormulaKind::Bot: return "bot";
    case FormulaKind::One: return "1";
    default: break;
    }
    std::string s = formula_text(f->left(), true) + " " + op_text(f->kind()) + " " +
                    formula_text(f->right(), true);
    return parenthesize ? "(" + s + ")" : s;
}

std::string formula_latex(const FormulaPtr& f, bool parenthesize) {
    switch (f->kind()) {
    case FormulaKind::Var: return f->name();
    case FormulaKind::Top: return "\\top";
    case FormulaKind::Bot: return "\\bot";
    case FormulaKind::One: return "\\mathbf{1}";
    default: break;
    }
    std::string s = formula_latex(f->left(), true) + " " + op_latex(f->kind()) + " " +
                    formula_latex(f->right(), true);
    return parenthesize ? "(" + s + ")" : s;
}

json formula_json(const FormulaPtr& f) {
    if (f->kind() == FormulaKind::Var) return json{{"var", f->name()}};
    if (is_atom(f->kind())) return json{{"op", op_word(f->kind())}};
    return json{{"op", op_word(f->kind())}, {"l", formula_json(f->left())}, {"r", formula_json(f->right())}};
}

// Both structural connectives parse left-associated with comma binding
// tighter, so a child needs parentheses in exactly two situations: a
// semicolon group under a comma (precedence), and a same-kind child in right
// position (grouping the parser would otherwise rebuild to the left).
bool bunch_child_needs_parens(BunchKind parent, const BunchPtr& child, bool right) {
    if (parent == BunchKind::Comma && child->kind() == BunchKind::Semi) return true;
    return right && child->kind() == parent;
}

std::string bunch_text(const BunchPtr& x);

std::string bunch_text_child(const BunchPtr& parent, const BunchPtr& child, bool right) {
    std::string s = bunch_text(child);
    return bunch_child_needs_parens(parent->kind(), child, right) ? "(" + s + ")" : s;
}

std::string bunch_text(const BunchPtr& x) {
    switch (x->kind()) {
    case BunchKind::Leaf: return formula_text(x->formula(), false);
    case BunchKind::EmptyM: return "Em";
    case BunchKind::EmptyA: return "Ea";
    case BunchKind::Comma:
        return bunch_text_child(x, x->left(), false) + ", " + bunch_text_child(x, x->right(), true);
    case BunchKind::Semi:
        return bunch_text_child(x, x->left(), false) + " ; " + bunch_text_child(x, x->right(), true);
    }
    throw LogicError("bunch_text: unreachable");
}

std::string bunch_latex(const BunchPtr& x);

std::string bunch_latex_child(const BunchPtr& parent, const BunchPtr& child, bool right) {
    std::string s = bunch_latex(child);
    return bunch_child_needs_parens(parent->kind(), child, right) ? "(" + s + ")" : s;
}

std::string bunch_latex(const BunchPtr& x) {
    switch (x->kind()) {
    case BunchKind::Leaf: return formula_latex(x->formula(), false);
    case BunchKind::EmptyM: return "\\varnothing_{m}";
    case BunchKind::EmptyA: return "\\varnothing_{a}";
    case BunchKind::Comma:
        return bunch_latex_child(x, x->left(), false) + " , " + bunch_latex_child(x, x->right(), true);
    case BunchKind::Semi:
        return bunch_latex_child(x, x->left(), false) + " ; " + bunch_latex_child(x, x->right(), true);
    }
    throw LogicError("bunch_latex: unreachable");
}

json bunch_json(const BunchPtr& x) {
    switch (x->kind()) {
    case BunchKind::Leaf: return json{{"leaf", formula_json(x->formula())}};
    case BunchKind::EmptyM: return json{{"unit", "Em"}};
    case BunchKind::EmptyA: return json{{"unit", "Ea"}};
    case BunchKind::Comma:
        return json{{"op", "comma"}, {"l", bunch_json(x->left())}, {"r", bunch_json(x->right())}};
    case BunchKind::Semi:
        return json{{"op", "semi"}, {"l", bunch_json(x->left())}, {"r", bunch_json(x->right())}};
    }
    throw LogicError("bunch_json: unreachable");
}

} // namespace

std::string render(const FormulaPtr& f, Style style) {
    switch (style) {
    case Style::Text: return formula_text(f, false);
    case Style::Latex: return formula_latex(f, false);
    case Style::Json: return formula_json(f).dump();
    }
    throw LogicError("render: unreachable");
}

std::string render(const BunchPtr& x, Style style) {
    switch (style) {
    case Style::Text: return bunch_text(x);
    case Style::Latex: return bunch_latex(x);
    case Style::Json: return bunch_json(x).dump();
    }
    throw LogicError("render: unreachable");
}

std::string render(const RawSequent& s, Style style) {
    switch (style) {
    case Style::Text: return render(s.antecedent, Style::Text) + " |- " + render(s.succedent, Style::Text);
    case Style::Latex:
        return render(s.antecedent, Style::Latex) + " \\vdash " + render(s.succedent, Style::Latex);
    case Style::Json: {
        json j{{"antecedent", bunch_json(s.antecedent)}, {"succedent", formula_json(s.succedent)}};
        return j.dump();
    }
    }
    throw LogicError("render: unreachable");
}

} // namespace bip
