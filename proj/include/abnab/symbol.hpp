#ifndef ABNAB_SYMBOL_HPP
#define ABNAB_SYMBOL_HPP

#include <string>
#include <tuple>

namespace abnab {

enum class SymbolKind { ChernRoot = 0, EquivariantParam = 1, ZVariable = 2 };

/* (kind, group, pos) identifies a symbol.  Chern roots: group = block of
 * the presentation (0 for x, 1 for y, ...), pos = index within the block.
 * Equivariant parameters: group = block of the auxiliary torus S.  There
 * is exactly one ZVariable symbol. */
struct Symbol {
    SymbolKind kind = SymbolKind::ChernRoot;
    int group = 0;
    int pos = 0;

    static Symbol chern(int group, int pos) { return {SymbolKind::ChernRoot, group, pos}; }
    static Symbol lambda(int group, int pos) { return {SymbolKind::EquivariantParam, group, pos}; }
    static Symbol z() { return {SymbolKind::ZVariable, 0, 0}; }

    friend bool operator==(const Symbol& a, const Symbol& b) {
        return a.kind == b.kind && a.group == b.group && a.pos == b.pos;
    }
    friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
    friend bool operator<(const Symbol& a, const Symbol& b) {
        return std::tie(a.kind, a.group, a.pos) < std::tie(b.kind, b.group, b.pos);
    }

    std::string str() const {
        switch (kind) {
            case SymbolKind::ChernRoot: {
                const char* names = "xyuvw";
                std::string base = group < 5 ? std::string(1, names[group])
                                             : "c" + std::to_string(group) + "_";
                return base + std::to_string(pos + 1);
            }
            case SymbolKind::EquivariantParam:
                return "l" + std::to_string(group + 1) + "_" + std::to_string(pos + 1);
            case SymbolKind::ZVariable:
                return "z";
        }
        return "?";
    }
};

} // namespace abnab

#endif
