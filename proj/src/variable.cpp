#include "compident/variable.hpp"

#include <cctype>

#include "compident/error.hpp"

namespace compident {

namespace {

std::uint32_t checked(int index) {
    if (index < 0 || index > Var::kMaxCompartment) {
        throw InvalidModel("compartment index out of range: " + std::to_string(index));
    }
    return static_cast<std::uint32_t>(index);
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Var Var::edge(int from, int to) {
    return from_key((checked(from) << 12) | checked(to));
}

Var Var::leak(int compartment) {
    return from_key((1u << 24) | (checked(compartment) << 12));
}

Var Var::symbol(int index) {
    if (index < 0 || index > kOperatorIndex) throw ParseError("symbol index out of range");
    return from_key((2u << 24) | static_cast<std::uint32_t>(index));
}

std::string Var::name() const {
    switch (kind()) {
        case Kind::Edge:
            if (from() < 10 && to() < 10) return "k" + std::to_string(to()) + std::to_string(from());
            return "k" + std::to_string(to()) + "_" + std::to_string(from());
        case Kind::Leak:
            if (from() < 10) return "k0" + std::to_string(from());
            return "k0_" + std::to_string(from());
        case Kind::Symbol:
            if (symbol_index() == kOperatorIndex) return "s";
            return "x" + std::to_string(symbol_index());
    }
    return "?";
}

Var parse_var(const std::string& text) {
    if (text == "s") return Var::op_s();
    if (text.size() >= 2 && text[0] == 'x' && all_digits(text.substr(1))) {
        return Var::symbol(std::stoi(text.substr(1)));
    }
    if (text.size() >= 3 && text[0] == 'k') {
        const std::string body = text.substr(1);
        int to = 0;
        int from = 0;
        if (auto us = body.find('_'); us != std::string::npos) {
            const std::string a = body.substr(0, us);
            const std::string b = body.substr(us + 1);
            if (!all_digits(a) || !all_digits(b)) throw ParseError("bad parameter name: " + text);
            to = std::stoi(a);
            from = std::stoi(b);
        } else if (body.size() == 2 && all_digits(body)) {
            to = body[0] - '0';
            from = body[1] - '0';
        } else {
            throw ParseError("bad parameter name: " + text);
        }
        if (from <= 0 || from > Var::kMaxCompartment || to > Var::kMaxCompartment) {
            throw ParseError("bad parameter name: " + text);
        }
        if (to == 0) return Var::leak(from);
        if (to == from) throw ParseError("self-loop parameter: " + text);
        return Var::edge(from, to);
    }
    throw ParseError("unknown variable: " + text);
}

}  // namespace compident
