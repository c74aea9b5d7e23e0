#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace compident {

// A polynomial indeterminate. The integer key is laid out so that comparing
// keys gives the canonical parameter order: edge parameters sorted by
// (source, target), then leak parameters by compartment, then auxiliary
// symbols (test variables x1, x2, ... and the differential operator s).
class Var {
public:
    enum class Kind : std::uint8_t { Edge = 0, Leak = 1, Symbol = 2 };

    constexpr Var() = default;

    // Parameter k_{to,from} of the edge from -> to.
    static Var edge(int from, int to);
    // Parameter k_{0,compartment} of a leak.
    static Var leak(int compartment);
    static Var symbol(int index);
    // Differential operator d/dt, used as the polynomial variable of det(sI - A).
    static Var op_s() { return symbol(kOperatorIndex); }

    static Var from_key(std::uint32_t key) { Var v; v.key_ = key; return v; }

    Kind kind() const { return static_cast<Kind>(key_ >> 24); }
    bool is_parameter() const { return kind() != Kind::Symbol; }

    // Edge: source / target compartment. Leak: source is the leaking compartment, target 0.
    int from() const { return static_cast<int>((key_ >> 12) & 0xFFF); }
    int to() const { return static_cast<int>(key_ & 0xFFF); }
    int symbol_index() const { return static_cast<int>(key_ & 0xFFFFFF); }

    std::uint32_t key() const { return key_; }

    // k21, k01, x3, s; two-digit compartments switch to k12_3 style.
    std::string name() const;

    friend constexpr auto operator<=>(Var, Var) = default;

    static constexpr int kMaxCompartment = 0xFFF;
    static constexpr int kOperatorIndex = 0xFFFFFF;

private:
    std::uint32_t key_ = 0;
};

// Inverse of Var::name(); throws ParseError.
Var parse_var(const std::string& text);

}  // namespace compident

template <>
struct std::hash<compident::Var> {
    std::size_t operator()(compident::Var v) const noexcept { return std::hash<std::uint32_t>{}(v.key()); }
};
