#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace srlab {

using Mask = std::uint64_t;

// Vertex labels are 1..kMaxVertices; label k occupies bit k-1.
inline constexpr int kMaxVertices = 64;

/// A finite set of vertex labels, stored as a bitmask.
class Face {
public:
    constexpr Face() = default;
    constexpr explicit Face(Mask bits) : bits_(bits) {}

    /// Throws std::invalid_argument for labels outside 1..kMaxVertices or repeated labels.
    static Face from_labels(std::span<const int> labels);
    static Face from_labels(std::initializer_list<int> labels)
    {
        return from_labels(std::span<const int>(labels.begin(), labels.size()));
    }
    /// {1..n}
    static constexpr Face range(int n)
    {
        return Face(n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1));
    }
    static constexpr Face singleton(int label) { return Face(Mask{1} << (label - 1)); }

    constexpr Mask bits() const { return bits_; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(int label) const { return (bits_ >> (label - 1)) & 1U; }
    constexpr bool subset_of(Face other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool disjoint(Face other) const { return (bits_ & other.bits_) == 0; }
    /// Largest label present, 0 for the empty face.
    constexpr int max_label() const { return 64 - std::countl_zero(bits_); }

    constexpr Face operator|(Face o) const { return Face(bits_ | o.bits_); }
    constexpr Face operator&(Face o) const { return Face(bits_ & o.bits_); }
    constexpr Face minus(Face o) const { return Face(bits_ & ~o.bits_); }

    std::vector<int> labels() const;
    /// "{1,2,5}"; the empty face is "{}".
    std::string to_string() const;

    friend constexpr bool operator==(Face, Face) = default;

private:
    Mask bits_ = 0;
};

/// Lexicographic order on sorted label lists: {1,2,3} < {1,3} < {2}.
bool lex_less(Face a, Face b);

/// Orders by cardinality, then lexicographically.
bool size_lex_less(Face a, Face b);

struct FaceNumericLess {
    constexpr bool operator()(Face a, Face b) const { return a.bits() < b.bits(); }
};

} // namespace srlab
