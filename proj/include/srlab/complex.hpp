#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srlab/face.hpp"

namespace srlab {

enum class ComplexKind {
    Void,       // no faces at all
    Irrelevant, // only the empty face
    Proper,     // at least one vertex
};

/// A simplicial complex on the ambient vertex set {1..n}, stored by its facets.
///
/// Facets form an antichain and are kept in lexicographic order, so two
/// complexes compare equal exactly when they have the same faces on the same
/// ambient set. Values are immutable after construction.
class Complex {
public:
    /// The void complex on {1..n}.
    Complex() = default;

    static Complex void_complex(int n);
    static Complex irrelevant(int n);
    /// The full simplex on {1..n}.
    static Complex simplex(int n);
    /// The complex generated by `generators`; non-maximal generators are absorbed.
    static Complex generated_by(int n, std::vector<Face> generators);

    int ground_size() const { return n_; }
    const std::vector<Face>& facets() const { return facets_; }
    ComplexKind kind() const;
    bool is_void() const { return facets_.empty(); }

    /// Largest facet cardinality (the d of a (d-1)-dimensional complex); 0 if void or irrelevant.
    int facet_size_max() const;
    /// d - 1. The void complex also reports -1; use kind() to tell them apart.
    int dim() const { return facet_size_max() - 1; }
    bool is_pure() const;
    bool contains(Face f) const;
    /// Union of all facets.
    Face vertex_support() const;

    /// Every face, ordered by cardinality then lexicographically.
    std::vector<Face> faces() const;
    /// Every face as raw masks in increasing numeric order (subsets precede supersets).
    std::vector<Mask> face_masks() const;

    friend bool operator==(const Complex&, const Complex&) = default;

private:
    int n_ = 0;
    std::vector<Face> facets_;
};

struct ComplexInfo {
    int n = 0;
    std::optional<int> dim; // empty for the void complex
    int d = 0;
    bool pure = true;
    std::vector<long long> f_vector; // f_{-1} .. f_{dim}
    std::vector<long long> h_vector; // h_0 .. h_d
    bool vertex_cover = false;
    std::size_t facet_count = 0;
};

/// A complex living on a relabeled ambient set; labels[k] is the original label of vertex k+1.
struct Relabeled {
    Complex complex;
    std::vector<int> labels;
};

struct Subdivision {
    Complex complex;
    std::vector<Face> vertex_faces; // vertex k+1 stands for vertex_faces[k]
};

/// Facet-list text format: optional "V: n" header, one facet per line, "#" comments,
/// "{}" for the empty face.
Complex parse_complex(std::string_view text);
std::string format_complex(const Complex& c);

ComplexInfo complex_info(const Complex& c);

/// h_j = sum_{i<=j} (-1)^{j-i} C(d-i, j-i) f_{i-1}
std::vector<long long> h_vector_from_f(const std::vector<long long>& f, int d);

/// {G : G n F = {}, G u F in c}, relabeled onto the ambient set {1..n} \ F.
Relabeled link(const Complex& c, Face f);
/// Faces contained in w, relabeled onto w.
Relabeled restriction(const Complex& c, Face w);

/// Inclusion-minimal non-faces, ordered by cardinality then lexicographically.
std::vector<Face> minimal_nonfaces(const Complex& c);
/// {F : V \ F not in c} on the same ambient set.
Complex alexander_dual(const Complex& c);

/// Cone with apex `label`; the ambient set grows to include the apex.
Complex cone(const Complex& c, int label);
Subdivision barycentric_subdivision(const Complex& c);

} // namespace srlab
