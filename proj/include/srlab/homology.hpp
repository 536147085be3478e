#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srlab/complex.hpp"

namespace srlab {

/// Coefficient field: GF(p) for a prime p, or the rationals.
class Field {
public:
    /// GF(2).
    Field() = default;
    /// Throws std::invalid_argument unless p is a prime below 2^31.
    static Field prime(std::uint32_t p);
    static Field rationals();
    /// Accepts "q"/"Q" or a prime number.
    static Field parse(std::string_view spec);

    bool is_rational() const { return p_ == 0; }
    /// 0 for the rationals.
    std::uint32_t characteristic() const { return p_; }
    /// "GF(2)", "GF(3)", ..., "Q".
    std::string name() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    std::uint32_t p_ = 2;
};

/// dim H~_i for i = -1 .. top; degrees outside the stored range read as 0.
class HomologyVector {
public:
    HomologyVector() = default;
    explicit HomologyVector(std::vector<long long> dims_from_minus_one) : dims_(std::move(dims_from_minus_one)) {}

    long long operator[](int i) const
    {
        const int k = i + 1;
        return (k < 0 || k >= static_cast<int>(dims_.size())) ? 0 : dims_[static_cast<std::size_t>(k)];
    }
    /// Highest stored degree; -2 when nothing is stored (void complex).
    int top() const { return static_cast<int>(dims_.size()) - 2; }
    const std::vector<long long>& raw() const { return dims_; }
    bool all_zero() const;

    friend bool operator==(const HomologyVector&, const HomologyVector&) = default;

private:
    std::vector<long long> dims_;
};

/// Signed boundary map from i-faces (rows) to (i-1)-faces (columns); faces in
/// lexicographic order, the empty face in degree -1.
struct BoundaryMatrix {
    std::vector<Face> row_faces;
    std::vector<Face> col_faces;
    std::vector<std::vector<int>> entries; // dense, values in {-1, 0, 1}
};

BoundaryMatrix boundary_matrix(const Complex& c, int i);

/// Rank of an integer matrix after reduction into the field.
std::size_t matrix_rank(const std::vector<std::vector<long long>>& rows, const Field& k);

/// Reduced homology of the augmented chain complex. Checks that consecutive
/// boundary maps compose to zero and throws InvariantError otherwise.
HomologyVector reduced_homology(const Complex& c, const Field& k = Field{});

namespace detail {

/// Reduced homology of the downward-closed family `faces` (raw masks,
/// increasing numeric order, containing the empty face unless empty).
/// Skips the composition check; used on hot paths.
HomologyVector homology_of_faces(std::span<const Mask> faces, const Field& k, bool verify = false);

} // namespace detail

} // namespace srlab
