#pragma once

#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srlab/complex.hpp"
#include "srlab/homology.hpp"

namespace srlab {

/// dimext[i] = dim Ext_R^{n-i}(K[Delta], R) for i = 1..d, read off the links:
/// max{|F| : H~_{i-|F|-1}(link F) != 0}, or kMinusInfinity when no face qualifies.
struct ExtDimProfile {
    static constexpr int kMinusInfinity = INT_MIN;
    int d = 0;
    std::vector<int> dimext; // dimext[i - 1] holds the value for i

    int operator[](int i) const { return dimext[static_cast<std::size_t>(i - 1)]; }

    bool serre_holds(int r) const;          // r >= 2: dimext[i] <= i - r for all i < d
    bool singularity_dim_lt(int m) const;   // dimext[i] <= m for all i < d
    bool cm_t_holds(bool pure, int t) const; // pure and dimext[i] < t for all i < d
    bool purity_holds() const;              // dimext[i] < i for all i < d
};

/// Link homology of every face of a complex over one field.
///
/// Building the profile computes H~(link F) once per face; every
/// Reisner-type predicate (CM, CM_t, S_r, singularity dimension) and the
/// Ext-dimension profile are then read off the stored records.
class LinkProfile {
public:
    LinkProfile(const Complex& c, const Field& k);
    /// Only faces with at least `min_face_size` vertices; predicates that
    /// need smaller faces throw std::logic_error.
    LinkProfile(const Complex& c, const Field& k, int min_face_size);

    struct Record {
        Face face;
        int link_dim = -1;
        std::uint64_t nonzero = 0; // bit (i + 1) set when H~_i(link F) != 0
        /// Lowest i < link_dim with H~_i(link F) != 0.
        std::optional<int> lowest_bad() const;
    };

    const Complex& complex() const { return complex_; }
    const Field& field() const { return field_; }
    const std::vector<Record>& records() const { return records_; }
    bool pure() const { return pure_; }

    bool reisner_cm() const;
    bool cm_t(int t) const;
    /// Least t with CM_t; empty for non-pure complexes.
    std::optional<int> min_cm_t() const;
    bool satisfies_serre(int r) const;
    /// Largest r <= max(d, 1) with S_r.
    int max_serre() const;
    bool singularity_dimension_lt(int m) const;
    /// Least m >= -1 with singularity dimension < m.
    int min_singularity_bound() const;
    ExtDimProfile ext_dim_profile() const;
    /// min{i : H^i_m(K[Delta]) != 0} = min over faces of |F| + j + 1 with H~_j(link F) != 0.
    int local_cohomology_depth() const;

    /// First face whose link violates the CM_t condition, for diagnostics.
    std::optional<Record> cm_t_witness(int t) const;
    std::optional<Record> serre_witness(int r) const;

private:
    void require(int face_size) const;

    Complex complex_;
    Field field_;
    bool pure_ = true;
    int d_ = 0;
    int min_face_size_ = 0;
    std::vector<Record> records_;
};

bool reisner_cm(const Complex& c, const Field& k = Field{});
bool cm_t(const Complex& c, int t, const Field& k = Field{});
std::optional<int> min_cm_t(const Complex& c, const Field& k = Field{});
bool satisfies_serre(const Complex& c, int r, const Field& k = Field{});
int max_serre(const Complex& c, const Field& k = Field{});
bool singularity_dimension_lt(const Complex& c, int m, const Field& k = Field{});
/// Buchsbaum, taken as CM_1.
bool is_buchsbaum(const Complex& c, const Field& k = Field{});
/// Requires a complex with at least one vertex.
ExtDimProfile ext_dim_profile(const Complex& c, const Field& k = Field{});

struct PropertyReport {
    bool pure = true;
    bool cm = false;
    std::optional<int> min_cm_t;
    bool buchsbaum = false;
    int max_serre = 1;
    int sing_dim_lt = -1;
    std::optional<int> depth; // empty for the void complex
    Field field;
};

PropertyReport property_report(const Complex& c, const Field& k = Field{});
nlohmann::json to_json(const PropertyReport& r);
nlohmann::json to_json(const ExtDimProfile& p);

} // namespace srlab
