#pragma once

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "srlab/complex.hpp"
#include "srlab/homology.hpp"

namespace srlab {

enum class BettiSubject { Ideal, Ring };

/// Graded Betti numbers beta_{i,j} of I_Delta (Ideal) or K[Delta] (Ring).
///
/// Entries are sparse: only nonzero values are stored, keyed by (i, j).
/// `krull_dim` is d = dim Delta + 1 when the table came from a complex.
class BettiTable {
public:
    using Entries = std::map<std::pair<int, int>, long long>;

    BettiTable() = default;
    BettiTable(BettiSubject subject, int n, Field field, Entries entries, int krull_dim = 0);

    BettiSubject subject() const { return subject_; }
    int n() const { return n_; }
    const Field& field() const { return field_; }
    int krull_dim() const { return krull_dim_; }
    const Entries& entries() const { return entries_; }

    long long at(int i, int j) const;
    bool empty() const { return entries_.empty(); }
    /// Largest generator degree e (ideal tables); empty for the zero ideal.
    std::optional<int> gen_degree_max() const;
    /// Largest homological index with a nonzero entry.
    std::optional<int> max_index() const;

    friend bool operator==(const BettiTable&, const BettiTable&) = default;

private:
    BettiSubject subject_ = BettiSubject::Ideal;
    int n_ = 0;
    Field field_;
    Entries entries_;
    int krull_dim_ = 0;
};

struct HomologicalInvariants {
    int projdim_ring = 0;
    int depth = 0;
    int dim_ring = 0;
    std::optional<int> regularity_ideal; // empty for the zero ideal
    bool cm = false;
};

inline constexpr int kDefaultHochsterBound = 22;
/// Step count meaning "linear at every step".
inline constexpr int kFullLinearity = INT_MAX;

/// beta_{i,j}(I_Delta) = sum over |W| = j of dim H~_{j-i-2}(Delta_W), and
/// beta_{i,j}(K[Delta]) = beta_{i-1,j}(I_Delta) with beta_{0,0} = 1.
///
/// The void complex has I = R, recorded as beta_{0,0} = 1 for the ideal;
/// its ring table is undefined and throws. Throws std::invalid_argument when
/// n exceeds `max_n`.
BettiTable hochster_betti(const Complex& c, const Field& k, BettiSubject subject,
                          int max_n = kDefaultHochsterBound);

/// Shifts an ideal table to the ring table or back.
BettiTable ring_table(const BettiTable& ideal);
BettiTable ideal_table(const BettiTable& ring);

/// Requires a ring table; depth via Auslander-Buchsbaum.
HomologicalInvariants homological_invariants(const BettiTable& ring);

/// N_{d,p}: beta_{0,j} = 0 for j != d, and beta_{i,j} = 0 for j != i + d when 1 <= i <= p - 1.
/// p <= 0 is vacuous; kFullLinearity checks every step.
bool check_ndp(const BettiTable& ideal, int degree, int steps);

/// The Betti diagram shape forced on I_Delta when the dual is CM_t of dimension d - 1:
/// beta_{0,j} = 0 for j > n - d, and beta_{i,i+j} = 0 for j > n - d with i + j <= n - t.
bool check_er_shape(const BettiTable& ideal, int n, int d, int t);

struct SubadditivityViolation {
    enum class Kind { HerzogSrinivasan, TorVar };
    Kind kind;
    int i;
    int j0;
    friend bool operator==(const SubadditivityViolation&, const SubadditivityViolation&) = default;
};

/// Checks the Herzog-Srinivasan bound (beta_{i,j} = 0 for j > j0 forces beta_{i+1,j} = 0
/// for j > j0 + e) at the tightest j0 of every row, and the Tor-vanishing refinement
/// (beta_{i,k} = 0 for j0 <= k < j0 + e forces beta_{i+1,j0+e} = 0) at every j0.
std::vector<SubadditivityViolation> check_subadditivity(const BettiTable& ideal);

/// Macaulay2-style diagram: columns i, rows j - i, "." for zero.
std::string format_betti(const BettiTable& t);
nlohmann::json to_json(const BettiTable& t);
BettiTable betti_from_json(const nlohmann::json& j);

std::string to_string(BettiSubject s);

} // namespace srlab
