#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "srlab/complex.hpp"
#include "srlab/graph.hpp"
#include "srlab/homology.hpp"

namespace srlab {

enum class SpaceKind {
    PureComplexes, // nonempty sets of d-subsets of {1..n} as facets
    AllComplexes,  // every simplicial complex on {1..n}
    Graphs,        // every simple graph on {1..n}
};

enum class SearchMode { Exhaustive, Sample, Fixture };

/// Exhaustive pure spaces are limited to C(n,d) <= 24 candidate facets,
/// exhaustive graph spaces to C(n,2) <= 24 candidate edges, and exhaustive
/// spaces of all complexes to n <= 5.
inline constexpr int kMaxExhaustiveCandidates = 24;
inline constexpr int kMaxExhaustiveAllComplexes = 5;

struct SearchSpace {
    SpaceKind kind = SpaceKind::PureComplexes;
    int n = 0;
    int d = 0; // facet size, PureComplexes only
    SearchMode mode = SearchMode::Exhaustive;
    std::size_t count = 0; // Sample only
    std::uint64_t seed = 0;
    /// Complexes: every ambient vertex is a face. Graphs: no isolated vertices.
    bool cover_filter = true;
    std::string fixture; // Fixture only

    /// Throws std::invalid_argument when the space is malformed or over the exhaustive bound.
    void validate() const;
    std::string describe() const;
    friend bool operator==(const SearchSpace&, const SearchSpace&) = default;
};

nlohmann::json to_json(const SearchSpace& s);

using InstanceValue = std::variant<Complex, Graph>;

struct Instance {
    std::uint64_t index = 0;
    InstanceValue value;
};

/// Yields the instances of a space exactly once, in a fixed order.
///
/// Exhaustive pure spaces list facet sets by the bitmask of chosen
/// d-subsets (d-subsets in lexicographic order); graph spaces likewise over
/// edges. Sampled spaces draw from a seeded mt19937_64 and drop repeats.
class InstanceStream {
public:
    explicit InstanceStream(const SearchSpace& space);

    /// Number of raw positions; some positions are filtered out.
    std::uint64_t positions() const { return positions_; }
    /// The instance at a raw position, or nothing if it is filtered out.
    std::optional<Instance> at(std::uint64_t position) const;
    std::optional<Instance> next();

private:
    SearchSpace space_;
    std::uint64_t positions_ = 0;
    std::uint64_t cursor_ = 0;
    std::vector<Face> candidates_;           // exhaustive pure: the d-subsets
    std::vector<std::pair<int, int>> pairs_; // exhaustive graphs: the vertex pairs
    std::vector<InstanceValue> listed_;      // sampled, fixture and all-complex spaces
};

/// Every pure complex of the space, in stream order.
std::vector<Complex> enumerate_pure_complexes(const SearchSpace& space);
/// Every simplicial complex on {1..n} (including void and irrelevant), n <= 5.
std::vector<Complex> enumerate_all_complexes(int n);

/// Outcome of checking one instance against one theorem.
struct CheckOutcome {
    enum class Status { Holds, Violated, NotApplicable };
    Status status = Status::Holds;
    std::string clause;

    static CheckOutcome holds() { return {}; }
    static CheckOutcome not_applicable() { return {Status::NotApplicable, {}}; }
    static CheckOutcome violated(std::string clause) { return {Status::Violated, std::move(clause)}; }
};

enum class TheoremFamily {
    Pure,   // pure complexes of every dimension
    Codim2, // pure complexes with d = n - 2
    Graphs,
    Any, // arbitrary complexes
};

struct Theorem {
    std::string id;
    TheoremFamily family = TheoremFamily::Pure;
    std::string summary;
    std::function<CheckOutcome(const Complex&, const Field&)> on_complex;
    std::function<CheckOutcome(const Graph&, const Field&)> on_graph;
};

const std::vector<Theorem>& theorem_registry();
/// Throws std::invalid_argument for unknown ids.
const Theorem& find_theorem(std::string_view id);

struct Counterexample {
    std::uint64_t index = 0;
    std::string instance; // facet-list or edge-list text
    std::string clause;
};

struct VerificationResult {
    std::string theorem_id;
    SearchSpace space;
    Field field;
    std::uint64_t instances_checked = 0;
    std::uint64_t not_applicable = 0;
    std::vector<Counterexample> counterexamples; // ordered by enumeration index
    double elapsed_seconds = 0.0;
    bool first_counterexample_mode = false;
};

struct VerifyOptions {
    bool first_counterexample = false;
    unsigned threads = 0; // 0: hardware concurrency
};

VerificationResult verify_theorem(std::string_view theorem_id, const SearchSpace& space, const Field& field,
                                  const VerifyOptions& options = {});
VerificationResult verify_theorem(const Theorem& theorem, const SearchSpace& space, const Field& field,
                                  const VerifyOptions& options = {});

/// Re-runs one instance recorded in a counterexample.
CheckOutcome replay(const Theorem& theorem, std::string_view instance_text, const Field& field);

/// Timing is excluded unless requested so that identical runs serialize identically.
nlohmann::json to_json(const VerificationResult& r, bool include_timing = false);

/// Default spaces per theorem id, from the bundled manifest.
std::vector<SearchSpace> default_spaces(std::string_view theorem_id);
/// Spaces from a manifest document (see manifest/default_spaces.json).
std::vector<SearchSpace> manifest_spaces(const nlohmann::json& manifest, std::string_view theorem_id);
const nlohmann::json& bundled_manifest();

/// Spaces for an ad-hoc run: exhaustive over every size up to max_n, or a
/// seeded sample at size max_n when sample_count is set.
std::vector<SearchSpace> spaces_for(const Theorem& theorem, int max_n, std::optional<std::size_t> sample_count,
                                    std::uint64_t seed);

} // namespace srlab
