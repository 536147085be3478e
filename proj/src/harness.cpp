#include "srlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "srlab/betti.hpp"
#include "srlab/criteria.hpp"
#include "srlab/fixtures.hpp"

namespace srlab {

namespace detail {
extern const char* const kBundledManifest;
}

namespace {

constexpr const char* kSchema = "sr-lab/1";
constexpr std::size_t kMaxSampleCandidates = 4096;
constexpr int kMaxSampledAllComplexes = 12;
constexpr std::uint64_t kChunk = 2048;

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n) {
        return 0;
    }
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

// k-subsets of {1..n} in lexicographic order of their sorted label lists.
std::vector<Face> k_subsets(int n, int k)
{
    std::vector<Face> out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        idx[static_cast<std::size_t>(i)] = i + 1;
    }
    while (true) {
        out.push_back(Face::from_labels(idx));
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i + 1) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

std::string kind_name(SpaceKind k)
{
    switch (k) {
    case SpaceKind::PureComplexes:
        return "pure";
    case SpaceKind::AllComplexes:
        return "all";
    case SpaceKind::Graphs:
        return "graphs";
    }
    return "?";
}

std::string mode_name(SearchMode m)
{
    switch (m) {
    case SearchMode::Exhaustive:
        return "exhaustive";
    case SearchMode::Sample:
        return "sample";
    case SearchMode::Fixture:
        return "fixture";
    }
    return "?";
}

bool is_graph_fixture(std::string_view name) { return name.ends_with(".graph"); }

Complex complex_from_mask(int n, const std::vector<Face>& candidates, std::uint64_t mask)
{
    std::vector<Face> chosen;
    chosen.reserve(static_cast<std::size_t>(std::popcount(mask)));
    for (; mask != 0; mask &= mask - 1) {
        chosen.push_back(candidates[static_cast<std::size_t>(std::countr_zero(mask))]);
    }
    return Complex::generated_by(n, std::move(chosen));
}

Graph graph_from_mask(int n, const std::vector<std::pair<int, int>>& pairs, std::uint64_t mask)
{
    Graph g(n);
    for (; mask != 0; mask &= mask - 1) {
        const auto& [u, v] = pairs[static_cast<std::size_t>(std::countr_zero(mask))];
        g.add_edge(u, v);
    }
    return g;
}

std::vector<std::pair<int, int>> vertex_pairs(int n)
{
    std::vector<std::pair<int, int>> out;
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
            out.emplace_back(u, v);
        }
    }
    return out;
}

// Random bits drawn straight from the engine so that samples do not depend
// on the standard library's distribution implementations.
class BitSource {
public:
    explicit BitSource(std::uint64_t seed) : rng_(seed) {}
    bool bit()
    {
        if (left_ == 0) {
            word_ = rng_();
            left_ = 64;
        }
        const bool b = word_ & 1U;
        word_ >>= 1;
        --left_;
        return b;
    }
    std::uint64_t below(std::uint64_t bound) { return rng_() % bound; }

private:
    std::mt19937_64 rng_;
    std::uint64_t word_ = 0;
    int left_ = 0;
};

std::vector<InstanceValue> sample_instances(const SearchSpace& s)
{
    BitSource bits(s.seed);
    std::vector<InstanceValue> out;
    const std::size_t max_attempts = 1000 * s.count + 1000;
    const Mask full = Face::range(s.n).bits();
    if (s.kind == SpaceKind::PureComplexes) {
        const auto candidates = k_subsets(s.n, s.d);
        std::set<std::vector<Mask>> seen;
        for (std::size_t attempt = 0; attempt < max_attempts && out.size() < s.count; ++attempt) {
            std::vector<Face> chosen;
            std::vector<Mask> key;
            Mask cover = 0;
            for (Face f : candidates) {
                if (bits.bit()) {
                    chosen.push_back(f);
                    key.push_back(f.bits());
                    cover |= f.bits();
                }
            }
            if (chosen.empty() || (s.cover_filter && cover != full) || !seen.insert(key).second) {
                continue;
            }
            out.emplace_back(Complex::generated_by(s.n, std::move(chosen)));
        }
    } else if (s.kind == SpaceKind::Graphs) {
        const auto pairs = vertex_pairs(s.n);
        std::set<std::vector<bool>> seen;
        for (std::size_t attempt = 0; attempt < max_attempts && out.size() < s.count; ++attempt) {
            std::vector<bool> chosen(pairs.size());
            Graph g(s.n);
            for (std::size_t e = 0; e < pairs.size(); ++e) {
                if (bits.bit()) {
                    chosen[e] = true;
                    g.add_edge(pairs[e].first, pairs[e].second);
                }
            }
            if ((s.cover_filter && g.has_isolated_vertex()) || !seen.insert(chosen).second) {
                continue;
            }
            out.emplace_back(std::move(g));
        }
    } else {
        std::set<std::vector<Mask>> seen;
        for (std::size_t attempt = 0; attempt < max_attempts && out.size() < s.count; ++attempt) {
            const int cap = static_cast<int>(bits.below(static_cast<std::uint64_t>(s.n) + 2)) - 1;
            std::vector<Face> gens;
            if (cap >= 0) {
                for (Mask m = 0; m <= full; ++m) {
                    if (std::popcount(m) <= cap && bits.bit()) {
                        gens.emplace_back(m);
                    }
                }
            }
            Complex c = Complex::generated_by(s.n, std::move(gens));
            std::vector<Mask> key;
            for (Face f : c.facets()) {
                key.push_back(f.bits());
            }
            if ((s.cover_filter && c.vertex_support().bits() != full) || !seen.insert(key).second) {
                continue;
            }
            out.emplace_back(std::move(c));
        }
    }
    return out;
}

void downsets(int n, Mask subset, std::vector<Mask>& chosen, std::vector<char>& in, std::vector<Complex>& out)
{
    const Mask limit = Mask{1} << n;
    if (subset == limit) {
        std::vector<Face> gens;
        gens.reserve(chosen.size());
        for (Mask m : chosen) {
            gens.emplace_back(m);
        }
        out.push_back(chosen.empty() ? Complex::void_complex(n) : Complex::generated_by(n, std::move(gens)));
        return;
    }
    downsets(n, subset + 1, chosen, in, out);
    for (Mask rest = subset; rest != 0; rest &= rest - 1) {
        if (!in[static_cast<std::size_t>(subset & ~(rest & -rest))]) {
            return;
        }
    }
    in[static_cast<std::size_t>(subset)] = 1;
    chosen.push_back(subset);
    downsets(n, subset + 1, chosen, in, out);
    chosen.pop_back();
    in[static_cast<std::size_t>(subset)] = 0;
}

} // namespace

// ---------------------------------------------------------------------------
// SearchSpace

void SearchSpace::validate() const
{
    const auto fail = [this](const std::string& why) {
        throw std::invalid_argument("search space " + describe() + ": " + why);
    };
    if (mode == SearchMode::Fixture) {
        if (!fixture_text(fixture)) {
            fail("unknown fixture '" + fixture + "'");
        }
        return;
    }
    if (n < 0 || n > kMaxVertices) {
        fail("n out of range 0..64");
    }
    if (mode == SearchMode::Sample && count == 0) {
        fail("a sample needs a positive count");
    }
    switch (kind) {
    case SpaceKind::PureComplexes: {
        if (d < 1 || d > n) {
            fail("facet size must satisfy 1 <= d <= n");
        }
        const std::uint64_t c = binomial(n, d);
        if (mode == SearchMode::Exhaustive && c > kMaxExhaustiveCandidates) {
            fail("C(n,d) = " + std::to_string(c) + " exceeds the exhaustive bound of 24 candidate facets");
        }
        if (mode == SearchMode::Sample && c > kMaxSampleCandidates) {
            fail("C(n,d) = " + std::to_string(c) + " exceeds the sampling bound of 4096 candidate facets");
        }
        break;
    }
    case SpaceKind::Graphs: {
        const std::uint64_t e = binomial(n, 2);
        if (mode == SearchMode::Exhaustive && e > kMaxExhaustiveCandidates) {
            fail("C(n,2) = " + std::to_string(e) + " exceeds the exhaustive bound of 24 candidate edges");
        }
        break;
    }
    case SpaceKind::AllComplexes:
        if (mode == SearchMode::Exhaustive && n > kMaxExhaustiveAllComplexes) {
            fail("exhaustive enumeration of all complexes is limited to n <= 5");
        }
        if (mode == SearchMode::Sample && n > kMaxSampledAllComplexes) {
            fail("sampling all complexes is limited to n <= 12");
        }
        break;
    }
}

std::string SearchSpace::describe() const
{
    std::ostringstream out;
    if (mode == SearchMode::Fixture) {
        out << "fixture " << fixture;
        return out.str();
    }
    out << kind_name(kind) << " n=" << n;
    if (kind == SpaceKind::PureComplexes) {
        out << " d=" << d;
    }
    out << ' ' << mode_name(mode);
    if (mode == SearchMode::Sample) {
        out << " count=" << count << " seed=" << seed;
    }
    if (!cover_filter) {
        out << " no-cover-filter";
    }
    return out.str();
}

nlohmann::json to_json(const SearchSpace& s)
{
    nlohmann::json j = {{"kind", kind_name(s.kind)}, {"mode", mode_name(s.mode)}, {"n", s.n}};
    if (s.kind == SpaceKind::PureComplexes) {
        j["d"] = s.d;
    }
    j["cover_filter"] = s.cover_filter;
    if (s.mode == SearchMode::Sample) {
        j["count"] = s.count;
        j["seed"] = s.seed;
    }
    if (s.mode == SearchMode::Fixture) {
        j["fixture"] = s.fixture;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Enumeration

InstanceStream::InstanceStream(const SearchSpace& space) : space_(space)
{
    space_.validate();
    if (space_.mode == SearchMode::Fixture) {
        if (is_graph_fixture(space_.fixture)) {
            listed_.emplace_back(fixture_graph(space_.fixture));
        } else {
            listed_.emplace_back(fixture_complex(space_.fixture));
        }
        positions_ = 1;
        return;
    }
    if (space_.mode == SearchMode::Sample) {
        listed_ = sample_instances(space_);
        positions_ = listed_.size();
        return;
    }
    switch (space_.kind) {
    case SpaceKind::PureComplexes:
        candidates_ = k_subsets(space_.n, space_.d);
        positions_ = std::uint64_t{1} << candidates_.size();
        break;
    case SpaceKind::Graphs:
        pairs_ = vertex_pairs(space_.n);
        positions_ = std::uint64_t{1} << pairs_.size();
        break;
    case SpaceKind::AllComplexes:
        for (Complex& c : enumerate_all_complexes(space_.n)) {
            if (!space_.cover_filter || c.vertex_support() == Face::range(space_.n)) {
                listed_.emplace_back(std::move(c));
            }
        }
        positions_ = listed_.size();
        break;
    }
}

std::optional<Instance> InstanceStream::at(std::uint64_t position) const
{
    if (position >= positions_) {
        return std::nullopt;
    }
    if (space_.mode != SearchMode::Exhaustive || space_.kind == SpaceKind::AllComplexes) {
        return Instance{position, listed_[static_cast<std::size_t>(position)]};
    }
    if (space_.kind == SpaceKind::PureComplexes) {
        if (position == 0) {
            return std::nullopt;
        }
        if (space_.cover_filter) {
            Mask cover = 0;
            for (std::uint64_t m = position; m != 0; m &= m - 1) {
                cover |= candidates_[static_cast<std::size_t>(std::countr_zero(m))].bits();
            }
            if (cover != Face::range(space_.n).bits()) {
                return std::nullopt;
            }
        }
        return Instance{position, complex_from_mask(space_.n, candidates_, position)};
    }
    if (space_.cover_filter) {
        Mask cover = 0;
        for (std::uint64_t m = position; m != 0; m &= m - 1) {
            const auto& [u, v] = pairs_[static_cast<std::size_t>(std::countr_zero(m))];
            cover |= (Mask{1} << (u - 1)) | (Mask{1} << (v - 1));
        }
        if (cover != Face::range(space_.n).bits()) {
            return std::nullopt;
        }
    }
    return Instance{position, graph_from_mask(space_.n, pairs_, position)};
}

std::optional<Instance> InstanceStream::next()
{
    while (cursor_ < positions_) {
        if (auto inst = at(cursor_++)) {
            return inst;
        }
    }
    return std::nullopt;
}

std::vector<Complex> enumerate_pure_complexes(const SearchSpace& space)
{
    if (space.kind != SpaceKind::PureComplexes) {
        throw std::invalid_argument("enumerate_pure_complexes needs a space of pure complexes");
    }
    InstanceStream stream(space);
    std::vector<Complex> out;
    while (auto inst = stream.next()) {
        out.push_back(std::get<Complex>(inst->value));
    }
    return out;
}

std::vector<Complex> enumerate_all_complexes(int n)
{
    if (n < 0 || n > kMaxExhaustiveAllComplexes) {
        throw std::invalid_argument("enumerating all complexes is limited to 0 <= n <= 5");
    }
    std::vector<Complex> out;
    std::vector<Mask> chosen;
    std::vector<char> in(std::size_t{1} << n, 0);
    downsets(n, 0, chosen, in, out);
    return out;
}

// ---------------------------------------------------------------------------
// Theorems

namespace {

using Status = CheckOutcome::Status;

std::string str(bool b) { return b ? "true" : "false"; }

BettiTable ideal_of(const Complex& c, const Field& k) { return hochster_betti(c, k, BettiSubject::Ideal); }

int ring_depth(const Complex& c, const Field& k)
{
    return homological_invariants(hochster_betti(c, k, BettiSubject::Ring)).depth;
}

bool pure_instance(const Complex& c) { return c.kind() == ComplexKind::Proper && c.is_pure(); }

bool codim2_instance(const Complex& c) { return pure_instance(c) && c.facet_size_max() == c.ground_size() - 2; }

CheckOutcome check_thm_er(const Complex& x, const Field& k)
{
    const int n = x.ground_size();
    const int d = x.facet_size_max();
    const LinkProfile lp(x, k);
    const BettiTable t_ideal = ideal_of(alexander_dual(x), k);
    for (int t = 0; t <= d + 1; ++t) {
        const bool cm = lp.cm_t(t);
        const bool shape = check_er_shape(t_ideal, n, d, t);
        if (cm != shape) {
            return CheckOutcome::violated("t=" + std::to_string(t) + ": dual of the ideal's complex is CM_t = "
                                          + str(cm) + " but the Betti diagram shape holds = " + str(shape));
        }
    }
    return CheckOutcome::holds();
}

CheckOutcome check_thm_main(const Complex& c, const Field& k)
{
    const int n = c.ground_size();
    const int d = c.facet_size_max();
    const LinkProfile lp(c, k);
    const BettiTable dual_ideal = ideal_of(alexander_dual(c), k);
    for (int t = 0; t <= d; ++t) {
        if (!lp.cm_t(t)) {
            continue;
        }
        const int p = 2 * d - n - t + 2;
        if (!check_ndp(dual_ideal, n - d, p)) {
            return CheckOutcome::violated("CM_" + std::to_string(t) + " but the dual ideal fails N_{"
                                          + std::to_string(n - d) + "," + std::to_string(p) + "}");
        }
    }
    return CheckOutcome::holds();
}

CheckOutcome check_cor_yan(const Complex& c, const Field& k)
{
    const int n = c.ground_size();
    const int d = c.facet_size_max();
    const LinkProfile lp(c, k);
    for (int t = 0; t <= d; ++t) {
        const int r = 2 * d - n - t + 2;
        if (lp.cm_t(t) && !lp.satisfies_serre(r)) {
            return CheckOutcome::violated("CM_" + std::to_string(t) + " but not S_" + std::to_string(r));
        }
    }
    if (lp.cm_t(1)) {
        const int depth = ring_depth(c, k);
        const int bound = std::min(d, 2 * d - n + 1);
        if (depth < bound) {
            return CheckOutcome::violated("Buchsbaum with depth " + std::to_string(depth) + " < "
                                          + std::to_string(bound));
        }
    }
    return CheckOutcome::holds();
}

CheckOutcome check_yanagawa(const Complex& c, const Field& k)
{
    const int n = c.ground_size();
    const int d = c.facet_size_max();
    const LinkProfile lp(c, k);
    const BettiTable dual_ideal = ideal_of(alexander_dual(c), k);
    for (int r = 2; r <= d + 1; ++r) {
        const bool serre = lp.satisfies_serre(r);
        const bool ndp = check_ndp(dual_ideal, n - d, r);
        if (serre != ndp) {
            return CheckOutcome::violated("r=" + std::to_string(r) + ": S_r = " + str(serre) + " but N_{"
                                          + std::to_string(n - d) + ",r} = " + str(ndp));
        }
    }
    return CheckOutcome::holds();
}

CheckOutcome check_remark_serre(const Complex& c, const Field& k)
{
    const int d = c.facet_size_max();
    const LinkProfile lp(c, k);
    for (int r = 1; r <= d; ++r) {
        if (lp.satisfies_serre(r) && !lp.cm_t(d - r)) {
            return CheckOutcome::violated("S_" + std::to_string(r) + " but not CM_" + std::to_string(d - r));
        }
    }
    return CheckOutcome::holds();
}

CheckOutcome check_subadd(const Complex& c, const Field& k)
{
    const std::pair<const char*, Complex> subjects[] = {{"I_Delta", c}, {"I_dual", alexander_dual(c)}};
    for (const auto& [label, x] : subjects) {
        const auto violations = check_subadditivity(ideal_of(x, k));
        if (!violations.empty()) {
            const auto& v = violations.front();
            const char* which = v.kind == SubadditivityViolation::Kind::HerzogSrinivasan ? "Herzog-Srinivasan"
                                                                                        : "Tor-vanishing";
            return CheckOutcome::violated(std::string(label) + ": " + which + " bound fails at i="
                                          + std::to_string(v.i) + ", j0=" + std::to_string(v.j0));
        }
    }
    return CheckOutcome::holds();
}

CheckOutcome check_ext_profile(const Complex& c, const Field& k)
{
    const int d = c.facet_size_max();
    const LinkProfile lp(c, k);
    const ExtDimProfile p = lp.ext_dim_profile();
    for (int r = 2; r <= d + 1; ++r) {
        if (lp.satisfies_serre(r) != p.serre_holds(r)) {
            return CheckOutcome::violated("S_" + std::to_string(r) + " disagrees with the Ext profile");
        }
    }
    for (int m = -1; m <= d; ++m) {
        if (lp.singularity_dimension_lt(m) != p.singularity_dim_lt(m)) {
            return CheckOutcome::violated("singularity dimension < " + std::to_string(m)
                                          + " disagrees with the Ext profile");
        }
    }
    for (int t = 0; t <= d + 1; ++t) {
        if (lp.cm_t(t) != p.cm_t_holds(lp.pure(), t)) {
            return CheckOutcome::violated("CM_" + std::to_string(t) + " disagrees with the Ext profile");
        }
    }
    if (lp.pure() != p.purity_holds()) {
        return CheckOutcome::violated("purity disagrees with the Ext profile");
    }
    return CheckOutcome::holds();
}

CheckOutcome check_sd_invariance(const Complex& c, const Field& k)
{
    const LinkProfile a(c, k);
    const LinkProfile b(barycentric_subdivision(c).complex, k);
    const auto show = [](std::optional<int> v) { return v ? std::to_string(*v) : std::string("none"); };
    if (a.min_cm_t() != b.min_cm_t()) {
        return CheckOutcome::violated("min CM_t " + show(a.min_cm_t()) + " vs " + show(b.min_cm_t())
                                      + " after subdivision");
    }
    if (a.max_serre() != b.max_serre()) {
        return CheckOutcome::violated("max S_r " + std::to_string(a.max_serre()) + " vs "
                                      + std::to_string(b.max_serre()) + " after subdivision");
    }
    if (a.min_singularity_bound() != b.min_singularity_bound()) {
        return CheckOutcome::violated("singularity bound " + std::to_string(a.min_singularity_bound()) + " vs "
                                      + std::to_string(b.min_singularity_bound()) + " after subdivision");
    }
    return CheckOutcome::holds();
}

CheckOutcome check_cor_bk(const Complex& c, const Field& k)
{
    const int n = c.ground_size();
    const int d = c.facet_size_max();
    const LinkProfile lp(c, k, 0);
    if (!lp.cm_t(1)) {
        return CheckOutcome::not_applicable();
    }
    const auto& records = lp.records();
    const auto root = std::find_if(records.begin(), records.end(),
                                   [](const LinkProfile::Record& r) { return r.face.empty(); });
    bool applicable = false;
    for (int i = 1; root != records.end() && i < 63; ++i) {
        if ((root->nonzero >> (i + 1)) & 1U) {
            applicable = true;
            if (n < 2 * d - i) {
                return CheckOutcome::violated("Buchsbaum with H~_" + std::to_string(i) + " != 0 but n = "
                                              + std::to_string(n) + " < 2d - i = " + std::to_string(2 * d - i));
            }
        }
    }
    return applicable ? CheckOutcome::holds() : CheckOutcome::not_applicable();
}

CheckOutcome check_thm_topin(const Complex& c, const Field& k)
{
    const int d = c.facet_size_max();
    const LinkProfile lp(c, k);
    const Complex dual = alexander_dual(c);
    const BettiTable dual_ideal = ideal_of(dual, k);
    const Graph g = skeleton_graph(dual);
    for (int t = 0; t <= d - 1; ++t) {
        const bool i = lp.cm_t(t);
        const bool ii = check_ndp(dual_ideal, 2, d - t);
        const bool iii = lp.satisfies_serre(d - t);
        const bool iv = chord_condition(g, d - t + 2);
        if (i != ii || i != iii || i != iv) {
            return CheckOutcome::violated("t=" + std::to_string(t) + ": CM_t = " + str(i) + ", N_{2,d-t} = "
                                          + str(ii) + ", S_{d-t} = " + str(iii) + ", chord condition = "
                                          + str(iv));
        }
    }
    return CheckOutcome::holds();
}

CheckOutcome check_prop_chardepth(const Complex& c, const Field& k)
{
    const int d = c.facet_size_max();
    const LinkProfile lp(c, k);
    if (!lp.cm_t(1)) {
        return CheckOutcome::not_applicable();
    }
    const int depth = ring_depth(c, k);
    if (depth < d - 1) {
        return CheckOutcome::violated("Buchsbaum with depth " + std::to_string(depth) + " < dim = "
                                      + std::to_string(d - 1));
    }
    const bool cm = lp.reisner_cm();
    const bool cycle = is_cycle_graph(skeleton_graph(alexander_dual(c)));
    if (cm == cycle) {
        return CheckOutcome::violated("CM = " + str(cm) + " while the dual 1-skeleton is a cycle = " + str(cycle));
    }
    return CheckOutcome::holds();
}

CheckOutcome check_thm_main2(const Graph& g, const Field& k)
{
    if (g.has_isolated_vertex()) {
        return CheckOutcome::not_applicable();
    }
    const int n = g.order();
    const LinkProfile lp(alexander_dual(clique_complex(g)), k);
    for (int r = 3; r <= n; ++r) {
        const bool cm = lp.cm_t(n - r);
        const bool chords = chord_condition(g, r);
        if (cm != chords) {
            return CheckOutcome::violated("r=" + std::to_string(r) + ": dual is CM_{n-r} = " + str(cm)
                                          + " but the chord condition = " + str(chords));
        }
    }
    return CheckOutcome::holds();
}

bool linear_resolution(const Graph& g, const Field& k)
{
    return check_ndp(ideal_of(clique_complex(g), k), 2, kFullLinearity);
}

CheckOutcome check_cor_linear(const Graph& g, const Field& k)
{
    if (g.has_isolated_vertex()) {
        return CheckOutcome::not_applicable();
    }
    const int n = g.order();
    const LinkProfile lp(alexander_dual(clique_complex(g)), k);
    const bool linear = linear_resolution(g, k);
    for (int r = 3; r <= n; ++r) {
        if (!r_chordal(g, r)) {
            continue;
        }
        const bool cm = lp.cm_t(n - r);
        if (cm != linear) {
            return CheckOutcome::violated("r=" + std::to_string(r) + " (r-chordal): dual is CM_{n-r} = " + str(cm)
                                          + " but linear resolution = " + str(linear));
        }
    }
    return CheckOutcome::holds();
}

CheckOutcome check_froberg(const Graph& g, const Field& k)
{
    const bool linear = linear_resolution(g, k);
    const bool chordal = is_chordal(g);
    if (linear != chordal) {
        return CheckOutcome::violated("linear resolution = " + str(linear) + " but chordal = " + str(chordal));
    }
    return CheckOutcome::holds();
}

CheckOutcome check_eghp(const Graph& g, const Field& k)
{
    const BettiTable t = ideal_of(clique_complex(g), k);
    for (int p = 1; p <= g.order(); ++p) {
        const bool ndp = check_ndp(t, 2, p);
        const bool chords = chord_condition(g, p + 2);
        if (ndp != chords) {
            return CheckOutcome::violated("p=" + std::to_string(p) + ": N_{2,p} = " + str(ndp)
                                          + " but the chord condition up to p+2 = " + str(chords));
        }
    }
    return CheckOutcome::holds();
}

CheckOutcome check_cross_oracle(const Complex& c, const Field& k)
{
    if (alexander_dual(alexander_dual(c)) != c) {
        return CheckOutcome::violated("the Alexander dual is not an involution here");
    }
    const BettiTable ideal = ideal_of(c, k);
    std::map<int, long long> nonface_counts;
    for (Face f : minimal_nonfaces(c)) {
        ++nonface_counts[f.size()];
    }
    for (int j = 0; j <= c.ground_size(); ++j) {
        const long long expected = nonface_counts.contains(j) ? nonface_counts[j] : 0;
        if (ideal.at(0, j) != expected) {
            return CheckOutcome::violated("beta_{0," + std::to_string(j) + "} = " + std::to_string(ideal.at(0, j))
                                          + " but there are " + std::to_string(expected)
                                          + " minimal nonfaces of that size");
        }
    }
    const HomologyVector h = reduced_homology(c, k);
    const ComplexInfo info = complex_info(c);
    long long euler_h = 0;
    for (int i = -1; i <= h.top(); ++i) {
        euler_h += (i % 2 == 0 ? 1 : -1) * h[i];
    }
    long long euler_f = 0;
    for (std::size_t s = 0; s < info.f_vector.size(); ++s) {
        const int i = static_cast<int>(s) - 1;
        euler_f += (i % 2 == 0 ? 1 : -1) * info.f_vector[s];
    }
    if (euler_h != euler_f) {
        return CheckOutcome::violated("reduced Euler characteristic from homology " + std::to_string(euler_h)
                                      + " vs from the f-vector " + std::to_string(euler_f));
    }
    if (c.is_void()) {
        return CheckOutcome::holds();
    }
    const HomologicalInvariants inv = homological_invariants(ring_table(ideal));
    const LinkProfile lp(c, k);
    const bool cm = lp.reisner_cm();
    if (cm != (inv.depth == inv.dim_ring)) {
        return CheckOutcome::violated("Reisner CM = " + str(cm) + " but depth " + std::to_string(inv.depth)
                                      + " vs dim " + std::to_string(inv.dim_ring));
    }
    if (lp.local_cohomology_depth() != inv.depth) {
        return CheckOutcome::violated("depth from links " + std::to_string(lp.local_cohomology_depth())
                                      + " vs from Betti numbers " + std::to_string(inv.depth));
    }
    return CheckOutcome::holds();
}

using ComplexCheck = CheckOutcome (*)(const Complex&, const Field&);

std::function<CheckOutcome(const Complex&, const Field&)> guarded(ComplexCheck f, bool (*applies)(const Complex&))
{
    return [f, applies](const Complex& c, const Field& k) {
        return applies(c) ? f(c, k) : CheckOutcome::not_applicable();
    };
}

bool any_instance(const Complex&) { return true; }

std::vector<Theorem> build_registry()
{
    std::vector<Theorem> t;
    const auto pure = [&t](std::string id, std::string summary, ComplexCheck f) {
        t.push_back({std::move(id), TheoremFamily::Pure, std::move(summary), guarded(f, pure_instance), {}});
    };
    const auto codim2 = [&t](std::string id, std::string summary, ComplexCheck f) {
        t.push_back({std::move(id), TheoremFamily::Codim2, std::move(summary), guarded(f, codim2_instance), {}});
    };
    const auto graphs = [&t](std::string id, std::string summary, CheckOutcome (*f)(const Graph&, const Field&)) {
        t.push_back({std::move(id), TheoremFamily::Graphs, std::move(summary), {}, f});
    };
    pure("thm-er", "Delta is CM_t of dimension d-1 iff the Betti diagram of I_{dual} has the CM_t shape",
         check_thm_er);
    pure("thm-main", "CM_t implies that I_{dual} satisfies N_{n-d, 2d-n-t+2}", check_thm_main);
    pure("cor-yan", "CM_t implies S_{2d-n-t+2}; Buchsbaum implies depth >= min(d, 2d-n+1)", check_cor_yan);
    pure("yanagawa-bridge", "for r >= 2, S_r iff I_{dual} satisfies N_{n-d, r}", check_yanagawa);
    pure("remark-serre", "for pure Delta, S_r implies CM_{d-r}", check_remark_serre);
    pure("subadd", "Herzog-Srinivasan and Tor-vanishing bounds hold for I_Delta and I_{dual}", check_subadd);
    pure("ext-profile", "S_r, singularity dimension, CM_t and purity agree with the Ext-dimension profile",
         check_ext_profile);
    pure("sd-invariance", "min CM_t, max S_r and the singularity bound survive barycentric subdivision",
         check_sd_invariance);
    pure("cor-bk", "Buchsbaum with H~_i != 0 for some i >= 1 forces n >= 2d - i", check_cor_bk);
    codim2("thm-topin", "codimension 2: CM_t, N_{2,d-t} of the dual, S_{d-t} and the chord condition agree",
           check_thm_topin);
    codim2("prop-chardepth",
           "codimension 2 Buchsbaum: depth >= dim, and CM iff the dual 1-skeleton is not the (d+2)-cycle",
           check_prop_chardepth);
    graphs("thm-main2", "dual of the clique complex is CM_{n-r} iff every cycle of length <= r has a chord",
           check_thm_main2);
    graphs("cor-linear", "for r-chordal G, dual is CM_{n-r} iff the edge ideal of the complement is linear",
           check_cor_linear);
    graphs("froberg", "edge ideal of the complement has a linear resolution iff G is chordal", check_froberg);
    graphs("eghp", "N_{2,p} iff every cycle of length <= p+2 has a chord", check_eghp);
    t.push_back({"cross-oracle", TheoremFamily::Any,
                 "Reisner vs depth, beta_0 vs minimal nonfaces, dual involution, Euler characteristic",
                 guarded(check_cross_oracle, any_instance),
                 {}});
    return t;
}

} // namespace

const std::vector<Theorem>& theorem_registry()
{
    static const std::vector<Theorem> registry = build_registry();
    return registry;
}

const Theorem& find_theorem(std::string_view id)
{
    for (const Theorem& t : theorem_registry()) {
        if (t.id == id) {
            return t;
        }
    }
    throw std::invalid_argument("unknown theorem id '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------
// Verification

namespace {

bool space_holds_graphs(const SearchSpace& s)
{
    return s.mode == SearchMode::Fixture ? is_graph_fixture(s.fixture) : s.kind == SpaceKind::Graphs;
}

void check_compatible(const Theorem& t, const SearchSpace& s)
{
    const bool graphs = space_holds_graphs(s);
    if ((t.family == TheoremFamily::Graphs) != graphs) {
        throw std::invalid_argument("theorem '" + t.id + "' cannot run on " + s.describe());
    }
    if (s.mode == SearchMode::Fixture) {
        return;
    }
    if ((t.family == TheoremFamily::Pure || t.family == TheoremFamily::Codim2)
        && s.kind != SpaceKind::PureComplexes) {
        throw std::invalid_argument("theorem '" + t.id + "' needs a space of pure complexes");
    }
    if (t.family == TheoremFamily::Codim2 && s.d != s.n - 2) {
        throw std::invalid_argument("theorem '" + t.id + "' needs codimension 2 spaces (d = n - 2)");
    }
}

CheckOutcome run_check(const Theorem& t, const InstanceValue& v, const Field& k)
{
    if (const auto* g = std::get_if<Graph>(&v)) {
        return t.on_graph(*g, k);
    }
    return t.on_complex(std::get<Complex>(v), k);
}

std::string instance_text(const InstanceValue& v)
{
    if (const auto* g = std::get_if<Graph>(&v)) {
        return format_graph(*g);
    }
    return format_complex(std::get<Complex>(v));
}

struct ChunkResult {
    std::uint64_t checked = 0;
    std::uint64_t not_applicable = 0;
    std::vector<Counterexample> counterexamples;
    bool done = false;
};

} // namespace

VerificationResult verify_theorem(std::string_view theorem_id, const SearchSpace& space, const Field& field,
                                  const VerifyOptions& options)
{
    return verify_theorem(find_theorem(theorem_id), space, field, options);
}

VerificationResult verify_theorem(const Theorem& theorem, const SearchSpace& space, const Field& field,
                                  const VerifyOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    space.validate();
    check_compatible(theorem, space);
    const InstanceStream stream(space);

    const std::uint64_t chunks = (stream.positions() + kChunk - 1) / kChunk;
    std::vector<ChunkResult> results(static_cast<std::size_t>(chunks));
    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> first_bad_chunk{UINT64_MAX};
    std::mutex error_mutex;
    std::exception_ptr error;

    const auto worker = [&]() {
        while (true) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= chunks || (options.first_counterexample && c > first_bad_chunk.load())) {
                return;
            }
            ChunkResult& out = results[static_cast<std::size_t>(c)];
            try {
                const std::uint64_t end = std::min(stream.positions(), (c + 1) * kChunk);
                for (std::uint64_t pos = c * kChunk; pos < end; ++pos) {
                    const auto inst = stream.at(pos);
                    if (!inst) {
                        continue;
                    }
                    ++out.checked;
                    const CheckOutcome o = run_check(theorem, inst->value, field);
                    if (o.status == Status::NotApplicable) {
                        ++out.not_applicable;
                    } else if (o.status == Status::Violated) {
                        out.counterexamples.push_back({inst->index, instance_text(inst->value), o.clause});
                        if (options.first_counterexample) {
                            std::uint64_t cur = first_bad_chunk.load();
                            while (c < cur && !first_bad_chunk.compare_exchange_weak(cur, c)) {
                            }
                            break;
                        }
                    }
                }
                out.done = true;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next_chunk.store(chunks);
                return;
            }
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    VerificationResult r;
    r.theorem_id = theorem.id;
    r.space = space;
    r.field = field;
    r.first_counterexample_mode = options.first_counterexample;
    const std::uint64_t last = options.first_counterexample ? first_bad_chunk.load() : UINT64_MAX;
    for (std::uint64_t c = 0; c < chunks && c <= last; ++c) {
        ChunkResult& cr = results[static_cast<std::size_t>(c)];
        r.instances_checked += cr.checked;
        r.not_applicable += cr.not_applicable;
        for (auto& ce : cr.counterexamples) {
            r.counterexamples.push_back(std::move(ce));
        }
    }
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

CheckOutcome replay(const Theorem& theorem, std::string_view instance_text, const Field& field)
{
    if (theorem.family == TheoremFamily::Graphs) {
        return theorem.on_graph(parse_graph(instance_text), field);
    }
    return theorem.on_complex(parse_complex(instance_text), field);
}

nlohmann::json to_json(const VerificationResult& r, bool include_timing)
{
    nlohmann::json ces = nlohmann::json::array();
    for (const auto& ce : r.counterexamples) {
        ces.push_back({{"index", ce.index}, {"instance", ce.instance}, {"clause", ce.clause}});
    }
    nlohmann::json j = {{"schema", kSchema},
                        {"theorem", r.theorem_id},
                        {"space", to_json(r.space)},
                        {"field", r.field.name()},
                        {"seed", r.space.seed},
                        {"instances_checked", r.instances_checked},
                        {"not_applicable", r.not_applicable},
                        {"counterexamples", ces},
                        {"first_counterexample_mode", r.first_counterexample_mode}};
    if (include_timing) {
        j["elapsed_seconds"] = r.elapsed_seconds;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Manifest

const nlohmann::json& bundled_manifest()
{
    static const nlohmann::json manifest = nlohmann::json::parse(detail::kBundledManifest);
    return manifest;
}

namespace {

std::pair<int, int> range_of(const nlohmann::json& v)
{
    if (v.is_array()) {
        if (v.size() != 2) {
            throw std::invalid_argument("manifest range must be [lo, hi]");
        }
        return {v[0].get<int>(), v[1].get<int>()};
    }
    const int x = v.get<int>();
    return {x, x};
}

} // namespace

std::vector<SearchSpace> manifest_spaces(const nlohmann::json& manifest, std::string_view theorem_id)
{
    const auto& theorems = manifest.at("theorems");
    const auto it = theorems.find(std::string(theorem_id));
    if (it == theorems.end()) {
        throw std::invalid_argument("manifest has no entry for '" + std::string(theorem_id) + "'");
    }
    std::vector<SearchSpace> out;
    for (const auto& e : *it) {
        const std::string kind = e.at("kind").get<std::string>();
        if (kind == "fixture") {
            SearchSpace s;
            s.mode = SearchMode::Fixture;
            s.fixture = e.at("name").get<std::string>();
            if (is_graph_fixture(s.fixture)) {
                s.kind = SpaceKind::Graphs;
                s.n = fixture_graph(s.fixture).order();
            } else {
                const Complex c = fixture_complex(s.fixture);
                s.n = c.ground_size();
                s.d = c.facet_size_max();
            }
            out.push_back(s);
            continue;
        }
        SearchSpace base;
        if (kind == "pure") {
            base.kind = SpaceKind::PureComplexes;
        } else if (kind == "graphs") {
            base.kind = SpaceKind::Graphs;
        } else if (kind == "all") {
            base.kind = SpaceKind::AllComplexes;
        } else {
            throw std::invalid_argument("unknown manifest space kind '" + kind + "'");
        }
        const std::string mode = e.value("mode", std::string("exhaustive"));
        if (mode == "sample") {
            base.mode = SearchMode::Sample;
            base.count = e.at("count").get<std::size_t>();
            base.seed = e.at("seed").get<std::uint64_t>();
        } else if (mode != "exhaustive") {
            throw std::invalid_argument("unknown manifest mode '" + mode + "'");
        }
        base.cover_filter = e.value("cover_filter", true);
        const auto [lo, hi] = range_of(e.at("n"));
        for (int n = lo; n <= hi; ++n) {
            SearchSpace s = base;
            s.n = n;
            if (base.kind != SpaceKind::PureComplexes) {
                out.push_back(s);
                continue;
            }
            const auto& dv = e.at("d");
            int dlo = 1;
            int dhi = n;
            if (dv.is_string()) {
                const std::string spec = dv.get<std::string>();
                if (spec == "codim2") {
                    dlo = dhi = n - 2;
                } else if (spec != "all") {
                    throw std::invalid_argument("unknown manifest facet size '" + spec + "'");
                }
            } else {
                std::tie(dlo, dhi) = range_of(dv);
            }
            for (int d = std::max(dlo, 1); d <= std::min(dhi, n); ++d) {
                s.d = d;
                out.push_back(s);
            }
        }
    }
    for (const auto& s : out) {
        s.validate();
    }
    return out;
}

std::vector<SearchSpace> default_spaces(std::string_view theorem_id)
{
    find_theorem(theorem_id);
    return manifest_spaces(bundled_manifest(), theorem_id);
}

std::vector<SearchSpace> spaces_for(const Theorem& theorem, int max_n, std::optional<std::size_t> sample_count,
                                    std::uint64_t seed)
{
    std::vector<SearchSpace> out;
    const auto add = [&](SpaceKind kind, int n, int d) {
        SearchSpace s;
        s.kind = kind;
        s.n = n;
        s.d = d;
        s.cover_filter = theorem.family != TheoremFamily::Any;
        if (sample_count) {
            s.mode = SearchMode::Sample;
            s.count = *sample_count;
            s.seed = seed;
        }
        out.push_back(s);
    };
    const int lo_n = sample_count ? max_n : 0;
    for (int n = lo_n; n <= max_n; ++n) {
        switch (theorem.family) {
        case TheoremFamily::Pure:
            for (int d = 1; d <= n; ++d) {
                add(SpaceKind::PureComplexes, n, d);
            }
            break;
        case TheoremFamily::Codim2:
            if (n >= 3) {
                add(SpaceKind::PureComplexes, n, n - 2);
            }
            break;
        case TheoremFamily::Graphs:
            if (n >= 1) {
                add(SpaceKind::Graphs, n, 0);
            }
            break;
        case TheoremFamily::Any:
            add(SpaceKind::AllComplexes, n, 0);
            break;
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("no search space for '" + theorem.id + "' with n = " + std::to_string(max_n));
    }
    for (const auto& s : out) {
        s.validate();
    }
    return out;
}

} // namespace srlab
