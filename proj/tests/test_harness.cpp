#include <doctest.h>

#include <set>

#include "srlab/criteria.hpp"
#include "srlab/fixtures.hpp"
#include "srlab/harness.hpp"
#include "test_util.hpp"

using namespace srlab;

namespace {

SearchSpace pure_space(int n, int d, bool cover = true)
{
    SearchSpace s;
    s.kind = SpaceKind::PureComplexes;
    s.n = n;
    s.d = d;
    s.cover_filter = cover;
    return s;
}

SearchSpace graph_space(int n)
{
    SearchSpace s;
    s.kind = SpaceKind::Graphs;
    s.n = n;
    return s;
}

SearchSpace sample_space(SpaceKind kind, int n, int d, std::size_t count, std::uint64_t seed)
{
    SearchSpace s;
    s.kind = kind;
    s.n = n;
    s.d = d;
    s.mode = SearchMode::Sample;
    s.count = count;
    s.seed = seed;
    return s;
}

std::vector<std::string> stream_texts(const SearchSpace& s)
{
    std::vector<std::string> out;
    InstanceStream stream(s);
    while (auto inst = stream.next()) {
        if (const auto* c = std::get_if<Complex>(&inst->value)) {
            out.push_back(format_complex(*c));
        } else {
            out.push_back(format_graph(std::get<Graph>(inst->value)));
        }
    }
    return out;
}

// Pure complexes by brute force: every nonempty family of d-subsets, deduplicated by text.
std::set<std::string> brute_pure(int n, int d, bool cover)
{
    std::vector<Face> subsets;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        if (std::popcount(m) == d) {
            subsets.emplace_back(m);
        }
    }
    std::set<std::string> out;
    for (Mask pick = 1; pick < (Mask{1} << subsets.size()); ++pick) {
        std::vector<Face> g;
        Mask support = 0;
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            if ((pick >> i) & 1U) {
                g.push_back(subsets[i]);
                support |= subsets[i].bits();
            }
        }
        if (!cover || support == Face::range(n).bits()) {
            out.insert(format_complex(Complex::generated_by(n, g)));
        }
    }
    return out;
}

Theorem always_failing()
{
    Theorem t;
    t.id = "fails-on-two-facets";
    t.family = TheoremFamily::Pure;
    t.summary = "rejects complexes with exactly two facets";
    t.on_complex = [](const Complex& c, const Field&) {
        if (c.facets().size() == 1) {
            return CheckOutcome::not_applicable();
        }
        return c.facets().size() == 2 ? CheckOutcome::violated("two facets") : CheckOutcome::holds();
    };
    return t;
}

} // namespace

TEST_CASE("pure enumeration counts")
{
    CHECK(enumerate_pure_complexes(pure_space(4, 2, false)).size() == 63);
    CHECK(enumerate_pure_complexes(pure_space(4, 2)).size() == 41);
    CHECK(enumerate_pure_complexes(pure_space(4, 4)).size() == 1);
    CHECK(enumerate_pure_complexes(pure_space(3, 1)).size() == 1);
    for (int n = 1; n <= 5; ++n) {
        for (int d = 1; d <= n; ++d) {
            for (bool cover : {true, false}) {
                const auto listed = enumerate_pure_complexes(pure_space(n, d, cover));
                std::set<std::string> texts;
                for (const Complex& c : listed) {
                    CHECK(c.is_pure());
                    CHECK(c.facet_size_max() == d);
                    texts.insert(format_complex(c));
                }
                CHECK(texts.size() == listed.size());
                CHECK(texts == brute_pure(n, d, cover));
            }
        }
    }
}

TEST_CASE("all complexes match the Dedekind numbers")
{
    const std::vector<std::size_t> dedekind{2, 3, 6, 20, 168, 7581};
    for (int n = 0; n <= 5; ++n) {
        const auto all = enumerate_all_complexes(n);
        CHECK(all.size() == dedekind[static_cast<std::size_t>(n)]);
        std::set<std::string> texts;
        for (const Complex& c : all) {
            texts.insert(format_complex(c));
        }
        CHECK(texts.size() == all.size());
    }
    CHECK_THROWS_AS(enumerate_all_complexes(6), std::invalid_argument);
}

TEST_CASE("graph spaces drop isolated vertices")
{
    // Number of labelled graphs without isolated vertices on n = 1..6 vertices.
    const std::vector<std::size_t> expected{0, 1, 4, 41, 768, 27449};
    for (int n = 1; n <= 6; ++n) {
        const auto texts = stream_texts(graph_space(n));
        CHECK(texts.size() == expected[static_cast<std::size_t>(n - 1)]);
        std::size_t brute = 0;
        const int pairs = n * (n - 1) / 2;
        for (Mask m = 0; m < (Mask{1} << pairs); ++m) {
            Graph g(n);
            int k = 0;
            for (int u = 1; u <= n; ++u) {
                for (int v = u + 1; v <= n; ++v, ++k) {
                    if ((m >> k) & 1U) {
                        g.add_edge(u, v);
                    }
                }
            }
            brute += g.has_isolated_vertex() ? 0 : 1;
        }
        CHECK(texts.size() == brute);
    }
}

TEST_CASE("search space validation")
{
    CHECK_NOTHROW(pure_space(6, 3, true).validate());
    CHECK_THROWS_AS(pure_space(7, 3).validate(), std::invalid_argument);
    CHECK_THROWS_AS(pure_space(4, 0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(pure_space(4, 5).validate(), std::invalid_argument);
    CHECK_NOTHROW(graph_space(7).validate());
    CHECK_THROWS_AS(graph_space(8).validate(), std::invalid_argument);
    SearchSpace all;
    all.kind = SpaceKind::AllComplexes;
    all.n = 6;
    CHECK_THROWS_AS(all.validate(), std::invalid_argument);
    CHECK_THROWS_AS(sample_space(SpaceKind::Graphs, 8, 0, 0, 1).validate(), std::invalid_argument);
    CHECK_NOTHROW(sample_space(SpaceKind::PureComplexes, 9, 4, 10, 1).validate());
    SearchSpace fx;
    fx.mode = SearchMode::Fixture;
    fx.fixture = "NOPE";
    CHECK_THROWS_AS(fx.validate(), std::invalid_argument);
    CHECK(pure_space(5, 3).describe() == "pure n=5 d=3 exhaustive");
}

TEST_CASE("sampling is seeded and free of repeats")
{
    const SearchSpace s = sample_space(SpaceKind::PureComplexes, 7, 3, 200, 42);
    const auto a = stream_texts(s);
    const auto b = stream_texts(s);
    CHECK(a == b);
    CHECK(a.size() == 200);
    CHECK(std::set<std::string>(a.begin(), a.end()).size() == a.size());
    for (const std::string& t : a) {
        const Complex c = parse_complex(t);
        CHECK(c.is_pure());
        CHECK(c.facet_size_max() == 3);
        CHECK(c.vertex_support() == Face::range(7));
    }
    CHECK(stream_texts(sample_space(SpaceKind::PureComplexes, 7, 3, 200, 43)) != a);

    const auto g = stream_texts(sample_space(SpaceKind::Graphs, 7, 0, 500, 1));
    CHECK(g.size() == 500);
    CHECK(std::set<std::string>(g.begin(), g.end()).size() == 500);
    for (const std::string& t : g) {
        CHECK_FALSE(parse_graph(t).has_isolated_vertex());
    }
    // The space has only 41 members; a larger request stops at what exists.
    CHECK(stream_texts(sample_space(SpaceKind::PureComplexes, 4, 2, 100, 5)).size() == 41);
}

TEST_CASE("stream positions and random access agree")
{
    const SearchSpace s = pure_space(4, 2);
    InstanceStream stream(s);
    CHECK(stream.positions() == 64);
    std::vector<std::uint64_t> seen;
    while (auto inst = stream.next()) {
        const auto again = InstanceStream(s).at(inst->index);
        REQUIRE(again.has_value());
        CHECK(std::get<Complex>(again->value) == std::get<Complex>(inst->value));
        seen.push_back(inst->index);
    }
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK_FALSE(stream.at(0).has_value());
}

TEST_CASE("counterexamples are recorded and replay")
{
    const Theorem t = always_failing();
    const SearchSpace s = pure_space(4, 2);
    const VerificationResult r = verify_theorem(t, s, Field{});
    CHECK(r.instances_checked == 41);
    CHECK(r.not_applicable == 0);
    std::size_t two = 0;
    for (const Complex& c : enumerate_pure_complexes(s)) {
        two += c.facets().size() == 2 ? 1 : 0;
    }
    CHECK(r.counterexamples.size() == two);
    for (const auto& ce : r.counterexamples) {
        CHECK(ce.clause == "two facets");
        CHECK(replay(t, ce.instance, Field{}).status == CheckOutcome::Status::Violated);
    }
    CHECK(std::is_sorted(r.counterexamples.begin(), r.counterexamples.end(),
                         [](const auto& a, const auto& b) { return a.index < b.index; }));
    const VerificationResult single = verify_theorem(t, pure_space(3, 2, false), Field{});
    CHECK(single.not_applicable == 3);
}

TEST_CASE("first-counterexample mode is deterministic across thread counts")
{
    const Theorem t = always_failing();
    const SearchSpace s = pure_space(6, 5);
    const auto base = to_json(verify_theorem(t, s, Field{}, {.first_counterexample = true, .threads = 1})).dump();
    for (unsigned threads : {2U, 3U, 8U}) {
        const auto again = verify_theorem(t, s, Field{}, {.first_counterexample = true, .threads = threads});
        CHECK(to_json(again).dump() == base);
        REQUIRE(again.counterexamples.size() == 1);
    }
    const auto full1 = to_json(verify_theorem("thm-er", pure_space(5, 3), Field{}, {.threads = 1})).dump();
    const auto full4 = to_json(verify_theorem("thm-er", pure_space(5, 3), Field{}, {.threads = 4})).dump();
    CHECK(full1 == full4);
}

TEST_CASE("result JSON")
{
    const VerificationResult r = verify_theorem("remark-serre", pure_space(4, 3), Field::rationals());
    const nlohmann::json j = to_json(r);
    CHECK(j["schema"] == "sr-lab/1");
    CHECK(j["theorem"] == "remark-serre");
    CHECK(j["field"] == "Q");
    CHECK(j["counterexamples"].empty());
    CHECK_FALSE(j.contains("elapsed_seconds"));
    CHECK(to_json(r, true).contains("elapsed_seconds"));
    CHECK(j["space"]["kind"] == "pure");
    CHECK(j["space"]["d"] == 3);
}

TEST_CASE("registry and compatibility")
{
    for (const char* id : {"thm-er", "thm-main", "cor-yan", "yanagawa-bridge", "remark-serre", "subadd",
                           "ext-profile", "sd-invariance", "cor-bk", "thm-topin", "prop-chardepth", "thm-main2",
                           "cor-linear", "froberg", "eghp", "cross-oracle"}) {
        CHECK(find_theorem(id).id == id);
        CHECK_FALSE(default_spaces(id).empty());
    }
    CHECK_THROWS_AS(find_theorem("no-such-theorem"), std::invalid_argument);
    CHECK_THROWS_AS(verify_theorem("thm-topin", pure_space(5, 2), Field{}), std::invalid_argument);
    CHECK_THROWS_AS(verify_theorem("thm-main2", pure_space(5, 2), Field{}), std::invalid_argument);
    CHECK_THROWS_AS(verify_theorem("thm-er", graph_space(4), Field{}), std::invalid_argument);
}

TEST_CASE("manifest parsing")
{
    const auto m = nlohmann::json::parse(R"({"schema":"sr-lab/1","theorems":{
        "x":[{"kind":"pure","n":[3,4],"d":"codim2"},
             {"kind":"graphs","n":7,"mode":"sample","count":9,"seed":3},
             {"kind":"all","n":2,"cover_filter":false},
             {"kind":"fixture","name":"MT6"}],
        "bad":[{"kind":"cubes","n":3}],
        "huge":[{"kind":"pure","n":8,"d":4}]}})");
    const auto spaces = manifest_spaces(m, "x");
    REQUIRE(spaces.size() == 5);
    CHECK(spaces[0] == pure_space(3, 1));
    CHECK(spaces[1] == pure_space(4, 2));
    CHECK(spaces[2] == sample_space(SpaceKind::Graphs, 7, 0, 9, 3));
    CHECK_FALSE(spaces[3].cover_filter);
    CHECK(spaces[4].mode == SearchMode::Fixture);
    CHECK(spaces[4].n == 6);
    CHECK(spaces[4].d == 4);
    CHECK_THROWS_AS(manifest_spaces(m, "bad"), std::invalid_argument);
    CHECK_THROWS_AS(manifest_spaces(m, "huge"), std::invalid_argument);
    CHECK_THROWS_AS(manifest_spaces(m, "missing"), std::invalid_argument);
    CHECK(bundled_manifest()["schema"] == "sr-lab/1");
}

TEST_CASE("ad-hoc spaces")
{
    const auto pure = spaces_for(find_theorem("thm-er"), 3, std::nullopt, 0);
    CHECK(pure.size() == 6);
    const auto codim2 = spaces_for(find_theorem("thm-topin"), 5, std::nullopt, 0);
    CHECK(codim2.size() == 3);
    const auto sampled = spaces_for(find_theorem("thm-main2"), 7, 50, 9);
    REQUIRE(sampled.size() == 1);
    CHECK(sampled[0] == sample_space(SpaceKind::Graphs, 7, 0, 50, 9));
    const auto any = spaces_for(find_theorem("cross-oracle"), 2, std::nullopt, 0);
    CHECK(any.size() == 3);
    CHECK_FALSE(any[0].cover_filter);
    CHECK_THROWS_AS(spaces_for(find_theorem("thm-er"), 9, std::nullopt, 0), std::invalid_argument);
}

TEST_CASE("Buchsbaum bound on the MT6 fixture")
{
    const Theorem& t = find_theorem("cor-bk");
    CHECK(t.on_complex(fixture_complex("MT6"), Field{}).status == CheckOutcome::Status::Holds);
    CHECK(t.on_complex(fixture_complex("2E"), Field{}).status == CheckOutcome::Status::NotApplicable);
    SearchSpace fx;
    fx.mode = SearchMode::Fixture;
    fx.fixture = "MT6";
    const VerificationResult r = verify_theorem(t, fx, Field{});
    CHECK(r.instances_checked == 1);
    CHECK(r.not_applicable == 0);
    CHECK(r.counterexamples.empty());
}

TEST_CASE("theorems hold on small default spaces")
{
    for (const Theorem& t : theorem_registry()) {
        CAPTURE(t.id);
        for (const SearchSpace& s : spaces_for(t, t.family == TheoremFamily::Codim2 ? 5 : 4, std::nullopt, 0)) {
            CHECK(verify_theorem(t, s, Field{}).counterexamples.empty());
        }
    }
}
