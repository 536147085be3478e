#include "srlab/fixtures.hpp"

#include <charconv>
#include <stdexcept>

namespace srlab {

namespace {

struct Entry {
    const char* name;
    const char* text;
};

constexpr Entry kFixtures[] = {
    {"C4", "# 4-cycle\nV: 4\n1 2\n2 3\n3 4\n1 4\n"},
    {"2E", "# two disjoint edges\nV: 4\n1 2\n3 4\n"},
    {"MT6",
     "# Murai-Terai: S_3, Buchsbaum, not Cohen-Macaulay\nV: 6\n1 2 3 5\n1 2 4 5\n1 2 4 6\n1 3 4 5\n1 3 4 6\n"
     "1 3 5 6\n2 3 4 6\n2 3 5 6\n2 4 5 6\n"},
    {"DUALC5", "# Alexander dual of the clique complex of the 5-cycle\nV: 5\n2 4 5\n2 3 5\n1 3 5\n1 3 4\n1 2 4\n"},
    {"R6", "# 5-cycle with a pendant edge\nV: 6\n1 2\n2 3\n3 4\n4 5\n1 5\n5 6\n"},
    {"D6",
     "# Alexander dual of R6\nV: 6\n1 2 3 5\n1 2 4 5\n1 2 4 6\n1 3 4 5\n1 3 4 6\n1 3 5 6\n2 3 4 5\n2 3 5 6\n"
     "2 4 5 6\n"},
    {"C5.graph", "# 5-cycle\nV: 5\n1 2\n2 3\n3 4\n4 5\n1 5\n"},
};

std::optional<int> simplex_size(std::string_view name)
{
    constexpr std::string_view prefix = "SIMPLEX_";
    if (name.substr(0, prefix.size()) != prefix) {
        return std::nullopt;
    }
    const auto digits = name.substr(prefix.size());
    int k = -1;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || k < 0 || k > kMaxVertices) {
        return std::nullopt;
    }
    return k;
}

} // namespace

std::vector<std::string> fixture_names()
{
    std::vector<std::string> out;
    for (const auto& e : kFixtures) {
        out.emplace_back(e.name);
    }
    out.emplace_back("SIMPLEX_k");
    return out;
}

std::optional<std::string> fixture_text(std::string_view name)
{
    for (const auto& e : kFixtures) {
        if (name == e.name) {
            return std::string(e.text);
        }
    }
    if (const auto k = simplex_size(name)) {
        return "# full simplex\n" + format_complex(Complex::simplex(*k));
    }
    return std::nullopt;
}

Complex fixture_complex(std::string_view name)
{
    const auto text = fixture_text(name);
    if (!text || name.ends_with(".graph")) {
        throw std::invalid_argument("unknown complex fixture '" + std::string(name) + "'");
    }
    return parse_complex(*text);
}

Graph fixture_graph(std::string_view name)
{
    const auto text = fixture_text(name);
    if (!text || !name.ends_with(".graph")) {
        throw std::invalid_argument("unknown graph fixture '" + std::string(name) + "'");
    }
    return parse_graph(*text);
}

} // namespace srlab
