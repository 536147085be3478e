#include "srlab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "srlab/errors.hpp"

namespace srlab {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0)
{
    if (n < 0 || n > kMaxVertices) {
        throw std::invalid_argument("graph order " + std::to_string(n) + " out of range 0..64");
    }
}

void Graph::add_edge(int u, int v)
{
    if (u < 1 || v < 1 || u > n_ || v > n_) {
        throw std::invalid_argument("edge {" + std::to_string(u) + "," + std::to_string(v) + "} outside {1.."
                                    + std::to_string(n_) + "}");
    }
    if (u == v) {
        throw std::invalid_argument("loop at vertex " + std::to_string(u));
    }
    adj_[static_cast<std::size_t>(u - 1)] |= Mask{1} << (v - 1);
    adj_[static_cast<std::size_t>(v - 1)] |= Mask{1} << (u - 1);
}

std::size_t Graph::edge_count() const
{
    std::size_t twice = 0;
    for (Mask m : adj_) {
        twice += static_cast<std::size_t>(std::popcount(m));
    }
    return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int u = 1; u <= n_; ++u) {
        for (int v = u + 1; v <= n_; ++v) {
            if (has_edge(u, v)) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

bool Graph::has_isolated_vertex() const
{
    return std::any_of(adj_.begin(), adj_.end(), [](Mask m) { return m == 0; });
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

} // namespace

Graph parse_graph(std::string_view text)
{
    std::optional<int> declared;
    std::vector<std::pair<int, int>> edges;
    int max_label = 0;
    bool saw_content = false;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == 'V') {
            if (declared || saw_content) {
                throw ParseError(line_no, "the 'V: n' header must come first and appear once");
            }
            auto rest = trim(line.substr(1));
            int n = -1;
            if (!rest.empty() && rest.front() == ':') {
                rest = trim(rest.substr(1));
                const auto* end = rest.data() + rest.size();
                auto [ptr, ec] = std::from_chars(rest.data(), end, n);
                if (ec != std::errc{} || ptr != end) {
                    n = -1;
                }
            }
            if (n < 0 || n > kMaxVertices) {
                throw ParseError(line_no, "malformed header, expected 'V: n' with 0 <= n <= 64");
            }
            declared = n;
            continue;
        }
        saw_content = true;
        std::istringstream fields{std::string(line)};
        std::string a;
        std::string b;
        std::string extra;
        if (!(fields >> a >> b) || (fields >> extra)) {
            throw ParseError(line_no, "expected exactly two vertex labels per edge");
        }
        const auto label = [line_no](const std::string& s) {
            int v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size() || v < 1 || v > kMaxVertices) {
                throw ParseError(line_no, "bad vertex label '" + s + "'");
            }
            return v;
        };
        const int u = label(a);
        const int v = label(b);
        if (u == v) {
            throw ParseError(line_no, "loop at vertex " + std::to_string(u));
        }
        if (declared && std::max(u, v) > *declared) {
            throw ParseError(line_no, "vertex outside declared set {1.." + std::to_string(*declared) + "}");
        }
        max_label = std::max({max_label, u, v});
        edges.emplace_back(u, v);
    }
    if (!declared && !saw_content) {
        throw ParseError(0, "empty document");
    }
    Graph g(declared.value_or(max_label));
    for (auto [u, v] : edges) {
        g.add_edge(u, v);
    }
    return g;
}

std::string format_graph(const Graph& g)
{
    std::ostringstream out;
    out << "V: " << g.order() << '\n';
    for (auto [u, v] : g.edges()) {
        out << u << ' ' << v << '\n';
    }
    return out.str();
}

Graph complement(const Graph& g)
{
    Graph h(g.order());
    for (int u = 1; u <= g.order(); ++u) {
        for (int v = u + 1; v <= g.order(); ++v) {
            if (!g.has_edge(u, v)) {
                h.add_edge(u, v);
            }
        }
    }
    return h;
}

Graph cycle_graph(int n)
{
    if (n < 3) {
        throw std::invalid_argument("a cycle needs at least 3 vertices");
    }
    Graph g(n);
    for (int v = 1; v <= n; ++v) {
        g.add_edge(v, v % n + 1);
    }
    return g;
}

Graph complete_graph(int n)
{
    Graph g(n);
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
            g.add_edge(u, v);
        }
    }
    return g;
}

namespace {

// Bron-Kerbosch with pivoting; reports maximal cliques.
void maximal_cliques(const Graph& g, Mask r, Mask p, Mask x, std::vector<Face>& out)
{
    if (p == 0 && x == 0) {
        out.emplace_back(r);
        return;
    }
    int pivot = 0;
    int best = -1;
    for (Mask px = p | x; px != 0; px &= px - 1) {
        const int u = std::countr_zero(px) + 1;
        const int cover = std::popcount(p & g.neighbours(u).bits());
        if (cover > best) {
            best = cover;
            pivot = u;
        }
    }
    for (Mask cand = p & ~g.neighbours(pivot).bits(); cand != 0; cand &= cand - 1) {
        const Mask bit = cand & -cand;
        const Mask nb = g.neighbours(std::countr_zero(bit) + 1).bits();
        maximal_cliques(g, r | bit, p & nb, x & nb, out);
        p &= ~bit;
        x |= bit;
    }
}

} // namespace

Complex clique_complex(const Graph& g)
{
    if (g.order() == 0) {
        return Complex::irrelevant(0);
    }
    std::vector<Face> cliques;
    maximal_cliques(g, 0, Face::range(g.order()).bits(), 0, cliques);
    return Complex::generated_by(g.order(), std::move(cliques));
}

Complex independence_complex(const Graph& g) { return clique_complex(complement(g)); }

Graph skeleton_graph(const Complex& c)
{
    Graph g(c.ground_size());
    for (Face f : c.facets()) {
        const auto ls = f.labels();
        for (std::size_t a = 0; a < ls.size(); ++a) {
            for (std::size_t b = a + 1; b < ls.size(); ++b) {
                g.add_edge(ls[a], ls[b]);
            }
        }
    }
    return g;
}

namespace {

struct CycleSearch {
    const Graph& g;
    int max_length;
    std::vector<std::vector<int>>& out;
    std::vector<int> path;
    Mask on_path = 0;
    Mask interior_nb = 0; // neighbours of path vertices other than the start and the end

    void extend()
    {
        const int start = path.front();
        const int end = path.back();
        const Mask start_bit = Mask{1} << (start - 1);
        const Mask allowed_above = ~((Mask{2} << (start - 1)) - 1); // labels > start
        Mask cand = g.neighbours(end).bits() & allowed_above & ~on_path & ~interior_nb;
        for (; cand != 0; cand &= cand - 1) {
            const int v = std::countr_zero(cand) + 1;
            const Mask nb = g.neighbours(v).bits();
            const bool closes = path.size() >= 2 && (nb & start_bit) != 0;
            const int len = static_cast<int>(path.size()) + 1;
            if (closes) {
                if (len >= 4 && path[1] < v) {
                    std::vector<int> cyc = path;
                    cyc.push_back(v);
                    out.push_back(std::move(cyc));
                }
                continue;
            }
            if (len >= max_length) {
                continue;
            }
            // The old end becomes interior unless it is the start itself.
            const Mask saved = interior_nb;
            if (path.size() >= 2) {
                interior_nb |= g.neighbours(end).bits();
            }
            path.push_back(v);
            on_path |= Mask{1} << (v - 1);
            extend();
            on_path &= ~(Mask{1} << (v - 1));
            path.pop_back();
            interior_nb = saved;
        }
    }
};

} // namespace

CycleReport induced_cycles(const Graph& g, int max_length)
{
    if (max_length < 4) {
        throw std::invalid_argument("induced cycle search needs a maximum length of at least 4");
    }
    CycleReport report;
    report.searched_max_length = max_length;
    for (int s = 1; s <= g.order(); ++s) {
        CycleSearch search{g, max_length, report.cycles, {s}, Mask{1} << (s - 1), 0};
        search.extend();
    }
    return report;
}

bool chord_condition(const Graph& g, int r)
{
    if (r < 3) {
        throw std::invalid_argument("chord condition needs r >= 3");
    }
    if (r == 3) {
        return true;
    }
    return induced_cycles(g, r).cycles.empty();
}

bool is_chordal(const Graph& g) { return chord_condition(g, std::max(g.order(), 3)); }

bool r_chordal(const Graph& g, int r)
{
    if (g.order() < 4 || r >= g.order()) {
        return true;
    }
    for (const auto& cyc : induced_cycles(g, g.order()).cycles) {
        if (static_cast<int>(cyc.size()) > r) {
            return false;
        }
    }
    return true;
}

bool is_cycle_graph(const Graph& g)
{
    if (g.order() < 3) {
        return false;
    }
    for (int v = 1; v <= g.order(); ++v) {
        if (g.degree(v) != 2) {
            return false;
        }
    }
    Mask seen = 1;
    Mask frontier = 1;
    while (frontier != 0) {
        Mask next = 0;
        for (Mask f = frontier; f != 0; f &= f - 1) {
            next |= g.neighbours(std::countr_zero(f) + 1).bits();
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == Face::range(g.order()).bits();
}

} // namespace srlab
