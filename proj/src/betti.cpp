#include "srlab/betti.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace srlab {

namespace {

constexpr const char* kSchema = "sr-lab/1";

long long binomial(int n, int k)
{
    if (k < 0 || k > n) {
        return 0;
    }
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace

BettiTable::BettiTable(BettiSubject subject, int n, Field field, Entries entries, int krull_dim)
    : subject_(subject), n_(n), field_(field), krull_dim_(krull_dim)
{
    for (const auto& [key, value] : entries) {
        if (value < 0) {
            throw std::invalid_argument("negative Betti number");
        }
        if (value != 0) {
            entries_.emplace(key, value);
        }
    }
}

long long BettiTable::at(int i, int j) const
{
    const auto it = entries_.find({i, j});
    return it == entries_.end() ? 0 : it->second;
}

std::optional<int> BettiTable::gen_degree_max() const
{
    std::optional<int> e;
    for (const auto& [key, value] : entries_) {
        if (key.first == 0) {
            e = std::max(e.value_or(key.second), key.second);
        }
    }
    return e;
}

std::optional<int> BettiTable::max_index() const
{
    std::optional<int> m;
    for (const auto& [key, value] : entries_) {
        m = std::max(m.value_or(key.first), key.first);
    }
    return m;
}

std::string to_string(BettiSubject s) { return s == BettiSubject::Ideal ? "ideal" : "ring"; }

BettiTable hochster_betti(const Complex& c, const Field& k, BettiSubject subject, int max_n)
{
    const int n = c.ground_size();
    if (n > max_n) {
        throw std::invalid_argument("Hochster sum over " + std::to_string(n) + " vertices exceeds the bound "
                                    + std::to_string(max_n));
    }
    const int d = c.facet_size_max();
    if (c.is_void()) {
        if (subject == BettiSubject::Ring) {
            throw std::invalid_argument("the void complex has the zero Stanley-Reisner ring");
        }
        return BettiTable(BettiSubject::Ideal, n, k, {{{0, 0}, 1}}, 0);
    }

    // Delta_W only depends on W intersected with the vertex set; ambient non-vertices
    // contribute binomial multiplicities.
    const std::vector<Mask> faces = c.face_masks();
    Mask vertices = 0;
    for (Mask m : faces) {
        if (std::popcount(m) == 1) {
            vertices |= m;
        }
    }
    const int loose = n - std::popcount(vertices);

    BettiTable::Entries ideal;
    std::vector<Mask> sub;
    Mask s = 0;
    while (true) {
        sub.clear();
        for (Mask m : faces) {
            if ((m & ~s) == 0) {
                sub.push_back(m);
            }
        }
        const HomologyVector h = detail::homology_of_faces(sub, k);
        const int base = std::popcount(s);
        for (int deg = -1; deg <= h.top(); ++deg) {
            const long long dim = h[deg];
            if (dim == 0) {
                continue;
            }
            for (int t = 0; t <= loose; ++t) {
                const int j = base + t;
                const int i = j - deg - 2;
                if (i >= 0) {
                    ideal[{i, j}] += dim * binomial(loose, t);
                }
            }
        }
        if (s == vertices) {
            break;
        }
        s = (s - vertices) & vertices;
    }
    BettiTable table(BettiSubject::Ideal, n, k, std::move(ideal), d);
    return subject == BettiSubject::Ideal ? table : ring_table(table);
}

BettiTable ring_table(const BettiTable& ideal)
{
    if (ideal.subject() != BettiSubject::Ideal) {
        throw std::invalid_argument("ring_table expects an ideal table");
    }
    if (ideal.at(0, 0) != 0) {
        throw std::invalid_argument("the unit ideal has no Stanley-Reisner ring");
    }
    BettiTable::Entries e{{{0, 0}, 1}};
    for (const auto& [key, value] : ideal.entries()) {
        e[{key.first + 1, key.second}] = value;
    }
    return BettiTable(BettiSubject::Ring, ideal.n(), ideal.field(), std::move(e), ideal.krull_dim());
}

BettiTable ideal_table(const BettiTable& ring)
{
    if (ring.subject() != BettiSubject::Ring) {
        throw std::invalid_argument("ideal_table expects a ring table");
    }
    BettiTable::Entries e;
    for (const auto& [key, value] : ring.entries()) {
        if (key.first >= 1) {
            e[{key.first - 1, key.second}] = value;
        }
    }
    return BettiTable(BettiSubject::Ideal, ring.n(), ring.field(), std::move(e), ring.krull_dim());
}

HomologicalInvariants homological_invariants(const BettiTable& ring)
{
    if (ring.subject() != BettiSubject::Ring) {
        throw std::invalid_argument("homological invariants need the ring table");
    }
    if (ring.at(0, 0) != 1) {
        throw std::invalid_argument("ring table without beta_{0,0} = 1");
    }
    HomologicalInvariants inv;
    inv.projdim_ring = ring.max_index().value_or(0);
    inv.depth = ring.n() - inv.projdim_ring;
    inv.dim_ring = ring.krull_dim();
    for (const auto& [key, value] : ring.entries()) {
        if (key.first >= 1) {
            const int reg = key.second - (key.first - 1);
            inv.regularity_ideal = std::max(inv.regularity_ideal.value_or(reg), reg);
        }
    }
    inv.cm = inv.depth == inv.dim_ring;
    return inv;
}

bool check_ndp(const BettiTable& ideal, int degree, int steps)
{
    if (steps <= 0) {
        return true;
    }
    for (const auto& [key, value] : ideal.entries()) {
        const auto [i, j] = key;
        if (i == 0 && j != degree) {
            return false;
        }
        if (i >= 1 && i <= steps - 1 && j != i + degree) {
            return false;
        }
    }
    return true;
}

bool check_er_shape(const BettiTable& ideal, int n, int d, int t)
{
    for (const auto& [key, value] : ideal.entries()) {
        const auto [i, j] = key;
        if (i == 0 && j > n - d) {
            return false;
        }
        if (j - i > n - d && j <= n - t) {
            return false;
        }
    }
    return true;
}

std::vector<SubadditivityViolation> check_subadditivity(const BettiTable& ideal)
{
    std::vector<SubadditivityViolation> out;
    const auto e = ideal.gen_degree_max();
    const auto top = ideal.max_index();
    if (!e || !top) {
        return out;
    }
    std::vector<std::optional<int>> row_max(static_cast<std::size_t>(*top + 2));
    for (const auto& [key, value] : ideal.entries()) {
        auto& m = row_max[static_cast<std::size_t>(key.first)];
        m = std::max(m.value_or(key.second), key.second);
    }
    for (int i = 0; i < *top; ++i) {
        const auto& next = row_max[static_cast<std::size_t>(i + 1)];
        if (!next) {
            continue;
        }
        const auto& cur = row_max[static_cast<std::size_t>(i)];
        if (!cur) {
            out.push_back({SubadditivityViolation::Kind::HerzogSrinivasan, i, *next - *e - 1});
        } else if (*next > *cur + *e) {
            out.push_back({SubadditivityViolation::Kind::HerzogSrinivasan, i, *cur});
        }
    }
    for (const auto& [key, value] : ideal.entries()) {
        const auto [i1, target] = key;
        if (i1 == 0) {
            continue;
        }
        const int i = i1 - 1;
        const int j0 = target - *e;
        bool gap = true;
        for (int k = j0; k < target && gap; ++k) {
            gap = ideal.at(i, k) == 0;
        }
        if (gap) {
            out.push_back({SubadditivityViolation::Kind::TorVar, i, j0});
        }
    }
    return out;
}

std::string format_betti(const BettiTable& t)
{
    if (t.empty()) {
        return "(zero)\n";
    }
    const int cols = *t.max_index() + 1;
    int lo = INT_MAX;
    int hi = INT_MIN;
    for (const auto& [key, value] : t.entries()) {
        lo = std::min(lo, key.second - key.first);
        hi = std::max(hi, key.second - key.first);
    }
    std::vector<long long> totals(static_cast<std::size_t>(cols), 0);
    std::size_t width = 1;
    for (const auto& [key, value] : t.entries()) {
        totals[static_cast<std::size_t>(key.first)] += value;
    }
    for (long long v : totals) {
        width = std::max(width, std::to_string(v).size());
    }
    std::size_t label_width = std::string("total").size();
    for (int r = lo; r <= hi; ++r) {
        label_width = std::max(label_width, std::to_string(r).size());
    }
    std::ostringstream out;
    const auto cell = [&](const std::string& s) { out << ' ' << std::setw(static_cast<int>(width)) << s; };
    out << std::setw(static_cast<int>(label_width + 1)) << "";
    for (int i = 0; i < cols; ++i) {
        cell(std::to_string(i));
    }
    out << '\n' << std::setw(static_cast<int>(label_width)) << "total" << ':';
    for (long long v : totals) {
        cell(std::to_string(v));
    }
    out << '\n';
    for (int r = lo; r <= hi; ++r) {
        out << std::setw(static_cast<int>(label_width)) << r << ':';
        for (int i = 0; i < cols; ++i) {
            const long long v = t.at(i, i + r);
            cell(v ? std::to_string(v) : ".");
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const BettiTable& t)
{
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, value] : t.entries()) {
        entries.push_back({key.first, key.second, value});
    }
    return {{"schema", kSchema},    {"subject", to_string(t.subject())}, {"field", t.field().name()},
            {"n", t.n()},           {"krull_dim", t.krull_dim()},         {"entries", entries}};
}

BettiTable betti_from_json(const nlohmann::json& j)
{
    const std::string subject = j.at("subject").get<std::string>();
    const std::string field = j.at("field").get<std::string>();
    Field k = field == "Q" ? Field::rationals()
                           : Field::prime(static_cast<std::uint32_t>(std::stoul(field.substr(3, field.size() - 4))));
    BettiTable::Entries e;
    for (const auto& row : j.at("entries")) {
        e[{row.at(0).get<int>(), row.at(1).get<int>()}] = row.at(2).get<long long>();
    }
    return BettiTable(subject == "ring" ? BettiSubject::Ring : BettiSubject::Ideal, j.at("n").get<int>(), k,
                      std::move(e), j.value("krull_dim", 0));
}

} // namespace srlab
