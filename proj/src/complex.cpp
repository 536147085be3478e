#include "srlab/complex.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "srlab/errors.hpp"

namespace srlab {

// ---------------------------------------------------------------------------
// Face

Face Face::from_labels(std::span<const int> labels)
{
    Mask bits = 0;
    for (int v : labels) {
        if (v < 1 || v > kMaxVertices) {
            throw std::invalid_argument("vertex label " + std::to_string(v) + " out of range 1.."
                                        + std::to_string(kMaxVertices));
        }
        const Mask bit = Mask{1} << (v - 1);
        if (bits & bit) {
            throw std::invalid_argument("repeated vertex label " + std::to_string(v));
        }
        bits |= bit;
    }
    return Face(bits);
}

std::vector<int> Face::labels() const
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Mask m = bits_; m != 0; m &= m - 1) {
        out.push_back(std::countr_zero(m) + 1);
    }
    return out;
}

std::string Face::to_string() const
{
    std::string s = "{";
    bool first = true;
    for (int v : labels()) {
        if (!first) {
            s += ',';
        }
        s += std::to_string(v);
        first = false;
    }
    return s + "}";
}

bool lex_less(Face a, Face b)
{
    Mask x = a.bits();
    Mask y = b.bits();
    while (x != 0 && y != 0) {
        const int lx = std::countr_zero(x);
        const int ly = std::countr_zero(y);
        if (lx != ly) {
            return lx < ly;
        }
        x &= x - 1;
        y &= y - 1;
    }
    return x == 0 && y != 0;
}

bool size_lex_less(Face a, Face b)
{
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return lex_less(a, b);
}

// ---------------------------------------------------------------------------
// Complex

namespace {

void check_ground_size(int n)
{
    if (n < 0 || n > kMaxVertices) {
        throw std::invalid_argument("ambient size " + std::to_string(n) + " out of range 0.."
                                    + std::to_string(kMaxVertices));
    }
}

long long binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace

Complex Complex::void_complex(int n)
{
    check_ground_size(n);
    Complex c;
    c.n_ = n;
    return c;
}

Complex Complex::irrelevant(int n)
{
    check_ground_size(n);
    Complex c;
    c.n_ = n;
    c.facets_.push_back(Face{});
    return c;
}

Complex Complex::simplex(int n) { return generated_by(n, {Face::range(n)}); }

Complex Complex::generated_by(int n, std::vector<Face> generators)
{
    check_ground_size(n);
    const Face ambient = Face::range(n);
    for (Face g : generators) {
        if (!g.subset_of(ambient)) {
            throw std::invalid_argument("face " + g.to_string() + " not contained in {1.."
                                        + std::to_string(n) + "}");
        }
    }
    std::sort(generators.begin(), generators.end(),
              [](Face a, Face b) { return a.size() != b.size() ? a.size() > b.size() : a.bits() < b.bits(); });
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

    Complex c;
    c.n_ = n;
    for (Face g : generators) {
        const bool absorbed = std::any_of(c.facets_.begin(), c.facets_.end(),
                                          [g](Face f) { return g.subset_of(f); });
        if (!absorbed) {
            c.facets_.push_back(g);
        }
    }
    std::sort(c.facets_.begin(), c.facets_.end(), lex_less);
    return c;
}

ComplexKind Complex::kind() const
{
    if (facets_.empty()) {
        return ComplexKind::Void;
    }
    if (facets_.size() == 1 && facets_.front().empty()) {
        return ComplexKind::Irrelevant;
    }
    return ComplexKind::Proper;
}

int Complex::facet_size_max() const
{
    int d = 0;
    for (Face f : facets_) {
        d = std::max(d, f.size());
    }
    return d;
}

bool Complex::is_pure() const
{
    return std::all_of(facets_.begin(), facets_.end(),
                       [this](Face f) { return f.size() == facets_.front().size(); });
}

bool Complex::contains(Face f) const
{
    return std::any_of(facets_.begin(), facets_.end(), [f](Face g) { return f.subset_of(g); });
}

Face Complex::vertex_support() const
{
    Face u;
    for (Face f : facets_) {
        u = u | f;
    }
    return u;
}

std::vector<Mask> Complex::face_masks() const
{
    std::vector<Mask> out;
    if (facets_.empty()) {
        return out;
    }
    const int width = vertex_support().max_label();
    if (width <= 12) {
        // Downward closure on the subset lattice; supersets are visited first.
        const std::size_t size = std::size_t{1} << width;
        std::vector<char> mark(size, 0);
        for (Face f : facets_) {
            mark[f.bits()] = 1;
        }
        for (std::size_t m = size; m-- > 0;) {
            if (!mark[m]) {
                continue;
            }
            for (Mask b = m; b != 0; b &= b - 1) {
                mark[m & ~(b & -b)] = 1;
            }
        }
        for (std::size_t m = 0; m < size; ++m) {
            if (mark[m]) {
                out.push_back(m);
            }
        }
        return out;
    }
    for (Face f : facets_) {
        const Mask full = f.bits();
        Mask sub = full;
        while (true) {
            out.push_back(sub);
            if (sub == 0) {
                break;
            }
            sub = (sub - 1) & full;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Face> Complex::faces() const
{
    std::vector<Face> out;
    for (Mask m : face_masks()) {
        out.emplace_back(m);
    }
    std::sort(out.begin(), out.end(), size_lex_less);
    return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string_view trim(std::string_view s)
{
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> tokens(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

int parse_positive(std::string_view tok, int line)
{
    int v = 0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc{} || ptr != end || v < 1) {
        throw ParseError(line, "expected a positive integer label, got '" + std::string(tok) + "'");
    }
    return v;
}

} // namespace

Complex parse_complex(std::string_view text)
{
    std::optional<int> declared;
    std::vector<Face> generators;
    bool saw_facet_line = false;
    int max_label = 0;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == 'V') {
            if (declared || saw_facet_line) {
                throw ParseError(line_no, "the 'V: n' header must come first and appear once");
            }
            auto rest = trim(line.substr(1));
            if (rest.empty() || rest.front() != ':') {
                throw ParseError(line_no, "malformed header, expected 'V: n'");
            }
            rest = trim(rest.substr(1));
            int n = -1;
            const auto* end = rest.data() + rest.size();
            auto [ptr, ec] = std::from_chars(rest.data(), end, n);
            if (ec != std::errc{} || ptr != end || n < 0 || n > kMaxVertices) {
                throw ParseError(line_no, "malformed header, expected 'V: n' with 0 <= n <= 64");
            }
            declared = n;
            continue;
        }
        saw_facet_line = true;
        const auto toks = tokens(line);
        if (toks.size() == 1 && toks.front() == "{}") {
            generators.push_back(Face{});
            continue;
        }
        Mask bits = 0;
        for (auto tok : toks) {
            const int v = parse_positive(tok, line_no);
            if (v > kMaxVertices) {
                throw ParseError(line_no, "vertex label " + std::to_string(v) + " exceeds 64");
            }
            if (declared && v > *declared) {
                throw ParseError(line_no, "vertex label " + std::to_string(v)
                                              + " outside declared ambient set {1.." + std::to_string(*declared) + "}");
            }
            const Mask bit = Mask{1} << (v - 1);
            if (bits & bit) {
                throw ParseError(line_no, "repeated vertex label " + std::to_string(v));
            }
            bits |= bit;
            max_label = std::max(max_label, v);
        }
        generators.emplace_back(bits);
    }

    if (!declared && !saw_facet_line) {
        throw ParseError(0, "empty document (use '{}' for the irrelevant complex)");
    }
    const int n = declared.value_or(max_label);
    if (generators.empty()) {
        return Complex::void_complex(n);
    }
    return Complex::generated_by(n, std::move(generators));
}

std::string format_complex(const Complex& c)
{
    std::ostringstream out;
    out << "V: " << c.ground_size() << '\n';
    for (Face f : c.facets()) {
        if (f.empty()) {
            out << "{}\n";
            continue;
        }
        const auto ls = f.labels();
        for (std::size_t i = 0; i < ls.size(); ++i) {
            out << (i ? " " : "") << ls[i];
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Combinatorics

std::vector<long long> h_vector_from_f(const std::vector<long long>& f, int d)
{
    std::vector<long long> h(static_cast<std::size_t>(d + 1), 0);
    for (int j = 0; j <= d; ++j) {
        long long s = 0;
        for (int i = 0; i <= j; ++i) {
            const long long fi = static_cast<std::size_t>(i) < f.size() ? f[static_cast<std::size_t>(i)] : 0;
            const long long term = binomial(d - i, j - i) * fi;
            s += ((j - i) % 2 == 0) ? term : -term;
        }
        h[static_cast<std::size_t>(j)] = s;
    }
    return h;
}

ComplexInfo complex_info(const Complex& c)
{
    ComplexInfo info;
    info.n = c.ground_size();
    info.facet_count = c.facets().size();
    info.pure = c.is_pure();
    info.vertex_cover = c.vertex_support() == Face::range(c.ground_size());
    if (c.is_void()) {
        info.d = 0;
        return info;
    }
    info.d = c.facet_size_max();
    info.dim = info.d - 1;
    info.f_vector.assign(static_cast<std::size_t>(info.d + 1), 0);
    for (Mask m : c.face_masks()) {
        ++info.f_vector[static_cast<std::size_t>(std::popcount(m))];
    }
    info.h_vector = h_vector_from_f(info.f_vector, info.d);
    return info;
}

namespace {

// Relabels faces contained in `ambient` onto {1..|ambient|} preserving order.
Relabeled relabel_onto(Face ambient, const std::vector<Face>& generators, bool is_void)
{
    Relabeled r;
    r.labels = ambient.labels();
    std::vector<int> new_label(kMaxVertices + 1, 0);
    for (std::size_t k = 0; k < r.labels.size(); ++k) {
        new_label[static_cast<std::size_t>(r.labels[k])] = static_cast<int>(k) + 1;
    }
    const int n = static_cast<int>(r.labels.size());
    if (is_void) {
        r.complex = Complex::void_complex(n);
        return r;
    }
    std::vector<Face> mapped;
    mapped.reserve(generators.size());
    for (Face g : generators) {
        Mask bits = 0;
        for (int v : g.labels()) {
            bits |= Mask{1} << (new_label[static_cast<std::size_t>(v)] - 1);
        }
        mapped.emplace_back(bits);
    }
    r.complex = Complex::generated_by(n, std::move(mapped));
    return r;
}

} // namespace

Relabeled link(const Complex& c, Face f)
{
    if (!c.contains(f)) {
        throw std::invalid_argument("link: " + f.to_string() + " is not a face");
    }
    std::vector<Face> gens;
    for (Face g : c.facets()) {
        if (f.subset_of(g)) {
            gens.push_back(g.minus(f));
        }
    }
    return relabel_onto(Face::range(c.ground_size()).minus(f), gens, false);
}

Relabeled restriction(const Complex& c, Face w)
{
    const Face ambient = Face::range(c.ground_size());
    if (!w.subset_of(ambient)) {
        throw std::invalid_argument("restriction: " + w.to_string() + " is not a subset of the ambient set");
    }
    std::vector<Face> gens;
    for (Face g : c.facets()) {
        gens.push_back(g & w);
    }
    return relabel_onto(w, gens, c.is_void());
}

std::vector<Face> minimal_nonfaces(const Complex& c)
{
    if (c.is_void()) {
        return {Face{}};
    }
    const std::vector<Mask> all = c.face_masks();
    const auto is_face = [&all](Mask m) { return std::binary_search(all.begin(), all.end(), m); };
    const int n = c.ground_size();

    std::vector<Face> out;
    std::vector<Mask> layer{0};
    while (!layer.empty()) {
        std::vector<Mask> next;
        for (Mask base : layer) {
            const int top = Face(base).max_label();
            for (int v = top + 1; v <= n; ++v) {
                const Mask s = base | (Mask{1} << (v - 1));
                bool faces_below = true;
                for (Mask b = base; b != 0 && faces_below; b &= b - 1) {
                    faces_below = is_face(s & ~(b & -b));
                }
                if (!faces_below) {
                    continue;
                }
                if (is_face(s)) {
                    next.push_back(s);
                } else {
                    out.emplace_back(s);
                }
            }
        }
        layer = std::move(next);
    }
    std::sort(out.begin(), out.end(), size_lex_less);
    return out;
}

Complex alexander_dual(const Complex& c)
{
    const Face ambient = Face::range(c.ground_size());
    std::vector<Face> gens;
    for (Face m : minimal_nonfaces(c)) {
        gens.push_back(ambient.minus(m));
    }
    if (gens.empty()) {
        return Complex::void_complex(c.ground_size());
    }
    return Complex::generated_by(c.ground_size(), std::move(gens));
}

Complex cone(const Complex& c, int label)
{
    if (label <= c.ground_size()) {
        throw std::invalid_argument("cone: apex label " + std::to_string(label) + " collides with the ambient set");
    }
    if (label > kMaxVertices) {
        throw std::invalid_argument("cone: apex label exceeds 64");
    }
    std::vector<Face> gens;
    for (Face f : c.facets()) {
        gens.push_back(f | Face::singleton(label));
    }
    if (gens.empty()) {
        return Complex::void_complex(label);
    }
    return Complex::generated_by(label, std::move(gens));
}

namespace {

void collect_chains(Mask face, std::vector<int>& chain, const std::unordered_map<Mask, int>& index,
                    std::vector<Face>& out)
{
    chain.push_back(index.at(face));
    if (std::popcount(face) == 1) {
        out.push_back(Face::from_labels(chain));
    } else {
        for (Mask b = face; b != 0; b &= b - 1) {
            collect_chains(face & ~(b & -b), chain, index, out);
        }
    }
    chain.pop_back();
}

} // namespace

Subdivision barycentric_subdivision(const Complex& c)
{
    if (c.kind() != ComplexKind::Proper) {
        throw std::invalid_argument("barycentric subdivision needs a complex with at least one vertex");
    }
    Subdivision sd;
    for (Face f : c.faces()) {
        if (!f.empty()) {
            sd.vertex_faces.push_back(f);
        }
    }
    if (sd.vertex_faces.size() > static_cast<std::size_t>(kMaxVertices)) {
        throw std::invalid_argument("barycentric subdivision would need "
                                    + std::to_string(sd.vertex_faces.size()) + " vertices (limit 64)");
    }
    std::unordered_map<Mask, int> index;
    for (std::size_t k = 0; k < sd.vertex_faces.size(); ++k) {
        index.emplace(sd.vertex_faces[k].bits(), static_cast<int>(k) + 1);
    }
    std::vector<Face> chains;
    std::vector<int> chain;
    for (Face f : c.facets()) {
        collect_chains(f.bits(), chain, index, chains);
    }
    sd.complex = Complex::generated_by(static_cast<int>(sd.vertex_faces.size()), std::move(chains));
    return sd;
}

} // namespace srlab
