#include "srlab/homology.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include <gmpxx.h>

#include "srlab/errors.hpp"

namespace srlab {

// ---------------------------------------------------------------------------
// Field

namespace {

bool is_prime(std::uint32_t p)
{
    if (p < 2) {
        return false;
    }
    for (std::uint64_t q = 2; q * q <= p; ++q) {
        if (p % q == 0) {
            return false;
        }
    }
    return true;
}

} // namespace

Field Field::prime(std::uint32_t p)
{
    if (!is_prime(p) || p >= (1U << 31)) {
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
    }
    Field f;
    f.p_ = p;
    return f;
}

Field Field::rationals()
{
    Field f;
    f.p_ = 0;
    return f;
}

Field Field::parse(std::string_view spec)
{
    if (spec == "q" || spec == "Q") {
        return rationals();
    }
    std::uint32_t p = 0;
    const auto* end = spec.data() + spec.size();
    auto [ptr, ec] = std::from_chars(spec.data(), end, p);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("field must be a prime or 'q', got '" + std::string(spec) + "'");
    }
    return prime(p);
}

std::string Field::name() const { return is_rational() ? "Q" : "GF(" + std::to_string(p_) + ")"; }

bool HomologyVector::all_zero() const
{
    return std::all_of(dims_.begin(), dims_.end(), [](long long x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Rank kernels

namespace {

// Rows packed as `words` 64-bit words each.
std::size_t rank_gf2(std::vector<std::uint64_t>& data, std::size_t rows, std::size_t words)
{
    std::vector<std::size_t> pivot_of_col(words * 64, static_cast<std::size_t>(-1));
    std::size_t rank = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        std::uint64_t* row = data.data() + r * words;
        while (true) {
            std::size_t w = 0;
            while (w < words && row[w] == 0) {
                ++w;
            }
            if (w == words) {
                break;
            }
            const std::size_t col = w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
            const std::size_t p = pivot_of_col[col];
            if (p == static_cast<std::size_t>(-1)) {
                pivot_of_col[col] = r;
                ++rank;
                break;
            }
            const std::uint64_t* prow = data.data() + p * words;
            for (std::size_t k = w; k < words; ++k) {
                row[k] ^= prow[k];
            }
        }
    }
    return rank;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p)
{
    std::uint64_t result = 1;
    std::uint64_t e = p - 2;
    while (e) {
        if (e & 1) {
            result = result * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    return result;
}

// Entries already reduced into [0, p).
std::size_t rank_gfp(std::vector<std::uint64_t>& data, std::size_t rows, std::size_t cols, std::uint64_t p)
{
    std::vector<std::size_t> pivot_of_col(cols, static_cast<std::size_t>(-1));
    std::size_t rank = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        std::uint64_t* row = data.data() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            if (row[c] == 0) {
                continue;
            }
            const std::size_t piv = pivot_of_col[c];
            if (piv == static_cast<std::size_t>(-1)) {
                const std::uint64_t inv = inverse_mod(row[c], p);
                for (std::size_t k = c; k < cols; ++k) {
                    row[k] = row[k] * inv % p;
                }
                pivot_of_col[c] = r;
                ++rank;
                break;
            }
            const std::uint64_t* prow = data.data() + piv * cols;
            const std::uint64_t factor = row[c];
            for (std::size_t k = c; k < cols; ++k) {
                row[k] = (row[k] + (p - factor) * prow[k]) % p;
            }
        }
    }
    return rank;
}

// Gaussian elimination over Q, pivoting on the entry with the smallest |num * den|.
std::size_t rank_q(std::vector<mpq_class>& data, std::size_t rows, std::size_t cols)
{
    const auto at = [&](std::size_t r, std::size_t c) -> mpq_class& { return data[r * cols + c]; };
    std::size_t rank = 0;
    mpz_class best_cost;
    mpz_class cost;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t best = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            const mpq_class& v = at(r, c);
            if (sgn(v) == 0) {
                continue;
            }
            cost = abs(v.get_num()) * v.get_den();
            if (best == rows || cost < best_cost) {
                best = r;
                best_cost = cost;
            }
        }
        if (best == rows) {
            continue;
        }
        if (best != rank) {
            for (std::size_t k = 0; k < cols; ++k) {
                std::swap(at(best, k), at(rank, k));
            }
        }
        const mpq_class pivot = at(rank, c);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (sgn(at(r, c)) == 0) {
                continue;
            }
            const mpq_class factor = at(r, c) / pivot;
            for (std::size_t k = c; k < cols; ++k) {
                at(r, k) -= factor * at(rank, k);
            }
        }
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Chain complex of a downward-closed face family

struct FaceIndex {
    // Direct table when masks fit in 16 bits, otherwise sorted per-size lists.
    bool direct = false;
    std::vector<std::int32_t>* table = nullptr;
    const std::vector<std::vector<Mask>>* by_size = nullptr;

    std::int32_t operator()(Mask m) const
    {
        if (direct) {
            return (*table)[m];
        }
        const auto& bucket = (*by_size)[static_cast<std::size_t>(std::popcount(m))];
        const auto it = std::lower_bound(bucket.begin(), bucket.end(), m);
        return static_cast<std::int32_t>(it - bucket.begin());
    }
};

inline int boundary_sign(Mask face, Mask bit) { return (std::popcount(face & (bit - 1)) & 1) ? -1 : 1; }

// H~_0 and H~_1 of a complex with faces of size <= 2, via union-find.
HomologyVector small_homology(std::span<const Mask> faces, int top_size)
{
    if (top_size == 0) {
        return HomologyVector({1});
    }
    std::vector<int> parent(kMaxVertices);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&parent](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    long long vertices = 0;
    long long edges = 0;
    long long components = 0;
    for (Mask m : faces) {
        if (std::popcount(m) == 1) {
            ++vertices;
            ++components;
        }
    }
    for (Mask m : faces) {
        if (std::popcount(m) == 2) {
            ++edges;
            const int a = find(std::countr_zero(m));
            const int b = find(63 - std::countl_zero(m));
            if (a != b) {
                parent[static_cast<std::size_t>(a)] = b;
                --components;
            }
        }
    }
    if (top_size == 1) {
        return HomologyVector({0, components - 1});
    }
    return HomologyVector({0, components - 1, edges - vertices + components});
}

void verify_composition(const std::vector<std::vector<Mask>>& by_size, int top_size, const FaceIndex& index)
{
    // For each face, the boundary of its boundary, accumulated with signs.
    std::vector<std::pair<std::int32_t, int>> acc;
    for (int k = 2; k <= top_size; ++k) {
        for (Mask m : by_size[static_cast<std::size_t>(k)]) {
            acc.clear();
            for (Mask b = m; b != 0; b &= b - 1) {
                const Mask bit = b & -b;
                const Mask sub = m & ~bit;
                const int s1 = boundary_sign(m, bit);
                for (Mask c = sub; c != 0; c &= c - 1) {
                    const Mask bit2 = c & -c;
                    const Mask subsub = sub & ~bit2;
                    const std::int32_t col = index(subsub);
                    const int s = s1 * boundary_sign(sub, bit2);
                    auto it = std::find_if(acc.begin(), acc.end(), [col](const auto& e) { return e.first == col; });
                    if (it == acc.end()) {
                        acc.emplace_back(col, s);
                    } else {
                        it->second += s;
                    }
                }
            }
            for (const auto& [col, value] : acc) {
                if (value != 0) {
                    throw InvariantError("boundary of boundary is nonzero on face " + Face(m).to_string());
                }
            }
        }
    }
}

} // namespace

std::size_t matrix_rank(const std::vector<std::vector<long long>>& rows, const Field& k)
{
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    for (const auto& row : rows) {
        if (row.size() != c) {
            throw std::invalid_argument("matrix_rank: ragged rows");
        }
    }
    if (r == 0 || c == 0) {
        return 0;
    }
    if (k.is_rational()) {
        std::vector<mpq_class> data;
        data.reserve(r * c);
        for (const auto& row : rows) {
            for (long long v : row) {
                data.emplace_back(static_cast<long>(v));
            }
        }
        return rank_q(data, r, c);
    }
    const std::uint64_t p = k.characteristic();
    const auto reduce = [p](long long v) {
        const long long m = v % static_cast<long long>(p);
        return static_cast<std::uint64_t>(m < 0 ? m + static_cast<long long>(p) : m);
    };
    if (p == 2) {
        const std::size_t words = (c + 63) / 64;
        std::vector<std::uint64_t> data(r * words, 0);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                if (reduce(rows[i][j])) {
                    data[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
                }
            }
        }
        return rank_gf2(data, r, words);
    }
    std::vector<std::uint64_t> data(r * c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            data[i * c + j] = reduce(rows[i][j]);
        }
    }
    return rank_gfp(data, r, c, p);
}

namespace detail {

HomologyVector homology_of_faces(std::span<const Mask> faces, const Field& k, bool verify)
{
    if (faces.empty()) {
        return {};
    }
    Mask support = 0;
    int top_size = 0;
    for (Mask m : faces) {
        support |= m;
        top_size = std::max(top_size, std::popcount(m));
    }
    if (top_size <= 2 && !verify) {
        return small_homology(faces, top_size);
    }

    // Compress the vertex support onto low bits when that makes a direct index table possible.
    thread_local std::vector<Mask> compressed;
    std::span<const Mask> work = faces;
    const int width = Face(support).max_label();
    if (width > 16 && std::popcount(support) <= 16) {
        int pos[64];
        int next = 0;
        for (int v = 0; v < 64; ++v) {
            pos[v] = (support >> v) & 1 ? next++ : -1;
        }
        compressed.clear();
        for (Mask m : faces) {
            Mask c = 0;
            for (Mask b = m; b != 0; b &= b - 1) {
                c |= Mask{1} << pos[std::countr_zero(b)];
            }
            compressed.push_back(c);
        }
        std::sort(compressed.begin(), compressed.end());
        work = compressed;
    }

    thread_local std::vector<std::vector<Mask>> by_size;
    if (by_size.size() < static_cast<std::size_t>(top_size + 1)) {
        by_size.resize(static_cast<std::size_t>(top_size + 1));
    }
    for (int s = 0; s <= top_size; ++s) {
        by_size[static_cast<std::size_t>(s)].clear();
    }
    for (Mask m : work) {
        by_size[static_cast<std::size_t>(std::popcount(m))].push_back(m);
    }

    thread_local std::vector<std::int32_t> table;
    FaceIndex index;
    index.by_size = &by_size;
    Mask work_support = 0;
    for (Mask m : work) {
        work_support |= m;
    }
    if (Face(work_support).max_label() <= 16) {
        const std::size_t need = std::size_t{1} << Face(work_support).max_label();
        if (table.size() < need) {
            table.resize(need);
        }
        for (int s = 0; s <= top_size; ++s) {
            const auto& bucket = by_size[static_cast<std::size_t>(s)];
            for (std::size_t i = 0; i < bucket.size(); ++i) {
                table[bucket[i]] = static_cast<std::int32_t>(i);
            }
        }
        index.direct = true;
        index.table = &table;
    }

    if (verify) {
        verify_composition(by_size, top_size, index);
    }

    // rank[s] = rank of the boundary from size-s faces to size-(s-1) faces.
    std::vector<long long> rank(static_cast<std::size_t>(top_size + 2), 0);
    thread_local std::vector<std::uint64_t> bits;
    thread_local std::vector<std::uint64_t> dense;
    for (int s = 1; s <= top_size; ++s) {
        const auto& rows = by_size[static_cast<std::size_t>(s)];
        const std::size_t cols = by_size[static_cast<std::size_t>(s - 1)].size();
        if (rows.empty() || cols == 0) {
            continue;
        }
        if (k.is_rational()) {
            std::vector<mpq_class> data(rows.size() * cols);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                for (Mask b = rows[r]; b != 0; b &= b - 1) {
                    const Mask bit = b & -b;
                    data[r * cols + static_cast<std::size_t>(index(rows[r] & ~bit))] = boundary_sign(rows[r], bit);
                }
            }
            rank[static_cast<std::size_t>(s)] = static_cast<long long>(rank_q(data, rows.size(), cols));
        } else if (k.characteristic() == 2) {
            const std::size_t words = (cols + 63) / 64;
            bits.assign(rows.size() * words, 0);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                for (Mask b = rows[r]; b != 0; b &= b - 1) {
                    const auto col = static_cast<std::size_t>(index(rows[r] & ~(b & -b)));
                    bits[r * words + col / 64] |= std::uint64_t{1} << (col % 64);
                }
            }
            rank[static_cast<std::size_t>(s)] = static_cast<long long>(rank_gf2(bits, rows.size(), words));
        } else {
            const std::uint64_t p = k.characteristic();
            dense.assign(rows.size() * cols, 0);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                for (Mask b = rows[r]; b != 0; b &= b - 1) {
                    const Mask bit = b & -b;
                    const auto col = static_cast<std::size_t>(index(rows[r] & ~bit));
                    dense[r * cols + col] = boundary_sign(rows[r], bit) > 0 ? 1 : p - 1;
                }
            }
            rank[static_cast<std::size_t>(s)] = static_cast<long long>(rank_gfp(dense, rows.size(), cols, p));
        }
    }

    std::vector<long long> dims(static_cast<std::size_t>(top_size + 1), 0);
    for (int s = 0; s <= top_size; ++s) {
        const auto f = static_cast<long long>(by_size[static_cast<std::size_t>(s)].size());
        dims[static_cast<std::size_t>(s)] = f - rank[static_cast<std::size_t>(s)] - rank[static_cast<std::size_t>(s + 1)];
    }
    return HomologyVector(std::move(dims));
}

} // namespace detail

HomologyVector reduced_homology(const Complex& c, const Field& k)
{
    const auto faces = c.face_masks();
    return detail::homology_of_faces(faces, k, true);
}

BoundaryMatrix boundary_matrix(const Complex& c, int i)
{
    BoundaryMatrix bm;
    for (Face f : c.faces()) {
        if (f.size() == i + 1) {
            bm.row_faces.push_back(f);
        } else if (f.size() == i) {
            bm.col_faces.push_back(f);
        }
    }
    bm.entries.assign(bm.row_faces.size(), std::vector<int>(bm.col_faces.size(), 0));
    for (std::size_t r = 0; r < bm.row_faces.size(); ++r) {
        const Mask m = bm.row_faces[r].bits();
        for (Mask b = m; b != 0; b &= b - 1) {
            const Mask bit = b & -b;
            const Face sub(m & ~bit);
            const auto it = std::find(bm.col_faces.begin(), bm.col_faces.end(), sub);
            bm.entries[r][static_cast<std::size_t>(it - bm.col_faces.begin())] = boundary_sign(m, bit);
        }
    }
    return bm;
}

} // namespace srlab
