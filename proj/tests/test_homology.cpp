#include <doctest.h>

#include <random>

#include "srlab/complex.hpp"
#include "srlab/errors.hpp"
#include "srlab/fixtures.hpp"
#include "srlab/homology.hpp"
#include "test_util.hpp"

using namespace srlab;
using srlab::test::random_complex;

namespace {

// Six-vertex real projective plane.
const char* kRP2 = "1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n2 4 5\n2 4 6\n3 4 6\n3 5 6\n";

long long bareiss_det(std::vector<std::vector<long long>> m)
{
    const std::size_t n = m.size();
    long long sign = 1;
    long long prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) {
                ++swap;
            }
            if (swap == n) {
                return 0;
            }
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Largest k with a k x k minor that is nonzero in the field.
std::size_t minor_rank(const std::vector<std::vector<long long>>& a, const Field& k)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::size_t best = 0;
    for (Mask rs = 1; rs < (Mask{1} << rows); ++rs) {
        for (Mask cs = 1; cs < (Mask{1} << cols); ++cs) {
            const int size = std::popcount(rs);
            if (size != std::popcount(cs) || static_cast<std::size_t>(size) <= best) {
                continue;
            }
            std::vector<std::vector<long long>> sub;
            for (std::size_t i = 0; i < rows; ++i) {
                if ((rs >> i) & 1U) {
                    sub.emplace_back();
                    for (std::size_t j = 0; j < cols; ++j) {
                        if ((cs >> j) & 1U) {
                            sub.back().push_back(a[i][j]);
                        }
                    }
                }
            }
            const long long det = bareiss_det(sub);
            const bool nonzero = k.is_rational() ? det != 0 : det % static_cast<long long>(k.characteristic()) != 0;
            if (nonzero) {
                best = static_cast<std::size_t>(size);
            }
        }
    }
    return best;
}

} // namespace

TEST_CASE("field parsing and names")
{
    CHECK(Field().name() == "GF(2)");
    CHECK(Field::parse("3").name() == "GF(3)");
    CHECK(Field::parse("q").is_rational());
    CHECK(Field::parse("Q").name() == "Q");
    CHECK(Field::prime(5).characteristic() == 5);
    CHECK_THROWS_AS(Field::parse("4"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Field::prime(1), std::invalid_argument);
}

TEST_CASE("reduced homology examples")
{
    const HomologyVector c4 = reduced_homology(fixture_complex("C4"), Field::prime(2));
    CHECK(c4[0] == 0);
    CHECK(c4[1] == 1);
    CHECK(c4[-1] == 0);

    for (const Field& k : {Field::prime(2), Field::prime(3), Field::rationals()}) {
        const HomologyVector two = reduced_homology(fixture_complex("2E"), k);
        CHECK(two[0] == 1);
        CHECK(two[-1] == 0);
        CHECK(two[1] == 0);
    }

    const HomologyVector irr = reduced_homology(Complex::irrelevant(3));
    CHECK(irr[-1] == 1);
    CHECK(irr.top() == -1);

    const Complex sphere = parse_complex("1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    const HomologyVector s2 = reduced_homology(sphere, Field::rationals());
    CHECK(s2.raw() == std::vector<long long>{0, 0, 0, 1});

    const HomologyVector v = reduced_homology(Complex::void_complex(3));
    CHECK(v.all_zero());
    CHECK(v.top() == -2);
}

TEST_CASE("projective plane depends on the characteristic")
{
    const Complex rp2 = parse_complex(kRP2);
    const HomologyVector gf2 = reduced_homology(rp2, Field::prime(2));
    CHECK(gf2[0] == 0);
    CHECK(gf2[1] == 1);
    CHECK(gf2[2] == 1);
    CHECK(reduced_homology(rp2, Field::rationals()).all_zero());
    CHECK(reduced_homology(rp2, Field::prime(3)).all_zero());
}

TEST_CASE("Euler characteristic identity over several fields")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const Complex c = random_complex(rng, static_cast<int>(rng() % 8));
        const ComplexInfo info = complex_info(c);
        long long euler_f = 0;
        for (std::size_t s = 0; s < info.f_vector.size(); ++s) {
            euler_f += (s % 2 == 1 ? 1 : -1) * info.f_vector[s];
        }
        for (const Field& k : {Field::prime(2), Field::prime(5), Field::rationals()}) {
            const HomologyVector h = reduced_homology(c, k);
            long long euler_h = 0;
            for (int i = -1; i <= h.top(); ++i) {
                euler_h += (i % 2 == 0 ? 1 : -1) * h[i];
                CHECK(h[i] >= 0);
            }
            CHECK(euler_h == euler_f);
            CHECK((h[-1] == 1) == (c.kind() == ComplexKind::Irrelevant));
        }
    }
}

TEST_CASE("rational Betti numbers never exceed modular ones")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 300; ++trial) {
        const Complex c = random_complex(rng, static_cast<int>(rng() % 7));
        const HomologyVector q = reduced_homology(c, Field::rationals());
        for (std::uint32_t p : {2U, 3U, 5U}) {
            const HomologyVector hp = reduced_homology(c, Field::prime(p));
            for (int i = -1; i <= q.top(); ++i) {
                CHECK(q[i] <= hp[i]);
            }
        }
    }
    const Complex rp2 = parse_complex(kRP2);
    CHECK(reduced_homology(rp2, Field::rationals())[1] < reduced_homology(rp2, Field::prime(2))[1]);
}

TEST_CASE("cones are acyclic")
{
    for (const char* name : {"C4", "2E", "MT6", "DUALC5", "R6", "D6", "SIMPLEX_3"}) {
        CAPTURE(name);
        const Complex c = fixture_complex(name);
        const Complex apex = cone(c, c.ground_size() + 1);
        for (const Field& k : {Field::prime(2), Field::rationals()}) {
            CHECK(reduced_homology(apex, k).all_zero());
        }
    }
}

TEST_CASE("boundary maps compose to zero")
{
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        const Complex c = random_complex(rng, 1 + static_cast<int>(rng() % 6));
        for (int i = 0; i <= c.dim(); ++i) {
            const BoundaryMatrix upper = boundary_matrix(c, i + 1);
            const BoundaryMatrix lower = boundary_matrix(c, i);
            REQUIRE(upper.col_faces == lower.row_faces);
            for (std::size_t r = 0; r < upper.row_faces.size(); ++r) {
                for (std::size_t col = 0; col < lower.col_faces.size(); ++col) {
                    long long s = 0;
                    for (std::size_t mid = 0; mid < lower.row_faces.size(); ++mid) {
                        s += upper.entries[r][mid] * lower.entries[mid][col];
                    }
                    CHECK(s == 0);
                }
            }
        }
    }
}

TEST_CASE("boundary matrix layout")
{
    const BoundaryMatrix m = boundary_matrix(Complex::simplex(2), 1);
    REQUIRE(m.row_faces.size() == 1);
    CHECK(m.col_faces == std::vector<Face>{Face::singleton(1), Face::singleton(2)});
    CHECK(m.entries[0][0] == -m.entries[0][1]);
    const BoundaryMatrix aug = boundary_matrix(Complex::simplex(2), 0);
    CHECK(aug.col_faces == std::vector<Face>{Face()});
}

TEST_CASE("matrix rank against a minor-based oracle")
{
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rows = 1 + rng() % 5;
        const std::size_t cols = 1 + rng() % 5;
        std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols));
        for (auto& row : a) {
            for (auto& x : row) {
                x = static_cast<long long>(rng() % 7) - 3;
            }
        }
        for (const Field& k : {Field::prime(2), Field::prime(3), Field::prime(5), Field::rationals()}) {
            CHECK(matrix_rank(a, k) == minor_rank(a, k));
        }
    }
}

TEST_CASE("hot path agrees with the checked path")
{
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 300; ++trial) {
        const Complex c = random_complex(rng, static_cast<int>(rng() % 9));
        const auto faces = c.face_masks();
        for (const Field& k : {Field::prime(2), Field::prime(3), Field::rationals()}) {
            CHECK(detail::homology_of_faces(faces, k, false) == detail::homology_of_faces(faces, k, true));
        }
    }
}
