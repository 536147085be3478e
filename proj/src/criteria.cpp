#include "srlab/criteria.hpp"

#include <algorithm>
#include <stdexcept>

#include "srlab/betti.hpp"

namespace srlab {

// ---------------------------------------------------------------------------
// ExtDimProfile

bool ExtDimProfile::serre_holds(int r) const
{
    for (int i = 1; i < d; ++i) {
        const int v = (*this)[i];
        if (v != kMinusInfinity && v > i - r) {
            return false;
        }
    }
    return true;
}

bool ExtDimProfile::singularity_dim_lt(int m) const
{
    for (int i = 1; i < d; ++i) {
        const int v = (*this)[i];
        if (v != kMinusInfinity && v > m) {
            return false;
        }
    }
    return true;
}

bool ExtDimProfile::cm_t_holds(bool pure, int t) const
{
    if (!pure) {
        return false;
    }
    for (int i = 1; i < d; ++i) {
        const int v = (*this)[i];
        if (v != kMinusInfinity && v >= t) {
            return false;
        }
    }
    return true;
}

bool ExtDimProfile::purity_holds() const
{
    for (int i = 1; i < d; ++i) {
        const int v = (*this)[i];
        if (v != kMinusInfinity && v >= i) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// LinkProfile

std::optional<int> LinkProfile::Record::lowest_bad() const
{
    if (nonzero == 0) {
        return std::nullopt;
    }
    const int lowest = std::countr_zero(nonzero) - 1;
    if (lowest < link_dim) {
        return lowest;
    }
    return std::nullopt;
}

LinkProfile::LinkProfile(const Complex& c, const Field& k) : LinkProfile(c, k, 0) {}

LinkProfile::LinkProfile(const Complex& c, const Field& k, int min_face_size)
    : complex_(c), field_(k), pure_(c.is_pure()), d_(c.facet_size_max()), min_face_size_(std::max(0, min_face_size))
{
    const std::vector<Mask> faces = c.face_masks();
    std::vector<Mask> link_faces;
    link_faces.reserve(faces.size());
    for (Mask f : faces) {
        if (std::popcount(f) < min_face_size_) {
            continue;
        }
        link_faces.clear();
        int top = 0;
        for (Mask h : faces) {
            if ((h & f) == f) {
                link_faces.push_back(h & ~f);
                top = std::max(top, std::popcount(h & ~f));
            }
        }
        const HomologyVector hv = detail::homology_of_faces(link_faces, k);
        Record rec;
        rec.face = Face(f);
        rec.link_dim = top - 1;
        for (int i = -1; i <= hv.top(); ++i) {
            if (hv[i] != 0) {
                rec.nonzero |= std::uint64_t{1} << (i + 1);
            }
        }
        records_.push_back(rec);
    }
}

void LinkProfile::require(int face_size) const
{
    if (face_size < min_face_size_) {
        throw std::logic_error("link profile was built without faces of size " + std::to_string(face_size));
    }
}

bool LinkProfile::reisner_cm() const { return !cm_t_witness(0); }

bool LinkProfile::cm_t(int t) const
{
    if (!pure_) {
        return false;
    }
    return !cm_t_witness(t);
}

std::optional<LinkProfile::Record> LinkProfile::cm_t_witness(int t) const
{
    require(std::max(t, 0));
    for (const Record& r : records_) {
        if (r.face.size() >= t && r.lowest_bad()) {
            return r;
        }
    }
    return std::nullopt;
}

std::optional<int> LinkProfile::min_cm_t() const
{
    if (!pure_) {
        return std::nullopt;
    }
    require(0);
    int t = 0;
    for (const Record& r : records_) {
        if (r.lowest_bad()) {
            t = std::max(t, r.face.size() + 1);
        }
    }
    return t;
}

std::optional<LinkProfile::Record> LinkProfile::serre_witness(int r) const
{
    if (r <= 1) {
        return std::nullopt;
    }
    require(0);
    for (const Record& rec : records_) {
        const int bound = std::min(r - 1, rec.link_dim);
        for (int i = -1; i < bound; ++i) {
            if ((rec.nonzero >> (i + 1)) & 1U) {
                return rec;
            }
        }
    }
    return std::nullopt;
}

bool LinkProfile::satisfies_serre(int r) const { return !serre_witness(r); }

int LinkProfile::max_serre() const
{
    require(0);
    int best = std::max(d_, 1);
    for (const Record& rec : records_) {
        if (const auto low = rec.lowest_bad()) {
            best = std::min(best, *low + 1);
        }
    }
    return best;
}

bool LinkProfile::singularity_dimension_lt(int m) const
{
    require(std::max(m + 1, 0));
    return std::none_of(records_.begin(), records_.end(),
                        [m](const Record& r) { return r.face.size() - 1 >= m && r.lowest_bad(); });
}

int LinkProfile::min_singularity_bound() const
{
    require(0);
    int m = -1;
    for (const Record& r : records_) {
        if (r.lowest_bad()) {
            m = std::max(m, r.face.size());
        }
    }
    return m;
}

ExtDimProfile LinkProfile::ext_dim_profile() const
{
    if (complex_.kind() != ComplexKind::Proper) {
        throw std::invalid_argument("Ext-dimension profile needs a complex with at least one vertex");
    }
    require(0);
    ExtDimProfile p;
    p.d = d_;
    p.dimext.assign(static_cast<std::size_t>(d_), ExtDimProfile::kMinusInfinity);
    for (const Record& r : records_) {
        for (std::uint64_t bits = r.nonzero; bits != 0; bits &= bits - 1) {
            const int j = std::countr_zero(bits) - 1;
            const int i = j + r.face.size() + 1;
            if (i >= 1 && i <= d_) {
                int& slot = p.dimext[static_cast<std::size_t>(i - 1)];
                slot = std::max(slot, r.face.size());
            }
        }
    }
    return p;
}

int LinkProfile::local_cohomology_depth() const
{
    if (complex_.is_void()) {
        throw std::invalid_argument("the void complex has no Stanley-Reisner ring");
    }
    require(0);
    int depth = INT_MAX;
    for (const Record& r : records_) {
        if (r.nonzero != 0) {
            depth = std::min(depth, r.face.size() + std::countr_zero(r.nonzero));
        }
    }
    return depth;
}

// ---------------------------------------------------------------------------
// Free functions

bool reisner_cm(const Complex& c, const Field& k) { return LinkProfile(c, k).reisner_cm(); }

bool cm_t(const Complex& c, int t, const Field& k)
{
    if (!c.is_pure()) {
        return false;
    }
    return LinkProfile(c, k, t).cm_t(t);
}

std::optional<int> min_cm_t(const Complex& c, const Field& k)
{
    if (!c.is_pure()) {
        return std::nullopt;
    }
    return LinkProfile(c, k).min_cm_t();
}

bool satisfies_serre(const Complex& c, int r, const Field& k)
{
    if (r <= 1) {
        return true;
    }
    return LinkProfile(c, k).satisfies_serre(r);
}

int max_serre(const Complex& c, const Field& k) { return LinkProfile(c, k).max_serre(); }

bool singularity_dimension_lt(const Complex& c, int m, const Field& k)
{
    return LinkProfile(c, k, m + 1).singularity_dimension_lt(m);
}

bool is_buchsbaum(const Complex& c, const Field& k) { return cm_t(c, 1, k); }

ExtDimProfile ext_dim_profile(const Complex& c, const Field& k) { return LinkProfile(c, k).ext_dim_profile(); }

PropertyReport property_report(const Complex& c, const Field& k)
{
    const LinkProfile lp(c, k);
    PropertyReport r;
    r.field = k;
    r.pure = lp.pure();
    r.cm = lp.reisner_cm();
    r.min_cm_t = lp.min_cm_t();
    r.buchsbaum = lp.cm_t(1);
    r.max_serre = lp.max_serre();
    r.sing_dim_lt = lp.min_singularity_bound();
    if (!c.is_void()) {
        if (c.ground_size() <= kDefaultHochsterBound) {
            r.depth = homological_invariants(hochster_betti(c, k, BettiSubject::Ring)).depth;
        } else {
            r.depth = lp.local_cohomology_depth();
        }
    }
    return r;
}

nlohmann::json to_json(const PropertyReport& r)
{
    nlohmann::json j = {{"schema", "sr-lab/1"},
                        {"field", r.field.name()},
                        {"pure", r.pure},
                        {"cm", r.cm},
                        {"buchsbaum", r.buchsbaum},
                        {"max_serre", r.max_serre},
                        {"sing_dim_lt", r.sing_dim_lt}};
    j["min_cm_t"] = r.min_cm_t ? nlohmann::json(*r.min_cm_t) : nlohmann::json("none");
    j["depth"] = r.depth ? nlohmann::json(*r.depth) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const ExtDimProfile& p)
{
    nlohmann::json values = nlohmann::json::object();
    for (int i = 1; i <= p.d; ++i) {
        const int v = p[i];
        values[std::to_string(i)] = v == ExtDimProfile::kMinusInfinity ? nlohmann::json("-inf") : nlohmann::json(v);
    }
    return {{"schema", "sr-lab/1"}, {"d", p.d}, {"dimext", values}};
}

} // namespace srlab
