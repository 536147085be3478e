#include "srlab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "srlab/betti.hpp"
#include "srlab/complex.hpp"
#include "srlab/criteria.hpp"
#include "srlab/errors.hpp"
#include "srlab/fixtures.hpp"
#include "srlab/graph.hpp"
#include "srlab/harness.hpp"
#include "srlab/homology.hpp"

namespace srlab::cli {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "sr-lab/1";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Payload {
    std::ostringstream out;
    int code = kSuccess;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

json facets_json(const Complex& c)
{
    json facets = json::array();
    for (Face f : c.facets()) {
        facets.push_back(f.labels());
    }
    return {{"n", c.ground_size()}, {"facets", facets}};
}

Face parse_face(const std::string& text)
{
    std::istringstream in(text);
    std::vector<int> labels;
    std::string tok;
    while (in >> tok) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](char ch) { return ch == '{' || ch == '}' || ch == ','; }),
                  tok.end());
        if (tok.empty()) {
            continue;
        }
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) {
                throw std::invalid_argument(tok);
            }
            labels.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad vertex label '" + tok + "' in --face");
        }
    }
    for (int v : labels) {
        if (v < 1 || v > kMaxVertices) {
            throw UsageError("vertex label " + std::to_string(v) + " in --face out of range");
        }
    }
    return Face::from_labels(labels);
}

std::string describe_record(const LinkProfile::Record& r)
{
    const int low = r.lowest_bad().value_or(-2);
    return "link of " + r.face.to_string() + " has dimension " + std::to_string(r.link_dim) + " but H~_"
           + std::to_string(low) + " != 0";
}

// A predicate answer: the value, plus a reason line when it is false.
struct Answer {
    std::string label;
    bool value = false;
    std::string reason;
};

std::optional<std::string> ndp_failure(const BettiTable& t, int degree, int steps)
{
    for (const auto& [key, v] : t.entries()) {
        const auto [i, j] = key;
        if (i == 0 && j != degree) {
            return "beta_{0," + std::to_string(j) + "} = " + std::to_string(v) + " (generator of degree "
                   + std::to_string(j) + ")";
        }
        if (i >= 1 && i <= steps - 1 && j != i + degree) {
            return "beta_{" + std::to_string(i) + "," + std::to_string(j) + "} = " + std::to_string(v)
                   + " is off the linear strand";
        }
    }
    return std::nullopt;
}

Answer cm_t_answer(const LinkProfile& lp, int t, std::string label)
{
    Answer a{std::move(label), lp.cm_t(t), {}};
    if (!a.value) {
        if (!lp.pure()) {
            a.reason = "the complex is not pure";
        } else if (const auto w = lp.cm_t_witness(t)) {
            a.reason = describe_record(*w);
        }
    }
    return a;
}

void emit_answer(Payload& p, const Answer& a, bool as_json, const std::string& key)
{
    if (as_json) {
        json j = {{"schema", kSchema}, {"predicate", key}, {"value", a.value}};
        if (!a.value) {
            j["reason"] = a.reason;
        }
        p.out << j.dump() << '\n';
    } else {
        p.out << a.label << ": " << yes_no(a.value) << '\n';
        if (!a.value && !a.reason.empty()) {
            p.out << "reason: " << a.reason << '\n';
        }
    }
    if (!a.value) {
        p.code = kPredicateFalse;
    }
}

struct Options {
    bool json = false;
    std::string field = "2";

    std::string file;
    std::string face;
    bool ideal = false;
    bool ring = false;

    bool cm = false;
    std::optional<int> cmt;
    std::optional<int> serre;
    bool buchsbaum = false;
    std::vector<int> ndp;
    std::optional<int> sing_dim;
    bool report = false;

    std::optional<int> max_len;
    std::optional<int> r;

    std::string theorem;
    std::optional<int> n;
    std::optional<std::size_t> sample;
    std::uint64_t seed = 0;
    bool first = false;
    bool timing = false;
    unsigned threads = 0;

    std::string fixture;
};

Field field_of(const Options& o)
{
    try {
        return Field::parse(o.field);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--field: ") + e.what());
    }
}

Complex load_complex(const Options& o) { return parse_complex(read_file(o.file)); }

void cmd_info(const Options& o, Payload& p)
{
    const ComplexInfo info = complex_info(load_complex(o));
    if (o.json) {
        json j = {{"schema", kSchema},
                  {"n", info.n},
                  {"dim", info.dim ? json(*info.dim) : json(nullptr)},
                  {"d", info.d},
                  {"pure", info.pure},
                  {"f_vector", info.f_vector},
                  {"h_vector", info.h_vector},
                  {"vertex_cover", info.vertex_cover},
                  {"facet_count", info.facet_count}};
        p.out << j.dump() << '\n';
        return;
    }
    const auto join = [](const std::vector<long long>& v) {
        std::string s;
        for (long long x : v) {
            s += (s.empty() ? "" : " ") + std::to_string(x);
        }
        return s;
    };
    p.out << "n: " << info.n << '\n'
          << "dim: " << (info.dim ? std::to_string(*info.dim) : std::string("void")) << '\n'
          << "facets: " << info.facet_count << '\n'
          << "pure: " << yes_no(info.pure) << '\n'
          << "f-vector: " << join(info.f_vector) << '\n'
          << "h-vector: " << join(info.h_vector) << '\n'
          << "every vertex is a face: " << yes_no(info.vertex_cover) << '\n';
}

void cmd_dual(const Options& o, Payload& p)
{
    const Complex dual = alexander_dual(load_complex(o));
    if (o.json) {
        p.out << json{{"schema", kSchema}, {"complex", facets_json(dual)}}.dump() << '\n';
    } else {
        p.out << format_complex(dual);
    }
}

void cmd_link(const Options& o, Payload& p)
{
    const Complex c = load_complex(o);
    const Face f = parse_face(o.face);
    if (f.max_label() > c.ground_size()) {
        throw UsageError("--face " + f.to_string() + " lies outside {1.." + std::to_string(c.ground_size()) + "}");
    }
    if (!c.contains(f)) {
        throw UsageError(f.to_string() + " is not a face");
    }
    const Relabeled l = link(c, f);
    if (o.json) {
        p.out << json{{"schema", kSchema}, {"face", f.labels()}, {"labels", l.labels}, {"complex", facets_json(l.complex)}}
                     .dump()
              << '\n';
        return;
    }
    p.out << "# link of " << f.to_string() << "; vertex k stands for label";
    for (std::size_t k = 0; k < l.labels.size(); ++k) {
        p.out << ' ' << (k + 1) << "->" << l.labels[k];
    }
    p.out << '\n' << format_complex(l.complex);
}

void cmd_homology(const Options& o, Payload& p)
{
    const Field k = field_of(o);
    const HomologyVector h = reduced_homology(load_complex(o), k);
    if (o.json) {
        p.out << json{{"schema", kSchema}, {"field", k.name()}, {"degrees_from", -1}, {"dims", h.raw()}}.dump() << '\n';
        return;
    }
    p.out << "field: " << k.name() << '\n';
    if (h.top() < -1) {
        p.out << "void complex: all reduced homology vanishes\n";
    }
    for (int i = -1; i <= h.top(); ++i) {
        p.out << "H~_" << i << ": " << h[i] << '\n';
    }
}

void cmd_betti(const Options& o, Payload& p)
{
    const Field k = field_of(o);
    const BettiTable t = hochster_betti(load_complex(o), k, o.ring ? BettiSubject::Ring : BettiSubject::Ideal);
    if (o.json) {
        p.out << to_json(t).dump() << '\n';
    } else {
        p.out << format_betti(t);
    }
}

void cmd_check(const Options& o, Payload& p)
{
    const int chosen = static_cast<int>(o.cm) + static_cast<int>(o.cmt.has_value())
                       + static_cast<int>(o.serre.has_value()) + static_cast<int>(o.buchsbaum)
                       + static_cast<int>(!o.ndp.empty()) + static_cast<int>(o.sing_dim.has_value())
                       + static_cast<int>(o.report);
    if (chosen != 1) {
        throw UsageError("check needs exactly one of --cm, --cmt, --serre, --buchsbaum, --ndp, --sing-dim, --report");
    }
    const Field k = field_of(o);
    const Complex c = load_complex(o);
    if (o.report) {
        const PropertyReport r = property_report(c, k);
        if (o.json) {
            p.out << to_json(r).dump() << '\n';
            return;
        }
        p.out << "field: " << r.field.name() << '\n'
              << "pure: " << yes_no(r.pure) << '\n'
              << "CM: " << yes_no(r.cm) << '\n'
              << "min CM_t: " << (r.min_cm_t ? std::to_string(*r.min_cm_t) : std::string("none (not pure)")) << '\n'
              << "Buchsbaum: " << yes_no(r.buchsbaum) << '\n'
              << "max S_r: " << r.max_serre << '\n'
              << "singularity dimension < " << r.sing_dim_lt << '\n'
              << "depth: " << (r.depth ? std::to_string(*r.depth) : std::string("undefined (void)")) << '\n';
        return;
    }
    if (!o.ndp.empty()) {
        const BettiTable t = hochster_betti(c, k, BettiSubject::Ideal);
        const int degree = o.ndp[0];
        const int steps = o.ndp[1];
        const auto why = ndp_failure(t, degree, steps);
        Answer a{"N_{" + std::to_string(degree) + "," + std::to_string(steps) + "}", check_ndp(t, degree, steps),
                 why.value_or("")};
        emit_answer(p, a, o.json, "ndp");
        return;
    }
    const LinkProfile lp(c, k);
    if (o.cm) {
        emit_answer(p, cm_t_answer(lp, 0, "CM"), o.json, "cm");
    } else if (o.cmt) {
        emit_answer(p, cm_t_answer(lp, *o.cmt, "CM_" + std::to_string(*o.cmt)), o.json, "cmt");
    } else if (o.buchsbaum) {
        emit_answer(p, cm_t_answer(lp, 1, "Buchsbaum"), o.json, "buchsbaum");
    } else if (o.serre) {
        Answer a{"S_" + std::to_string(*o.serre), lp.satisfies_serre(*o.serre), {}};
        if (const auto w = lp.serre_witness(*o.serre)) {
            const int low = std::countr_zero(w->nonzero) - 1;
            a.reason = "link of " + w->face.to_string() + " has dimension " + std::to_string(w->link_dim) + " but H~_"
                       + std::to_string(low) + " != 0";
        }
        emit_answer(p, a, o.json, "serre");
    } else if (o.sing_dim) {
        const int m = *o.sing_dim;
        Answer a{"singularity dimension < " + std::to_string(m), lp.singularity_dimension_lt(m), {}};
        for (const auto& rec : lp.records()) {
            if (rec.face.size() - 1 >= m && rec.lowest_bad()) {
                a.reason = describe_record(rec);
                break;
            }
        }
        emit_answer(p, a, o.json, "sing-dim");
    }
}

std::string cycle_text(const std::vector<int>& cyc)
{
    std::string s;
    for (int v : cyc) {
        s += (s.empty() ? "" : " ") + std::to_string(v);
    }
    return s;
}

void cmd_graph(const std::string& which, const Options& o, Payload& p)
{
    const Graph g = parse_graph(read_file(o.file));
    if (which == "cycles") {
        const int len = o.max_len.value_or(std::max(g.order(), 4));
        if (len < 4) {
            throw UsageError("--max-len must be at least 4");
        }
        const CycleReport rep = induced_cycles(g, len);
        if (o.json) {
            p.out << json{{"schema", kSchema}, {"searched_max_length", rep.searched_max_length}, {"cycles", rep.cycles}}
                         .dump()
                  << '\n';
            return;
        }
        p.out << "chordless cycles of length 4.." << len << ": " << rep.cycles.size() << '\n';
        for (const auto& cyc : rep.cycles) {
            p.out << cycle_text(cyc) << '\n';
        }
        return;
    }
    if (which == "chordal") {
        Answer a;
        if (o.r) {
            if (*o.r < 3) {
                throw UsageError("-r must be at least 3");
            }
            a.label = "chord condition r=" + std::to_string(*o.r);
            a.value = chord_condition(g, *o.r);
            if (!a.value) {
                a.reason = "chordless cycle " + cycle_text(induced_cycles(g, *o.r).cycles.front());
            }
        } else {
            a.label = "chordal";
            a.value = is_chordal(g);
            if (!a.value) {
                a.reason = "chordless cycle " + cycle_text(induced_cycles(g, std::max(g.order(), 4)).cycles.front());
            }
        }
        emit_answer(p, a, o.json, "chordal");
        return;
    }
    Answer a{"cycle graph", is_cycle_graph(g), {}};
    if (!a.value) {
        a.reason = "not a connected 2-regular graph";
    }
    emit_answer(p, a, o.json, "is-cycle");
}

void cmd_verify(const Options& o, Payload& p)
{
    const Theorem* theorem = nullptr;
    try {
        theorem = &find_theorem(o.theorem);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const Field k = field_of(o);
    if (o.sample && !o.n) {
        throw UsageError("--sample needs --n");
    }
    std::vector<SearchSpace> spaces;
    try {
        spaces = o.n ? spaces_for(*theorem, *o.n, o.sample, o.seed) : default_spaces(theorem->id);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    VerifyOptions vo;
    vo.first_counterexample = o.first;
    vo.threads = o.threads;
    for (const SearchSpace& s : spaces) {
        const VerificationResult r = verify_theorem(*theorem, s, k, vo);
        if (!r.counterexamples.empty()) {
            p.code = kPredicateFalse;
        }
        if (o.json) {
            p.out << to_json(r, o.timing).dump() << '\n';
            continue;
        }
        p.out << theorem->id << " [" << s.describe() << ", " << k.name() << "]: " << r.instances_checked
              << " instances, " << r.not_applicable << " not applicable, " << r.counterexamples.size()
              << " counterexamples";
        if (o.timing) {
            p.out << " (" << r.elapsed_seconds << " s)";
        }
        p.out << '\n';
        for (const auto& ce : r.counterexamples) {
            p.out << "counterexample #" << ce.index << ": " << ce.clause << '\n' << ce.instance;
        }
        if (o.first && !r.counterexamples.empty()) {
            break;
        }
    }
}

void cmd_fixtures(const Options& o, Payload& p)
{
    if (o.fixture.empty()) {
        for (const auto& name : fixture_names()) {
            p.out << name << '\n';
        }
        return;
    }
    const auto text = fixture_text(o.fixture);
    if (!text) {
        throw UsageError("unknown fixture '" + o.fixture + "'");
    }
    p.out << *text;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Stanley-Reisner toolkit: complexes, homology, Betti tables, CM_t and Serre checks"};
    app.name("srlab");
    app.fallthrough();
    app.require_subcommand(1);

    Options o;
    app.add_flag("--json", o.json, "JSON output");
    app.add_option("--field", o.field, "coefficient field: a prime (2, 3, 5, ...) or q")->capture_default_str();

    auto* info = app.add_subcommand("info", "dimension, purity, f- and h-vector");
    info->add_option("FILE", o.file)->required();
    auto* dual = app.add_subcommand("dual", "Alexander dual");
    dual->add_option("FILE", o.file)->required();
    auto* lnk = app.add_subcommand("link", "link of a face");
    lnk->add_option("FILE", o.file)->required();
    lnk->add_option("--face", o.face, "labels, e.g. \"1 2\"")->required();
    auto* hom = app.add_subcommand("homology", "reduced homology");
    hom->add_option("FILE", o.file)->required();
    auto* betti = app.add_subcommand("betti", "graded Betti numbers via Hochster's formula");
    betti->add_option("FILE", o.file)->required();
    auto* ideal_flag = betti->add_flag("--ideal", o.ideal, "Betti numbers of I_Delta (default)");
    betti->add_flag("--ring", o.ring, "Betti numbers of K[Delta]")->excludes(ideal_flag);

    auto* check = app.add_subcommand("check", "Cohen-Macaulay type predicates");
    check->add_option("FILE", o.file)->required();
    check->add_flag("--cm", o.cm, "Cohen-Macaulay (Reisner)");
    check->add_option("--cmt", o.cmt, "CM_t");
    check->add_option("--serre", o.serre, "Serre condition S_r");
    check->add_flag("--buchsbaum", o.buchsbaum, "Buchsbaum (CM_1)");
    check->add_option("--ndp", o.ndp, "N_{d,p} for I_Delta")->expected(2);
    check->add_option("--sing-dim", o.sing_dim, "singularity dimension < m");
    check->add_flag("--report", o.report, "every property at once");

    auto* graph = app.add_subcommand("graph", "graph utilities");
    graph->require_subcommand(1);
    auto* cycles = graph->add_subcommand("cycles", "chordless cycles of length >= 4");
    cycles->add_option("FILE", o.file)->required();
    cycles->add_option("--max-len", o.max_len, "longest cycle searched (default max(n, 4))");
    auto* chordal = graph->add_subcommand("chordal", "chordality or the chord condition up to r");
    chordal->add_option("FILE", o.file)->required();
    chordal->add_option("-r", o.r, "every cycle of length <= r has a chord");
    auto* is_cycle = graph->add_subcommand("is-cycle", "connected and 2-regular");
    is_cycle->add_option("FILE", o.file)->required();

    auto* verify = app.add_subcommand("verify", "check a registered theorem over a search space");
    verify->add_option("ID", o.theorem)->required();
    verify->add_option("--n", o.n, "exhaustive over sizes up to N (or sample at N)");
    verify->add_option("--sample", o.sample, "number of seeded random instances");
    verify->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
    verify->add_flag("--first", o.first, "stop at the first counterexample");
    verify->add_flag("--timing", o.timing, "report elapsed time");
    verify->add_option("--threads", o.threads, "worker threads (0: hardware)");

    auto* fixtures = app.add_subcommand("fixtures", "print a bundled fixture");
    fixtures->add_option("NAME", o.fixture);

    Payload p;
    std::ostringstream diag;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (*info) {
            cmd_info(o, p);
        } else if (*dual) {
            cmd_dual(o, p);
        } else if (*lnk) {
            cmd_link(o, p);
        } else if (*hom) {
            cmd_homology(o, p);
        } else if (*betti) {
            cmd_betti(o, p);
        } else if (*check) {
            cmd_check(o, p);
        } else if (*graph) {
            cmd_graph(*cycles ? "cycles" : *chordal ? "chordal" : "is-cycle", o, p);
        } else if (*verify) {
            cmd_verify(o, p);
        } else if (*fixtures) {
            cmd_fixtures(o, p);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, diag, diag);
        out << p.out.str();
        err << diag.str();
        return code == 0 ? kSuccess : kUsageError;
    } catch (const InvariantError& e) {
        err << "internal invariant violated: " << e.what() << '\n';
        return kInvariantBreach;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInvariantBreach;
    }
    out << p.out.str();
    return p.code;
}

} // namespace srlab::cli
