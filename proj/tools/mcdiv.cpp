// Command-line front end: reads a JSON document and prints a key: value report.

#include "mcdiv/io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mcdiv;

namespace {

enum Exit { ok = 0, computation_error = 1, input_error = 2, audit_failure = 3 };

struct Args {
    std::string file, divisor, base, point, at, other, other_divisor, other_at, graph, series, length = "1";
    std::string format = "text";
    std::optional<std::uint64_t> seed;
    bool audit = false, refined = false;
    std::size_t budget = 0;
    int k_max = 6, degree = 0, rank = 0;
};

Document load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DocumentError("", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

RankOptions options(const Document& doc, const Args& a)
{
    RankOptions opt;
    opt.seed = a.seed.value_or(doc.seed);
    opt.allow_shortcut = !a.audit;
    return opt;
}

ComplexPoint point_arg(const MetrizedComplex& c, const std::string& flag, const std::string& text)
{
    if (text.empty())
        throw std::invalid_argument(flag + " is required");
    return parse_point(c, text);
}

const std::string& required(const std::string& flag, const std::string& value)
{
    if (value.empty())
        throw std::invalid_argument(flag + " is required");
    return value;
}

Report cmd_rank(const Document& doc, const Args& a)
{
    const auto& c = doc.require_complex();
    const auto& d = doc.divisor(required("--divisor", a.divisor));
    Report rep;
    rep.set("divisor", format_divisor(c, d));
    rep.set("degree", std::to_string(d.degree()));
    rep.set("genus", std::to_string(c.genus()));
    rep.set("rank", std::to_string(rank(c, d, options(doc, a))));
    return rep;
}

Report cmd_reduce(const Document& doc, const Args& a)
{
    const auto& c = doc.require_complex();
    const auto& d = doc.divisor(required("--divisor", a.divisor));
    const ComplexPoint base = point_arg(c, "--base", a.base);
    if (base.on_curve())
        throw std::invalid_argument("--base must be a point of the metric graph");
    Report rep;
    std::size_t checked = 0;
    bool identity = true;
    ReduceOptions ro;
    ro.observer = [&](const ComplexDivisor& cur, const ComplexRationalFunction& w) {
        ++checked;
        if (d + div_of(c, w) != cur)
            identity = false;
    };
    auto r = reduce(c, d, base.graph, ro);
    if (d + div_of(c, r.witness) != r.divisor)
        identity = false;
    rep.set("base", format_point(c, base));
    rep.set("input", format_divisor(c, d));
    rep.set("reduced", format_divisor(c, r.divisor));
    rep.set("steps", std::to_string(r.steps));
    std::string values;
    for (int v = 0; v < c.vertex_count(); ++v)
        values += (v ? " " : "") + c.name(v) + "=" + to_string(r.witness.gamma().vertex_value(v));
    rep.set("witness_gamma", values);
    rep.set("witness_curve_parts", std::to_string(r.witness.curve_divisors().size()));
    rep.set("witness_identity", identity ? "ok" : "FAIL");
    rep.set("identity_checks", std::to_string(checked + 1));
    if (!identity)
        rep.fail("start + div(witness) differs from the reduction at some step");
    return rep;
}

Report cmd_eta(const Document& doc, const Args& a)
{
    const auto& d = doc.divisor(required("--divisor", a.divisor));
    const ComplexPoint x = point_arg(doc.require_complex(), "--point", a.point);
    if (a.k_max < 0)
        throw std::invalid_argument("--k-max must be nonnegative");
    EtaFunction eta(doc.complex, d, x, options(doc, a));
    Report rep;
    rep.set("point", format_point(*doc.complex, x));
    std::string all;
    for (int k = 0; k <= a.k_max; ++k) {
        auto v = eta(k);
        rep.set("eta(" + std::to_string(k) + ")", std::to_string(v));
        all += (k ? " " : "") + std::to_string(v);
    }
    rep.set("eta", all);
    return rep;
}

Report cmd_wrank(const Document& doc, const Args& a)
{
    const auto& ws = doc.weighted_graph(required("--graph", a.graph));
    auto it = ws.divisors.find(required("--divisor", a.divisor));
    if (it == ws.divisors.end())
        throw DocumentError("weighted_graphs." + a.graph + ".divisors", "no divisor named " + a.divisor);
    const WeightedGraph w = ws.build();
    RankOptions opt = options(doc, a);
    int formula = weighted_rank(w, it->second, opt);
    MetrizedComplex sharp = metric_graph(gamma_sharp(w));
    ComplexDivisor d;
    for (const auto& [p, n] : it->second.terms())
        d.add_graph(p, n);
    int direct = rank(sharp, d, opt);
    Report rep;
    rep.set("weighted_genus", std::to_string(sharp.genus()));
    rep.set("weighted_rank", std::to_string(formula));
    rep.set("direct_rank", std::to_string(direct));
    rep.set("agree", formula == direct ? "yes" : "no");
    if (formula != direct)
        rep.fail("the min-formula and the rank on the loop-augmented graph differ");
    return rep;
}

Report cmd_glue_rank(const Document& doc, const Args& a)
{
    const auto& c1 = doc.require_complex();
    const auto& d1 = doc.divisor(required("--divisor", a.divisor));
    const ComplexPoint x1 = point_arg(c1, "--at", a.at);
    const Document other = a.other.empty() ? doc : load(a.other);
    const auto& c2 = other.require_complex();
    const auto& d2 = other.divisor(required("--other-divisor", a.other_divisor));
    const ComplexPoint x2 = point_arg(c2, "--other-at", a.other_at);
    const Scalar length = parse_scalar(a.length);
    if (length <= 0)
        throw std::invalid_argument("--length must be positive");
    RankOptions opt = options(doc, a);
    auto sum = connected_sum_rank(c1, d1, x1, c2, d2, x2, opt);
    auto glued = glue(c1, x1, c2, x2, length);
    ComplexDivisor d = glued.map_left(d1) + glued.map_right(d2);
    int direct = rank(*glued.complex, d, opt);
    Report rep;
    rep.set("genus", std::to_string(glued.complex->genus()));
    rep.set("formula", std::to_string(sum.value));
    rep.set("k_cap", std::to_string(sum.k_cap));
    rep.set("direct", std::to_string(direct));
    rep.set("agree", sum.value == direct ? "yes" : "no");
    if (sum.value != direct)
        rep.fail("connected-sum formula and direct rank differ");
    return rep;
}

Report cmd_limit_check(const Document& doc, const Args& a)
{
    const auto& c = doc.require_complex();
    const auto& name = required("--series", a.series);
    LimitAspects l = doc.limit(name);
    Report rep = limit_equiv_audit(c, l, doc.limits.at(name).root);
    if (a.refined) {
        auto chk = crude_limit_check(c, l, true);
        rep.set("refined", chk.ok ? "yes" : "no");
        for (const auto& v : chk.violations)
            rep.notes.push_back(v);
    }
    return rep;
}

Report cmd_canonical(const Document& doc, const Args& a)
{
    const auto& c = doc.require_complex();
    ComplexDivisor k = canonical(c);
    Report rep;
    rep.set("genus", std::to_string(c.genus()));
    rep.set("canonical", format_divisor(c, k));
    rep.set("degree", std::to_string(k.degree()));
    int r = rank(c, k, options(doc, a));
    rep.set("rank", std::to_string(r));
    if (r != c.genus() - 1)
        rep.fail("the canonical divisor should have rank g - 1");
    return rep;
}

Report cmd_bn_search(const Document& doc, const Args& a)
{
    const auto& c = doc.require_complex();
    const int g = c.genus();
    const auto rho = brill_noether_number(g, a.rank, a.degree);
    RankOptions opt = options(doc, a);
    auto res = bn_search(c, a.degree, a.rank, a.budget ? a.budget : 20000, opt);
    Report rep;
    rep.set("genus", std::to_string(g));
    rep.set("degree", std::to_string(a.degree));
    rep.set("rank", std::to_string(a.rank));
    rep.set("rho", std::to_string(rho));
    rep.set("found", res.witness ? "yes" : "no");
    if (res.witness)
        rep.set("witness", format_divisor(c, *res.witness));
    rep.set("tried", std::to_string(res.tried));
    rep.set("pool", std::to_string(res.pool_size));
    if (!res.witness && rho >= 0)
        rep.fail("no witness within the budget although rho >= 0");
    return rep;
}

Report cmd_weierstrass(const Document& doc, const Args& a)
{
    const auto& c = doc.require_complex();
    const ComplexPoint x = point_arg(c, "--point", a.point);
    Report rep;
    rep.set("point", format_point(c, x));
    rep.set("genus", std::to_string(c.genus()));
    rep.set("weierstrass", is_weierstrass(c, x, options(doc, a)) ? "yes" : "no");
    return rep;
}

void print(const Report& rep, const std::string& format)
{
    if (format == "json") {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : rep.fields)
            j[k] = v;
        j["ok"] = rep.ok;
        j["notes"] = rep.notes;
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : rep.fields)
        std::cout << k << ": " << v << "\n";
    if (!rep.notes.empty()) {
        std::cout << "\n";
        for (const auto& n : rep.notes)
            std::cout << n << "\n";
    }
}

int check_threads()
{
    const char* env = std::getenv("MCDIV_THREADS");
    if (!env)
        return 1;
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (*env == '\0' || *end != '\0' || n < 1)
        throw std::invalid_argument("MCDIV_THREADS must be a positive integer");
    return static_cast<int>(n);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Divisor theory on metrized complexes of curves"};
    app.require_subcommand(1);
    Args a;

    auto common = [&](CLI::App* s) {
        s->add_option("file", a.file, "Document (JSON)")->required();
        s->add_option("--seed", a.seed, "Seed for sampled rank-determining sets (default: the document's)");
        s->add_flag("--audit", a.audit, "Disable shortcuts");
        s->add_option("--budget", a.budget, "Search or iteration cap");
        s->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        return s;
    };
    using Handler = Report (*)(const Document&, const Args&);
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto add = [&](const char* name, const char* help, Handler h) {
        auto* s = common(app.add_subcommand(name, help));
        commands.emplace_back(s, h);
        return s;
    };

    add("rank", "Rank of a divisor", cmd_rank)->add_option("--divisor", a.divisor);
    auto* red = add("reduce", "Reduced divisor with respect to a base point", cmd_reduce);
    red->add_option("--divisor", a.divisor);
    red->add_option("--base", a.base, "Base point, e.g. v0 or e2@1/3");
    add("rr-check", "Riemann-Roch identity for a divisor",
        [](const Document& doc, const Args& a) {
            return rr_audit(doc.require_complex(), doc.divisor(required("--divisor", a.divisor)), options(doc, a));
        })
        ->add_option("--divisor", a.divisor);
    add("clifford-check", "Clifford inequality for a divisor",
        [](const Document& doc, const Args& a) {
            return clifford_audit(doc.require_complex(), doc.divisor(required("--divisor", a.divisor)),
                                  options(doc, a));
        })
        ->add_option("--divisor", a.divisor);
    auto* eta = add("eta", "Values of the eta function at a point", cmd_eta);
    eta->add_option("--divisor", a.divisor);
    eta->add_option("--point", a.point, "Attachment point, e.g. v1:inf");
    eta->add_option("--k-max", a.k_max, "Largest k");
    auto* wr = add("wrank", "Weighted rank by formula and on the loop-augmented graph", cmd_wrank);
    wr->add_option("--graph", a.graph, "Weighted graph name");
    wr->add_option("--divisor", a.divisor, "Divisor of that weighted graph");
    auto* gl = add("glue-rank", "Connected-sum rank formula against the glued complex", cmd_glue_rank);
    gl->add_option("--divisor", a.divisor);
    gl->add_option("--at", a.at, "Attachment point on this complex");
    gl->add_option("--other", a.other, "Second document (default: the same)");
    gl->add_option("--other-divisor", a.other_divisor);
    gl->add_option("--other-at", a.other_at);
    gl->add_option("--length", a.length, "Bridge length");
    auto* lc = add("limit-check", "Limit linear series criterion against restricted rank", cmd_limit_check);
    lc->add_option("--series", a.series, "Limit series name");
    lc->add_flag("--refined", a.refined, "Also check the refined equalities");
    add("canonical", "Canonical divisor and its rank", cmd_canonical);
    add("moderator-audit", "Rank and duality of moderators over all acyclic orientations",
        [](const Document& doc, const Args& a) {
            return moderator_audit(doc.require_complex(), 3, a.budget ? a.budget : 2000, a.seed.value_or(doc.seed));
        });
    auto* bn = add("bn-search", "Search for a divisor of given degree and rank", cmd_bn_search);
    bn->add_option("--degree", a.degree)->required();
    bn->add_option("--rank", a.rank)->required();
    add("weierstrass", "Whether g(x) has positive rank", cmd_weierstrass)->add_option("--point", a.point);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    try {
        check_threads();
        const Document doc = load(a.file);
        for (const auto& [s, h] : commands) {
            if (!s->parsed())
                continue;
            Report rep = h(doc, a);
            print(rep, a.format);
            return rep.ok ? ok : audit_failure;
        }
    } catch (const DocumentError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return computation_error;
    }
    return input_error;
}
