// Command-line front end for the biunivalent library.
//
//   biuni bound            closed-form |a2|, |a3| bounds
//   biuni invert           series reversion and closed-form inverse coefficients
//   biuni operator         coefficients of the class operator L[f]
//   biuni member           grid membership test for f and its inverse
//   biuni falsify          randomized falsification campaign (CSV via --out)
//   biuni extremal         derivative-free search for large |a2| or |a3|
//   biuni corollary-check  special-case identities of the bounds
//
// Exit status: 0 success, 1 violated invariant, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <biunivalent/biunivalent.hpp>

namespace
{

using json = nlohmann::json;
using biuni::complex;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "1.5", "-2i", "0.5+0.25i", "1e-3-2e-1i".
complex parse_complex(const std::string &text)
{
    std::string s;
    for (char ch : text) {
        if (ch != ' ') {
            s.push_back(ch);
        }
    }
    auto to_double = [&](const std::string &part) {
        if (part.empty() || part == "+") {
            return 1.0;
        }
        if (part == "-") {
            return -1.0;
        }
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception &) {
            throw UsageError("malformed complex number: " + text);
        }
        if (used != part.size()) {
            throw UsageError("malformed complex number: " + text);
        }
        return v;
    };
    if (s.empty()) {
        throw UsageError("empty complex number");
    }
    if (s.back() != 'i' && s.back() != 'j') {
        return {to_double(s), 0.0};
    }
    s.pop_back();
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        return {0.0, to_double(s)};
    }
    return {to_double(s.substr(0, split)), to_double(s.substr(split))};
}

json complex_json(complex c)
{
    return json::array({c.real(), c.imag()});
}

std::string complex_text(complex c)
{
    if (c.imag() == 0) {
        return fmt::format("{}", c.real());
    }
    return fmt::format("{}{}{}i", c.real(), c.imag() < 0 ? "-" : "+", std::abs(c.imag()));
}

json series_json(const biuni::TruncatedSeries &s)
{
    json arr = json::array();
    for (const auto &c : s.coeffs()) {
        arr.push_back(complex_json(c));
    }
    return arr;
}

std::string series_text(const biuni::TruncatedSeries &s, const char *var)
{
    std::string out;
    for (std::size_t k = 0; k <= s.order(); ++k) {
        out += fmt::format("  [{}^{}] {}\n", var, k, complex_text(s[k]));
    }
    return out;
}

struct GlobalOptions {
    bool json = false;
    std::uint64_t seed = 0;
    std::string out;
    std::optional<std::size_t> order;
};

struct FamilyOptions {
    std::string family = "alpha";
    double alpha = 1;
    double beta = 0;
    double lambda = 1;
    double mu = 1;

    void attach(CLI::App *sub)
    {
        sub->add_option("--family", family, "Class family")->check(CLI::IsMember({"alpha", "beta"}));
        sub->add_option("--alpha", alpha, "Order alpha in (0, 1] of the arg-condition class");
        sub->add_option("--beta", beta, "Order beta in [0, 1) of the real-part class");
        sub->add_option("--lambda", lambda, "Operator parameter lambda >= 1");
        sub->add_option("--mu", mu, "Operator exponent mu >= 0");
    }

    biuni::FamilyParams params() const
    {
        try {
            if (family == "alpha") {
                return biuni::AlphaParams(alpha, lambda, mu);
            }
            return biuni::BetaParams(beta, lambda, mu);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
};

void emit(const GlobalOptions &g, const std::string &text)
{
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(g.out, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot open output file: " + g.out);
    }
    os << text;
}

biuni::NormalizedFunction function_from(const std::vector<std::string> &coeffs, const GlobalOptions &g)
{
    std::vector<complex> tail;
    for (const auto &c : coeffs) {
        tail.push_back(parse_complex(c));
    }
    // Without --order the input polynomial fixes the truncation; with it the
    // polynomial is padded with zeros or truncated.
    const auto order = g.order.value_or(tail.size() + 1);
    if (order < 1) {
        throw UsageError("--order must be at least 1");
    }
    tail.resize(order - 1, complex{0});
    return biuni::NormalizedFunction::from_tail(tail);
}

json bound_json(const biuni::FamilyParams &params, const biuni::BoundReport &b)
{
    json j{{"family", std::string(biuni::family_name(params))},
           {"lambda", biuni::family_lambda(params)},
           {"mu", biuni::family_mu(params)},
           {"a2_bound", b.a2_bound},
           {"a3_bound", b.a3_bound},
           {"a2_branch", std::string(biuni::to_string(b.a2_branch))},
           {"a3_branch", std::string(biuni::to_string(b.a3_branch))}};
    j[std::string(biuni::family_name(params))] = biuni::family_level(params);
    return j;
}

json tuple_json(const biuni::CoefficientTuple &t)
{
    return {{"p1", complex_json(t.p1)}, {"p2", complex_json(t.p2)}, {"q1", complex_json(t.q1)},
            {"q2", complex_json(t.q2)}};
}

json histogram_json(const std::array<std::uint64_t, biuni::margin_histogram_bins> &h)
{
    return json(std::vector<std::uint64_t>(h.begin(), h.end()));
}

biuni::AdmissibilityFilter filter_from(const std::string &s)
{
    return s == "modulus" ? biuni::AdmissibilityFilter::modulus : biuni::AdmissibilityFilter::toeplitz;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Coefficient bounds for bi-univalent function classes defined by the operator\n"
                 "L[f] = (1-lambda)(f/z)^mu + lambda f'(z)(f/z)^(mu-1)."};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "Key-value configuration file mirroring the flags; flags win");

    GlobalOptions g;
    app.add_flag("--json", g.json, "Emit JSON");
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--out", g.out, "Output path (CSV for falsify, report otherwise)");
    app.add_option("--order", g.order, "Truncation order N of series");

    // bound
    FamilyOptions bound_family;
    auto *bound = app.add_subcommand("bound", "Closed-form |a2| and |a3| bounds");
    bound_family.attach(bound);

    // invert
    std::vector<std::string> invert_coeffs;
    auto *invert = app.add_subcommand("invert", "Reversion f -> f^{-1} of z + a2 z^2 + a3 z^3 + ...");
    invert->add_option("--coeffs", invert_coeffs, "Coefficients a2 a3 ... (complex as x+yi)")
        ->required()
        ->delimiter(',');

    // operator
    std::vector<std::string> op_coeffs;
    double op_lambda = 1, op_mu = 1;
    auto *op = app.add_subcommand("operator", "Coefficients of L[f]");
    op->add_option("--coeffs", op_coeffs, "Coefficients a2 a3 ... of f")->required()->delimiter(',');
    op->add_option("--lambda", op_lambda, "Operator parameter lambda");
    op->add_option("--mu", op_mu, "Operator exponent mu");

    // member
    FamilyOptions member_family;
    std::vector<std::string> member_coeffs;
    std::vector<double> radii{0.5, 0.8, 0.9, 0.95};
    std::size_t angles = 256;
    auto *member = app.add_subcommand("member", "Grid membership test (necessary condition on truncations)");
    member_family.attach(member);
    member->add_option("--coeffs", member_coeffs, "Coefficients a2 a3 ... of f")->required()->delimiter(',');
    member->add_option("--radii", radii, "Grid radii in [0, 1)")->delimiter(',');
    member->add_option("--angles", angles, "Angular samples per radius")->check(CLI::PositiveNumber);

    // falsify
    FamilyOptions falsify_family;
    std::uint64_t n_samples = 100000;
    std::size_t atoms = 3;
    std::string filter = "toeplitz";
    unsigned threads = 1;
    auto *falsify = app.add_subcommand("falsify", "Randomized falsification campaign");
    falsify_family.attach(falsify);
    falsify->add_option("-n,--samples", n_samples, "Number of samples")->check(CLI::PositiveNumber);
    falsify->add_option("--atoms", atoms, "Herglotz atoms per sample")->check(CLI::PositiveNumber);
    falsify->add_option("--filter", filter, "Admissibility filter on induced q")
        ->check(CLI::IsMember({"modulus", "toeplitz"}));
    falsify->add_option("--threads", threads, "Worker threads (0 = hardware)");

    // extremal
    FamilyOptions extremal_family;
    std::string objective = "a2";
    std::uint64_t budget = 10000;
    std::size_t extremal_atoms = 3;
    std::string extremal_filter = "toeplitz";
    auto *extremal = app.add_subcommand("extremal", "Derivative-free search for large |a2| or |a3|");
    extremal_family.attach(extremal);
    extremal->add_option("--objective", objective, "Coefficient to maximize")->check(CLI::IsMember({"a2", "a3"}));
    extremal->add_option("--budget", budget, "Objective evaluations")->check(CLI::PositiveNumber);
    extremal->add_option("--atoms", extremal_atoms, "Herglotz atoms")->check(CLI::PositiveNumber);
    extremal->add_option("--filter", extremal_filter, "Admissibility filter on induced q")
        ->check(CLI::IsMember({"modulus", "toeplitz"}));

    // corollary-check
    std::string which = "all";
    std::size_t points = 64;
    auto *corollary = app.add_subcommand("corollary-check", "Special-case identities of the bounds");
    corollary->add_option("--which", which, "c1, c2, c51, c3, c4, c5 or all")
        ->check(CLI::IsMember({"c1", "c2", "c51", "c3", "c4", "c5", "all"}));
    corollary->add_option("--points", points, "Grid points per parameter axis")->check(CLI::Range(2, 1000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        app.exit(e);
        std::cerr << app.help();
        return exit_usage;
    }

    try {
        std::ostringstream text;
        json j;
        int status = exit_ok;

        if (bound->parsed()) {
            const auto params = bound_family.params();
            const auto b = biuni::family_bounds(params);
            j = bound_json(params, b);
            text << fmt::format("family {}: |a2| <= {:.15g} ({}), |a3| <= {:.15g} ({})\n",
                                biuni::family_name(params), b.a2_bound, biuni::to_string(b.a2_branch), b.a3_bound,
                                biuni::to_string(b.a3_branch));
        } else if (invert->parsed()) {
            const auto f = function_from(invert_coeffs, g);
            const auto inv = biuni::revert(f);
            auto coeff = [&](std::size_t n) { return n <= f.order() ? f.coeff(n) : complex{0}; };
            const auto closed = biuni::inverse_coeffs_closed(coeff(2), coeff(3), coeff(4));
            j = {{"order", f.order()},
                 {"inverse", series_json(inv.series())},
                 {"closed_form_b2_b4", json::array({complex_json(closed[0]), complex_json(closed[1]),
                                                    complex_json(closed[2])})}};
            text << "f^{-1}(w) coefficients:\n" << series_text(inv.series(), "w");
            text << fmt::format("closed form b2..b4 (a_n = 0 past order {}): {}, {}, {}\n", f.order(),
                                complex_text(closed[0]), complex_text(closed[1]), complex_text(closed[2]));
        } else if (op->parsed()) {
            const auto f = function_from(op_coeffs, g);
            const auto l = biuni::apply_operator(f, op_lambda, op_mu, f.order());
            j = {{"lambda", op_lambda}, {"mu", op_mu}, {"operator", series_json(l)}};
            text << fmt::format("L[f] with lambda = {}, mu = {}:\n", op_lambda, op_mu) << series_text(l, "z");
        } else if (member->parsed()) {
            const auto f = function_from(member_coeffs, g);
            const auto params = member_family.params();
            biuni::MembershipGrid grid{radii, angles};
            biuni::MembershipReport r;
            try {
                if (const auto *a = std::get_if<biuni::AlphaParams>(&params)) {
                    r = biuni::membership_alpha(f, *a, grid);
                } else {
                    r = biuni::membership_beta(f, std::get<biuni::BetaParams>(params), grid);
                }
            } catch (const std::domain_error &e) {
                throw UsageError(e.what());
            }
            j = {{"family", std::string(biuni::family_name(params))},
                 {"verdict", r.pass ? "PASS" : "FAIL"},
                 {"margin", r.margin},
                 {"worst_point", complex_json(r.worst_point)},
                 {"worst_value", complex_json(r.worst_value)},
                 {"worst_side", r.worst_side},
                 {"points_checked", r.points_checked},
                 {"scope", "necessary condition on order-N truncations of f and its reversion"}};
            text << fmt::format("{} (margin {:.6g}, worst on {} at z = {}, {} points; truncation-level necessary "
                                "check)\n",
                                r.pass ? "PASS" : "FAIL", r.margin, r.worst_side, complex_text(r.worst_point),
                                r.points_checked);
        } else if (falsify->parsed()) {
            const auto params = falsify_family.params();
            biuni::CampaignConfig cfg;
            cfg.n_samples = n_samples;
            cfg.seed = g.seed;
            cfg.atoms = atoms;
            cfg.filter = filter_from(filter);
            cfg.threads = threads;
            cfg.keep_records = !g.out.empty();
            const auto s = biuni::falsify(params, cfg);
            if (!g.out.empty()) {
                std::ofstream os(g.out, std::ios::binary);
                if (!os) {
                    throw std::runtime_error("cannot open output file: " + g.out);
                }
                biuni::write_campaign_csv(os, s);
            }
            json viol = json::array();
            for (const auto &v : s.violations) {
                viol.push_back({{"index", v.index}, {"tuple", tuple_json(v.tuple)}, {"a2_margin", v.a2_margin},
                                {"a3_margin", v.a3_margin}});
            }
            j = {{"bounds", bound_json(params, s.bounds)},
                 {"samples", cfg.n_samples},
                 {"seed", cfg.seed},
                 {"atoms", cfg.atoms},
                 {"filter", std::string(biuni::to_string(cfg.filter))},
                 {"admissible", s.n_admissible},
                 {"filtered_modulus", s.n_filtered_modulus},
                 {"filtered_toeplitz", s.n_filtered_toeplitz},
                 {"violations", s.violations.size()},
                 {"violation_records", viol},
                 {"max_a2", s.max_a2},
                 {"max_a3", s.max_a3},
                 {"min_a2_margin", s.n_admissible ? json(s.min_a2_margin) : json(nullptr)},
                 {"min_a3_margin", s.n_admissible ? json(s.min_a3_margin) : json(nullptr)},
                 {"a2_margin_histogram", histogram_json(s.a2_margin_histogram)},
                 {"a3_margin_histogram", histogram_json(s.a3_margin_histogram)}};
            text << fmt::format("{} samples, {} admissible ({} filtered by modulus, {} by Toeplitz)\n",
                                cfg.n_samples, s.n_admissible, s.n_filtered_modulus, s.n_filtered_toeplitz);
            text << fmt::format("max |a2| = {:.12g} (bound {:.12g}), max |a3| = {:.12g} (bound {:.12g})\n", s.max_a2,
                                s.bounds.a2_bound, s.max_a3, s.bounds.a3_bound);
            text << fmt::format("violations = {}\n", s.violations.size());
            if (!s.violations.empty()) {
                status = exit_violation;
            }
            // The CSV owns --out; the summary always goes to stdout.
            g.out.clear();
        } else if (extremal->parsed()) {
            const auto params = extremal_family.params();
            biuni::ExtremalConfig cfg;
            cfg.objective = objective == "a3" ? biuni::Objective::a3 : biuni::Objective::a2;
            cfg.budget = budget;
            cfg.seed = g.seed;
            cfg.atoms = extremal_atoms;
            cfg.filter = filter_from(extremal_filter);
            const auto e = biuni::extremal_search(params, cfg);
            json atoms_j = json::array();
            for (const auto &a : e.best_atoms) {
                atoms_j.push_back({{"weight", a.weight}, {"angle", a.angle}});
            }
            j = {{"objective", objective},   {"feasible", e.feasible},     {"achieved", e.achieved},
                 {"bound", e.bound},         {"gap", e.gap},               {"evaluations", e.evaluations},
                 {"starts", e.starts},       {"tuple", tuple_json(e.best_tuple)}, {"atoms", atoms_j}};
            text << fmt::format("best |{}| = {:.12g}, bound {:.12g}, gap {:.3g} ({} evaluations, {} starts{})\n",
                                objective, e.achieved, e.bound, e.gap, e.evaluations, e.starts,
                                e.feasible ? "" : ", no admissible point found");
            if (e.gap < -biuni::violation_tolerance) {
                status = exit_violation;
            }
        } else if (corollary->parsed()) {
            std::vector<biuni::Corollary> list;
            if (which == "all") {
                list.assign(std::begin(biuni::all_corollaries), std::end(biuni::all_corollaries));
            } else {
                list.push_back(biuni::corollary_from_string(which));
            }
            j = json::array();
            for (auto c : list) {
                const auto r = biuni::corollary_check(c, points);
                json entry{{"which", std::string(biuni::to_string(c))},
                           {"verdict", r.pass ? "PASS" : "FAIL"},
                           {"points", r.points},
                           {"max_a2_deviation", r.max_a2_deviation},
                           {"max_a3_deviation", r.max_a3_deviation},
                           {"printed_forms_dominate", r.printed_forms_dominate},
                           {"notes", r.notes}};
                text << fmt::format("{}: {} ({} points, max deviation |a2| {:.3g}, |a3| {:.3g})\n",
                                    biuni::to_string(c), r.pass ? "PASS" : "FAIL", r.points, r.max_a2_deviation,
                                    r.max_a3_deviation);
                if (r.crossover) {
                    entry["crossover"] = {{"expected", r.crossover->expected},
                                          {"located", r.crossover->located},
                                          {"pass", r.crossover->pass}};
                    text << fmt::format("  crossover at beta = {:.12f} (expected {:.12f})\n", r.crossover->located,
                                        r.crossover->expected);
                }
                if (!r.pass) {
                    entry["worst"] = {{"level", r.worst.level}, {"lambda", r.worst.lambda}};
                    status = exit_violation;
                }
                for (const auto &n : r.notes) {
                    text << "  note: " << n << '\n';
                }
                j.push_back(entry);
            }
        }

        emit(g, g.json ? j.dump(2) + "\n" : text.str());
        return status;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}
