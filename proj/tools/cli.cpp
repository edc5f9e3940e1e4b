#include "cli.hpp"

#include "modgl2/asymptotics.hpp"
#include "modgl2/brauer.hpp"
#include "modgl2/breuil_mezard.hpp"
#include "modgl2/error.hpp"
#include "modgl2/expression.hpp"
#include "modgl2/json_io.hpp"
#include "modgl2/principal_series.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace modgl2::cli {

namespace {

enum class Format { Json, Csv, Pretty };

struct Config {
    int p = 0;
    int f = 1;
    std::optional<int> h;
    std::string format;
    std::string cache_path;
    int precision = 64;
    std::uint64_t seed = 0;
};

// Session state shared by the subcommands.
class Session {
public:
    Session(const Config& cfg, std::ostream& out, std::ostream& err)
        : cfg_(cfg), params_(cfg.p, cfg.f, cfg.h), ring_(params_), out_(out), err_(err)
    {
        if (cfg.precision != 64)
            throw ValidationError("--precision: only the 64-bit (long double) oracle is available");
        std::string path = cfg.cache_path;
        if (path.empty())
            if (const char* env = std::getenv("MODP_GL2_CACHE"))
                path = env;
        if (!path.empty()) {
            cache_.emplace(path);
            flush_warning();
            cache_->load_into(ring_);
            flush_warning();
        }
    }

    const FieldParams& params() const { return params_; }
    GrothendieckRing& ring() { return ring_; }
    std::ostream& out() { return out_; }
    std::ostream& err() { return err_; }
    std::uint64_t seed() const { return cfg_.seed; }

    Format format(Format fallback) const
    {
        if (cfg_.format.empty())
            return fallback;
        if (cfg_.format == "json")
            return Format::Json;
        if (cfg_.format == "csv")
            return Format::Csv;
        return Format::Pretty;
    }

    const Asymptotics& asymptotics()
    {
        if (!asym_)
            asym_ = std::make_unique<Asymptotics>(ring_);
        return *asym_;
    }

    ConstantsReport constants()
    {
        if (cache_) {
            auto cached = cache_->constants(params_);
            flush_warning();
            // Cheap cross-check against a value recomputed here.
            if (cached && cached->M_upper != asymptotics().change_of_basis_l1()) {
                err_ << "warning: cached constants for " << params_.describe() << " disagree with M_upper; recomputing\n";
                cached.reset();
            }
            if (cached)
                return *cached;
        }
        auto report = asymptotics().compute_constants(params_.h());
        if (cache_)
            cache_->store_constants(report);
        return report;
    }

    void finish()
    {
        if (!cache_)
            return;
        try {
            cache_->store_from(ring_);
            cache_->save();
        } catch (const std::exception& e) {
            err_ << "warning: cache not written: " << e.what() << "\n";
        }
    }

private:
    void flush_warning()
    {
        if (cache_ && !cache_->warning().empty() && cache_->warning() != last_warning_) {
            last_warning_ = cache_->warning();
            err_ << "warning: " << last_warning_ << "\n";
        }
    }

    Config cfg_;
    FieldParams params_;
    GrothendieckRing ring_;
    std::ostream& out_;
    std::ostream& err_;
    std::optional<DiskCache> cache_;
    std::string last_warning_;
    std::unique_ptr<Asymptotics> asym_;
};

void print_element(Session& s, const RingElement& v)
{
    switch (s.format(Format::Json)) {
    case Format::Json:
        s.out() << to_json(v).dump(2) << "\n";
        break;
    case Format::Csv:
        s.out() << "n,m,coeff\n";
        for (const auto& t : v.terms())
            s.out() << t.label.n << "," << t.label.m << "," << to_fraction_string(t.coeff) << "\n";
        break;
    case Format::Pretty:
        s.out() << v.to_string() << "\n";
        break;
    }
}

// Key/value report: JSON object, two-column CSV or aligned text.
void print_record(Session& s, const Json& record, Format fallback)
{
    switch (s.format(fallback)) {
    case Format::Json:
        s.out() << record.dump(2) << "\n";
        break;
    case Format::Csv:
        s.out() << "key,value\n";
        for (const auto& [k, v] : record.items())
            s.out() << k << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        break;
    case Format::Pretty:
        for (const auto& [k, v] : record.items())
            s.out() << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        break;
    }
}

Json integer_json(const Integer& z)
{
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

std::string factors_string(std::span<const SymmFactor> factors)
{
    std::string s;
    for (const auto& fac : factors) {
        if (!s.empty())
            s += ",";
        s += std::to_string(fac.k) + ":" + std::to_string(fac.m) + ":" + std::to_string(fac.j);
    }
    return s;
}

std::string sci(long double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3Le", x);
    return buf;
}

struct FactorArgs {
    std::optional<std::int64_t> symm;
    std::int64_t det = 0;
    std::int64_t frob = 0;
    std::string factors;

    void add_to(CLI::App* cmd)
    {
        auto* symm_opt = cmd->add_option("--symm", symm, "symmetric power k");
        cmd->add_option("--det", det, "determinant twist m");
        cmd->add_option("--frob", frob, "Frobenius twist j");
        auto* fac_opt = cmd->add_option("--factors", factors, "product, e.g. 8:0:1,3");
        symm_opt->excludes(fac_opt);
    }

    std::vector<SymmFactor> resolve(const FieldParams& params) const
    {
        if (!factors.empty())
            return parse_factors(params, factors);
        if (!symm)
            throw ValidationError("one of --symm or --factors is required");
        return {make_factor(params, *symm, det, frob)};
    }
};

int cmd_decompose(Session& s, const FactorArgs& a)
{
    auto factors = a.resolve(s.params());
    print_element(s, s.ring().reduce_product(factors));
    return kOk;
}

int cmd_principal_series(Session& s, std::int64_t n, std::int64_t m, bool explain)
{
    const auto& params = s.params();
    int r = params.reduce(n);
    RingElement cls = s.ring().principal_series(r, m);
    if (!explain) {
        print_element(s, cls);
        return kOk;
    }
    auto rows = diamond_constituents(params, r, m);
    switch (s.format(Format::Json)) {
    case Format::Json: {
        Json paths = Json::array();
        for (const auto& c : rows)
            paths.push_back({{"path", path_to_string(c.path)},
                             {"lambda", c.lambda},
                             {"ell", c.ell},
                             {"n", c.label.n},
                             {"m", c.label.m}});
        Json j = {{"n", r}, {"m", params.reduce(m)}, {"class", to_json(cls)}, {"paths", paths}};
        s.out() << j.dump(2) << "\n";
        break;
    }
    case Format::Csv:
        s.out() << "path,lambda,ell,n,m\n";
        for (const auto& c : rows)
            s.out() << '"' << path_to_string(c.path) << "\"," << c.lambda << "," << c.ell << "," << c.label.n << ","
                    << c.label.m << "\n";
        break;
    case Format::Pretty:
        s.out() << "[V(lambda_" << r << ")(" << params.reduce(m) << ")] = " << cls.to_string() << "\n";
        for (const auto& c : rows)
            s.out() << "  " << path_to_string(c.path) << "  lambda=" << c.lambda << "  ell=" << c.ell << "  -> L_"
                    << c.label.n << "(" << c.label.m << ")\n";
        break;
    }
    return kOk;
}

int cmd_omega(Session& s, bool all, std::optional<std::int64_t> n)
{
    const auto& params = s.params();
    if (all == n.has_value())
        throw ValidationError("omega: give exactly one of --all or --n");
    std::vector<int> labels;
    if (all) {
        for (int i = 0; i < params.q(); ++i)
            labels.push_back(i);
    } else {
        if (*n < 0 || *n > params.q() - 1)
            throw ValidationError("omega: n = " + std::to_string(*n) + " outside [0, q-1]");
        labels.push_back(static_cast<int>(*n));
    }
    switch (s.format(Format::Csv)) {
    case Format::Json: {
        Json j = Json::array();
        for (int i : labels)
            j.push_back({{"n", i}, {"omega", omega(params, i)}});
        s.out() << j.dump(2) << "\n";
        break;
    }
    case Format::Csv:
        s.out() << "n,omega\n";
        for (int i : labels)
            s.out() << i << "," << omega(params, i) << "\n";
        break;
    case Format::Pretty:
        for (int i : labels)
            s.out() << "omega(" << i << ") = " << omega(params, i) << "\n";
        break;
    }
    return kOk;
}

int cmd_s_alpha(Session& s, std::int64_t i)
{
    print_element(s, s.asymptotics().s_alpha(i).element);
    return kOk;
}

int cmd_constants(Session& s)
{
    print_record(s, to_json(s.constants()), Format::Json);
    return kOk;
}

int cmd_verify_bound(Session& s, const std::string& w_text, const std::string& factor_text)
{
    RingElement w = parse_element(s.ring(), w_text);
    auto factors = parse_factors(s.params(), factor_text);
    auto constants = s.constants();
    auto report = s.asymptotics().check_theorem_bound(w, factors, constants);
    Json j = {{"w", w.to_string()}, {"factors", factors_string(factors)}, {"h", constants.params.h()}};
    j.update(to_json(report));
    print_record(s, j, Format::Json);
    if (!report.satisfied()) {
        s.err() << "bound violated\n";
        return kBoundViolation;
    }
    return kOk;
}

struct OracleCase {
    std::vector<SymmFactor> factors;
};

int cmd_oracle_check(Session& s, const FactorArgs& a, int random_count, int max_k, int max_factors)
{
    const auto& params = s.params();
    std::vector<OracleCase> cases;
    if (random_count > 0) {
        if (max_k < 0 || max_factors < 1)
            throw ValidationError("oracle-check: --max-k must be >= 0 and --max-factors >= 1");
        std::mt19937_64 rng(s.seed());
        for (int c = 0; c < random_count; ++c) {
            auto len = static_cast<int>(rng() % static_cast<std::uint64_t>(max_factors)) + 1;
            OracleCase oc;
            for (int i = 0; i < len; ++i) {
                auto k = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_k + 1));
                auto m = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(params.modulus()));
                auto j = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(params.f()));
                oc.factors.push_back(make_factor(params, k, m, j));
            }
            cases.push_back(std::move(oc));
        }
    } else {
        cases.push_back({a.resolve(params)});
    }

    BrauerTable table(params);
    int failures = 0;
    struct Row {
        std::string factors;
        bool match;
        std::string rounding;
    };
    std::vector<Row> rows;
    for (const auto& c : cases) {
        RingElement ring_side = s.ring().reduce_product(c.factors);
        try {
            auto rep = table.oracle_decompose_report(c.factors, 0);
            bool match = rep.decomposition == ring_side;
            if (!match) {
                ++failures;
                s.err() << "mismatch for " << factors_string(c.factors) << ": ring " << ring_side.to_string()
                        << " vs oracle " << rep.decomposition.to_string() << "\n";
            }
            rows.push_back({factors_string(c.factors), match, sci(rep.max_rounding_error)});
        } catch (const OracleError& e) {
            ++failures;
            s.err() << "oracle failure for " << factors_string(c.factors) << ": " << e.what() << "\n";
            rows.push_back({factors_string(c.factors), false, "nan"});
        }
    }

    switch (s.format(Format::Csv)) {
    case Format::Json: {
        Json j = Json::array();
        for (const auto& r : rows)
            j.push_back({{"factors", r.factors}, {"match", r.match}, {"max_rounding_error", r.rounding}});
        s.out() << j.dump(2) << "\n";
        break;
    }
    case Format::Csv:
        s.out() << "factors,match,max_rounding_error\n";
        for (const auto& r : rows)
            s.out() << '"' << r.factors << "\"," << (r.match ? "true" : "false") << "," << r.rounding << "\n";
        break;
    case Format::Pretty:
        for (const auto& r : rows)
            s.out() << (r.match ? "ok    " : "FAIL  ") << r.factors << "  rounding " << r.rounding << "\n";
        break;
    }
    return failures == 0 ? kOk : kOracle;
}

int cmd_bm_qp(Session& s, int rho_n, int rho_m, const std::string& type, std::int64_t a_max)
{
    const auto& params = s.params();
    if (rho_n < 0 || rho_n > params.p() - 2)
        throw ValidationError("--rho-n must lie in [0, p-2]");
    auto rows = sweep_qp(s.ring(), {rho_n, params.reduce(rho_m)}, parse_variant(type), a_max);
    Rational worst = 0;
    for (const auto& r : rows)
        worst = std::max(worst, r.abs_error);
    s.err() << "max abs_error " << to_fraction_string(worst) << " over a <= " << a_max << "\n";

    switch (s.format(Format::Csv)) {
    case Format::Json: {
        Json j = Json::array();
        for (const auto& r : rows)
            j.push_back({{"a", r.a},
                         {"b", r.b},
                         {"gate", r.gate},
                         {"mu_exact", integer_json(r.mu_exact)},
                         {"mu_asymptotic", to_fraction_string(r.mu_asymptotic)},
                         {"abs_error", to_fraction_string(r.abs_error)}});
        s.out() << j.dump(2) << "\n";
        break;
    }
    case Format::Csv:
    case Format::Pretty:
        s.out() << "a,b,gate,mu_exact,mu_asymptotic,abs_error\n";
        for (const auto& r : rows)
            s.out() << r.a << "," << r.b << "," << (r.gate ? 1 : 0) << "," << r.mu_exact.get_str() << ","
                    << to_fraction_string(r.mu_asymptotic) << "," << to_fraction_string(r.abs_error) << "\n";
        break;
    }
    return kOk;
}

AlgebraicWeightFamily parse_family(const std::string& text)
{
    AlgebraicWeightFamily v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        try {
            std::size_t used = 0;
            std::int64_t n = std::stoll(item.substr(0, colon), &used);
            if (used != item.substr(0, colon).size())
                throw std::invalid_argument(item);
            std::int64_t m = 0;
            if (colon != std::string::npos) {
                auto rest = item.substr(colon + 1);
                m = std::stoll(rest, &used);
                if (used != rest.size())
                    throw std::invalid_argument(item);
            }
            v.pairs.emplace_back(n, m);
        } catch (const std::logic_error&) {
            throw ValidationError("malformed weight family entry '" + item + "' (expected n[:m])");
        }
    }
    if (v.pairs.empty())
        throw ValidationError("empty weight family");
    return v;
}

int cmd_bm_generic(Session& s, const std::string& weights_path, const std::string& type_path,
                   const std::string& family_text)
{
    const auto& params = s.params();
    auto intrinsics = intrinsics_from_json(params, read_json_file(weights_path));
    auto type = galois_type_from_json(s.ring(), read_json_file(type_path));
    auto family = parse_family(family_text);
    if (static_cast<int>(family.pairs.size()) != params.h())
        throw ValidationError("weight family has " + std::to_string(family.pairs.size()) + " entries, expected h = " +
                              std::to_string(params.h()));
    auto factors = factors_of_weight_family(params, family);
    auto a = a_sigma(s.ring(), factors, type);
    Integer mu = mu_aut(s.ring(), intrinsics, factors, type);

    switch (s.format(Format::Json)) {
    case Format::Json: {
        Json weights = Json::array();
        for (const auto& [label, mult] : intrinsics) {
            auto it = a.find(label);
            weights.push_back({{"n", label.n},
                               {"m", label.m},
                               {"mu_sigma", mult},
                               {"a_sigma", integer_json(it == a.end() ? Integer(0) : it->second)}});
        }
        Json j = {{"factors", factors_string(factors)},
                  {"type", type.label},
                  {"weights", weights},
                  {"mu_aut", integer_json(mu)}};
        s.out() << j.dump(2) << "\n";
        break;
    }
    case Format::Csv:
    case Format::Pretty:
        s.out() << "n,m,mu_sigma,a_sigma\n";
        for (const auto& [label, mult] : intrinsics) {
            auto it = a.find(label);
            s.out() << label.n << "," << label.m << "," << mult << ","
                    << (it == a.end() ? std::string("0") : it->second.get_str()) << "\n";
        }
        s.err() << "mu_aut " << mu.get_str() << "\n";
        break;
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Grothendieck ring of GL2(F_q) mod p: decompositions, asymptotic constants, Brauer oracle, "
                 "Breuil-Mezard multiplicities"};
    app.name("modgl2");
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--p", cfg.p, "characteristic p")->required();
    app.add_option("--f", cfg.f, "residue degree f (q = p^f)");
    app.add_option("--h", cfg.h, "degree h of K/Q_p, f | h (default f)");
    app.add_option("--format", cfg.format, "json, csv or pretty (default depends on the command)")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--cache-path", cfg.cache_path, "JSON cache file (default $MODP_GL2_CACHE)");
    app.add_option("--precision", cfg.precision, "oracle floating-point precision in bits");
    app.add_option("--seed", cfg.seed, "seed for randomized sweeps");

    FactorArgs dec_args;
    auto* dec = app.add_subcommand("decompose", "class of S_k(m)^[j], or of a product, in the L basis");
    dec_args.add_to(dec);

    std::int64_t ps_n = 0, ps_m = 0;
    bool ps_explain = false;
    auto* ps = app.add_subcommand("principal-series", "class of V(lambda_n)(m)");
    ps->add_option("--n", ps_n, "character index n")->required();
    ps->add_option("--m", ps_m, "determinant twist m");
    ps->add_flag("--explain", ps_explain, "list contributing paths with lambda and ell");

    bool om_all = false;
    std::optional<std::int64_t> om_n;
    auto* om = app.add_subcommand("omega", "number of principal-series classes containing L_n");
    om->add_flag("--all", om_all, "every n in [0, q-1]");
    om->add_option("--n", om_n, "a single n");

    std::int64_t sa_i = 0;
    auto* sa = app.add_subcommand("s-alpha", "normalized averaged principal series S-hat_i");
    sa->add_option("--i", sa_i, "central character i")->required();

    auto* co = app.add_subcommand("constants", "A, M, C_r and C for (p, f, h)");

    std::string vb_w, vb_factors;
    auto* vb = app.add_subcommand("verify-bound", "check the residual bound for W times a product of symmetric powers");
    vb->add_option("--w", vb_w, "W as '2*[L_1(0)] - [S_2(1)]' or a JSON ring element")->required();
    vb->add_option("--factors", vb_factors, "k:m:j,... (m, j default 0)")->required();

    FactorArgs oc_args;
    int oc_random = 0, oc_max_k = 60, oc_max_factors = 3;
    auto* oc = app.add_subcommand("oracle-check", "compare the ring against Brauer characters");
    oc_args.add_to(oc);
    oc->add_option("--random", oc_random, "number of random products (uses --seed)");
    oc->add_option("--max-k", oc_max_k, "largest k in random products");
    oc->add_option("--max-factors", oc_max_factors, "most factors in random products");

    auto* bm = app.add_subcommand("bm", "automorphic multiplicities");
    bm->require_subcommand(1);
    bm->fallthrough();
    int qp_n = 0, qp_m = 0;
    std::string qp_type = "trivial";
    std::int64_t qp_a_max = 100;
    auto* qp = bm->add_subcommand("qp", "K = Q_p sweep over (a, b)");
    qp->add_option("--rho-n", qp_n, "rho-bar parameter n in [0, p-2]")->required();
    qp->add_option("--rho-m", qp_m, "rho-bar parameter m");
    qp->add_option("--type", qp_type, "trivial or crystalline")->check(CLI::IsMember({"trivial", "crystalline"}));
    qp->add_option("--a-max", qp_a_max, "largest a");
    std::string gen_weights, gen_type, gen_family;
    auto* gen = bm->add_subcommand("generic", "mu_Aut for supplied intrinsic multiplicities and type class");
    gen->add_option("--weights", gen_weights, "JSON file [{\"n\":..,\"m\":..,\"mu\":..}]")->required();
    gen->add_option("--type", gen_type, "JSON file {\"dim\":..,\"label\":..,\"class\":{..}}")->required();
    gen->add_option("--family", gen_family, "n_1:m_1,...,n_h:m_h")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }

    try {
        Session s(cfg, out, err);
        int code = kOk;
        if (dec->parsed())
            code = cmd_decompose(s, dec_args);
        else if (ps->parsed())
            code = cmd_principal_series(s, ps_n, ps_m, ps_explain);
        else if (om->parsed())
            code = cmd_omega(s, om_all, om_n);
        else if (sa->parsed())
            code = cmd_s_alpha(s, sa_i);
        else if (co->parsed())
            code = cmd_constants(s);
        else if (vb->parsed())
            code = cmd_verify_bound(s, vb_w, vb_factors);
        else if (oc->parsed())
            code = cmd_oracle_check(s, oc_args, oc_random, oc_max_k, oc_max_factors);
        else if (qp->parsed())
            code = cmd_bm_qp(s, qp_n, qp_m, qp_type, qp_a_max);
        else if (gen->parsed())
            code = cmd_bm_generic(s, gen_weights, gen_type, gen_family);
        s.finish();
        return code;
    } catch (const OracleError& e) {
        err << "oracle error: " << e.what() << "\n";
        return kOracle;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

} // namespace modgl2::cli
