#include "mixedcore/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "mixedcore/core.hpp"
#include "mixedcore/json_io.hpp"
#include "mixedcore/properties.hpp"

namespace mixedcore::cli {

using nlohmann::json;

namespace {

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A command's result before it is wrapped in the report envelope.
struct Result {
    int code = Success;
    json outcome;
};

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 unavailable");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

// Collects every input (file contents and option values) into one digest.
class Inputs {
public:
    std::string read(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw IoFailure("cannot read '" + path + "'");
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        add(path, buffer.str());
        return buffer.str();
    }

    json read_json(const std::string& path) {
        const std::string text = read(path);
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            throw IoFailure("'" + path + "' is not valid JSON: " + e.what());
        }
    }

    void add(const std::string& label, const std::string& value) {
        material_ += label;
        material_ += '\0';
        material_ += std::to_string(value.size());
        material_ += '\0';
        material_ += value;
    }

    std::string digest() const { return sha256_hex(material_); }

private:
    std::string material_;
};

json error_json(const Error& e) {
    json out = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (const auto* h = dynamic_cast<const HypothesisViolation*>(&e)) {
        out["hypothesis"] = h->hypothesis();
    }
    if (const auto* c = dynamic_cast<const CertificationFailure*>(&e)) {
        out["evidence"] = c->evidence();
    }
    return out;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::HypothesisViolation: return HypothesisFailure;
        case ErrorCode::CertificationFailure: return CertificationOrProperty;
        default: return ValidationFailure;
    }
}

json witness_json(const BlockingWitness& w) {
    json fractions = json::object();
    for (const auto& [id, s] : w.fractions) {
        fractions[id] = s.str();
    }
    json bundles = json::object();
    for (const auto& [id, b] : w.per_capita_bundles) {
        bundles[id] = io::to_json(b);
    }
    return {{"included_atoms", w.included_atoms},
            {"fractions", std::move(fractions)},
            {"per_capita_bundles", std::move(bundles)},
            {"margin", w.margin.str()}};
}

json equilibria_json(const std::vector<CompetitiveEquilibrium>& equilibria) {
    json list = json::array();
    for (const auto& eq : equilibria) {
        list.push_back({{"price", io::to_json(eq.price.prices())}, {"allocation", io::to_json(eq.allocation)}});
    }
    return list;
}

json core_max_json(const CoreMaxResult& r) {
    return {{"atom", r.atom},
            {"value", r.value.str()},
            {"allocation", io::to_json(r.allocation)},
            {"trivial", r.trivial}};
}

json pareto_json(const ParetoResult& r) {
    json out = {{"optimal", r.optimal}, {"delta", r.delta.str()}};
    if (r.witness) {
        out["witness"] = io::to_json(*r.witness);
    }
    return out;
}

RationalVector parse_price_list(const std::string& text) {
    RationalVector prices;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        const auto value = Rational::parse(token);
        if (!value) {
            throw Error(ErrorCode::MalformedRational, "price entry '" + token + "' is not a fraction");
        }
        prices.push_back(*value);
    }
    return prices;
}

// A certificate file may hold the bare certificate or a full certify report.
const json& certificate_body(const json& document) {
    if (document.is_object() && document.contains("outcome") && document.contains("command")) {
        return document.at("outcome");
    }
    return document;
}

Result cmd_validate(Inputs& inputs, const std::string& path) {
    const json document = inputs.read_json(path);
    json violations = json::array();
    try {
        const Economy e = io::parse_economy(document);
        for (const auto& v : economy_violations(e)) {
            violations.push_back({{"code", std::string(to_string(v.code))}, {"message", v.message}});
        }
    } catch (const Error& e) {
        violations.push_back({{"code", std::string(to_string(e.code()))}, {"message", e.what()}});
    }
    if (violations.empty()) {
        return {Success, "valid"};
    }
    return {ValidationFailure, {{"violations", std::move(violations)}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact analysis of two-type linear exchange economies with atoms"};
    app.require_subcommand(1);

    std::string economy_path;
    std::string second_path;
    std::string alloc_path;
    std::string price_text;
    std::string lambda_path;
    std::string out_path;
    std::uint64_t seed = 1;
    std::size_t trials = 20;

    auto add_economy = [&](CLI::App* sub) {
        sub->add_option("economy", economy_path, "Economy JSON document")->required();
        sub->add_option("--out", out_path, "Also write the outcome JSON to FILE");
    };

    auto* validate = app.add_subcommand("validate", "Check an economy document");
    add_economy(validate);
    auto* certify = app.add_subcommand("certify", "Certify a non-competitive core allocation");
    add_economy(certify);
    auto* verify = app.add_subcommand("verify", "Re-check a certificate against its economy");
    add_economy(verify);
    verify->add_option("certificate", second_path, "Certificate JSON (bare or a certify report)")->required();
    auto* report = app.add_subcommand("report", "Pareto check, equilibria and core-max allocation");
    add_economy(report);
    auto* core_max = app.add_subcommand("core-max", "Atom-optimal core allocation");
    add_economy(core_max);
    auto* find_eq = app.add_subcommand("find-eq", "All competitive equilibria found by support enumeration");
    add_economy(find_eq);
    auto* check_eq = app.add_subcommand("check-eq", "Test whether (price, allocation) is competitive");
    add_economy(check_eq);
    check_eq->add_option("--price", price_text, "Comma-separated fractions, e.g. 1/2,1/2")->required();
    check_eq->add_option("--alloc", alloc_path, "Allocation JSON document")->required();
    auto* block = app.add_subcommand("block", "Search for a blocking coalition");
    add_economy(block);
    block->add_option("--alloc", alloc_path, "Allocation JSON document")->required();
    auto* rescale_cmd = app.add_subcommand("rescale", "Rescale cohorts by per-cohort factors");
    add_economy(rescale_cmd);
    rescale_cmd->add_option("--lambda", lambda_path, "JSON map from cohort id to factor")->required();
    rescale_cmd->add_option("--alloc", alloc_path, "Allocation to transport along");
    auto* suite = app.add_subcommand("suite", "Seeded randomized property campaign");
    suite->add_option("--seed", seed, "Campaign seed");
    suite->add_option("--trials", trials, "Instances per property (>= 1)")->check(CLI::PositiveNumber);
    suite->add_option("--out", out_path, "Also write the outcome JSON to FILE");

    std::vector<std::string> argv_storage{"mixedcore"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, err, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, err, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return UsageOrIo;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string command = chosen->get_name();
    const auto started = std::chrono::steady_clock::now();
    Inputs inputs;
    inputs.add("command", command);

    using Handler = std::function<Result()>;
    const std::map<std::string, Handler> handlers = {
        {"validate", [&] { return cmd_validate(inputs, economy_path); }},
        {"certify",
         [&]() -> Result {
             const Economy e = io::read_economy(inputs.read_json(economy_path));
             return {Success, to_json(certify_noncompetitive_core(e))};
         }},
        {"verify",
         [&]() -> Result {
             const Economy e = io::read_economy(inputs.read_json(economy_path));
             const json document = inputs.read_json(second_path);
             const auto cert = certificate_from_json(certificate_body(document));
             const auto check = verify_certificate(e, cert);
             return {check.ok ? Success : CertificationOrProperty,
                     {{"ok", check.ok}, {"failures", check.failures}}};
         }},
        {"report",
         [&]() -> Result {
             const Economy e = io::read_economy(inputs.read_json(economy_path));
             json outcome = {{"pareto", pareto_json(pareto_check(e))}};
             if (e.cohorts.size() == 2) {
                 outcome["equilibria"] = equilibria_json(find_equilibrium(e));
             } else {
                 outcome["equilibria"] = nullptr;
             }
             const bool has_atom = std::any_of(e.cohorts.begin(), e.cohorts.end(),
                                               [](const Cohort& c) { return c.atomic; });
             if (e.cohorts.size() == 2 && has_atom) {
                 outcome["core_max"] = core_max_json(core_max_allocation(e));
             } else {
                 outcome["core_max"] = nullptr;
             }
             return {Success, std::move(outcome)};
         }},
        {"core-max",
         [&]() -> Result {
             const Economy e = io::read_economy(inputs.read_json(economy_path));
             return {Success, core_max_json(core_max_allocation(e))};
         }},
        {"find-eq",
         [&]() -> Result {
             const Economy e = io::read_economy(inputs.read_json(economy_path));
             return {Success, {{"equilibria", equilibria_json(find_equilibrium(e))}}};
         }},
        {"check-eq",
         [&]() -> Result {
             const Economy e = io::read_economy(inputs.read_json(economy_path));
             const Allocation x = io::parse_allocation(inputs.read_json(alloc_path));
             inputs.add("price", price_text);
             const PriceSystem p(parse_price_list(price_text));
             const auto check = check_competitive(e, p, x);
             json violations = json::array();
             for (const auto& v : check.violations) {
                 violations.push_back({{"cohort", v.cohort}, {"clause", v.clause}});
             }
             return {Success, {{"competitive", check.ok},
                               {"price", io::to_json(p.prices())},
                               {"violations", std::move(violations)}}};
         }},
        {"block",
         [&]() -> Result {
             const Economy e = io::read_economy(inputs.read_json(economy_path));
             const Allocation x = io::parse_allocation(inputs.read_json(alloc_path));
             const auto scan = scan_blocking_coalitions(e, x);
             json patterns = json::array();
             for (const auto& p : scan.patterns) {
                 patterns.push_back({{"members", p.members}, {"delta", p.delta.str()}});
             }
             json outcome = {{"blocked", scan.witness.has_value()}, {"patterns", std::move(patterns)}};
             if (scan.witness) {
                 outcome["witness"] = witness_json(*scan.witness);
             }
             return {Success, std::move(outcome)};
         }},
        {"rescale",
         [&]() -> Result {
             const Economy e = io::read_economy(inputs.read_json(economy_path));
             const Lambda lambda = io::parse_rational_map(inputs.read_json(lambda_path), "lambda");
             json outcome = {{"economy", io::to_json(rescale(e, lambda))}};
             if (!alloc_path.empty()) {
                 const Allocation x = io::parse_allocation(inputs.read_json(alloc_path));
                 require_shape(e, x);
                 outcome["allocation"] = io::to_json(transport_allocation(x, lambda));
             }
             return {Success, std::move(outcome)};
         }},
        {"suite",
         [&]() -> Result {
             inputs.add("seed", std::to_string(seed));
             inputs.add("trials", std::to_string(trials));
             const auto result = properties::run_suite(seed, trials);
             json outcome = result.to_json();
             outcome["seed"] = seed;
             outcome["trials"] = trials;
             if (!result.all_passed()) {
                 for (const auto& t : result.tallies) {
                     if (!t.ok()) {
                         err << "property " << t.property << " failed " << (t.trials - t.passed) << " of "
                             << t.trials << " trials\n";
                     }
                 }
             }
             return {result.all_passed() ? Success : CertificationOrProperty, std::move(outcome)};
         }},
    };

    Result result;
    try {
        result = handlers.at(command)();
    } catch (const IoFailure& e) {
        err << command << ": " << e.what() << '\n';
        result = {UsageOrIo, {{"error", {{"code", "IoFailure"}, {"message", e.what()}}}}};
    } catch (const Error& e) {
        err << command << ": " << e.what() << '\n';
        result = {exit_code_for(e), {{"error", error_json(e)}}};
    }

    if (!out_path.empty() && result.code == Success) {
        std::ofstream file(out_path, std::ios::binary);
        file << result.outcome.dump(2) << '\n';
        if (!file) {
            err << command << ": cannot write '" << out_path << "'\n";
            return UsageOrIo;
        }
    }

    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
    json envelope = {{"command", command},
                     {"input_digest", inputs.digest()},
                     {"outcome", std::move(result.outcome)},
                     {"elapsed_ms", elapsed.count()}};
    out << envelope.dump(2) << '\n';
    return result.code;
}

}  // namespace mixedcore::cli
