#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "galcoh/cohomology.hpp"
#include "galcoh/config.hpp"
#include "galcoh/errors.hpp"
#include "galcoh/local_symbols.hpp"
#include "galcoh/real_galois.hpp"
#include "galcoh/verify.hpp"

using namespace galcoh;

namespace {

std::string elem_tuple(const FiniteGroup& g, const std::vector<Elem>& args) {
    std::string out = "(";
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + g.label(args[i]);
    return out + ")";
}

std::string mod_elem(const ModElem& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + ")";
}

int cmd_compute(const std::string& groups_path, const std::string& module_path, int degree, bool basis) {
    const GroupLibrary groups = load_group_config(groups_path);
    const ModulePtr m = load_module_config(module_path, groups);
    if (degree < 0 || degree > 2) throw InputError("degree must be 0, 1 or 2");
    const CohomologyGroup h = cohomology_group(m, degree);
    std::cout << "H^" << degree << " = " << h.describe() << "\n";
    if (!basis) return 0;
    const FiniteGroup& g = m->group();
    for (std::size_t i = 0; i < h.num_generators(); ++i) {
        const Cochain& c = h.basis()[i];
        std::cout << "generator " << i << " of order " << h.invariant_factors()[i] << ":\n";
        bool any = false;
        for (std::size_t t = 0; t < c.num_tuples(); ++t) {
            const ModElem v = c.value_at(t);
            if (m->coefficients().is_zero(v)) continue;
            any = true;
            std::cout << "  " << elem_tuple(g, c.tuple_of(t)) << " -> " << mod_elem(v) << "\n";
        }
        if (!any) std::cout << "  all values zero\n";
    }
    return 0;
}

int cmd_symbol(const std::string& a_str, const std::string& b_str, const std::string& place) {
    const mpq_class a = parse_rational(a_str);
    const mpq_class b = parse_rational(b_str);
    if (a == 0 || b == 0) throw InputError("Hilbert symbol arguments must be nonzero");
    const Place v = Place::parse(place);
    const int s = hilbert_symbol(a, b, v);
    std::cout << (s == 1 ? "+1 (inv 0)" : "-1 (inv 1/2)") << "\n";
    return 0;
}

int cmd_verify(bool human, const std::string& filter, bool timings, const std::string& expectations_path) {
    const auto expectations = load_expectations(expectations_path.empty() ? default_expectations_path() : expectations_path);
    if (!filter.empty()) {
        bool known = false;
        for (const auto& e : expectations) {
            if (e.id == filter || std::find(e.tags.begin(), e.tags.end(), filter) != e.tags.end()) known = true;
        }
        if (!known) throw InputError("no check has id or tag '" + filter + "'");
    }
    const VerificationReport r = run_verification(expectations, filter);
    std::cout << (human ? report_human(r, timings) : report_json(r, timings));
    return r.all_passed() ? 0 : 1;
}

std::string certificate_str(const std::optional<std::vector<ModElem>>& cert) {
    if (!cert) return "";
    std::string out;
    for (std::size_t v = 0; v < cert->size(); ++v) out += (v ? " x " : "") + mod_elem((*cert)[v]);
    return out;
}

int cmd_condition(const std::string& path, bool json_out) {
    const ConditionInput in = load_condition_input(path);
    const ConditionResult star = check_condition_star(in);
    const ConditionResult dstar = check_condition_double_star(in);
    if (json_out) {
        nlohmann::json doc = {{"input", condition_input_to_json(in)},
                              {"star", {{"holds", star.holds}, {"summary", star.summary}}},
                              {"double_star", {{"holds", dstar.holds}, {"summary", dstar.summary}}}};
        if (star.certificate) doc["star"]["certificate"] = *star.certificate;
        if (dstar.certificate) doc["double_star"]["certificate"] = *dstar.certificate;
        std::cout << doc.dump(2) << "\n";
        return 0;
    }
    std::cout << "(*)  " << (star.holds ? "holds" : "fails");
    if (star.certificate) std::cout << "; unreachable " << certificate_str(star.certificate);
    std::cout << "\n(**) " << (dstar.holds ? "holds" : "fails");
    if (dstar.certificate) std::cout << "; unreachable " << certificate_str(dstar.certificate);
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite group cohomology and real Galois cohomology workbench"};
    app.require_subcommand(1);

    std::string groups_path, module_path;
    int degree = 0;
    bool basis = false;
    auto* compute = app.add_subcommand("compute", "Cohomology of a module given by config files");
    compute->add_option("groups", groups_path, "Group definitions (JSON)")->required();
    compute->add_option("module", module_path, "Module definition (JSON)")->required();
    compute->add_option("degree", degree, "Cohomological degree (0, 1 or 2)")->required();
    compute->add_flag("--basis", basis, "Print representative cocycles of the generators");

    std::string sym_a, sym_b, sym_place;
    auto* symbol = app.add_subcommand("symbol", "Hilbert symbol (a, b)_v");
    symbol->add_option("a", sym_a, "Nonzero rational")->required();
    symbol->add_option("b", sym_b, "Nonzero rational")->required();
    symbol->add_option("place", sym_place, "'real' or a prime")->required();
    // lets "-1" through as a value
    symbol->positionals_at_end();

    bool human = false, json_flag = false, timings = false;
    std::string filter, expectations;
    auto* verify = app.add_subcommand("verify-paper", "Run the built-in verification checks");
    verify->add_flag("--json", json_flag, "JSON report (default)");
    verify->add_flag("--human", human, "Readable report");
    verify->add_option("--filter", filter, "Only checks with this id or tag");
    verify->add_flag("--timings", timings, "Include elapsed times");
    verify->add_option("--expectations", expectations, "Expectation file");

    std::string condition_path;
    bool condition_json = false;
    auto* condition = app.add_subcommand("condition-check", "Check conditions (*) and (**) on finite place data");
    condition->add_option("input", condition_path, "Condition input (JSON)")->required();
    condition->add_flag("--json", condition_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*compute) return cmd_compute(groups_path, module_path, degree, basis);
        if (*symbol) return cmd_symbol(sym_a, sym_b, sym_place);
        if (*verify) {
            if (human && json_flag) throw InputError("--json and --human are exclusive");
            return cmd_verify(human, filter, timings, expectations);
        }
        if (*condition) return cmd_condition(condition_path, condition_json);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
