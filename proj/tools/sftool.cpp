#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sft/errors.hpp"
#include "sft/report.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kSpecError = 2, kBudget = 3, kNumeric = 4, kIo = 5 };

struct Options {
    std::string spec_path;
    std::size_t max_n = 10;
    std::uint64_t budget = sft::kDefaultBudget;
    std::string cylinder;
    std::string word;
    std::string route = "all";
    bool json = true;
};

void emit(const sft::Json& report, bool json) {
    if (json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << sft::render_table(report);
}

int run(const std::string& command, const Options& o) {
    const auto doc = sft::load_spec_document(o.spec_path);
    const auto& spec = doc.spec;
    if (command == "enumerate") {
        emit(sft::enumerate_report(spec, o.max_n, o.budget), o.json);
    } else if (command == "genfun") {
        emit(sft::genfun_report(spec), o.json);
    } else if (command == "perron") {
        emit(sft::perron_report(spec), o.json);
    } else if (command == "measure") {
        std::vector<sft::MeasureRoute> routes;
        if (o.route != "all") routes.push_back(sft::parse_route(o.route));
        emit(sft::measure_report(spec, o.cylinder, routes), o.json);
    } else if (command == "escape") {
        emit(sft::escape_report(spec, o.word, o.max_n, o.budget), o.json);
    } else if (command == "verify") {
        sft::VerifyOptions vo;
        vo.max_n = o.max_n;
        vo.budget = o.budget;
        vo.expected = doc.expected;
        const auto result = sft::verify_spec(spec, vo);
        emit(sft::verify_report(spec, result, vo), o.json);
        return result.passed() ? kOk : kVerifyFailed;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counting, generating functions, Perron data and measures for shifts of finite type "
                 "with repeated words"};
    app.set_version_flag("--version", std::string(sft::kToolName) + " " + sft::kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    bool table = false;
    app.add_flag("--json", o.json, "JSON output (default)");
    app.add_flag("--table", table, "plain-text tables");
    app.add_option("--budget", o.budget, "maximum nodes visited by enumeration")->check(CLI::PositiveNumber);

    auto spec_opt = [&](CLI::App* sub) {
        sub->add_option("--spec", o.spec_path, "spec file, or - for standard input")->required();
    };

    auto* enumerate = app.add_subcommand("enumerate", "language counts f, g, f_a for n <= max-n");
    spec_opt(enumerate);
    enumerate->add_option("--max-n", o.max_n, "largest word length")->capture_default_str();

    auto* genfun = app.add_subcommand("genfun", "generating functions and R(z)");
    spec_opt(genfun);

    auto* perron = app.add_subcommand("perron", "Perron root, eigenvectors and normalization");
    spec_opt(perron);

    auto* measure = app.add_subcommand("measure", "Parry measure of a cylinder");
    spec_opt(measure);
    measure->add_option("--cylinder", o.cylinder, "vertex word, or X*Y#j steps joined by commas")->required();
    measure->add_option("--route", o.route, "parry, combinatorial, markov or all")
        ->check(CLI::IsMember({"parry", "combinatorial", "markov", "shannon_parry", "all"}))
        ->capture_default_str();

    auto* escape = app.add_subcommand("escape", "path counts avoiding a hole and escape rate");
    spec_opt(escape);
    auto* word = escape->add_option("--word", o.word, "hole as X*Y#j steps");
    escape->add_option("--cylinder", o.word, "alias of --word")->excludes(word);
    escape->add_option("--max-n", o.max_n, "longest path")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run every invariant check");
    spec_opt(verify);
    verify->add_option("--max-n", o.max_n, "oracle length")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kSpecError;
    }
    if (table) o.json = false;
    if (escape->parsed() && o.word.empty()) {
        std::cerr << "escape: --word is required\n";
        return kSpecError;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), o);
    } catch (const sft::SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kSpecError;
    } catch (const sft::DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kSpecError;
    } catch (const sft::BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const sft::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const sft::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    }
}
