#include "endcb/classify.hpp"
#include "endcb/normalize.hpp"
#include "endcb/oracle.hpp"
#include "endcb/order.hpp"
#include "endcb/parser.hpp"
#include "endcb/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace endcb;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitScope = 3;
constexpr int kExitUsage = 64;

struct Options {
    std::string format = "text";
    std::uint64_t depth = 8;
    bool explain = false;
};

// Accepts either a full surface description or a bare end term.
Term input_term(const std::string& text) {
    if (text.find("surface") != std::string::npos) return parse_surface(text).ends;
    return parse_term(text);
}

int report_parse_error(const ParseError& e) {
    std::cerr << "parse error at " << e.line << ":" << e.column << ": " << e.what()
              << "\n";
    return kExitInput;
}

int report_violations(const std::vector<Violation>& vs) {
    for (const Violation& v : vs)
        std::cerr << "invalid: " << (v.path.empty() ? "/" : v.path) << ": " << v.message
                  << "\n";
    return kExitInput;
}

void emit(const Options& opt, const std::string& command, const std::string& input,
          const json& structured, const std::string& text) {
    if (opt.format == "structured") {
        json report = {{"command", command},
                       {"input", input},
                       {"version", kToolVersion},
                       {"result", structured}};
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

int cmd_parse(const Options& opt, const std::string& text) {
    Surface s = parse_surface(text);
    auto vs = validate(s);
    if (!vs.empty()) return report_violations(vs);
    emit(opt, "parse", text, surface_to_json(s), print(s) + "\n");
    return kExitOk;
}

int cmd_normalize(const Options& opt, const std::string& text) {
    Term t = input_term(text);
    auto vs = validate(t);
    if (!vs.empty()) return report_violations(vs);
    Term n = normalize(t);
    emit(opt, "normalize", text, term_to_json(n), print(n) + "\n");
    return kExitOk;
}

int cmd_rank(const Options& opt, const std::string& text) {
    Term t = input_term(text);
    auto vs = validate(t);
    if (!vs.empty()) return report_violations(vs);
    auto m = ms_invariant(t);
    if (!m) {
        emit(opt, "rank", text, json{{"countable", false}},
             "not countable: no Mazurkiewicz-Sierpinski invariant\n");
        return kExitOk;
    }
    json j{{"countable", true},
           {"alpha", m->alpha.str()},
           {"n", m->n},
           {"genus_profile", m->profile.mixed
                                 ? std::string("mixed")
                                 : (!m->profile.threshold
                                        ? std::string("none")
                                        : (m->profile.threshold->is_zero()
                                               ? std::string("all")
                                               : "ge(" + m->profile.threshold->str() +
                                                     ")"))}};
    std::string text_out = "alpha = " + m->alpha.str() + ", n = " + std::to_string(m->n) +
                           ", genus profile = " + j["genus_profile"].get<std::string>() +
                           "\n";
    emit(opt, "rank", text, j, text_out);
    return kExitOk;
}

int cmd_order(const Options& opt, const std::string& text) {
    Term t = input_term(text);
    auto vs = validate(t);
    if (!vs.empty()) return report_violations(vs);
    ClassPoset p = classes(t);
    emit(opt, "order", text, poset_to_json(p), poset_dot(p));
    return kExitOk;
}

int cmd_classify(const Options& opt, const std::string& text) {
    Surface s = parse_surface(text);
    auto vs = validate(s);
    if (!vs.empty()) return report_violations(vs);
    if (!is_infinite_type(s)) {
        std::cerr << "scope error: finite-type surface\n";
        return kExitScope;
    }
    Verdict v = classify(s, opt.depth);
    emit(opt, "classify", text, verdict_to_json(v, opt.explain),
         verdict_text(v, opt.explain));
    return kExitOk;
}

int cmd_corpus(const Options& opt, const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        std::cerr << "no fixtures directory: " << dir << "\n";
        return kExitInput;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".surface") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    int failures = 0;
    for (const fs::path& f : files) {
        std::ifstream in(f);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        fs::path golden = f;
        golden.replace_extension(".expected.json");
        if (!fs::exists(golden)) {
            std::cout << "SKIP " << f.filename().string() << " (no golden)\n";
            continue;
        }
        std::ifstream gin(golden);
        json expected = json::parse(gin);
        bool ok = true;
        std::string detail;
        try {
            Surface s = parse_surface(text);
            Verdict v = classify(s);
            json got = verdict_to_json(v, false);
            for (auto& [key, val] : expected.at("verdicts").items()) {
                if (got["verdicts"][key] != val) {
                    ok = false;
                    detail += key + ": got " + got["verdicts"][key].get<std::string>() +
                              ", want " + val.get<std::string>() + "; ";
                }
            }
            if (expected.contains("certificates")) {
                std::vector<std::string> got_kinds;
                for (const auto& c : got["certificates"])
                    got_kinds.push_back(c["kind"].get<std::string>());
                for (const auto& want : expected["certificates"]) {
                    std::string w = want.get<std::string>();
                    if (std::find(got_kinds.begin(), got_kinds.end(), w) ==
                        got_kinds.end()) {
                        ok = false;
                        detail += "missing certificate " + w + "; ";
                    }
                }
            }
            if (expected.contains("witness")) {
                for (auto& [key, val] : expected.at("witness").items()) {
                    if (!got.contains("witness") || got["witness"][key] != val) {
                        ok = false;
                        detail += "witness " + key + " mismatch; ";
                    }
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        std::cout << (ok ? "PASS " : "FAIL ") << f.filename().string();
        if (!ok) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    }
    (void)opt;
    return failures == 0 ? kExitOk : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"end-space classifier for big mapping class group geometry"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--depth", opt.depth, "derivative fingerprint depth");
    app.add_flag("--explain", opt.explain, "print the full rule trace");

    std::string input;
    std::string dir = "fixtures";

    auto* parse_cmd = app.add_subcommand("parse", "parse and validate a surface");
    parse_cmd->add_option("surface", input, "surface description")->required();
    auto* norm_cmd = app.add_subcommand("normalize", "canonical form of an end term");
    norm_cmd->add_option("term", input, "end term or surface")->required();
    auto* rank_cmd =
        app.add_subcommand("rank", "Mazurkiewicz-Sierpinski invariant of a countable term");
    rank_cmd->add_option("term", input, "end term or surface")->required();
    auto* order_cmd = app.add_subcommand("order", "end class poset as a DOT digraph");
    order_cmd->add_option("term", input, "end term or surface")->required();
    auto* classify_cmd = app.add_subcommand("classify", "classify a surface");
    classify_cmd->add_option("surface", input, "surface description")->required();
    auto* corpus_cmd = app.add_subcommand("corpus", "run the bundled fixture corpus");
    corpus_cmd->add_option("--dir", dir, "fixtures directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    auto started = std::chrono::steady_clock::now();
    int rc = kExitOk;
    try {
        if (parse_cmd->parsed()) rc = cmd_parse(opt, input);
        else if (norm_cmd->parsed()) rc = cmd_normalize(opt, input);
        else if (rank_cmd->parsed()) rc = cmd_rank(opt, input);
        else if (order_cmd->parsed()) rc = cmd_order(opt, input);
        else if (classify_cmd->parsed()) rc = cmd_classify(opt, input);
        else if (corpus_cmd->parsed()) rc = cmd_corpus(opt, dir);
    } catch (const ParseError& e) {
        return report_parse_error(e);
    } catch (const ScopeError& e) {
        std::cerr << "scope error: " << e.what() << "\n";
        return kExitScope;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cerr << "# elapsed " << elapsed << " ms\n";
    return rc;
}
