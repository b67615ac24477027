#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "htl/htl.hpp"
#include "htl/json_io.hpp"
#include "htl/verify.hpp"

namespace htl::cli {

// exit codes: 0 ok, 2 validation error, 3 mathematical precondition failure,
// 4 verification failure
constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kPrecondition = 3;
constexpr int kVerification = 4;

namespace detail {

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ValidationError(std::string("JSON parse error in ") + path + ": " + e.what());
    }
    return j;
}

inline std::vector<GaussianRational> parse_scalar_list(const std::string& text) {
    std::vector<GaussianRational> out;
    std::string cur;
    std::stringstream ss(text);
    while (std::getline(ss, cur, ',')) out.push_back(GaussianRational::parse(cur));
    if (out.empty()) throw ValidationError("empty scalar list");
    return out;
}

inline void emit(const std::string& payload, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ValidationError("cannot open output file: " + out_path);
    f << payload;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json local_form_entry(const LocalForm& lf) {
    Json e = to_json(lf);
    e["pole_order"] = lf.form.k + 1;
    e["spectral_type"] = to_json(htl_spectral_type(lf.form));
    return e;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact unfolding of unramified normal forms"};
    app.require_subcommand(1);

    std::string input_path, params_text, format = "json", out_path;
    int k_arg = 1;
    std::uint64_t seed = 0;
    std::string suite = "all";

    auto add_common = [&](CLI::App* cmd, bool with_input, bool with_params) {
        if (with_input) cmd->add_option("--input", input_path, "input JSON file")->required();
        if (with_params) cmd->add_option("--params", params_text, "comma-separated exact scalars");
        cmd->add_option("--format", format, "output format: json or dot");
        cmd->add_option("--out", out_path, "write output to a file instead of stdout");
    };

    CLI::App* cmd_spectral = app.add_subcommand("spectral-type", "spectral type of a normal form");
    add_common(cmd_spectral, true, false);

    CLI::App* cmd_dh = app.add_subcommand("dh-membership", "deformation-space membership report");
    add_common(cmd_dh, true, true);

    CLI::App* cmd_unfold = app.add_subcommand("unfold", "unfold a normal form at given parameters");
    add_common(cmd_unfold, true, true);

    CLI::App* cmd_local = app.add_subcommand("local-forms", "split the unfolding into local normal forms");
    add_common(cmd_local, true, true);

    CLI::App* cmd_strata = app.add_subcommand("strata", "partition poset of the unfolding parameters");
    cmd_strata->add_option("--k", k_arg, "top pole level (partitions of {0..k})")->required();
    add_common(cmd_strata, false, false);

    CLI::App* cmd_painleve = app.add_subcommand("painleve2", "rank-2 pole-order-4 degeneration family report");
    cmd_painleve->add_option("--params", params_text,
                             "two comma-separated 4-tuples separated by ';' (defaults to a generic choice)");
    cmd_painleve->add_option("--format", format, "output format: json or dot");
    cmd_painleve->add_option("--out", out_path, "write output to a file instead of stdout");

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the randomized invariant suites");
    cmd_verify->add_option("--suite", suite, "rings|blockalg|spectral|unfold|orbit|connection|selftest|all");
    cmd_verify->add_option("--seed", seed, "seed for the randomized suites");
    cmd_verify->add_option("--out", out_path, "write output to a file instead of stdout");

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    if (format != "json" && format != "dot") {
        err << "error: unknown output format: " << format << "\n";
        return kValidation;
    }

    try {
        if (cmd_spectral->parsed()) {
            HTLForm h = htl_from_json(detail::read_json_file(input_path));
            Json j;
            j["spectral_type"] = to_json(htl_spectral_type(h));
            detail::emit(detail::dump(j), out_path, out);
            return kOk;
        }
        if (cmd_dh->parsed()) {
            HTLForm h = htl_from_json(detail::read_json_file(input_path));
            if (params_text.empty()) throw ValidationError("--params is required");
            UnfoldParams c(detail::parse_scalar_list(params_text));
            Json j;
            j["params"] = [&] {
                Json a = Json::array();
                for (const auto& v : c.c) a.push_back(to_json(v));
                return a;
            }();
            j["membership"] = to_json(dh_membership(h, c));
            detail::emit(detail::dump(j), out_path, out);
            return kOk;
        }
        if (cmd_unfold->parsed() || cmd_local->parsed()) {
            HTLForm h = htl_from_json(detail::read_json_file(input_path));
            if (params_text.empty()) throw ValidationError("--params is required");
            UnfoldParams c(detail::parse_scalar_list(params_text));
            DeformationSpaceReport membership = dh_membership(h, c);
            Json j;
            j["params"] = [&] {
                Json a = Json::array();
                for (const auto& v : c.c) a.push_back(to_json(v));
                return a;
            }();
            j["membership"] = to_json(membership);
            if (!membership.member) {
                detail::emit(detail::dump(j), out_path, out);
                err << "error: parameters lie outside the deformation space\n";
                return kPrecondition;
            }
            SetPartition stratum = classify_point(c.c);
            auto locals = local_forms(h, c);
            if (cmd_local->parsed()) {
                Json forms = Json::array();
                for (const auto& lf : locals) forms.push_back(detail::local_form_entry(lf));
                j["local_forms"] = std::move(forms);
                detail::emit(detail::dump(j), out_path, out);
                return kOk;
            }
            j["stratum"] = to_json(stratum);
            j["stratum_string"] = stratum.str();
            Json forms = Json::array();
            Json residues = Json::array();
            ScalarMatrix total = scalar_zero(h.n, h.n);
            for (const auto& lf : locals) {
                forms.push_back(detail::local_form_entry(lf));
                ScalarMatrix res = residue_moment(PrincipalPart::from_htl(lf.form, lf.point));
                total = total + res;
                Json r;
                r["point"] = to_json(lf.point);
                r["residue"] = to_json(res);
                r["trace"] = to_json(res.trace());
                residues.push_back(std::move(r));
            }
            j["local_forms"] = std::move(forms);
            j["residues"] = std::move(residues);
            j["residue_sum"] = to_json(total);
            detail::emit(detail::dump(j), out_path, out);
            return kOk;
        }
        if (cmd_strata->parsed()) {
            if (k_arg < 0 || k_arg > 8) throw ValidationError("strata: k must be between 0 and 8");
            StratumPoset poset = stratify(k_arg);
            if (format == "dot") {
                detail::emit(strata_to_dot(poset), out_path, out);
                return kOk;
            }
            Json j;
            j["k"] = k_arg;
            Json nodes = Json::array();
            for (const auto& p : poset.partitions) {
                Json node;
                node["partition"] = to_json(p);
                node["string"] = p.str();
                node["dimension"] = p.block_count();
                nodes.push_back(std::move(node));
            }
            j["partitions"] = std::move(nodes);
            Json edges = Json::array();
            for (const auto& [finer, coarser] : poset.hasse_edges) edges.push_back(Json::array({finer, coarser}));
            j["hasse_edges"] = std::move(edges);
            detail::emit(detail::dump(j), out_path, out);
            return kOk;
        }
        if (cmd_painleve->parsed()) {
            std::vector<GaussianRational> a{GaussianRational(0), GaussianRational(1), GaussianRational(3),
                                            GaussianRational(1)};
            std::vector<GaussianRational> b{GaussianRational(0), GaussianRational(2), GaussianRational(4),
                                            GaussianRational(-1)};
            if (!params_text.empty()) {
                auto split = params_text.find(';');
                if (split == std::string::npos)
                    throw ValidationError("painleve2: --params expects \"a0,a1,a2,a3;b0,b1,b2,b3\"");
                a = detail::parse_scalar_list(params_text.substr(0, split));
                b = detail::parse_scalar_list(params_text.substr(split + 1));
            }
            Painleve2Report report = painleve2_family(a, b);
            if (format == "dot") {
                detail::emit(painleve_to_dot(report), out_path, out);
                return kOk;
            }
            detail::emit(detail::dump(to_json(report)), out_path, out);
            return kOk;
        }
        if (cmd_verify->parsed()) {
            std::vector<std::string> names;
            if (suite == "all") {
                names = verify::suite_names();
            } else {
                names = {suite};
            }
            Json j;
            j["seed"] = seed;
            Json suites = Json::array();
            bool ok = true;
            for (const auto& name : names) {
                verify::SuiteResult result = verify::run_suite(name, seed);
                ok = ok && result.ok();
                Json s;
                s["suite"] = result.suite;
                Json checks = Json::array();
                for (const auto& c : result.checks) {
                    Json e;
                    e["name"] = c.name;
                    e["trials"] = c.trials;
                    e["passed"] = c.passed;
                    if (!c.passed) e["detail"] = c.detail;
                    checks.push_back(std::move(e));
                }
                s["checks"] = std::move(checks);
                s["ok"] = result.ok();
                suites.push_back(std::move(s));
            }
            j["suites"] = std::move(suites);
            j["ok"] = ok;
            detail::emit(detail::dump(j), out_path, out);
            return ok ? kOk : kVerification;
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kVerification;
    }
    err << "error: no command\n";
    return kValidation;
}

}  // namespace htl::cli
