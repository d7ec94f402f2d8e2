#include <algorithm>
#include <sstream>

#include "common.hpp"
#include "leo/error.hpp"
#include "leo/perm_group.hpp"

namespace leo::cli {

const char* status_name(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::Inconclusive: return "inconclusive";
        case Status::Error: return "error";
    }
    return "?";
}

int exit_code(const CommandResult& r) {
    switch (r.status) {
        case Status::Ok: return kExitOk;
        case Status::Inconclusive: return kExitInconclusive;
        case Status::Error: return r.usage_error ? kExitUsage : kExitError;
    }
    return kExitError;
}

ojson to_document(const CommandResult& r) {
    ojson d;
    d["status"] = status_name(r.status);
    d["command"] = r.command;
    d["payload"] = r.payload;
    return d;
}

std::string render(const CommandResult& r) {
    if (r.json_output) return to_document(r).dump(2) + "\n";
    std::string s = r.human_summary;
    if (!s.empty() && s.back() != '\n') s += '\n';
    return s;
}

ojson z_json(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

mpz_class z_from_json(const ojson& j) {
    if (j.is_string()) return mpz_class(j.get<std::string>());
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    throw Error(Errc::ParseError, "expected an integer, got " + j.dump());
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

mpq_class q_from_json(const ojson& j) {
    if (j.is_number_integer()) return mpq_class(z_from_json(j));
    if (!j.is_string()) throw Error(Errc::ParseError, "expected a rational, got " + j.dump());
    mpq_class q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw Error(Errc::ParseError, "bad rational " + j.dump());
    q.canonicalize();
    return q;
}

std::vector<unsigned long> parse_prime_list(const std::string& s) {
    std::vector<unsigned long> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoul(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw Error(Errc::ParseError, "bad prime '" + item + "'");
        }
    }
    if (out.empty()) throw Error(Errc::ParseError, "empty prime list");
    return out;
}

std::vector<mpz_class> parse_t_list(const std::string& s) {
    auto z = [](const std::string& x) {
        mpz_class v;
        if (x.empty() || v.set_str(x, 10) != 0) throw Error(Errc::ParseError, "bad parameter '" + x + "'");
        return v;
    };
    std::vector<mpz_class> out;
    if (auto dots = s.find(".."); dots != std::string::npos) {
        mpz_class a = z(s.substr(0, dots)), b = z(s.substr(dots + 2));
        if (b < a) throw Error(Errc::ParseError, "empty range " + s);
        if (b - a > 100000) throw Error(Errc::InvalidArgument, "range too long: " + s);
        for (mpz_class t = a; t <= b; ++t) out.push_back(t);
        return out;
    }
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(z(item));
    if (out.empty()) throw Error(Errc::ParseError, "empty parameter list");
    return out;
}

std::shared_ptr<const groups::PermGroup> load_group(const GroupSource& src) {
    using namespace groups;
    if (!src.gens.empty()) {
        std::size_t n = src.degree;
        if (n == 0) {
            // smallest degree covering every point mentioned
            for (const auto& c : src.gens) {
                std::string digits;
                for (char ch : c + " ") {
                    if (std::isdigit(static_cast<unsigned char>(ch))) {
                        digits += ch;
                    } else if (!digits.empty()) {
                        n = std::max<std::size_t>(n, std::stoul(digits) + 1);
                        digits.clear();
                    }
                }
            }
        }
        std::vector<Perm> perms;
        for (const auto& c : src.gens) perms.push_back(Perm::parse_cycles(n, c));
        auto g = group_from_generators(n, perms);
        g.set_name(src.ref.empty() ? "custom" : src.ref);
        return std::make_shared<const PermGroup>(std::move(g));
    }
    if (src.ref.empty()) throw Error(Errc::InvalidArgument, "either --group or --gen is required");
    return std::make_shared<const PermGroup>(parse_group_ref(src.ref));
}

std::shared_ptr<const groups::SubgroupLattice> load_lattice(const GroupSource& src) {
    return std::make_shared<const groups::SubgroupLattice>(load_group(src));
}

CommandResult ok_result(std::string command, ojson payload, std::string summary) {
    CommandResult r;
    r.command = std::move(command);
    r.payload = std::move(payload);
    r.human_summary = std::move(summary);
    return r;
}

namespace {

std::string command_path(const CLI::App& app) {
    std::string path;
    const CLI::App* cur = &app;
    while (true) {
        auto subs = cur->get_subcommands();
        if (subs.empty()) break;
        cur = subs.front();
        path += (path.empty() ? "" : " ") + cur->get_name();
    }
    return path;
}

CommandResult error_result(std::string command, const std::string& code, const std::string& message, bool usage) {
    CommandResult r;
    r.status = Status::Error;
    r.command = std::move(command);
    r.payload["error"] = code;
    r.payload["message"] = message;
    r.human_summary = "error: " + message;
    r.usage_error = usage;
    return r;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
    Globals g;
    CLI::App app{"Exact group-theoretic and p-adic unit computations", "leo"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_flag("--json", g.json, "print a machine-readable JSON document");
    app.add_option("--max-m", g.max_m, "largest filtration level to try")->check(CLI::Range(2u, 64u));
    app.add_flag("--assume-p-maximal", g.assume_p_maximal, "skip the p-maximality check of Z[x]/(f)");
    app.add_option("--seed-order", g.seed_order, "processing order of candidates; output order is always canonical")
        ->check(CLI::IsMember({"canonical", "reverse"}));
    app.add_option("--jobs", g.jobs, "worker threads for scans")->check(CLI::Range(1u, 256u));

    Action action;
    register_group_verbs(app, g, action);
    register_leopoldt_verbs(app, g, action);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        auto r = ok_result("help", ojson::object(), app.help());
        return r;
    } catch (const CLI::CallForAllHelp&) {
        return ok_result("help", ojson::object(), app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        auto r = error_result(command_path(app), "UsageError", e.what(), true);
        r.json_output = std::find(args.begin(), args.end(), "--json") != args.end();
        return r;
    }
    std::string cmd = command_path(app);
    CommandResult r;
    try {
        if (!action) throw Error(Errc::InvalidArgument, "no verb given");
        r = action();
    } catch (const Error& e) {
        r = error_result(cmd, errc_name(e.code()), e.what(), false);
    } catch (const nlohmann::json::exception& e) {
        r = error_result(cmd, "ParseError", e.what(), false);
    } catch (const std::exception& e) {
        r = error_result(cmd, "InternalError", e.what(), false);
    }
    if (r.command.empty()) r.command = cmd;
    r.json_output = g.json;
    return r;
}

}  // namespace leo::cli
