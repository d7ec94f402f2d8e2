#pragma once

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leo/cli.hpp"
#include "leo/subgroup_lattice.hpp"

namespace leo::cli {

using ojson = nlohmann::ordered_json;

struct Globals {
    bool json = false;
    unsigned max_m = 12;
    bool assume_p_maximal = false;
    std::string seed_order = "canonical";  // or "reverse"; never affects results
    unsigned jobs = 1;
};

using Action = std::function<CommandResult()>;

// Each registrar adds its verbs and, when a verb is parsed, stores its action.
void register_group_verbs(CLI::App& app, const Globals& g, Action& action);
void register_leopoldt_verbs(CLI::App& app, const Globals& g, Action& action);

ojson z_json(const mpz_class& z);
mpz_class z_from_json(const ojson& j);
std::string q_str(const mpq_class& q);
mpq_class q_from_json(const ojson& j);

std::vector<unsigned long> parse_prime_list(const std::string& s);
// "a..b", "a,b,c" or a single value.
std::vector<mpz_class> parse_t_list(const std::string& s);

struct GroupSource {
    std::string ref;
    std::vector<std::string> gens;
    std::size_t degree = 0;
};

std::shared_ptr<const groups::PermGroup> load_group(const GroupSource& src);
std::shared_ptr<const groups::SubgroupLattice> load_lattice(const GroupSource& src);

CommandResult ok_result(std::string command, ojson payload, std::string summary);

}  // namespace leo::cli
