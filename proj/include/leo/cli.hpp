#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace leo::cli {

enum class Status { Ok, Inconclusive, Error };

const char* status_name(Status s);

// Process exit codes. Usage errors are errors reported before any work ran.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

struct CommandResult {
    Status status = Status::Ok;
    std::string command;  // e.g. "leopoldt family"
    nlohmann::ordered_json payload = nlohmann::ordered_json::object();
    std::string human_summary;
    bool json_output = false;
    bool usage_error = false;
};

int exit_code(const CommandResult& r);

// Document printed under --json.
nlohmann::ordered_json to_document(const CommandResult& r);
std::string render(const CommandResult& r);

// args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace leo::cli
