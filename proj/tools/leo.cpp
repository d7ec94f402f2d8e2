#include <iostream>
#include <string>
#include <vector>

#include "leo/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto r = leo::cli::run(args);
    auto text = leo::cli::render(r);
    (r.status == leo::cli::Status::Error && !r.json_output ? std::cerr : std::cout) << text;
    return leo::cli::exit_code(r);
}
