#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spinlab::cli {

struct RunSpec {
    std::string command;
    std::optional<std::string> spec_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<std::string> out;
    std::optional<int> order;
    std::optional<int> p;
};

const std::vector<std::string>& command_names();

// 0 when every check passes, 1 on a failed check, 2 on a malformed spec.
int run_command(const RunSpec& spec);

}  // namespace spinlab::cli
