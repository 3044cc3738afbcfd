#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbifunctor/cli/manifest.hpp"

namespace orbifunctor {

/// Deterministic result of one command. Timing is kept out of the body so
/// the rendered report is byte-stable for a fixed manifest.
struct Report {
    struct Verdict {
        std::string name;
        bool pass = true;
        std::string detail;
    };
    std::string command;
    std::string digest;
    std::vector<Verdict> verdicts;
    /// (label, description)
    std::vector<std::pair<std::string, std::string>> witnesses;
    /// (label, canonical form "Z^r ⊕ Z/t1 ⊕ ...")
    std::vector<std::pair<std::string, std::string>> groups;
    std::vector<std::string> notes;

    bool pass() const;
    std::string to_json() const;
    std::string to_table() const;
};

struct RunOptions {
    std::optional<int> degree;
    std::optional<std::size_t> truncation;
    std::optional<FgMode> mode;
};

const std::vector<std::string>& command_names();

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Throws InputError on an unknown command or a missing section.
Report run(const std::string& command, const Manifest& m, const RunOptions& options = {});

/// 0 all verdicts pass, 1 a verdict failed, 2 input error.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInput = 2 };

} // namespace orbifunctor
