#pragma once

#include <stdexcept>
#include <string>

namespace schottky {

// Every failure carries the name of the invariant it violates; the CLI maps
// NonConvergence-type failures to exit status 2 and everything else to 1.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + (detail.empty() ? "" : ": " + detail)), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }
    bool numeric() const {
        return kind_ == "NonConvergence" || kind_ == "NonConvergent" || kind_ == "TailNotSmall";
    }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& detail = {}) {
    throw Error(kind, detail);
}

}  // namespace schottky
