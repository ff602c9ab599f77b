#pragma once

#include <stdexcept>
#include <string>

namespace hori {

// All precondition violations surface as this exception type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hori
