#pragma once

#include <stdexcept>
#include <string>

namespace commdet {

/// Problem with user-supplied input (files, flags). CLI maps this to exit 2;
/// other exceptions map to exit 1.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace commdet
