#pragma once

#include <sstream>
#include <string>

namespace vbir::detail {

inline std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace vbir::detail
