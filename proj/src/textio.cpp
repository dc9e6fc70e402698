#include "helix/textio.hpp"

#include <charconv>
#include <cmath>

namespace helix {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace helix
