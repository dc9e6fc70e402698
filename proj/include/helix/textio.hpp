#pragma once

#include <string>

namespace helix {

/// Shortest decimal string that round-trips the double exactly. Used by every
/// CSV/JSON writer so identical configs produce byte-identical output.
std::string fmt_double(double v);

} // namespace helix
