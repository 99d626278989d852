#pragma once

#include <string>

#include "digwin/window.hpp"

namespace digwin {

enum class DotColoring { Level, Delta, Alternet };

// DOT text with ascending vertex ids and lexicographic edge order.
// Level and Delta colour vertices (one fill per class; vertices outside the
// partition domain stay gray); Alternet colours edges by reachability class.
std::string write_dot(const Window& w, DotColoring coloring);

}  // namespace digwin
