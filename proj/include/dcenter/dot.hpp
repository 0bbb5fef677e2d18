#pragma once

#include <string>

#include "dcenter/model.hpp"

namespace dcenter::dot {

/// Largest window accepted by emit_ar_dot.
inline constexpr int kMaxDotWindow = 8;

/// Graphviz text for the window-truncated arrow graph: one cluster per
/// (family, index), edges labelled "kind/degree". Throws InvalidInput when
/// the window is negative or exceeds kMaxDotWindow.
std::string emit_ar_dot(const model::Model& m, model::Window w);

}  // namespace dcenter::dot
