// Pretty-printer from core expressions back to the surface syntax.
#pragma once

#include <string>

#include "gdtt/syntax.hpp"

namespace gdtt {

std::string print(const ExprPtr& e);
std::string print_clock(const Clock& c);

}  // namespace gdtt
