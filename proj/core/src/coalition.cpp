#include "shapfs/coalition.hpp"

#include <sstream>

namespace shapfs {

std::string Coalition::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i = 0; i < capacity_; ++i) {
    if (!contains(i)) continue;
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace shapfs
