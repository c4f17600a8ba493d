#pragma once

#include <stdexcept>
#include <string>

namespace eyvp {

// Root of everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eyvp
