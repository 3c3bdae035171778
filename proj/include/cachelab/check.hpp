#pragma once

#include <stdexcept>
#include <string>

// Precondition guard for programming errors. Always on: the checks are cheap
// next to the hashing each access already does, and tests rely on them.
#define CACHELAB_EXPECT(cond, msg)                                              \
  do {                                                                          \
    if (!(cond)) {                                                              \
      throw std::logic_error(std::string(__func__) + ": " + (msg) + " [" #cond "]"); \
    }                                                                           \
  } while (false)
