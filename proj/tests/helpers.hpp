#pragma once

#include <doctest.h>

#include "gcis/errors.hpp"

// Expects `expr` to throw gcis::Error carrying `code`.
#define CHECK_THROWS_CODE(expr, expected_code)                        \
  do {                                                                \
    bool thrown_ = false;                                             \
    try {                                                             \
      (void)(expr);                                                   \
    } catch (const gcis::Error& e_) {                                 \
      thrown_ = true;                                                 \
      CHECK_MESSAGE(e_.code() == (expected_code), e_.what());         \
    }                                                                 \
    CHECK_MESSAGE(thrown_, "expected gcis::Error from " #expr);       \
  } while (0)

inline double rel_err(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }
