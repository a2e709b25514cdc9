#pragma once

#include <gtest/gtest.h>

#include "kron/error.hpp"

// Expects `stmt` to throw kron::Error with the given code.
#define EXPECT_ERRC(stmt, errc)                                                      \
  do {                                                                               \
    try {                                                                            \
      (void)(stmt);                                                                  \
      ADD_FAILURE() << #stmt " did not throw";                                       \
    } catch (const ::kron::Error& e_) {                                              \
      EXPECT_EQ(e_.code(), errc) << e_.what();                                       \
    }                                                                                \
  } while (0)
