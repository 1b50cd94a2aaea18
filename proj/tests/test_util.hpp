#pragma once

#include <gtest/gtest.h>

#include <functional>

#include "maxvol/maxvol.hpp"

namespace maxvol::testing {

inline void expect_kind(const std::function<void()>& fn, ErrorKind kind) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(kind) << " error, nothing thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

inline InstanceMatrix cols(std::vector<std::vector<double>> c) { return InstanceMatrix::from_columns(c); }

}  // namespace maxvol::testing

#define EXPECT_KIND(stmt, kind) ::maxvol::testing::expect_kind([&] { (void)(stmt); }, ::maxvol::ErrorKind::kind)
