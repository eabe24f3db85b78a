// Copyright 2026 The qsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsep/roots.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace qsep {
namespace {

TEST(FindRoot, Polynomial) {
    RootResult r = find_root([](double x) { return x * x - 2; }, 0, 2);
    EXPECT_NEAR(r.x, std::numbers::sqrt2, 1e-12);
    EXPECT_FALSE(r.used_scan);
    EXPECT_LT(r.iterations, 100);
}

TEST(FindRoot, ExactEndpoint) {
    RootResult r = find_root([](double x) { return x - 1; }, 1, 3);
    EXPECT_EQ(r.x, 1);
}

TEST(FindRoot, ScanFallback) {
    // same sign at both ends, two roots inside; the first is returned
    RootResult r = find_root([](double x) { return (x - 0.3) * (x - 0.7); }, 0, 1);
    EXPECT_TRUE(r.used_scan);
    EXPECT_NEAR(r.x, 0.3, 1e-12);
}

TEST(FindRoot, NoRootThrows) {
    RootOptions opts;
    opts.label = "probe";
    try {
        find_root([](double x) { return x * x + 1; }, -1, 1, opts);
        FAIL();
    } catch (const NumericError &e) {
        EXPECT_NE(std::string(e.what()).find("probe"), std::string::npos);
    }
}

TEST(FindRoot, NanEndpoint) {
    EXPECT_THROW(find_root([](double x) { return std::log(x); }, -1, 2), NumericError);
}

TEST(FindRoot, SecantStallFallsBackToBisection) {
    // strongly curved: plain regula falsi converges one-sided and slowly
    RootResult r = find_root([](double x) { return std::pow(x, 9) - 1e-9; }, 0, 2);
    EXPECT_NEAR(r.x, 0.1, 1e-12);
    EXPECT_LT(r.iterations, 200);
}

TEST(FindRoot, Tolerance) {
    RootOptions opts;
    opts.xtol = 1e-4;
    RootResult r = find_root([](double x) { return std::cos(x); }, 0, 3, opts);
    EXPECT_NEAR(r.x, std::numbers::pi / 2, 1e-4);
}

}  // namespace
}  // namespace qsep
